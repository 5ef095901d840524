"""WHOIS access: plain-text protocol client, stored-text fixtures, stubs.

Only three things are distilled from WHOIS text: creation/expiry dates,
registrant identity strings, and nameservers. Parsing is regex-driven over
the common key spellings; anything unparsed simply stays unknown.
"""

import os
import re
import socket
from datetime import datetime, timedelta, timezone

from ..evidence import WhoisRecord

_CREATED_KEYS = r"(?:creation date|created(?: on)?|registered(?: on)?|registration time|domain record activated)"
_EXPIRES_KEYS = r"(?:registry expiry date|expiration date|expiry date|expires(?: on)?|paid-till|renewal date)"
_IDENTITY_KEYS = r"(?:registrant organization|registrant organisation|registrant name|registrant|org|organisation|organization)"
_NS_KEYS = r"(?:name server|nserver|nameservers?)"

_DATE_FORMATS = (
    "%Y-%m-%dT%H:%M:%S%z",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%d",
    "%d-%b-%Y",
    "%d.%m.%Y",
    "%Y.%m.%d",
    "%d/%m/%Y",
)

_NOT_FOUND_MARKERS = (
    "no match for",
    "not found",
    "no data found",
    "no entries found",
    "object does not exist",
    "domain not found",
)


def _parse_date(raw: str):
    raw = raw.strip().rstrip(".").replace("Z", "+0000")
    raw = re.sub(r"\s+\(.*\)$", "", raw)
    for fmt in _DATE_FORMATS:
        try:
            parsed = datetime.strptime(raw, fmt)
        except ValueError:
            continue
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return parsed.astimezone(timezone.utc)
    return None


def parse_whois_text(text: str) -> WhoisRecord:
    head = text.lower()[:400]
    if any(marker in head for marker in _NOT_FOUND_MARKERS):
        return WhoisRecord(registrar_found=False)
    flags = re.MULTILINE | re.IGNORECASE

    def find_value(keys):
        m = re.search(rf"^\s*{keys}\s*[:.]+\s*(\S.*)$", text, flags)
        return m.group(1).strip() if m else None

    created_raw = find_value(_CREATED_KEYS)
    expires_raw = find_value(_EXPIRES_KEYS)
    identity = tuple(
        m.group(1).strip()
        for m in re.finditer(rf"^\s*{_IDENTITY_KEYS}\s*[:.]+\s*(\S.*)$", text, flags)
    )
    nameservers = tuple(
        m.group(1).strip().split()[0].lower()
        for m in re.finditer(rf"^\s*{_NS_KEYS}\s*[:.]+\s*(\S.*)$", text, flags)
    )
    return WhoisRecord(
        registrar_found=True,
        created=_parse_date(created_raw) if created_raw else None,
        expires=_parse_date(expires_raw) if expires_raw else None,
        identity_strings=identity,
        nameservers=nameservers,
    )


_SERVER_BY_TLD = {
    "com": "whois.verisign-grs.com",
    "net": "whois.verisign-grs.com",
    "org": "whois.pir.org",
    "info": "whois.nic.info",
    "io": "whois.nic.io",
    "co": "whois.nic.co",
    "uk": "whois.nic.uk",
    "de": "whois.denic.de",
    "fr": "whois.nic.fr",
    "nl": "whois.domain-registry.nl",
    "eu": "whois.eu",
    "us": "whois.nic.us",
    "biz": "whois.nic.biz",
}


class LiveWhoisProvider:
    mode = "live"

    def __init__(self, timeout_s: float = 5.0):
        self.timeout_s = timeout_s

    def lookup(self, domain: str):
        """WhoisRecord for a registered domain, or None when unreachable."""
        tld = domain.rsplit(".", 1)[-1]
        server = _SERVER_BY_TLD.get(tld, "whois.iana.org")
        try:
            with socket.create_connection((server, 43), timeout=self.timeout_s) as sock:
                sock.settimeout(self.timeout_s)
                sock.sendall(domain.encode("ascii", "ignore") + b"\r\n")
                chunks = []
                while True:
                    chunk = sock.recv(4096)
                    if not chunk:
                        break
                    chunks.append(chunk)
        except OSError:
            return None
        text = b"".join(chunks).decode("utf-8", errors="replace")
        return parse_whois_text(text) if text.strip() else None


class FixtureWhoisProvider:
    """Reads stored WHOIS text from ``<dir>/whois/<registered-domain>.txt``.
    A missing file means the lookup is unavailable (unknown), not that the
    domain is unregistered; unregistered domains get a not-found fixture."""

    mode = "fixture"

    def __init__(self, fixtures_dir: str, timeout_s: float = 5.0):
        self.dir = os.path.join(fixtures_dir, "whois")
        self.timeout_s = timeout_s

    def lookup(self, domain: str):
        path = os.path.join(self.dir, f"{domain}.txt")
        try:
            with open(path, encoding="utf-8") as f:
                return parse_whois_text(f.read())
        except FileNotFoundError:
            return None


class StubWhoisProvider:
    """Benign by construction: decade-old registration, years of paid-up
    runway, identity matching the queried domain."""

    mode = "stub"

    def __init__(self, clock=None, timeout_s: float = 5.0):
        self.clock = clock or (lambda: datetime.now(timezone.utc))
        self.timeout_s = timeout_s

    def lookup(self, domain: str):
        now = self.clock()
        return WhoisRecord(
            registrar_found=True,
            created=now - timedelta(days=3650),
            expires=now + timedelta(days=730),
            identity_strings=(domain,),
            nameservers=(f"ns1.{domain}",),
        )
