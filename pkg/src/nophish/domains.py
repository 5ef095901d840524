"""Registered-domain computation against a bundled public-suffix snapshot.

"Same site" decisions (favicon, object/anchor externality, dash-in-domain,
subdomain counting) all compare registered domains: the hostname with its
public suffix reduced to suffix + one label. The snapshot ships with the
package; no network lookups happen here.
"""

import ipaddress
from functools import lru_cache

from . import config


@lru_cache(maxsize=1)
def _rules() -> frozenset:
    rules = set()
    for line in config.public_suffix_lines():
        line = line.strip()
        if not line or line.startswith("//"):
            continue
        rules.add(line.lower())
    return frozenset(rules)


def normalize_host(host: str) -> str:
    """Lowercase, strip brackets/trailing dot. Returns '' for empty input."""
    host = (host or "").strip().lower().rstrip(".")
    if host.startswith("[") and host.endswith("]"):
        host = host[1:-1]
    return host


def is_ip_literal(host: str) -> bool:
    host = normalize_host(host)
    if not host:
        return False
    try:
        ipaddress.ip_address(host)
        return True
    except ValueError:
        pass
    # hex-octet dotted form, e.g. 0x58.0xcc.0xca.0x62
    parts = host.split(".")
    if len(parts) == 4:
        try:
            octets = [int(p, 16) for p in parts if p.startswith("0x")]
            if len(octets) == 4 and all(0 <= o <= 255 for o in octets):
                return True
        except ValueError:
            pass
    # a bare integer host is a dword-encoded address
    if host.isdigit():
        return True
    return False


def public_suffix(host: str):
    """Longest matching public suffix of host, or None for IPs/empty input."""
    host = normalize_host(host)
    if not host or is_ip_literal(host):
        return None
    labels = host.split(".")
    if any(not lb for lb in labels):
        return None
    rules = _rules()
    for i in range(len(labels)):
        candidate = ".".join(labels[i:])
        if "!" + candidate in rules:
            # exception rule: candidate itself is registrable
            return ".".join(labels[i + 1:]) or None
        if candidate in rules:
            return candidate
        if i + 1 < len(labels) and "*." + ".".join(labels[i + 1:]) in rules:
            return candidate
    # default rule: the rightmost label
    return labels[-1]


def registered_domain(host: str):
    """Public suffix plus one label, e.g. 'example.co.uk'. None when the host
    is an IP literal, empty, or is itself a public suffix."""
    host = normalize_host(host)
    suffix = public_suffix(host)
    if suffix is None:
        return None
    if host == suffix:
        return None
    prefix = host[: -(len(suffix) + 1)]
    return prefix.split(".")[-1] + "." + suffix


def same_registered_domain(host_a: str, host_b: str) -> bool:
    """True when both hosts resolve to one registered domain. Falls back to
    exact host comparison when either side has no registered domain (IPs)."""
    a, b = registered_domain(host_a), registered_domain(host_b)
    if a is None or b is None:
        return normalize_host(host_a) == normalize_host(host_b)
    return a == b


def subdomain_labels(host: str) -> list:
    """Labels left of the registered domain, with a leading 'www' dropped."""
    host = normalize_host(host)
    rd = registered_domain(host)
    if rd is None or host == rd:
        return []
    prefix = host[: -(len(rd) + 1)]
    labels = [lb for lb in prefix.split(".") if lb]
    if labels and labels[0] == "www":
        labels = labels[1:]
    return labels
