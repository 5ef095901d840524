"""DNS, traffic-rank, search-index and report-list providers.

File-backed modes are the production default for rank/report lookups (the
original hosted rank service is defunct); live search-index checking is out
of scope, so that provider ships as fixture/stub with this adapter interface:
an object with ``mode`` and ``lookup(registered_domain) -> bool | None``.
"""

import json
import os
import socket

from ..errors import ConfigError


def _read_list_file(path):
    entries = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip().lower()
            if line and not line.startswith("#"):
                entries.add(line)
    return entries


# --- DNS --------------------------------------------------------------------

class LiveDnsProvider:
    mode = "live"

    def __init__(self, timeout_s: float = 5.0):
        self.timeout_s = timeout_s

    def lookup(self, host: str):
        """True when the host resolves, False on NXDOMAIN, None when the
        resolver itself failed."""
        try:
            socket.getaddrinfo(host, None)
            return True
        except socket.gaierror as exc:
            if exc.errno in (socket.EAI_NONAME, getattr(socket, "EAI_NODATA", -5)):
                return False
            return None
        except OSError:
            return None


class FixtureDnsProvider:
    """Backed by ``<dir>/dns.json``: {"host": true/false, ...}. Hosts not in
    the map are unknown."""

    mode = "fixture"

    def __init__(self, fixtures_dir: str, timeout_s: float = 5.0):
        self.timeout_s = timeout_s
        path = os.path.join(fixtures_dir, "dns.json")
        try:
            with open(path, encoding="utf-8") as f:
                self.table = {k.lower(): bool(v) for k, v in json.load(f).items()}
        except FileNotFoundError:
            self.table = {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: bad JSON: {exc}") from exc

    def lookup(self, host: str):
        return self.table.get(host.lower())


class StubDnsProvider:
    mode = "stub"
    timeout_s = 5.0

    def __init__(self, resolves: bool = True):
        self.resolves = resolves

    def lookup(self, host: str):
        return self.resolves


# --- traffic rank -------------------------------------------------------------

class FileRankProvider:
    """Offline top-sites list, CSV lines ``domain,rank``. A domain absent
    from the list is *known unranked* (listed=False), which is itself a
    signal; lookup never returns unknown once the file loaded."""

    mode = "fixture"

    def __init__(self, path: str, timeout_s: float = 5.0):
        self.timeout_s = timeout_s
        self.table = {}
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise ConfigError(f"{path}:{line_no}: expected 'domain,rank'")
                domain, rank = parts[0].strip().lower(), parts[1].strip()
                if domain == "domain" and not rank.isdigit():
                    continue  # header line
                try:
                    self.table[domain] = int(rank)
                except ValueError:
                    raise ConfigError(f"{path}:{line_no}: rank {rank!r} not an integer") from None

    def lookup(self, domain: str):
        rank = self.table.get(domain.lower())
        return (True, rank) if rank is not None else (False, None)


class StubRankProvider:
    mode = "stub"
    timeout_s = 5.0

    def __init__(self, rank: int | None = 500):
        self.rank = rank

    def lookup(self, domain: str):
        return (True, self.rank) if self.rank is not None else (False, None)


class UnknownRankProvider:
    """Placeholder when no rank list is configured; every lookup is unknown."""

    mode = "unknown"
    timeout_s = 5.0

    def lookup(self, domain: str):
        return None


# --- search index -------------------------------------------------------------

class FileIndexProvider:
    """Newline-delimited registered domains known to be indexed."""

    mode = "fixture"

    def __init__(self, path: str, timeout_s: float = 5.0):
        self.timeout_s = timeout_s
        self.indexed = _read_list_file(path)

    def lookup(self, domain: str):
        return domain.lower() in self.indexed


class StubIndexProvider:
    mode = "stub"
    timeout_s = 5.0

    def __init__(self, indexed: bool = True):
        self.indexed = indexed

    def lookup(self, domain: str):
        return self.indexed


class UnknownIndexProvider:
    mode = "unknown"
    timeout_s = 5.0

    def lookup(self, domain: str):
        return None


# --- report lists -------------------------------------------------------------

class FileReportProvider:
    """Newline-delimited hosts/IPs seen in phishing statistical reports."""

    mode = "fixture"

    def __init__(self, path: str, timeout_s: float = 5.0):
        self.timeout_s = timeout_s
        self.listed = _read_list_file(path)

    def lookup(self, host: str, registered: str | None = None):
        if host.lower() in self.listed:
            return True
        if registered and registered.lower() in self.listed:
            return True
        return False


class StubReportProvider:
    mode = "stub"
    timeout_s = 5.0

    def __init__(self, listed: bool = False):
        self.listed = listed

    def lookup(self, host: str, registered: str | None = None):
        return self.listed


class UnknownReportProvider:
    mode = "unknown"
    timeout_s = 5.0

    def lookup(self, host: str, registered: str | None = None):
        return None
