"""Carrier types for fetched page content and external lookups.

Producers live in ``nophish.probe``; the feature extractor only reads these.
Absent lookups stay ``None`` ("unknown") and are never fabricated; the
extractor maps unknown evidence to the suspicious value 0.
"""

from dataclasses import dataclass, field
from datetime import datetime

FETCH_OK = "ok"
FETCH_TIMEOUT = "timeout"
FETCH_REDIRECT_LIMIT = "error:redirect-limit"


@dataclass(frozen=True)
class PageArtifacts:
    """Outcome of fetching the target page. HTTP error statuses are encoded
    in ``fetch_status`` (``error:<code-or-reason>``), never raised."""

    url: str
    final_url: str
    raw_html: bytes = b""
    redirect_chain: tuple = ()
    fetch_status: str = FETCH_OK
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return self.fetch_status == FETCH_OK

    @staticmethod
    def unfetched(url: str, status: str = "error:unfetched") -> "PageArtifacts":
        return PageArtifacts(url=url, final_url=url, fetch_status=status)


@dataclass(frozen=True)
class WhoisRecord:
    """Distilled WHOIS answer. ``registrar_found`` False means the lookup
    succeeded but no registration exists for the domain."""

    registrar_found: bool
    created: datetime | None = None
    expires: datetime | None = None
    identity_strings: tuple = ()
    nameservers: tuple = ()


@dataclass(frozen=True)
class ExternalEvidence:
    """External lookups for one scan. ``rank_listed`` False means the rank
    source was consulted and the domain is absent (not merely unknown).
    ``as_of`` pins the clock the date-based features compare against."""

    whois: WhoisRecord | None = None
    dns_resolved: bool | None = None
    rank_listed: bool | None = None
    traffic_rank: int | None = None
    google_indexed: bool | None = None
    in_phish_reports: bool | None = None
    as_of: datetime | None = None
    provenance: dict = field(default_factory=dict)

    @staticmethod
    def unknown() -> "ExternalEvidence":
        return ExternalEvidence()
