"""The 22 ternary evidence features computed for a live URL.

Every feature yields -1 (phishing-indicating), 0 (suspicious) or +1
(legitimate-indicating). Slots 0-8 and 9 read only the URL; content features
read the fetched page; external features read WHOIS/DNS/rank/index/report
evidence. Two defaulting rules apply throughout:

* ratio features over an empty set (page with no anchors, objects, forms)
  yield +1 - absence of evidence is not phishing evidence;
* unknown external evidence yields 0 (suspicious), never +1.

All extractors are pure functions of their inputs; thresholds come from one
read-only config structure.
"""

from dataclasses import dataclass
from datetime import datetime, timezone
from urllib.parse import urlsplit

from . import domains
from .config import Thresholds, default_thresholds, shortener_domains
from .errors import UrlError
from .evidence import ExternalEvidence, PageArtifacts
from .html_summary import HtmlSummary, summarize

FEATURE_NAMES = (
    "ip_in_host",
    "url_length",
    "shortener",
    "at_symbol",
    "double_slash_redirect",
    "dash_in_domain",
    "subdomain_count",
    "registration_length",
    "favicon",
    "https_token",
    "request_url_ratio",
    "anchor_ratio",
    "meta_script_link_ratio",
    "sfh",
    "mail_submit",
    "abnormal_url",
    "invisible_iframe",
    "domain_age",
    "dns_record",
    "traffic_rank",
    "google_index",
    "report_listed",
)

N_FEATURES = len(FEATURE_NAMES)

# provenance tags
URL_DERIVED = "url-derived"
CONTENT_DERIVED = "content-derived"
EXTERNAL = "external"
DEFAULTED = "defaulted"

_URL_ONLY_SLOTS = (0, 1, 2, 3, 4, 5, 6, 9)
_CONTENT_SLOTS = (8, 10, 11, 12, 13, 14, 16)
_EXTERNAL_SLOTS = (7, 15, 17, 18, 19, 20, 21)


@dataclass(frozen=True)
class UrlParts:
    """Pre-parsed pieces of the scanned URL."""

    original: str
    scheme: str
    host: str
    port: int | None
    path: str
    query: str
    registered: str | None
    is_ip: bool


def parse_url(url: str) -> UrlParts:
    """Split a URL; a missing scheme is treated as http. Raises UrlError when
    no host can be extracted."""
    raw = (url or "").strip()
    if not raw:
        raise UrlError("empty URL")
    candidate = raw if "://" in raw else "http://" + raw
    try:
        parts = urlsplit(candidate)
        port = parts.port
    except ValueError as exc:
        raise UrlError(f"cannot parse URL {raw!r}: {exc}") from exc
    host = domains.normalize_host(parts.hostname or "")
    if not host:
        raise UrlError(f"URL {raw!r} has no host")
    return UrlParts(
        original=raw,
        scheme=(parts.scheme or "http").lower(),
        host=host,
        port=port,
        path=parts.path or "",
        query=parts.query or "",
        registered=domains.registered_domain(host),
        is_ip=domains.is_ip_literal(host),
    )


@dataclass(frozen=True)
class FeatureVector:
    """Ordered 22-slot ternary vector plus per-slot provenance tags."""

    values: tuple
    provenance: tuple

    def __post_init__(self):
        if len(self.values) != N_FEATURES or len(self.provenance) != N_FEATURES:
            raise ValueError(f"feature vector needs exactly {N_FEATURES} slots")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise ValueError("feature values must be in {-1,0,+1}")

    def as_row(self):
        return list(self.values)


# --- URL features ---------------------------------------------------------

def ip_in_host(parts: UrlParts, th: Thresholds) -> int:
    return -1 if parts.is_ip else 1


def url_length(parts: UrlParts, th: Thresholds) -> int:
    n = len(parts.original)
    if n <= th.url_short_max:
        return 1
    if n >= th.url_long_min:
        return -1
    return 0


def shortener(parts: UrlParts, th: Thresholds) -> int:
    listed = shortener_domains()
    if parts.host in listed or (parts.registered and parts.registered in listed):
        return -1
    return 1


def at_symbol(parts: UrlParts, th: Thresholds) -> int:
    return -1 if "@" in parts.original else 1


def double_slash_redirect(parts: UrlParts, th: Thresholds) -> int:
    url = parts.original
    sep = url.find("://")
    search_from = sep + 3 if sep >= 0 else 1
    return -1 if url.find("//", search_from) != -1 else 1


def dash_in_domain(parts: UrlParts, th: Thresholds) -> int:
    domain = parts.registered or parts.host
    return -1 if "-" in domain else 1


def subdomain_count(parts: UrlParts, th: Thresholds) -> int:
    n = len(domains.subdomain_labels(parts.host))
    if n <= 1:
        return 1
    if n == 2:
        return 0
    return -1


def https_token(parts: UrlParts, th: Thresholds) -> int:
    return -1 if "https" in parts.host else 1


# --- content features ------------------------------------------------------

def _is_absolute(href: str) -> bool:
    href = (href or "").strip()
    if href.startswith("//"):
        return True
    try:
        split = urlsplit(href)
    except ValueError:
        return False
    return split.scheme in ("http", "https") and bool(split.netloc)


def _is_external(href: str, parts: UrlParts) -> bool:
    """True when href is an absolute http(s) URL on a different registered
    domain. Relative references and data: URIs stay internal."""
    href = (href or "").strip()
    if not _is_absolute(href):
        return False
    try:
        host = urlsplit(href).hostname or ""
    except ValueError:
        return True  # unparseable absolute reference: treat as foreign
    if not host:
        return False
    return not domains.same_registered_domain(host, parts.host)


def _ratio_value(n_flagged: int, total: int, low: float, high: float) -> int:
    if total == 0:
        return 1
    ratio = n_flagged / total
    if ratio < low:
        return 1
    if ratio <= high:
        return 0
    return -1


def favicon(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    href = summary.favicon_href
    if not href:
        return 1
    return -1 if _is_external(href, parts) else 1


def request_url_ratio(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    urls = summary.object_urls
    external = sum(1 for u in urls if _is_external(u, parts))
    return _ratio_value(external, len(urls), th.request_low, th.request_high)


def _anchor_is_void(href: str) -> bool:
    href = (href or "").strip().lower()
    return href == "" or href.startswith("#") or href.startswith("javascript:")


def anchor_ratio(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    anchors = summary.anchors
    flagged = sum(
        1 for a in anchors if _anchor_is_void(a) or _is_external(a, parts)
    )
    return _ratio_value(flagged, len(anchors), th.anchor_low, th.anchor_high)


def meta_script_link_ratio(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    urls = summary.tag_link_urls
    external = sum(1 for u in urls if _is_external(u, parts))
    return _ratio_value(external, len(urls), th.tags_low, th.tags_high)


def sfh(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    actions = summary.form_actions
    if not actions:
        return 1
    cleaned = [(a or "").strip().lower() for a in actions]
    if any(a in ("", "about:blank") for a in cleaned):
        return -1
    if any(_is_external(a, parts) for a in cleaned):
        return 0
    return 1


def mail_submit(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    return -1 if (summary.mailto_present or summary.mail_call_present) else 1


def invisible_iframe(parts: UrlParts, summary: HtmlSummary, th: Thresholds) -> int:
    borders = summary.iframe_borders
    if not borders:
        return 1
    for border in borders:
        if border is None or str(border).strip().lower() in ("0", "", "no", "none"):
            return -1
    return 1


# --- external-evidence features ---------------------------------------------
# each returns (value, known); known=False marks the slot as defaulted

def registration_length(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    w = ev.whois
    if w is None or w.expires is None:
        return 0, False
    days_left = (w.expires - now).days
    return (-1 if days_left <= th.registration_short_max_days else 1), True


def abnormal_url(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    w = ev.whois
    if w is None:
        return 0, False
    if not w.registrar_found:
        return -1, True
    rd = parts.registered or parts.host
    label = rd.split(".")[0]
    hay = [s.lower() for s in w.identity_strings]
    if any(rd in s for s in hay):
        return 1, True
    if len(label) >= 3 and any(label in s for s in hay):
        return 1, True
    for ns in w.nameservers:
        if domains.registered_domain(ns) == rd:
            return 1, True
    return -1, True


def domain_age(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    w = ev.whois
    if w is None or w.created is None:
        return 0, False
    age_days = (now - w.created).days
    return (1 if age_days >= th.age_mature_min_days else -1), True


def dns_record(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    if ev.dns_resolved is None:
        return 0, False
    return (1 if ev.dns_resolved else -1), True


def traffic_rank(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    if ev.rank_listed is None:
        return 0, False
    if not ev.rank_listed:
        return -1, True
    rank = ev.traffic_rank
    if rank is not None and rank <= th.rank_popular_max:
        return 1, True
    return 0, True


def google_index(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    if ev.google_indexed is None:
        return 0, False
    return (1 if ev.google_indexed else -1), True


def report_listed(parts, ev: ExternalEvidence, th: Thresholds, now: datetime):
    if ev.in_phish_reports is None:
        return 0, False
    return (-1 if ev.in_phish_reports else 1), True


_URL_FNS = {
    0: ip_in_host,
    1: url_length,
    2: shortener,
    3: at_symbol,
    4: double_slash_redirect,
    5: dash_in_domain,
    6: subdomain_count,
    9: https_token,
}
_CONTENT_FNS = {
    8: favicon,
    10: request_url_ratio,
    11: anchor_ratio,
    12: meta_script_link_ratio,
    13: sfh,
    14: mail_submit,
    16: invisible_iframe,
}
_EXTERNAL_FNS = {
    7: registration_length,
    15: abnormal_url,
    17: domain_age,
    18: dns_record,
    19: traffic_rank,
    20: google_index,
    21: report_listed,
}


def extract_all(
    url: str,
    page: PageArtifacts,
    ev: ExternalEvidence,
    thresholds: Thresholds | None = None,
    now: datetime | None = None,
) -> FeatureVector:
    """Fill all 22 slots for a URL given fetched content and evidence.

    Deterministic given its inputs: date comparisons use ``now`` or, when not
    supplied, ``ev.as_of`` (falling back to the current UTC time only if the
    evidence carries no clock). When the page fetch failed, content features
    run against an empty document and are tagged ``defaulted``.
    """
    th = thresholds or default_thresholds()
    parts = parse_url(url)
    clock = now or ev.as_of or datetime.now(timezone.utc)

    page_ok = page is not None and page.ok
    summary = summarize(page.raw_html) if page_ok else HtmlSummary()

    values = [0] * N_FEATURES
    prov = [DEFAULTED] * N_FEATURES
    for slot, fn in _URL_FNS.items():
        values[slot] = fn(parts, th)
        prov[slot] = URL_DERIVED
    for slot, fn in _CONTENT_FNS.items():
        values[slot] = fn(parts, summary, th)
        prov[slot] = CONTENT_DERIVED if page_ok else DEFAULTED
    for slot, fn in _EXTERNAL_FNS.items():
        values[slot], known = fn(parts, ev, th, clock)
        prov[slot] = EXTERNAL if known else DEFAULTED
    return FeatureVector(values=tuple(values), provenance=tuple(prov))
