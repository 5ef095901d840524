"""Pluggable fetch + external-evidence providers with offline modes.

``gather_evidence`` queries the five lookup providers concurrently, each
isolated behind its own timeout: a hanging provider degrades its field to
unknown and cannot stall the others beyond its own budget.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .. import config, features
from ..evidence import ExternalEvidence
from .fetch import FetchPolicy, FixturePageFetcher, LivePageFetcher, StubPageFetcher
from .lookups import (
    FileIndexProvider,
    FileRankProvider,
    FileReportProvider,
    FixtureDnsProvider,
    LiveDnsProvider,
    StubDnsProvider,
    StubIndexProvider,
    StubRankProvider,
    StubReportProvider,
    UnknownIndexProvider,
    UnknownRankProvider,
    UnknownReportProvider,
)
from .whois import FixtureWhoisProvider, LiveWhoisProvider, StubWhoisProvider

__all__ = [
    "FetchPolicy",
    "ProviderSet",
    "gather_evidence",
    "fetch_page",
    "make_stub_providers",
    "make_fixture_providers",
    "make_live_providers",
]


def _utcnow():
    return datetime.now(timezone.utc)


@dataclass
class ProviderSet:
    """One handle per provider kind plus the clock evidence is stamped with."""

    page_fetcher: object
    whois: object
    dns: object
    rank: object
    index: object
    report: object
    clock: object = field(default=_utcnow)

    def modes(self) -> dict:
        return {
            "page": self.page_fetcher.mode,
            "whois": self.whois.mode,
            "dns": self.dns.mode,
            "rank": self.rank.mode,
            "index": self.index.mode,
            "report": self.report.mode,
        }


def fetch_page(url: str, policy: FetchPolicy | None = None, fetcher=None):
    """Fetch one page under a policy. Network errors and HTTP error statuses
    land in ``PageArtifacts.fetch_status``; this never raises for them."""
    fetcher = fetcher or LivePageFetcher(policy or FetchPolicy())
    return fetcher.fetch(url)


def gather_evidence(url: str, providers: ProviderSet) -> ExternalEvidence:
    """Run the five external lookups for a URL; every failure degrades just
    its own field to unknown."""
    parts = features.parse_url(url)
    rd = parts.registered or parts.host
    prov = providers.modes()

    jobs = {
        "whois": (providers.whois, (rd,)),
        "dns": (providers.dns, (parts.host,)),
        "rank": (providers.rank, (rd,)),
        "index": (providers.index, (rd,)),
        "report": (providers.report, (parts.host, parts.registered)),
    }
    results = {}
    # no context manager: exiting one would join a hanging provider thread
    pool = ThreadPoolExecutor(max_workers=5)
    try:
        futures = {
            name: pool.submit(provider.lookup, *args)
            for name, (provider, args) in jobs.items()
        }
        for name, future in futures.items():
            timeout_s = getattr(jobs[name][0], "timeout_s", 5.0)
            try:
                results[name] = future.result(timeout=timeout_s)
            except Exception:
                results[name] = None
                future.cancel()
    finally:
        pool.shutdown(wait=False, cancel_futures=True)

    for name in jobs:
        if results.get(name) is None:
            prov[name] = "unknown"

    rank_result = results.get("rank")
    rank_listed, rank = (None, None) if rank_result is None else rank_result
    return ExternalEvidence(
        whois=results.get("whois"),
        dns_resolved=results.get("dns"),
        rank_listed=rank_listed,
        traffic_rank=rank,
        google_indexed=results.get("index"),
        in_phish_reports=results.get("report"),
        as_of=providers.clock(),
        provenance=prov,
    )


def _fixed_clock(stamp: datetime):
    def clock():
        return stamp
    return clock


def make_stub_providers(clock=None, page_html: bytes | None = None) -> ProviderSet:
    """All-benign deterministic stubs: resolving DNS, rank 500, indexed,
    unreported, decade-old WHOIS."""
    clk = clock or _utcnow
    fetcher = StubPageFetcher() if page_html is None else StubPageFetcher(page_html)
    return ProviderSet(
        page_fetcher=fetcher,
        whois=StubWhoisProvider(clock=clk),
        dns=StubDnsProvider(True),
        rank=StubRankProvider(500),
        index=StubIndexProvider(True),
        report=StubReportProvider(False),
        clock=clk,
    )


def make_fixture_providers(fixtures_dir: str, policy: FetchPolicy | None = None) -> ProviderSet:
    """Fixture layout: pages.json + pages/, whois/, dns.json, rank.csv,
    reports.txt, indexed.txt, as_of.txt (ISO-8601 pinned clock). Environment
    overrides: NOPHISH_RANK_FILE, NOPHISH_REPORT_FILE."""
    clock = _utcnow
    as_of_path = os.path.join(fixtures_dir, "as_of.txt")
    if os.path.exists(as_of_path):
        with open(as_of_path, encoding="utf-8") as f:
            stamp = datetime.fromisoformat(f.read().strip())
        if stamp.tzinfo is None:
            stamp = stamp.replace(tzinfo=timezone.utc)
        clock = _fixed_clock(stamp)

    rank_file = config.env_or(config.ENV_RANK_FILE, os.path.join(fixtures_dir, "rank.csv"))
    report_file = config.env_or(config.ENV_REPORT_FILE, os.path.join(fixtures_dir, "reports.txt"))
    index_file = os.path.join(fixtures_dir, "indexed.txt")

    return ProviderSet(
        page_fetcher=FixturePageFetcher(fixtures_dir, policy),
        whois=FixtureWhoisProvider(fixtures_dir),
        dns=FixtureDnsProvider(fixtures_dir),
        rank=FileRankProvider(rank_file) if os.path.exists(rank_file) else UnknownRankProvider(),
        index=FileIndexProvider(index_file) if os.path.exists(index_file) else UnknownIndexProvider(),
        report=FileReportProvider(report_file) if os.path.exists(report_file) else UnknownReportProvider(),
        clock=clock,
    )


def make_live_providers(
    policy: FetchPolicy | None = None,
    rank_file: str | None = None,
    report_file: str | None = None,
    index_file: str | None = None,
) -> ProviderSet:
    """Live fetch/WHOIS/DNS; rank and report lookups come from operator-
    supplied offline files, the search-index check stays a stub adapter."""
    rank_file = rank_file or config.env_or(config.ENV_RANK_FILE)
    report_file = report_file or config.env_or(config.ENV_REPORT_FILE)
    return ProviderSet(
        page_fetcher=LivePageFetcher(policy or FetchPolicy()),
        whois=LiveWhoisProvider(),
        dns=LiveDnsProvider(),
        rank=FileRankProvider(rank_file) if rank_file else UnknownRankProvider(),
        index=FileIndexProvider(index_file) if index_file else UnknownIndexProvider(),
        report=FileReportProvider(report_file) if report_file else UnknownReportProvider(),
    )
