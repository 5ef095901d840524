"""web_probe contracts: fetch policy caps against a local fixture server,
provider fallbacks, timeout isolation, and offline determinism."""

import http.server
import threading
import time
from datetime import datetime, timezone

import pytest

from nophish.errors import ConfigError
from nophish.evidence import FETCH_REDIRECT_LIMIT
from nophish.probe import (
    FetchPolicy,
    fetch_page,
    gather_evidence,
    make_fixture_providers,
    make_stub_providers,
)
from nophish.probe.fetch import LivePageFetcher
from nophish.probe.lookups import FileRankProvider, FileReportProvider


class _FixtureHandler(http.server.BaseHTTPRequestHandler):
    def do_GET(self):
        if self.path == "/plain":
            body = b"<html>" + b"x" * 1000 + b"</html>"
            self.send_response(200)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        elif self.path.startswith("/hop"):
            n = int(self.path[4:])
            self.send_response(302)
            self.send_header("Location", f"/hop{n + 1}" if n < 3 else "/plain")
            self.send_header("Content-Length", "0")
            self.end_headers()
        elif self.path == "/big":
            body = b"A" * (256 * 1024)
            self.send_response(200)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        elif self.path == "/teapot":
            self.send_response(418)
            self.send_header("Content-Length", "0")
            self.end_headers()
        elif self.path == "/ftp-redirect":
            self.send_response(302)
            self.send_header("Location", "ftp://example.com/file")
            self.send_header("Content-Length", "0")
            self.end_headers()
        else:
            self.send_response(404)
            self.send_header("Content-Length", "0")
            self.end_headers()

    def log_message(self, *args):
        pass


@pytest.fixture(scope="module")
def http_fixture():
    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), _FixtureHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    server.server_close()


def test_fetch_body_preserved(http_fixture):
    page = fetch_page(http_fixture + "/plain", FetchPolicy(timeout_ms=4000))
    assert page.ok
    assert page.raw_html == b"<html>" + b"x" * 1000 + b"</html>"
    assert not page.truncated
    assert page.redirect_chain == (http_fixture + "/plain",)


def test_fetch_redirect_limit(http_fixture):
    policy = FetchPolicy(timeout_ms=4000, max_redirects=2)
    page = fetch_page(http_fixture + "/hop1", policy)
    assert page.fetch_status == FETCH_REDIRECT_LIMIT
    assert len(page.redirect_chain) == 3  # requested: hop1, hop2, hop3


def test_fetch_follows_within_limit(http_fixture):
    policy = FetchPolicy(timeout_ms=4000, max_redirects=5)
    page = fetch_page(http_fixture + "/hop1", policy)
    assert page.ok
    assert page.final_url.endswith("/plain")
    assert len(page.redirect_chain) == 4


def test_fetch_truncates_at_cap(http_fixture):
    policy = FetchPolicy(timeout_ms=4000, max_body=64 * 1024)
    page = fetch_page(http_fixture + "/big", policy)
    assert page.ok and page.truncated
    assert len(page.raw_html) == 64 * 1024


def test_http_error_status_encoded_not_raised(http_fixture):
    page = fetch_page(http_fixture + "/teapot", FetchPolicy(timeout_ms=4000))
    assert page.fetch_status == "error:418"
    assert not page.ok


def test_never_follows_non_http_scheme(http_fixture):
    page = fetch_page(http_fixture + "/ftp-redirect", FetchPolicy(timeout_ms=4000))
    assert page.fetch_status == "error:non-http-redirect"


def test_connection_refused_is_status_not_exception():
    page = LivePageFetcher(FetchPolicy(timeout_ms=500)).fetch("http://127.0.0.1:9/x")
    assert not page.ok
    assert page.fetch_status.startswith("error:")


def test_policy_validation():
    with pytest.raises(ConfigError):
        FetchPolicy(timeout_ms=0)
    with pytest.raises(ConfigError):
        FetchPolicy(max_body=0)


def test_stub_providers_benign_contract():
    providers = make_stub_providers()
    ev = gather_evidence("https://example.com/", providers)
    assert ev.dns_resolved is True
    assert ev.rank_listed is True and ev.traffic_rank == 500
    assert ev.google_indexed is True
    assert ev.in_phish_reports is False
    assert ev.whois is not None and ev.whois.registrar_found
    assert ev.provenance["dns"] == "stub"


def test_rank_file_lookup(tmp_path):
    path = tmp_path / "rank.csv"
    path.write_text("# comment\ndomain,rank\nexample.com,14\nbusy.net,200000\n")
    provider = FileRankProvider(str(path))
    assert provider.lookup("example.com") == (True, 14)
    assert provider.lookup("EXAMPLE.COM") == (True, 14)
    assert provider.lookup("busy.net") == (True, 200000)
    assert provider.lookup("absent.org") == (False, None)


def test_rank_file_rejects_garbage(tmp_path):
    path = tmp_path / "rank.csv"
    path.write_text("example.com,notanumber\n")
    with pytest.raises(ConfigError, match="rank"):
        FileRankProvider(str(path))


def test_report_membership(tmp_path, fixtures_dir):
    path = tmp_path / "reports.txt"
    path.write_text("# header\nbadhost.example\n203.0.113.88\n")
    provider = FileReportProvider(str(path))
    assert provider.lookup("badhost.example") is True
    assert provider.lookup("203.0.113.88") is True
    assert provider.lookup("www.badhost.example", "badhost.example") is True
    assert provider.lookup("fine.example", "fine.example") is False


def test_fixture_providers_deterministic(fixtures_dir):
    a = make_fixture_providers(fixtures_dir)
    b = make_fixture_providers(fixtures_dir)
    url = "https://www.wikipedia.org/"
    ev_a, ev_b = gather_evidence(url, a), gather_evidence(url, b)
    assert ev_a == ev_b
    assert ev_a.as_of == datetime(2025, 6, 1, tzinfo=timezone.utc)
    page_a, page_b = a.page_fetcher.fetch(url), b.page_fetcher.fetch(url)
    assert page_a.raw_html == page_b.raw_html


def test_fixture_missing_page_is_unfetched(fixtures_dir):
    providers = make_fixture_providers(fixtures_dir)
    page = providers.page_fetcher.fetch("https://not-in-the-archive.example/")
    assert not page.ok
    assert page.fetch_status == "error:no-fixture"


def test_provider_failure_degrades_single_field():
    class Boom:
        mode = "stub"
        timeout_s = 1.0
        def lookup(self, *args):
            raise RuntimeError("backend exploded")

    providers = make_stub_providers()
    providers.rank = Boom()
    ev = gather_evidence("https://example.com/", providers)
    assert ev.rank_listed is None and ev.traffic_rank is None
    assert ev.provenance["rank"] == "unknown"
    assert ev.dns_resolved is True  # others unaffected


def test_hanging_provider_isolated_by_its_own_timeout():
    class Hang:
        mode = "stub"
        timeout_s = 0.25
        def lookup(self, *args):
            time.sleep(2.0)
            return True

    providers = make_stub_providers()
    providers.index = Hang()
    started = time.perf_counter()
    ev = gather_evidence("https://example.com/", providers)
    elapsed = time.perf_counter() - started
    assert ev.google_indexed is None
    assert ev.provenance["index"] == "unknown"
    assert elapsed < 1.5  # max(provider timeouts) + scheduling slack


def test_provider_set_modes(fixtures_dir):
    live_ish = make_fixture_providers(fixtures_dir)
    modes = live_ish.modes()
    assert set(modes) == {"page", "whois", "dns", "rank", "index", "report"}
    assert modes["page"] == "fixture"
