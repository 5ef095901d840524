"""URL-derived features (slots 0-6, 9) plus their two key invariants:
they ignore page/evidence inputs entirely, and threshold features step
monotonically in their driving scalar."""

import pytest

from nophish import features
from nophish.config import default_thresholds
from nophish.errors import UrlError
from nophish.evidence import ExternalEvidence, PageArtifacts, WhoisRecord
from nophish.features import extract_all, parse_url

TH = default_thresholds()


def url_value(slot, url):
    vec = extract_all(url, PageArtifacts.unfetched(url), ExternalEvidence.unknown())
    return vec.values[slot]


@pytest.mark.parametrize("url,expected", [
    ("http://125.98.3.123/fake.html", -1),
    ("http://0x58.0xCC.0xCA.0x62/2/paypal.ca/index.html", -1),
    ("http://[2001:db8::2]/x", -1),
    ("https://example.com/", 1),
])
def test_ip_in_host(url, expected):
    assert url_value(0, url) == expected


def test_url_length_thresholds():
    base = "http://example.com/"
    def of_length(n):
        return base + "a" * (n - len(base))
    assert url_value(1, of_length(53)) == 1
    assert url_value(1, of_length(54)) == 0
    assert url_value(1, of_length(75)) == 0
    assert url_value(1, of_length(76)) == -1


def test_url_length_monotone():
    base = "http://example.com/"
    last = 1
    order = {1: 0, 0: 1, -1: 2}
    for n in range(len(base), 120):
        value = url_value(1, base + "a" * (n - len(base)))
        assert order[value] >= order[last]
        last = value


@pytest.mark.parametrize("url,expected", [
    ("http://bit.ly/xyz", -1),
    ("https://tinyurl.com/abc", -1),
    ("https://www.tinyurl.com/abc", -1),
    ("https://example.com/bit.ly", 1),
])
def test_shortener(url, expected):
    assert url_value(2, url) == expected


@pytest.mark.parametrize("url,expected", [
    ("http://legit.com@evil.site/login", -1),
    ("https://example.com/path?q=a@b.com", -1),
    ("https://example.com/plain", 1),
])
def test_at_symbol(url, expected):
    assert url_value(3, url) == expected


@pytest.mark.parametrize("url,expected", [
    ("http://example.com//redirect", -1),
    ("http://example.com/a//b", -1),
    ("http://example.com/a/b", 1),
    ("https://example.com/", 1),
    ("example.com//x", -1),
])
def test_double_slash_redirect(url, expected):
    assert url_value(4, url) == expected


@pytest.mark.parametrize("url,expected", [
    ("http://secure-paypal.com/", -1),
    ("http://sub-domain.example.com/", 1),   # dash outside the registered domain
    ("http://example.com/", 1),
])
def test_dash_in_domain(url, expected):
    assert url_value(5, url) == expected


@pytest.mark.parametrize("url,expected", [
    ("http://example.com/", 1),
    ("http://www.example.com/", 1),
    ("http://mail.example.com/", 1),
    ("http://a.b.example.com/", 0),
    ("http://a.b.c.example.com/", -1),
    ("http://paypal.com.verify.badhost.ru/", -1),
])
def test_subdomain_count(url, expected):
    assert url_value(6, url) == expected


@pytest.mark.parametrize("url,expected", [
    ("http://https-login.example.com/", -1),
    ("http://appleid-https-secure.com/", -1),
    ("https://example.com/", 1),              # scheme itself does not count
    ("https://example.com/?https=1", 1),      # nor query text
])
def test_https_token(url, expected):
    assert url_value(9, url) == expected


def test_url_only_slots_ignore_page_and_evidence():
    url = "http://a.b.c.https-example.com//x@y"
    benign_page = PageArtifacts(url, url, b"<a href='#'>x</a>" * 30, (url,), "ok")
    rich_evidence = ExternalEvidence(
        whois=WhoisRecord(True), dns_resolved=True, rank_listed=True,
        traffic_rank=1, google_indexed=True, in_phish_reports=True,
    )
    bare = extract_all(url, PageArtifacts.unfetched(url), ExternalEvidence.unknown())
    rich = extract_all(url, benign_page, rich_evidence)
    for slot in (0, 1, 2, 3, 4, 5, 6, 9):
        assert bare.values[slot] == rich.values[slot]
        assert bare.provenance[slot] == "url-derived"


def test_unparseable_urls_raise():
    for bad in ("", "   ", "http://", "http://[::1"):
        with pytest.raises(UrlError):
            parse_url(bad)


def test_parse_url_defaults_scheme():
    parts = parse_url("example.com/path")
    assert parts.scheme == "http"
    assert parts.host == "example.com"
    assert features.FEATURE_NAMES[0] == "ip_in_host"
