"""Detection service: verdict policy arithmetic, degraded scans, the live
HTTP surface (schema validity, error bodies, CORS, health), and 50-way
concurrency against single-request golden reports."""

import json
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import pytest
import requests

from nophish.errors import ConfigError, UrlError
from nophish.probe import make_fixture_providers, make_stub_providers
from nophish.service import (
    ScanReport,
    ServiceConfig,
    VerdictPolicy,
    scan,
    serve,
    verdict_for,
)

from conftest import API_SCHEMA


@pytest.fixture(scope="module")
def schema():
    with open(API_SCHEMA, encoding="utf-8") as f:
        return json.load(f)


class _ConstantModel:
    algorithm = "forest"
    model_id = "const-model"

    def __init__(self, proba):
        self.proba = proba

    def predict_proba(self, X):
        return [self.proba] * len(X)


def test_policy_validation():
    with pytest.raises(ConfigError):
        VerdictPolicy(warn_threshold=0.6)
    with pytest.raises(ConfigError):
        VerdictPolicy(warn_threshold=0.0)
    VerdictPolicy(warn_threshold=0.49)


def test_verdict_thresholds():
    policy = VerdictPolicy()
    assert verdict_for(0.02, 0, policy) == "safe"
    assert verdict_for(0.42, 0, policy) == "warning"
    assert verdict_for(0.35, 0, policy) == "warning"
    assert verdict_for(0.5, 0, policy) == "dangerous"
    assert verdict_for(1.0, 0, policy) == "dangerous"


def test_verdict_step_function_monotone():
    policy = VerdictPolicy()
    rank = {"safe": 0, "warning": 1, "dangerous": 2}
    last = 0
    for i in range(0, 1001):
        p = i / 1000.0
        r = rank[verdict_for(p, 0, policy)]
        assert r >= last
        last = r


def test_fail_count_override_promotes_to_warning():
    policy = VerdictPolicy(min_fail_override=3)
    assert verdict_for(0.1, 2, policy) == "safe"
    assert verdict_for(0.1, 3, policy) == "warning"
    assert verdict_for(0.9, 22, policy) == "dangerous"  # never demotes


def test_scan_stub_benign_is_safe():
    report = scan("https://example.com/", _ConstantModel(0.02), make_stub_providers())
    assert report.verdict == "safe"
    assert not report.degraded
    assert len(report.features) == 22
    assert all(f["status"] == "pass" for f in report.features)


def test_scan_warning_band():
    report = scan("https://example.com/", _ConstantModel(0.42), make_stub_providers())
    assert report.verdict == "warning"


def test_scan_degraded_on_unreachable_page(fixtures_dir):
    providers = make_fixture_providers(fixtures_dir)
    report = scan("https://not-archived.example/", _ConstantModel(0.1), providers)
    assert report.degraded
    assert report.fetch_status == "error:no-fixture"
    content_slots = {8, 10, 11, 12, 13, 14, 16}
    for f in report.features:
        if f["id"] in content_slots:
            assert f["value"] == 1  # empty-set rule fills content slots


def test_scan_unparseable_url_raises():
    with pytest.raises(UrlError):
        scan("http://", _ConstantModel(0.1), make_stub_providers())


def test_golden_scan_phishing_fixture(shipped_model, fixture_providers):
    url = "http://secure-paypal-verification.com/login"
    report = scan(url, shipped_model, fixture_providers)
    assert report.verdict == "dangerous"
    anchor = next(f for f in report.features if f["id"] == 11)
    assert anchor["status"] == "fail"
    assert report.phishing_probability >= 0.5
    assert report.evidence_provenance["whois"] == "fixture"


@pytest.fixture(scope="module")
def server(shipped_model, fixture_providers):
    config = ServiceConfig(port=0, policy=VerdictPolicy())
    srv = serve(config, shipped_model, fixture_providers, background=True)
    yield srv, f"http://127.0.0.1:{srv.port}"
    srv.shutdown()
    srv.server_close()


def test_http_scan_schema_valid(server, schema):
    _, base = server
    response = requests.post(f"{base}/detectphishing",
                             json={"url": "https://www.wikipedia.org/"}, timeout=10)
    assert response.status_code == 200
    body = response.json()
    jsonschema.validate(body, schema)
    assert body["verdict"] == "safe"
    assert body["model_id"].startswith("forest-v1-")


def test_http_scan_latency_under_bound(server):
    _, base = server
    import time
    started = time.perf_counter()
    response = requests.post(f"{base}/detectphishing",
                             json={"url": "https://www.python.org/downloads/"}, timeout=10)
    elapsed_ms = (time.perf_counter() - started) * 1000
    assert response.status_code == 200
    assert elapsed_ms < 500, f"scan took {elapsed_ms:.0f} ms"


def test_http_malformed_json_is_400(server):
    _, base = server
    response = requests.post(f"{base}/detectphishing", data=b"{not json",
                             headers={"Content-Type": "application/json"}, timeout=10)
    assert response.status_code == 400
    assert "error" in response.json()


def test_http_wrong_body_shape_is_400(server):
    _, base = server
    for payload in ({}, {"uri": "x"}, {"url": 5}, [1, 2]):
        response = requests.post(f"{base}/detectphishing", json=payload, timeout=10)
        assert response.status_code == 400
        assert "error" in response.json()


def test_http_bad_url_is_400(server):
    _, base = server
    response = requests.post(f"{base}/detectphishing", json={"url": "http://"},
                             timeout=10)
    assert response.status_code == 400


def test_http_health_and_version(server, shipped_model):
    _, base = server
    health = requests.get(f"{base}/health", timeout=10).json()
    assert health == {"status": "ok", "model_id": shipped_model.model_id}
    version = requests.get(f"{base}/version", timeout=10).json()
    assert version["algorithm"] == "forest"
    assert version["model_id"] == shipped_model.model_id


def test_http_unknown_endpoint_404(server):
    _, base = server
    assert requests.get(f"{base}/nope", timeout=10).status_code == 404
    assert requests.post(f"{base}/nope", json={}, timeout=10).status_code == 404


def test_cors_allows_extension_origin_only(server):
    _, base = server
    ext = requests.options(f"{base}/detectphishing",
                           headers={"Origin": "chrome-extension://abcdef"}, timeout=10)
    assert ext.headers.get("Access-Control-Allow-Origin") == "chrome-extension://abcdef"
    web = requests.options(f"{base}/detectphishing",
                           headers={"Origin": "https://evil.example"}, timeout=10)
    assert "Access-Control-Allow-Origin" not in web.headers


def test_concurrent_scans_match_single_request_goldens(server, schema):
    _, base = server
    urls = [
        "https://www.google.com/",
        "http://secure-paypal-verification.com/login",
        "http://bit.ly/2xWinBank",
        "https://www.bbc.co.uk/news",
        "http://dhl-parcel-track.info/track?id=88172",
    ]
    goldens = {}
    for url in urls:
        body = requests.post(f"{base}/detectphishing", json={"url": url},
                             timeout=10).json()
        body.pop("timing_ms")
        goldens[url] = body

    def one(i):
        url = urls[i % len(urls)]
        response = requests.post(f"{base}/detectphishing", json={"url": url},
                                 timeout=30)
        assert response.status_code == 200
        body = response.json()
        jsonschema.validate(body, schema)
        body.pop("timing_ms")
        return url, body

    with ThreadPoolExecutor(max_workers=50) as pool:
        results = list(pool.map(one, range(50)))
    for url, body in results:
        assert body == goldens[url], f"cross-request divergence for {url}"


def test_report_round_trips_to_dict(shipped_model, fixture_providers, schema):
    report = scan("https://www.mozilla.org/en-US/firefox/", shipped_model,
                  fixture_providers)
    assert isinstance(report, ScanReport)
    jsonschema.validate(report.to_dict(), schema)
