"""Scan orchestration and the HTTP verdict service.

One scan runs fetch -> evidence -> features -> classify -> verdict. The
three-zone policy: phishing probability >= 0.5 is dangerous; the band from
``warn_threshold`` (default 0.35) up to 0.5 is a warning ("looks safe but
shows questionable signs"); below is safe. An optional override promotes a
scan to at least warning when enough individual features failed.

The service is a plain threaded HTTP/1.1 JSON API:

    POST /detectphishing   body {"url": "<string>"}  -> ScanReport JSON
    GET  /health           -> {"status": "ok", "model_id": ...}
    GET  /version          -> {"version": ..., "algorithm": ..., "model_id": ...}

The scanned page's HTML stays in-process; requests are isolated (a failing
scan produces a 4xx/5xx for that request only). CORS is restricted to
browser-extension origins unless configured otherwise.
"""

import json
import logging
import threading
import time
from dataclasses import dataclass, field
from fnmatch import fnmatch
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import __version__
from .config import ENV_POLICY_WARN, env_or
from .errors import ConfigError, UrlError
from .evidence import PageArtifacts
from .features import FEATURE_NAMES, extract_all
from .probe import ProviderSet, gather_evidence

log = logging.getLogger("nophish.service")

_STATUS_BY_VALUE = {1: "pass", 0: "suspicious", -1: "fail"}


@dataclass(frozen=True)
class VerdictPolicy:
    danger_threshold: float = 0.5
    warn_threshold: float = 0.35
    min_fail_override: int | None = None  # >=k failed features force a warning

    def __post_init__(self):
        if not 0.0 < self.warn_threshold < self.danger_threshold:
            raise ConfigError(
                f"need 0 < warn_threshold ({self.warn_threshold}) < "
                f"danger_threshold ({self.danger_threshold})"
            )

    @staticmethod
    def from_env() -> "VerdictPolicy":
        warn = env_or(ENV_POLICY_WARN)
        return VerdictPolicy(warn_threshold=float(warn)) if warn else VerdictPolicy()


@dataclass
class ScanReport:
    url: str
    verdict: str
    phishing_probability: float
    features: list            # 22 entries {id, name, value, status}
    model_id: str
    evidence_provenance: dict  # provider -> live|fixture|stub|unknown
    timing_ms: float
    degraded: bool = False
    fetch_status: str = "ok"
    final_url: str = ""

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "verdict": self.verdict,
            "phishing_probability": self.phishing_probability,
            "features": self.features,
            "model_id": self.model_id,
            "evidence_provenance": self.evidence_provenance,
            "timing_ms": self.timing_ms,
            "degraded": self.degraded,
            "fetch_status": self.fetch_status,
            "final_url": self.final_url,
        }


def verdict_for(probability: float, n_failed: int, policy: VerdictPolicy) -> str:
    if probability >= policy.danger_threshold:
        return "dangerous"
    if probability >= policy.warn_threshold:
        return "warning"
    if policy.min_fail_override is not None and n_failed >= policy.min_fail_override:
        return "warning"
    return "safe"


def scan(url, model, providers: ProviderSet, policy: VerdictPolicy | None = None,
         thresholds=None) -> ScanReport:
    """Full-pipeline scan of one URL. Raises UrlError for unparseable URLs
    (the HTTP layer maps that to a 400); an unreachable page degrades to a
    URL+evidence-only scan instead of failing."""
    policy = policy or VerdictPolicy()
    started = time.perf_counter()

    page = providers.page_fetcher.fetch(url)
    if page is None:
        page = PageArtifacts.unfetched(url)
    ev = gather_evidence(url, providers)
    vector = extract_all(url, page, ev, thresholds=thresholds)

    proba = float(model.predict_proba([vector.as_row()])[0])
    feature_rows = [
        {
            "id": i,
            "name": FEATURE_NAMES[i],
            "value": int(vector.values[i]),
            "status": _STATUS_BY_VALUE[int(vector.values[i])],
        }
        for i in range(len(FEATURE_NAMES))
    ]
    n_failed = sum(1 for row in feature_rows if row["status"] == "fail")
    provenance = dict(ev.provenance)
    provenance["page"] = providers.page_fetcher.mode if page.ok else "unknown"

    return ScanReport(
        url=url,
        verdict=verdict_for(proba, n_failed, policy),
        phishing_probability=proba,
        features=feature_rows,
        model_id=getattr(model, "model_id", "unsaved"),
        evidence_provenance=provenance,
        timing_ms=(time.perf_counter() - started) * 1000.0,
        degraded=not page.ok,
        fetch_status=page.fetch_status,
        final_url=page.final_url,
    )


@dataclass
class ServiceConfig:
    port: int = 3000
    host: str = "127.0.0.1"
    policy: VerdictPolicy = field(default_factory=VerdictPolicy)
    allowed_origins: tuple = ("chrome-extension://*", "moz-extension://*")
    max_request_bytes: int = 65536


class _Handler(BaseHTTPRequestHandler):
    server_version = "nophish"
    protocol_version = "HTTP/1.1"

    # the server object carries model/providers/config
    def _send_json(self, status: int, payload: dict):
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(body)

    def _send_cors(self):
        origin = self.headers.get("Origin")
        if not origin:
            return
        for pattern in self.server.config.allowed_origins:
            if fnmatch(origin, pattern):
                self.send_header("Access-Control-Allow-Origin", origin)
                self.send_header("Vary", "Origin")
                return

    def do_OPTIONS(self):
        self.send_response(204)
        self._send_cors()
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            self._send_json(200, {"status": "ok", "model_id": self.server.model_id})
        elif self.path == "/version":
            self._send_json(200, {
                "version": __version__,
                "algorithm": self.server.model.algorithm,
                "model_id": self.server.model_id,
            })
        else:
            self._send_json(404, {"error": f"no such endpoint: {self.path}"})

    def do_POST(self):
        if self.path != "/detectphishing":
            self._send_json(404, {"error": f"no such endpoint: {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            self._send_json(400, {"error": "bad Content-Length"})
            return
        if length <= 0 or length > self.server.config.max_request_bytes:
            self._send_json(400, {"error": "request body missing or too large"})
            return
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._send_json(400, {"error": "request body is not valid JSON"})
            return
        if not isinstance(payload, dict) or not isinstance(payload.get("url"), str):
            self._send_json(400, {"error": 'request body must be {"url": "<string>"}'})
            return
        try:
            report = scan(
                payload["url"], self.server.model, self.server.providers,
                policy=self.server.config.policy,
            )
        except UrlError as exc:
            self._send_json(400, {"error": str(exc)})
            return
        except Exception:
            log.exception("scan failed for %r", payload.get("url"))
            self._send_json(500, {"error": "internal error during scan"})
            return
        self._send_json(200, report.to_dict())

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)


class NoPhishServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, config: ServiceConfig, model, providers: ProviderSet):
        self.config = config
        self.model = model
        self.providers = providers
        self.model_id = getattr(model, "model_id", "unsaved")
        super().__init__((config.host, config.port), _Handler)

    @property
    def port(self) -> int:
        return self.server_address[1]


def serve(config: ServiceConfig, model, providers: ProviderSet,
          background: bool = False) -> NoPhishServer:
    """Bind and start serving. ``background=True`` runs the accept loop in a
    daemon thread and returns the server (tests use this); otherwise this
    blocks until ``shutdown()``. A busy port raises OSError at bind time."""
    server = NoPhishServer(config, model, providers)
    if background:
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        return server
    try:
        server.serve_forever()
    finally:
        server.server_close()
    return server
