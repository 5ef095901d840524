"""Page fetching with hard policy caps, plus deterministic offline fetchers.

The live fetcher follows redirects manually so the policy caps (body size,
redirect count, scheme restriction) are enforced here and not by the HTTP
library. HTTP error statuses never raise; they land in ``fetch_status``.
"""

import json
import os
from dataclasses import dataclass
from urllib.parse import urljoin, urlsplit

import requests

from ..errors import ConfigError
from ..evidence import FETCH_OK, FETCH_REDIRECT_LIMIT, FETCH_TIMEOUT, PageArtifacts


@dataclass(frozen=True)
class FetchPolicy:
    timeout_ms: int = 8000
    max_body: int = 1_048_576
    max_redirects: int = 5
    user_agent: str = "nophish/0.1"

    def __post_init__(self):
        if self.timeout_ms <= 0:
            raise ConfigError("fetch timeout must be positive")
        if self.max_body <= 0:
            raise ConfigError("max_body must be positive")
        if self.max_redirects < 0:
            raise ConfigError("max_redirects must be >= 0")


def _read_capped(response, max_body: int):
    body = b""
    for chunk in response.iter_content(chunk_size=65536):
        body += chunk
        if len(body) > max_body:
            return body[:max_body], True
    return body, False


class LivePageFetcher:
    mode = "live"

    def __init__(self, policy: FetchPolicy | None = None):
        self.policy = policy or FetchPolicy()

    def fetch(self, url: str) -> PageArtifacts:
        policy = self.policy
        chain = [url]
        current = url
        timeout_s = policy.timeout_ms / 1000.0
        headers = {"User-Agent": policy.user_agent}
        while True:
            try:
                resp = requests.get(
                    current, headers=headers, timeout=timeout_s,
                    allow_redirects=False, stream=True,
                )
            except requests.Timeout:
                return PageArtifacts(url, current, b"", tuple(chain), FETCH_TIMEOUT)
            except requests.RequestException as exc:
                reason = type(exc).__name__.lower()
                return PageArtifacts(url, current, b"", tuple(chain), f"error:{reason}")
            with resp:
                if 300 <= resp.status_code < 400 and resp.headers.get("Location"):
                    target = urljoin(current, resp.headers["Location"])
                    if urlsplit(target).scheme not in ("http", "https"):
                        return PageArtifacts(
                            url, current, b"", tuple(chain), "error:non-http-redirect"
                        )
                    if len(chain) == policy.max_redirects + 1:
                        return PageArtifacts(
                            url, current, b"", tuple(chain), FETCH_REDIRECT_LIMIT
                        )
                    chain.append(target)
                    current = target
                    continue
                try:
                    body, truncated = _read_capped(resp, policy.max_body)
                except requests.Timeout:
                    return PageArtifacts(url, current, b"", tuple(chain), FETCH_TIMEOUT)
                except requests.RequestException as exc:
                    reason = type(exc).__name__.lower()
                    return PageArtifacts(url, current, b"", tuple(chain), f"error:{reason}")
                status = FETCH_OK if resp.status_code < 300 else f"error:{resp.status_code}"
                return PageArtifacts(
                    url, current, body, tuple(chain), status, truncated
                )


class FixturePageFetcher:
    """Serves archived page snapshots from a fixtures directory.

    ``pages.json`` maps exact URLs to either a file path (relative to the
    fixtures dir) or an object {"file": ..., "status": ..., "final_url": ...}.
    Never touches the network; byte-deterministic across runs.
    """

    mode = "fixture"

    def __init__(self, fixtures_dir: str, policy: FetchPolicy | None = None):
        self.root = fixtures_dir
        self.policy = policy or FetchPolicy()
        index_path = os.path.join(fixtures_dir, "pages.json")
        try:
            with open(index_path, encoding="utf-8") as f:
                self.index = json.load(f)
        except FileNotFoundError:
            self.index = {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{index_path}: bad JSON: {exc}") from exc

    def fetch(self, url: str) -> PageArtifacts:
        entry = self.index.get(url)
        if entry is None:
            return PageArtifacts.unfetched(url, "error:no-fixture")
        if isinstance(entry, str):
            entry = {"file": entry}
        status = entry.get("status", FETCH_OK)
        final_url = entry.get("final_url", url)
        body = b""
        truncated = False
        if entry.get("file"):
            path = os.path.join(self.root, entry["file"])
            with open(path, "rb") as f:
                body = f.read(self.policy.max_body + 1)
            if len(body) > self.policy.max_body:
                body, truncated = body[: self.policy.max_body], True
        return PageArtifacts(
            url, final_url, body, tuple(entry.get("redirects", [url])),
            status, truncated,
        )


class StubPageFetcher:
    """Returns one canned document for every URL."""

    mode = "stub"

    def __init__(self, html: bytes = b"<html><head></head><body></body></html>"):
        self.html = html

    def fetch(self, url: str) -> PageArtifacts:
        return PageArtifacts(url, url, self.html, (url,), FETCH_OK)
