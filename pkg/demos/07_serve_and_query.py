#!/usr/bin/env python3
"""Start the detection service against the fixture archive, query it the way
the browser extension does, then shut it down."""

import requests

from nophish import (
    ServiceConfig,
    VerdictPolicy,
    load_model,
    make_fixture_providers,
    serve,
)

model = load_model("data/models/forest-default.model.json.gz")
providers = make_fixture_providers("fixtures")
server = serve(ServiceConfig(port=0, policy=VerdictPolicy()), model, providers,
               background=True)
base = f"http://127.0.0.1:{server.port}"
print("serving at", base)

try:
    print("health:", requests.get(f"{base}/health", timeout=5).json())
    for url in ("https://www.python.org/downloads/",
                "http://chase-bank-online.top/auth"):
        body = requests.post(f"{base}/detectphishing", json={"url": url},
                             timeout=5).json()
        print(f"{body['verdict']:>9}  p={body['phishing_probability']:.2f}  {url}")
    bad = requests.post(f"{base}/detectphishing", json={"uri": "oops"}, timeout=5)
    print("malformed request ->", bad.status_code, bad.json())
finally:
    server.shutdown()
    server.server_close()
    print("stopped")
