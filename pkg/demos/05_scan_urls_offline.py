#!/usr/bin/env python3
"""Scan archived pages end to end: fetch (from the fixture archive), gather
WHOIS/DNS/rank/index/report evidence, extract the 22 features, classify with
the shipped model, and apply the three-zone verdict policy."""

from nophish import load_model, make_fixture_providers, scan

model = load_model("data/models/forest-default.model.json.gz")
providers = make_fixture_providers("fixtures")

urls = [
    "https://www.wikipedia.org/",
    "https://www.glenvale-pottery.com/shop",
    "http://bit.ly/2xWinBank",
    "http://secure-paypal-verification.com/login",
    "http://203.0.113.88/paypal/webscr/login.html",
]

for url in urls:
    report = scan(url, model, providers)
    failed = [f["name"] for f in report.features if f["status"] == "fail"]
    print(f"{report.verdict.upper():>9}  p={report.phishing_probability:.2f}  {url}")
    if failed:
        print(f"           failing checks: {', '.join(failed)}")
