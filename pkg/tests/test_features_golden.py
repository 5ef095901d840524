"""Golden-vector checks of the whole extractor against an independent oracle.

The oracle is a deliberately separate implementation: regex scans over the
raw archived HTML, its own externality logic with a minimal suffix table,
its own threshold arithmetic. Golden vectors are frozen literals; both the
oracle and the production extractor must reproduce them on the archived
fixture corpus entries used here.
"""

import os
import re
from urllib.parse import urlsplit

from nophish.features import extract_all
from nophish.probe import gather_evidence


# --- independent oracle -------------------------------------------------------

_MULTI_SUFFIXES = ("co.uk", "org.uk", "ac.uk", "gov.uk", "github.io")


def o_registered(host):
    host = host.lower().strip(".")
    if re.fullmatch(r"[0-9.]+|\[[0-9a-f:]+\]|0x[0-9a-fx.]+", host):
        return None
    labels = host.split(".")
    for suffix in _MULTI_SUFFIXES:
        if host.endswith("." + suffix):
            keep = suffix.count(".") + 2
            return ".".join(labels[-keep:])
        if host == suffix:
            return None
    return ".".join(labels[-2:]) if len(labels) >= 2 else None


def o_external(href, page_host):
    href = href.strip()
    if not re.match(r"^(https?:)?//", href, re.I):
        return False
    host = urlsplit(href if href.lower().startswith("http") else "http:" + href).hostname or ""
    a, b = o_registered(host), o_registered(page_host)
    if a is None or b is None:
        return host.lower() != page_host.lower()
    return a != b


def o_ratio(flagged, total, low, high):
    if total == 0:
        return 1
    r = flagged / total
    return 1 if r < low else (0 if r <= high else -1)


def oracle_features(url, html, ev, now):
    host = (urlsplit(url).hostname or "").lower()
    rd = o_registered(host)
    v = [0] * 22

    v[0] = -1 if re.fullmatch(r"[0-9.]+|0x[0-9a-fx.]+|\d+", host) or ":" in host else 1
    v[1] = 1 if len(url) < 54 else (0 if len(url) <= 75 else -1)
    v[2] = -1 if rd in ("bit.ly", "tinyurl.com", "t.co", "goo.gl", "is.gd") else 1
    v[3] = -1 if "@" in url else 1
    after_scheme = url.split("://", 1)[1] if "://" in url else url[1:]
    v[4] = -1 if "//" in after_scheme else 1
    v[5] = -1 if rd and "-" in rd else 1
    subs = host[: -(len(rd) + 1)].split(".") if rd and host != rd else []
    subs = [s for s in subs if s]
    if subs and subs[0] == "www":
        subs = subs[1:]
    v[6] = 1 if len(subs) <= 1 else (0 if len(subs) == 2 else -1)
    v[9] = -1 if "https" in host else 1

    anchors = re.findall(r"<a\b[^>]*>", html, re.I)
    hrefs = [m.group(1) if (m := re.search(r'href=["\']?([^"\'> ]*)', a, re.I)) else "" for a in anchors]
    flagged = sum(
        1 for h in hrefs
        if h == "" or h.startswith("#") or h.lower().startswith("javascript:") or o_external(h, host)
    )
    v[11] = o_ratio(flagged, len(hrefs), 0.31, 0.67)

    objs = re.findall(r"<(?:img|video|audio|source|embed|track)\b[^>]*?src=[\"']?([^\"'> ]+)", html, re.I)
    objs += re.findall(r"<object\b[^>]*?data=[\"']?([^\"'> ]+)", html, re.I)
    v[10] = o_ratio(sum(1 for u in objs if o_external(u, host)), len(objs), 0.22, 0.61)

    tags = re.findall(r"<script\b[^>]*?src=[\"']?([^\"'> ]+)", html, re.I)
    tags += re.findall(r"<link\b[^>]*?href=[\"']?([^\"'> ]+)", html, re.I)
    tags += [u for u in re.findall(r"<meta\b[^>]*?content=[\"']?([^\"'>]+)", html, re.I)
             if u.lower().startswith(("http://", "https://", "//"))]
    v[12] = o_ratio(sum(1 for u in tags if o_external(u, host)), len(tags), 0.17, 0.81)

    actions = re.findall(r"<form\b[^>]*>", html, re.I)
    acts = [m.group(1) if (m := re.search(r'action=["\']?([^"\'> ]*)', a, re.I)) else "" for a in actions]
    if not acts:
        v[13] = 1
    elif any(x.strip().lower() in ("", "about:blank") for x in acts):
        v[13] = -1
    elif any(o_external(x, host) for x in acts):
        v[13] = 0
    else:
        v[13] = 1

    v[14] = -1 if ("mailto:" in html.lower() or "mail(" in html.lower()) else 1

    icon = re.search(r"<link\b[^>]*rel=[\"']?[^\"'>]*icon[^\"'>]*[\"']?[^>]*>", html, re.I)
    if icon:
        href = re.search(r'href=["\']?([^"\'> ]+)', icon.group(0), re.I)
        v[8] = -1 if href and o_external(href.group(1), host) else 1
    else:
        v[8] = 1

    iframes = re.findall(r"<iframe\b[^>]*>", html, re.I)
    if not iframes:
        v[16] = 1
    else:
        v[16] = 1
        for tag in iframes:
            m = re.search(r'frameborder=["\']?([^"\'> ]*)', tag, re.I)
            if m is None or m.group(1).strip().lower() in ("", "0", "no", "none"):
                v[16] = -1

    w = ev.whois
    if w is None or w.expires is None:
        v[7] = 0
    else:
        v[7] = -1 if (w.expires - now).days <= 365 else 1
    if w is None:
        v[15] = 0
    elif not w.registrar_found:
        v[15] = -1
    else:
        target = rd or host
        label = target.split(".")[0]
        hay = " ".join(w.identity_strings).lower()
        ns_match = any(o_registered(ns) == target for ns in w.nameservers)
        v[15] = 1 if (target in hay or (len(label) >= 3 and label in hay) or ns_match) else -1
    if w is None or w.created is None:
        v[17] = 0
    else:
        v[17] = 1 if (now - w.created).days >= 183 else -1
    v[18] = 0 if ev.dns_resolved is None else (1 if ev.dns_resolved else -1)
    if ev.rank_listed is None:
        v[19] = 0
    elif not ev.rank_listed:
        v[19] = -1
    else:
        v[19] = 1 if (ev.traffic_rank or 10**9) <= 100000 else 0
    v[20] = 0 if ev.google_indexed is None else (1 if ev.google_indexed else -1)
    v[21] = 0 if ev.in_phish_reports is None else (-1 if ev.in_phish_reports else 1)
    return v


# --- golden assertions ----------------------------------------------------------

GOLDEN = {
    "http://secure-paypal-verification.com/login": [
        1, 1, 1, 1, 1, -1, 1, -1, -1, 1, -1, -1, -1, -1, 1, -1, 1, -1, 1, -1, -1, -1,
    ],
    "https://www.bbc.co.uk/news": [
        1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
    ],
    "http://paypal.com.account-verify.badsecure.ru/webscr": [
        1, 1, 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 0, 1, -1, -1, -1, 1, -1, -1, -1,
    ],
}


def test_extractor_matches_independent_oracle_on_archived_corpus(fixtures_dir, fixture_providers):
    providers = fixture_providers
    now = providers.clock()
    for url, frozen in GOLDEN.items():
        page = providers.page_fetcher.fetch(url)
        assert page.ok, url
        ev = gather_evidence(url, providers)
        got = list(extract_all(url, page, ev).values)
        expected = oracle_features(url, page.raw_html.decode("utf-8"), ev, now)
        assert got == expected, f"{url}: pipeline {got} != oracle {expected}"
        assert got == frozen, f"{url}: pipeline {got} != frozen {frozen}"


def test_whole_corpus_extractor_agrees_with_oracle(fixtures_dir, fixture_providers):
    import csv
    providers = fixture_providers
    now = providers.clock()
    with open(os.path.join(fixtures_dir, "corpus.csv"), newline="") as f:
        urls = [row["url"] for row in csv.DictReader(f)]
    assert len(urls) == 27
    mismatches = []
    for url in urls:
        page = providers.page_fetcher.fetch(url)
        ev = gather_evidence(url, providers)
        got = list(extract_all(url, page, ev).values)
        expected = oracle_features(url, page.raw_html.decode("utf-8"), ev, now)
        if got != expected:
            mismatches.append((url, got, expected))
    assert not mismatches, mismatches[:3]
