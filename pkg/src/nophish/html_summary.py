"""Tolerant single-pass HTML scan collecting what the content features need.

Phishing pages are routinely malformed, so the scan is built on the
non-validating ``html.parser`` and must never abort: any internal parser
blow-up is swallowed and whatever was collected up to that point is kept
(``parse_error`` flags the salvage).
"""

from dataclasses import dataclass, field
from html.parser import HTMLParser

_OBJECT_TAGS = {
    "img": "src",
    "video": "src",
    "audio": "src",
    "source": "src",
    "embed": "src",
    "object": "data",
    "track": "src",
}


@dataclass
class HtmlSummary:
    anchors: list = field(default_factory=list)        # href values ('' when absent)
    object_urls: list = field(default_factory=list)    # img/video/audio/... sources
    tag_link_urls: list = field(default_factory=list)  # script src, link href, url-ish meta content
    form_actions: list = field(default_factory=list)   # action values ('' when absent)
    favicon_href: str | None = None
    iframe_borders: list = field(default_factory=list)  # frameborder attr per iframe (None when absent)
    mailto_present: bool = False
    mail_call_present: bool = False
    parse_error: bool = False


class _Collector(HTMLParser):
    def __init__(self, summary: HtmlSummary):
        super().__init__(convert_charrefs=True)
        self.s = summary

    def handle_starttag(self, tag, attrs):
        a = {k.lower(): (v if v is not None else "") for k, v in attrs}
        s = self.s
        if tag == "a":
            s.anchors.append(a.get("href", ""))
        elif tag in _OBJECT_TAGS:
            src = a.get(_OBJECT_TAGS[tag], "")
            if src:
                s.object_urls.append(src)
        elif tag == "script":
            if a.get("src"):
                s.tag_link_urls.append(a["src"])
        elif tag == "link":
            href = a.get("href", "")
            if href:
                s.tag_link_urls.append(href)
            rel = a.get("rel", "").lower()
            if "icon" in rel and href and s.favicon_href is None:
                s.favicon_href = href
        elif tag == "meta":
            content = a.get("content", "").strip()
            if content.lower().startswith(("http://", "https://", "//")):
                s.tag_link_urls.append(content)
        elif tag == "form":
            action = a.get("action", "")
            s.form_actions.append(action)
            if action.strip().lower().startswith("mailto:"):
                s.mailto_present = True
        elif tag == "iframe":
            s.iframe_borders.append(a.get("frameborder"))

    handle_startendtag = handle_starttag

    def error(self, message):  # pragma: no cover - py<3.10 compatibility hook
        self.s.parse_error = True


def summarize(raw_html) -> HtmlSummary:
    """Scan HTML (bytes or str); never raises."""
    if isinstance(raw_html, bytes):
        text = raw_html.decode("utf-8", errors="replace")
    else:
        text = raw_html or ""
    summary = HtmlSummary()
    low = text.lower()
    summary.mailto_present = "mailto:" in low
    summary.mail_call_present = "mail(" in low
    parser = _Collector(summary)
    try:
        parser.feed(text)
        parser.close()
    except Exception:
        summary.parse_error = True
    return summary
