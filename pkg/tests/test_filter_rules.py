"""Line classification and pattern tokenization checks."""

import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from breakcheck.filters import FilterKind, parse_hosts_line, parse_line


def ref_tokenize(body: str):
    """Reference tokenizer: regex split, built independently of the parser."""
    out = []
    for piece in re.findall(r"\*+|\^|[^*^]+", body):
        if piece.startswith("*"):
            out.append(("*",))
        elif piece == "^":
            out.append(("^",))
        else:
            out.append(("lit", piece.lower()))
    return tuple(out)


def ref_anchors(text: str):
    """(domain, start, end) anchors plus the stripped body."""
    end = text.endswith("|")
    if end:
        text = text[:-1]
    if text.startswith("||"):
        return True, False, end, text[2:]
    if text.startswith("|"):
        return False, True, end, text[1:]
    return False, False, end, text


CANONICAL_RULES = [
    "||ads.example.com^",
    "||ads.example.com^$image,third-party",
    "||cdn.site.net^*/assets/",
    "|http://tracker.com/pixel",
    "|http://exact.com/path|",
    "/banner/img/",
    "/pixel.gif|",
    "adsense",
    "ad*sense",
    "track**click",
    "banner^",
    "^promo^",
    "||a.com/*/track^",
    "||b.org^$script",
    "||c.org^$~image",
    "||d.org^$domain=x.com|~y.com",
    "||e.org^$xmlhttprequest,subdocument",
    "||f.org^$media,stylesheet,other",
    "@@||g.org^$script",
    "||MixedCase.com/Path$match-case",
]


@pytest.mark.parametrize("text", CANONICAL_RULES)
def test_tokenization_matches_reference(text):
    rule = parse_line(text)
    assert rule.kind in (FilterKind.BLOCK, FilterKind.EXCEPTION)
    body = text[2:] if text.startswith("@@") else text
    body = body.split("$")[0]
    dom, start, end, stripped = ref_anchors(body)
    expected = ref_tokenize(stripped)
    if rule.options.match_case:
        # reference lowercases; match-case rules keep original casing
        expected = tuple(
            t if t[0] != "lit" else ("lit", piece)
            for t, piece in zip(expected, re.findall(r"\*+|\^|[^*^]+", stripped))
        )
    assert rule.pattern == expected
    assert (rule.anchor_domain, rule.anchor_start, rule.anchor_end) == (dom, start, end)


def test_canonical_rule_options():
    rule = parse_line("||ads.example.com^$image,third-party")
    assert rule.kind == FilterKind.BLOCK
    assert rule.options.resource_types == frozenset({"image"})
    assert rule.options.party == "third_party"

    rule = parse_line("||d.org^$domain=x.com|~y.com")
    assert rule.options.domains_include == frozenset({"x.com"})
    assert rule.options.domains_exclude == frozenset({"y.com"})

    rule = parse_line("||c.org^$~image")
    assert "image" not in rule.options.resource_types
    assert "script" in rule.options.resource_types

    rule = parse_line("@@||g.org^$script")
    assert rule.kind == FilterKind.EXCEPTION


def test_comment_classification():
    assert parse_line("! Title: EasyList").kind == FilterKind.COMMENT
    assert parse_line("[Adblock Plus 2.0]").kind == FilterKind.COMMENT
    assert parse_line("!###").kind == FilterKind.COMMENT


def test_cosmetic_classification():
    assert parse_line("##.ad-banner").kind == FilterKind.COSMETIC_UNSUPPORTED
    assert parse_line("example.com##.ad").kind == FilterKind.COSMETIC_UNSUPPORTED
    assert parse_line("example.com#@#.ad").kind == FilterKind.COSMETIC_UNSUPPORTED
    assert parse_line("example.com#?#.ad:-abp-has(img)").kind == FilterKind.COSMETIC_UNSUPPORTED


def test_unsupported_constructs_are_invalid():
    assert parse_line("").kind == FilterKind.INVALID
    assert parse_line("   ").kind == FilterKind.INVALID
    assert parse_line("/adv[0-9]+/$image").kind == FilterKind.INVALID  # bad option wins
    assert parse_line("/^https?:.*banner/").kind == FilterKind.INVALID  # regex rule
    assert parse_line("||x.com^$redirect=noop.js").kind == FilterKind.INVALID
    assert parse_line("||x.com^$csp=script-src 'none'").kind == FilterKind.INVALID
    assert parse_line("||x.com^$ping").kind == FilterKind.INVALID
    assert parse_line("||x.com^$domain=a.com|~a.com").kind == FilterKind.INVALID
    assert parse_line("@@").kind == FilterKind.INVALID


def test_hosts_file_ingestion():
    rule = parse_hosts_line("127.0.0.1 ads.tracker.example")
    assert rule.kind == FilterKind.BLOCK
    assert rule.anchor_domain
    assert rule.pattern == (("lit", "ads.tracker.example"), ("^",))
    assert parse_hosts_line("# comment").kind == FilterKind.COMMENT
    assert parse_hosts_line("127.0.0.1 localhost").kind == FilterKind.COMMENT
    assert parse_hosts_line("garbage").kind == FilterKind.INVALID


@settings(max_examples=400)
@given(st.text(max_size=120))
def test_parse_line_is_total(line):
    rule = parse_line(line)
    assert rule.kind in FilterKind
    assert rule.raw_text == line.rstrip("\r\n")
