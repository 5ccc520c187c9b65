"""EasyList-syntax filter list parsing.

Network rules only: ``||`` domain anchors, ``|`` start/end anchors, ``^``
separators, ``*`` wildcards, and ``$``-suffixed options limited to the seven
resource types, party, ``domain=`` and ``match-case``. Everything else
(cosmetic rules, regex rules, ``$redirect``/``$csp``/... modifiers) is
classified but never matched. Parsing is total: any input line yields exactly
one classified rule and never raises.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union


class FilterKind(enum.Enum):
    BLOCK = "block"
    EXCEPTION = "exception"
    COMMENT = "comment"
    COSMETIC_UNSUPPORTED = "cosmetic_unsupported"
    INVALID = "invalid"


RESOURCE_TYPES = frozenset(
    {"script", "image", "media", "stylesheet", "xmlhttprequest", "subdocument", "other"}
)

PARTY_ANY = "any"
PARTY_THIRD = "third_party"
PARTY_FIRST = "first_party"

_COSMETIC_MARKERS = ("##", "#@#", "#?#")


# Pattern tokens: ("lit", text) literal run, ("*",) wildcard, ("^",) separator.
Token = tuple


@dataclass(frozen=True)
class RuleOptions:
    resource_types: frozenset = frozenset()  # empty means "all types"
    party: str = PARTY_ANY
    domains_include: frozenset = frozenset()
    domains_exclude: frozenset = frozenset()
    match_case: bool = False


@dataclass(frozen=True)
class FilterRule:
    raw_text: str
    kind: FilterKind
    pattern: tuple = ()  # token tuple; empty pattern matches any URL
    anchor_domain: bool = False
    anchor_start: bool = False
    anchor_end: bool = False
    options: Optional[RuleOptions] = None

    @property
    def is_rule(self) -> bool:
        return self.kind in (FilterKind.BLOCK, FilterKind.EXCEPTION)


def _tokenize_pattern(text: str, match_case: bool) -> tuple:
    if not match_case:
        text = text.lower()
    tokens: list[Token] = []
    literal: list[str] = []
    for ch in text:
        if ch == "*":
            if literal:
                tokens.append(("lit", "".join(literal)))
                literal = []
            if not tokens or tokens[-1] != ("*",):  # collapse runs of wildcards
                tokens.append(("*",))
        elif ch == "^":
            if literal:
                tokens.append(("lit", "".join(literal)))
                literal = []
            tokens.append(("^",))
        else:
            literal.append(ch)
    if literal:
        tokens.append(("lit", "".join(literal)))
    return tuple(tokens)


def _parse_options(text: str) -> Optional[RuleOptions]:
    """Parse a ``$``-options tail; None when any option is unsupported."""
    include_types: set[str] = set()
    exclude_types: set[str] = set()
    party = PARTY_ANY
    dom_inc: set[str] = set()
    dom_exc: set[str] = set()
    match_case = False
    for raw_tok in text.split(","):
        tok = raw_tok.strip()
        if not tok:
            return None
        if tok == "third-party":
            party = PARTY_THIRD
        elif tok == "~third-party":
            party = PARTY_FIRST
        elif tok == "match-case":
            match_case = True
        elif tok.startswith("domain="):
            for entry in tok[len("domain=") :].split("|"):
                entry = entry.strip().lower()
                if not entry:
                    return None
                if entry.startswith("~"):
                    dom_exc.add(entry[1:])
                else:
                    dom_inc.add(entry)
        elif tok in RESOURCE_TYPES:
            include_types.add(tok)
        elif tok.startswith("~") and tok[1:] in RESOURCE_TYPES:
            exclude_types.add(tok[1:])
        else:
            return None
    if dom_inc & dom_exc:
        return None
    if include_types:
        types = frozenset(include_types - exclude_types)
        if not types:
            return None
    elif exclude_types:
        types = frozenset(RESOURCE_TYPES - exclude_types)
    else:
        types = frozenset()
    return RuleOptions(
        resource_types=types,
        party=party,
        domains_include=frozenset(dom_inc),
        domains_exclude=frozenset(dom_exc),
        match_case=match_case,
    )


def parse_line(line: str) -> FilterRule:
    """Classify and tokenize one physical filter-list line."""
    raw = line.rstrip("\r\n")
    text = raw.strip()
    if text.startswith("!") or text.startswith("[Adblock"):
        return FilterRule(raw_text=raw, kind=FilterKind.COMMENT)
    if any(marker in text for marker in _COSMETIC_MARKERS):
        return FilterRule(raw_text=raw, kind=FilterKind.COSMETIC_UNSUPPORTED)
    if not text:
        return FilterRule(raw_text=raw, kind=FilterKind.INVALID)

    kind = FilterKind.BLOCK
    body = text
    if body.startswith("@@"):
        kind = FilterKind.EXCEPTION
        body = body[2:]
        if not body:
            return FilterRule(raw_text=raw, kind=FilterKind.INVALID)

    options = RuleOptions()
    if "$" in body:
        body, options_text = body.rsplit("$", 1)
        parsed = _parse_options(options_text)
        if parsed is None:
            return FilterRule(raw_text=raw, kind=FilterKind.INVALID)
        options = parsed

    # Regex rules ("/.../") are out of the supported subset.
    if len(body) > 2 and body.startswith("/") and body.endswith("/"):
        return FilterRule(raw_text=raw, kind=FilterKind.INVALID)

    anchor_domain = anchor_start = anchor_end = False
    if body.endswith("|"):
        anchor_end = True
        body = body[:-1]
    if body.startswith("||"):
        anchor_domain = True
        body = body[2:]
    elif body.startswith("|"):
        anchor_start = True
        body = body[1:]

    return FilterRule(
        raw_text=raw,
        kind=kind,
        pattern=_tokenize_pattern(body, options.match_case),
        anchor_domain=anchor_domain,
        anchor_start=anchor_start,
        anchor_end=anchor_end,
        options=options,
    )


def parse_hosts_line(line: str) -> FilterRule:
    """One hosts-file entry ("127.0.0.1 domain") as a ``||domain^`` rule."""
    text = line.strip()
    if not text or text.startswith("#"):
        return FilterRule(raw_text=line.rstrip("\r\n"), kind=FilterKind.COMMENT)
    parts = text.split()
    if len(parts) < 2:
        return FilterRule(raw_text=line.rstrip("\r\n"), kind=FilterKind.INVALID)
    domain = parts[1].lower()
    if domain in ("localhost", "localhost.localdomain", "broadcasthost"):
        return FilterRule(raw_text=line.rstrip("\r\n"), kind=FilterKind.COMMENT)
    return parse_line("||%s^" % domain)


def parse_lines(lines: Iterable[str], hosts_format: bool = False) -> list[FilterRule]:
    parser = parse_hosts_line if hosts_format else parse_line
    return [parser(line) for line in lines]


def load_list(path: Union[str, Path], hosts_format: bool = False) -> list[FilterRule]:
    """Parse a filter list file (UTF-8, one rule per line)."""
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        return parse_lines(fh, hosts_format=hosts_format)
