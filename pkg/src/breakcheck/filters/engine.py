"""Indexed matching of compiled EasyList network rules against requests.

Semantics: ``||`` anchors at a hostname-label boundary; ``^`` matches one
separator character (anything that is not alphanumeric, ``_``, ``-``, ``.``,
``%``) or the end of the URL; ``*`` matches any span; options constrain by
resource type, party (third-party iff the request's registrable domain differs
from the page's) and domain include/exclude lists. Matching is
case-insensitive unless a rule carries ``match-case``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import psl
from .rules import (
    PARTY_ANY,
    PARTY_FIRST,
    PARTY_THIRD,
    FilterKind,
    FilterRule,
)

DECISION_BLOCKED = "blocked"
DECISION_ALLOWED_BY_EXCEPTION = "allowed_by_exception"
DECISION_NO_MATCH = "no_match"

_SEPARATOR_EXEMPT = set("abcdefghijklmnopqrstuvwxyz0123456789_-.%")
_URL_RE = re.compile(r"^(https?)://([^/?#]+)([^#]*)", re.IGNORECASE)
_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class RequestContext:
    url: str
    origin_host: str  # registrable domain of the page making the request
    resource_type: str = "other"


@dataclass(frozen=True)
class MatchVerdict:
    decision: str
    matched_rule: Optional[FilterRule] = None


class UrlParseError(ValueError):
    pass


def canonicalize_url(url: str) -> str:
    """Lowercase scheme and host, strip fragment, keep path/query as-is."""
    m = _URL_RE.match(url.strip())
    if not m:
        raise UrlParseError("not an absolute http(s) URL: %r" % url)
    scheme, netloc, rest = m.groups()
    return "%s://%s%s" % (scheme.lower(), netloc.lower(), rest)


def _host_span(canonical: str) -> tuple[int, int]:
    start = canonical.index("://") + 3
    end = start
    while end < len(canonical) and canonical[end] not in "/?#:":
        end += 1
    return start, end


def _is_separator(ch: str) -> bool:
    return ch not in _SEPARATOR_EXEMPT


def _match_tokens(tokens: tuple, url: str, pos: int, require_end: bool) -> bool:
    """Match a token tuple against ``url`` starting at ``pos``.

    Iterative with single-wildcard backtracking; ``^`` consumes one separator
    or, at the end of the URL, nothing.
    """
    ti = 0
    star_ti = star_pos = -1
    n = len(url)
    while True:
        if ti == len(tokens):
            if not require_end or pos == n:
                return True
        else:
            tok = tokens[ti]
            if tok[0] == "*":
                star_ti, star_pos = ti, pos
                ti += 1
                continue
            if tok[0] == "^":
                if pos < n and _is_separator(url[pos]):
                    ti += 1
                    pos += 1
                    continue
                if pos == n:
                    ti += 1
                    continue
            else:  # literal
                lit = tok[1]
                if url.startswith(lit, pos):
                    ti += 1
                    pos += len(lit)
                    continue
        if star_ti < 0:
            return False
        star_pos += 1
        if star_pos > n:
            return False
        ti, pos = star_ti + 1, star_pos


def _domain_applies(origin: str, entries: frozenset) -> bool:
    for entry in entries:
        if origin == entry or origin.endswith("." + entry):
            return True
    return False


class CompiledFilterSet:
    """Immutable indexed rule set; ``match`` is a pure function."""

    def __init__(self, rules: list[FilterRule]):
        self.block_rules: list[FilterRule] = []
        self.exception_rules: list[FilterRule] = []
        self.stats = {kind.value: 0 for kind in FilterKind}
        for rule in rules:
            self.stats[rule.kind.value] += 1
            if rule.kind == FilterKind.BLOCK:
                self.block_rules.append(rule)
            elif rule.kind == FilterKind.EXCEPTION:
                self.exception_rules.append(rule)
        self._block_index = _RuleIndex(self.block_rules)
        self._exception_index = _RuleIndex(self.exception_rules)

    def __len__(self) -> int:
        return len(self.block_rules) + len(self.exception_rules)

    def match(self, req: RequestContext) -> MatchVerdict:
        canonical = canonicalize_url(req.url)
        folded = canonical.lower()
        host_start, host_end = _host_span(canonical)
        req_reg = psl.registrable_domain(canonical[host_start:host_end])
        origin_reg = psl.registrable_domain(req.origin_host)
        party = PARTY_FIRST if req_reg == origin_reg else PARTY_THIRD

        blocked_by = self._first_match(
            self._block_index, canonical, folded, host_start, host_end, req, party, origin_reg
        )
        if blocked_by is None:
            return MatchVerdict(DECISION_NO_MATCH)
        excepted_by = self._first_match(
            self._exception_index, canonical, folded, host_start, host_end, req, party, origin_reg
        )
        if excepted_by is not None:
            return MatchVerdict(DECISION_ALLOWED_BY_EXCEPTION, excepted_by)
        return MatchVerdict(DECISION_BLOCKED, blocked_by)

    def _first_match(self, index, canonical, folded, host_start, host_end, req, party, origin_reg):
        for rule in index.candidates(folded):
            if self._rule_matches(rule, canonical, folded, host_start, host_end, req, party, origin_reg):
                return rule
        return None

    @staticmethod
    def _rule_matches(rule, canonical, folded, host_start, host_end, req, party, origin_reg) -> bool:
        opts = rule.options
        if opts.resource_types and req.resource_type not in opts.resource_types:
            return False
        if opts.party == PARTY_THIRD and party != PARTY_THIRD:
            return False
        if opts.party == PARTY_FIRST and party != PARTY_FIRST:
            return False
        if opts.domains_include and not _domain_applies(origin_reg, opts.domains_include):
            return False
        if opts.domains_exclude and _domain_applies(origin_reg, opts.domains_exclude):
            return False

        url = canonical if opts.match_case else folded
        tokens = rule.pattern
        if rule.anchor_domain:
            # Start positions: beginning of host, and after each "." label gap.
            positions = [host_start]
            positions.extend(
                i + 1 for i in range(host_start, host_end) if url[i] == "."
            )
            return any(
                _match_tokens(tokens, url, p, rule.anchor_end) for p in positions
            )
        if rule.anchor_start:
            return _match_tokens(tokens, url, 0, rule.anchor_end)
        # Unanchored: slide over every start offset, seeded on the first
        # literal when there is one.
        if tokens and tokens[0][0] == "lit":
            first = tokens[0][1]
            at = url.find(first)
            while at != -1:
                if _match_tokens(tokens, url, at, rule.anchor_end):
                    return True
                at = url.find(first, at + 1)
            return False
        for p in range(len(url) + 1):
            if _match_tokens(tokens, url, p, rule.anchor_end):
                return True
        return False


class _RuleIndex:
    """Token-bucket index: each rule files under one safe literal token.

    A token is safe when every URL the rule matches must contain it as a
    maximal alphanumeric run, i.e. it is bounded inside the pattern by
    non-alphanumeric characters, separators, or usable anchors. Rules
    without a safe token of length >= 3 go to the catch-all list.
    """

    def __init__(self, rules: list[FilterRule]):
        self._buckets: dict[str, list[int]] = {}
        self._catchall: list[int] = []
        self._rules = rules
        for idx, rule in enumerate(rules):
            key = self._bucket_key(rule)
            if key is None:
                self._catchall.append(idx)
            else:
                self._buckets.setdefault(key, []).append(idx)

    @staticmethod
    def _bucket_key(rule: FilterRule) -> Optional[str]:
        best = None
        tokens = rule.pattern
        for t_idx, tok in enumerate(tokens):
            if tok[0] != "lit":
                continue
            lit = tok[1].lower()
            for m in _TOKEN_RE.finditer(lit):
                left_ok = m.start() > 0 or (
                    t_idx > 0 and tokens[t_idx - 1][0] == "^"
                ) or (t_idx == 0 and (rule.anchor_start or rule.anchor_domain))
                right_ok = m.end() < len(lit) or (
                    t_idx + 1 < len(tokens) and tokens[t_idx + 1][0] == "^"
                ) or (t_idx == len(tokens) - 1 and rule.anchor_end)
                if left_ok and right_ok and len(m.group()) >= 3:
                    if best is None or len(m.group()) > len(best):
                        best = m.group()
        return best

    def candidates(self, folded_url: str):
        """Rules that can possibly match, in original list order."""
        idxs = list(self._catchall)
        for m in _TOKEN_RE.finditer(folded_url):
            idxs.extend(self._buckets.get(m.group(), ()))
        for i in sorted(set(idxs)):
            yield self._rules[i]


def compile_rules(rules: list[FilterRule]) -> CompiledFilterSet:
    """Index block/exception rules; drops and counts everything else."""
    return CompiledFilterSet(rules)


def match(filter_set: CompiledFilterSet, req: RequestContext) -> MatchVerdict:
    return filter_set.match(req)
