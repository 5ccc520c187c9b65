"""EasyList-syntax filter parsing and request matching."""

from .engine import (
    DECISION_ALLOWED_BY_EXCEPTION,
    DECISION_BLOCKED,
    DECISION_NO_MATCH,
    CompiledFilterSet,
    MatchVerdict,
    RequestContext,
    UrlParseError,
    canonicalize_url,
    compile_rules,
    match,
)
from .psl import public_suffix, registrable_domain, same_site
from .rules import (
    RESOURCE_TYPES,
    FilterKind,
    FilterRule,
    RuleOptions,
    load_list,
    parse_hosts_line,
    parse_line,
    parse_lines,
)

__all__ = [
    "CompiledFilterSet",
    "DECISION_ALLOWED_BY_EXCEPTION",
    "DECISION_BLOCKED",
    "DECISION_NO_MATCH",
    "FilterKind",
    "FilterRule",
    "MatchVerdict",
    "RESOURCE_TYPES",
    "RequestContext",
    "RuleOptions",
    "UrlParseError",
    "canonicalize_url",
    "compile_rules",
    "load_list",
    "match",
    "parse_hosts_line",
    "parse_line",
    "parse_lines",
    "public_suffix",
    "registrable_domain",
    "same_site",
]
