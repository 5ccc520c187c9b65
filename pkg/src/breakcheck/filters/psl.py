"""Registrable-domain computation over the bundled public-suffix snapshot.

The snapshot lives in ``filters/data/public_suffix_snapshot.dat`` and uses the
standard list format: one suffix per line, ``*.`` wildcards, ``!`` exceptions,
``//`` comments. Hosts under a TLD that is not listed fall back to the
implicit ``*`` rule (the TLD itself is the public suffix).
"""

from __future__ import annotations

import functools
import ipaddress
from importlib import resources


@functools.lru_cache(maxsize=1)
def _suffix_rules() -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    text = (
        resources.files("breakcheck.filters.data")
        .joinpath("public_suffix_snapshot.dat")
        .read_text("utf-8")
    )
    exact, wildcard, exception = set(), set(), set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("//"):
            continue
        if line.startswith("!"):
            exception.add(line[1:])
        elif line.startswith("*."):
            wildcard.add(line[2:])
        else:
            exact.add(line)
    return frozenset(exact), frozenset(wildcard), frozenset(exception)


def _is_ip(host: str) -> bool:
    try:
        ipaddress.ip_address(host)
        return True
    except ValueError:
        return False


def public_suffix(host: str) -> str:
    """Longest matching public suffix of ``host`` (the host itself for IPs)."""
    host = host.strip(".").lower()
    if not host or _is_ip(host):
        return host
    exact, wildcard, exception = _suffix_rules()
    labels = host.split(".")
    # Exception rules win and shorten the suffix by one label.
    for i in range(len(labels)):
        candidate = ".".join(labels[i:])
        if candidate in exception:
            return ".".join(labels[i + 1 :])
    best = labels[-1]  # implicit "*" rule
    for i in range(len(labels)):
        candidate = ".".join(labels[i:])
        if candidate in exact and len(candidate) > len(best):
            best = candidate
        parent = ".".join(labels[i + 1 :])
        if parent in wildcard and len(candidate) > len(best):
            best = candidate
    return best


def registrable_domain(host: str) -> str:
    """Public suffix plus one label; the host itself if it has no extra label.

    ``registrable_domain("sub.example.co.uk")`` -> ``example.co.uk``;
    IP literals and bare suffixes are returned unchanged.
    """
    host = host.strip(".").lower()
    if not host or _is_ip(host):
        return host
    suffix = public_suffix(host)
    if host == suffix:
        return host
    prefix = host[: -(len(suffix) + 1)]
    return prefix.rsplit(".", 1)[-1] + "." + suffix


def same_site(host_a: str, host_b: str) -> bool:
    """True when both hosts share a registrable domain (first-party)."""
    return registrable_domain(host_a) == registrable_domain(host_b)
