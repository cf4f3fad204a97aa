"""Crossingless perfect matchings of points ``1..2m`` on a line."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from ..errors import CapExceededError

MATCHING_CAP = 12

Matching = tuple[tuple[int, int], ...]


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def is_noncrossing(matching) -> bool:
    pairs = [tuple(sorted(p)) for p in matching]
    for a, b in pairs:
        for c, d in pairs:
            if a < c < b < d:
                return False
    return True


def is_perfect(matching, m: int) -> bool:
    pts = sorted(x for p in matching for x in p)
    return pts == list(range(1, 2 * m + 1))


def horseshoe(m: int) -> Matching:
    """The fully nested matching ``(1, 2m), (2, 2m-1), ...``."""
    return tuple((k, 2 * m + 1 - k) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def _between(lo: int, hi: int) -> tuple[Matching, ...]:
    # matchings of the consecutive points lo..hi (inclusive)
    if lo > hi:
        return ((),)
    out = []
    for partner in range(lo + 1, hi + 1, 2):
        for inner in _between(lo + 1, partner - 1):
            for outer in _between(partner + 1, hi):
                out.append(tuple(sorted(((lo, partner),) + inner + outer)))
    return tuple(out)


def enumerate_matchings(m: int, cap: int = MATCHING_CAP) -> list[Matching]:
    """All crossingless matchings of ``2m`` points, each as sorted pairs.

    Point 1 is paired with an even point; the arc splits the rest into an
    inside and an outside that are matched independently.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > cap:
        raise CapExceededError(f"matching enumeration capped at m={cap}")
    return sorted(_between(1, 2 * m))
