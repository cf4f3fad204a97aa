"""Jones and Alexander polynomials of oriented link diagrams.

Two independent routes to the Jones polynomial are provided:

* :func:`jones_bracket` sums the Kauffman bracket over all ``2^n`` states;
* :func:`jones_skein` descends a skein tree until only unlinks remain.

:func:`alexander_skein` uses the same tree with the Conway-normalised
relation ``D(L+) - D(L-) = (t^-1/2 - t^1/2) D(L0)``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import product

from .diagram import LinkDiagram, smooth_crossing, switch_crossing, _UF
from .errors import CapExceededError, SkeinRecursionError
from .laurent import HalfLaurent, substitute_q_minus_sqrt_t, t_power

__all__ = [
    "BRACKET_CAP",
    "jones_bracket",
    "jones_skein",
    "alexander_skein",
    "skein_triple",
    "verify_skein_triple",
    "RefinedSkeinInstance",
    "resolution_linking",
    "refined_skein_instance",
    "verify_refined_skein",
    "substitute_q_minus_sqrt_t",
    "unlink_jones",
]

BRACKET_CAP = 30
SKEIN_CAP = 30

# -t^(1/2) - t^(-1/2): value of an extra split unknot
_LOOP = HalfLaurent({1: -1, -1: -1})
_Z = HalfLaurent({-1: 1, 1: -1})  # t^(-1/2) - t^(1/2)


def unlink_jones(n: int) -> HalfLaurent:
    return _LOOP ** (n - 1)


# ---------------------------------------------------------------------------
# state sum
# ---------------------------------------------------------------------------

def _bracket_counts(d: LinkDiagram) -> dict[tuple[int, int], int]:
    """``{(#1-bits, #circles): number of states}``."""
    edges = d.edges
    pairs = [(x.smoothing_pairs(0), x.smoothing_pairs(1)) for x in d.crossings]
    counts: dict[tuple[int, int], int] = {}
    for bits in product((0, 1), repeat=d.n_crossings):
        uf = _UF(edges)
        n_circ = len(edges)
        for (p0, p1), b in zip(pairs, bits):
            for u, v in (p1 if b else p0):
                ru, rv = uf.find(u), uf.find(v)
                if ru != rv:
                    uf.union(ru, rv)
                    n_circ -= 1
        key = (sum(bits), n_circ)
        counts[key] = counts.get(key, 0) + 1
    return counts


def jones_bracket(d: LinkDiagram, cap: int = BRACKET_CAP) -> HalfLaurent:
    """Jones polynomial from the Kauffman bracket state sum.

    ``<D> = sum_s A^(#0 - #1) (-A^2 - A^-2)^(circles - 1)`` and
    ``V = (-A^3)^(-w) <D>`` with ``A = t^(-1/4)``.
    """
    n = d.n_crossings
    if n > cap:
        raise CapExceededError(f"bracket state sum capped at {cap} crossings, diagram has {n}")
    loop = {2: -1, -2: -1}  # in powers of A
    bracket: dict[int, int] = {}
    loop_pows = {0: {0: 1}}
    for (ones, circ), mult in _bracket_counts(d).items():
        k = circ - 1
        if k not in loop_pows:
            acc = {0: 1}
            for _ in range(k):
                nxt: dict[int, int] = {}
                for e1, c1 in acc.items():
                    for e2, c2 in loop.items():
                        nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
                acc = nxt
            loop_pows[k] = acc
        shift = (n - ones) - ones
        for e, c in loop_pows[k].items():
            bracket[e + shift] = bracket.get(e + shift, 0) + mult * c
    w = d.writhe
    sign = -1 if w % 2 else 1
    out = {}
    for e, c in bracket.items():
        if not c:
            continue
        a_exp = e - 3 * w
        if a_exp % 2:
            raise ArithmeticError("odd power of A survived normalisation")
        out[-a_exp // 2] = sign * c
    return HalfLaurent(out)


# ---------------------------------------------------------------------------
# skein descent
# ---------------------------------------------------------------------------

def _head_slot(d: LinkDiagram) -> dict[int, tuple[int, int]]:
    out = {}
    for ci, x in enumerate(d.crossings):
        for p in x.head_positions():
            out[x.edges[p]] = (ci, p)
    return out


def _traversal(d: LinkDiagram, order: str):
    comps = d.components()
    if order == "forward":
        return comps
    if order == "reverse":
        out = []
        for comp in sorted(comps, key=max, reverse=True):
            k = comp.index(max(comp))
            out.append(comp[k:] + comp[:k])
        return out
    raise ValueError(f"unknown descent order {order!r}")


def _first_non_descending(d: LinkDiagram, order: str) -> int | None:
    """First crossing that the traversal meets from below, or ``None`` if descending."""
    heads = _head_slot(d)
    seen = set()
    for comp in _traversal(d, order):
        for e in comp:
            slot = heads.get(e)
            if slot is None:
                continue
            ci, p = slot
            if ci in seen:
                continue
            if p == 0:
                return ci
            seen.add(ci)
    return None


def _skein_eval(d, order, base, rel_plus, rel_minus, cap):
    if d.n_crossings > cap:
        raise CapExceededError(f"skein descent capped at {cap} crossings, diagram has {d.n_crossings}")
    memo: dict[LinkDiagram, HalfLaurent] = {}
    budget = (d.n_crossings + 1) ** 2 + 8

    def go(diag: LinkDiagram, depth: int) -> HalfLaurent:
        if depth > budget:
            raise SkeinRecursionError("skein descent exceeded its depth budget")
        hit = memo.get(diag)
        if hit is not None:
            return hit
        c = _first_non_descending(diag, order)
        if c is None:
            val = base(diag.n_components)
        else:
            other = go(switch_crossing(diag, c), depth + 1)
            zero = go(smooth_crossing(diag, c, diag.crossings[c].oriented_bit()), depth + 1)
            val = (rel_plus if diag.crossings[c].sign > 0 else rel_minus)(other, zero)
        memo[diag] = val
        return val

    limit = sys.getrecursionlimit()
    need = 4 * budget + 200
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return go(d, 0)
    finally:
        sys.setrecursionlimit(limit)


def jones_skein(d: LinkDiagram, order: str = "forward", cap: int = SKEIN_CAP) -> HalfLaurent:
    """Jones polynomial by skein-tree descent to unlinks.

    ``order`` picks the basepoint rule: ``"forward"`` walks components by
    smallest edge from that edge, ``"reverse"`` by largest edge from that edge.
    """
    return _skein_eval(
        d, order, unlink_jones,
        # V+ = t^2 V- + (t^(3/2) - t^(1/2)) V0
        lambda vm, v0: vm.shift(4) + v0 * HalfLaurent({3: 1, 1: -1}),
        # V- = t^-2 V+ + (t^(-3/2) - t^(-1/2)) V0
        lambda vp, v0: vp.shift(-4) + v0 * HalfLaurent({-3: 1, -1: -1}),
        cap,
    )


def alexander_skein(d: LinkDiagram, order: str = "forward", cap: int = SKEIN_CAP) -> HalfLaurent:
    """Conway-normalised Alexander polynomial; split links give 0."""
    return _skein_eval(
        d, order, lambda n: HalfLaurent.constant(1 if n == 1 else 0),
        lambda am, a0: am + _Z * a0,
        lambda ap, a0: ap - _Z * a0,
        cap,
    )


# ---------------------------------------------------------------------------
# skein verifiers
# ---------------------------------------------------------------------------

def skein_triple(d: LinkDiagram, c: int) -> tuple[LinkDiagram, LinkDiagram, LinkDiagram]:
    """``(L+, L-, L0)`` at crossing ``c`` of ``d``."""
    switched = switch_crossing(d, c)
    zero = smooth_crossing(d, c, d.crossings[c].oriented_bit())
    if d.crossings[c].sign > 0:
        return d, switched, zero
    return switched, d, zero


def verify_skein_triple(dplus: LinkDiagram, dminus: LinkDiagram, dzero: LinkDiagram) -> bool:
    """Check both skein relations on computed values (no structural check)."""
    vp, vm, v0 = (jones_bracket(x) for x in (dplus, dminus, dzero))
    jones_ok = (vp.shift(-2) - vm.shift(2) + _Z * v0).is_zero()
    ap, am, a0 = (alexander_skein(x) for x in (dplus, dminus, dzero))
    alex_ok = (ap - am - _Z * a0).is_zero()
    return jones_ok and alex_ok


@dataclass(frozen=True)
class RefinedSkeinInstance:
    """One line of the refined skein relation.

    ``crossing`` is the diagram at the distinguished crossing, ``oriented``
    its orientation-respecting smoothing and ``other`` the remaining
    smoothing, oriented with one piece reversed.  ``sign`` is the sign of
    the crossing and ``v`` the integer correction.
    """

    sign: int
    crossing: LinkDiagram
    oriented: LinkDiagram
    other: LinkDiagram
    v: int

    def residual(self) -> HalfLaurent:
        vc, vo, vx = (jones_bracket(x) for x in (self.crossing, self.oriented, self.other))
        corr = vx.shift(3 * self.v)
        if self.sign > 0:
            # t^(-1/2) V0 + t^(3v/2) Vx + t^-1 V+
            return vo.shift(-1) + corr + vc.shift(-2)
        # t^(3v/2) Vx + t^(1/2) V0 + t V-
        return corr + vo.shift(1) + vc.shift(2)


def resolution_linking(d: LinkDiagram, c: int) -> int:
    """Writhe bookkeeping for the orientation-incompatible smoothing at ``c``.

    Returns ``(w(D) - sign(c) - w(D'))/2`` where ``D'`` is the incompatible
    smoothing as oriented by :func:`smooth_crossing`.  For a kink this is 0;
    it equals the signed crossing count between the reversed piece and the
    rest of the diagram.
    """
    x = d.crossings[c]
    other = smooth_crossing(d, c, 1 - x.oriented_bit())
    diff = d.writhe - x.sign - other.writhe
    if diff % 2:
        raise ArithmeticError("writhe difference is odd")
    return diff // 2


def refined_skein_instance(d: LinkDiagram, c: int, v: int | None = None) -> RefinedSkeinInstance:
    x = d.crossings[c]
    oriented = smooth_crossing(d, c, x.oriented_bit())
    other = smooth_crossing(d, c, 1 - x.oriented_bit())
    if v is None:
        v = resolution_linking(d, c)
    return RefinedSkeinInstance(x.sign, d, oriented, other, v)


def verify_refined_skein(instance: RefinedSkeinInstance) -> bool:
    return instance.residual().is_zero()
