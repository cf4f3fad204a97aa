"""Oriented planar diagrams (PD codes).

Conventions
-----------
A crossing ``X(a, b, c, d)`` lists its four edge ids counterclockwise,
starting from the *incoming* under-strand, so the under-strand runs
``a -> c``.  The over-strand runs ``d -> b`` at a positive (right-handed)
crossing and ``b -> d`` at a negative one.

Resolutions use a purely planar rule that does not depend on orientation:

* bit 0 joins ``(a, b)`` and ``(c, d)``  (the Kauffman A-smoothing),
* bit 1 joins ``(a, d)`` and ``(b, c)``.

Bit 0 is the oriented smoothing of a positive crossing and bit 1 the
oriented smoothing of a negative one.

Crossing ids are positions in :attr:`LinkDiagram.crossings`.  Smoothing a
crossing removes it and shifts the later ids down by one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PDParseError

Slot = tuple[int, int]  # (crossing index, position 0..3)


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def head_positions(self) -> tuple[int, int]:
        """Positions whose edge *ends* at this crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)

    def smoothing_pairs(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = self.edges
        return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))

    def oriented_bit(self) -> int:
        """The resolution bit that respects orientation."""
        return 0 if self.sign > 0 else 1


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram: signed crossings plus crossing-free circles."""

    crossings: tuple[Crossing, ...] = ()
    circles: tuple[int, ...] = ()
    _succ: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "circles", tuple(sorted(self.circles)))
        object.__setattr__(self, "_succ", _successor_map(self.crossings, self.circles))

    # -- counts -----------------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(self._succ))

    def successor(self, edge: int) -> int:
        return self._succ[edge]

    def components(self) -> list[tuple[int, ...]]:
        """Oriented edge cycles, each starting at its smallest edge, sorted by that edge."""
        seen = set()
        comps = []
        for e in sorted(self._succ):
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            nxt = self._succ[e]
            while nxt != e:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self._succ[nxt]
            comps.append(tuple(cyc))
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components())

    def __str__(self):
        return to_pd_text(self)


def _successor_map(crossings: Sequence[Crossing], circles: Sequence[int]) -> dict[int, int]:
    occurrences: dict[int, list[Slot]] = {}
    for ci, x in enumerate(crossings):
        if len(x.edges) != 4:
            raise PDParseError(f"crossing {ci} does not have four edges")
        if x.sign not in (1, -1):
            raise PDParseError(f"crossing {ci} has sign {x.sign}")
        for p, e in enumerate(x.edges):
            if not isinstance(e, int) or e <= 0:
                raise PDParseError(f"edge ids must be positive integers, got {e!r}")
            occurrences.setdefault(e, []).append((ci, p))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise PDParseError(f"edge {e} occurs {len(occ)} times (expected 2)")
    for e in circles:
        if e in occurrences:
            raise PDParseError(f"circle edge {e} also occurs at a crossing")
    if len(set(circles)) != len(circles):
        raise PDParseError("repeated circle edge id")

    # head[e] = slot where e ends, tail[e] = slot where e starts
    head: dict[int, Slot] = {}
    tail: dict[int, Slot] = {}
    for ci, x in enumerate(crossings):
        heads = x.head_positions()
        for p, e in enumerate(x.edges):
            target = head if p in heads else tail
            if e in target:
                raise PDParseError(f"inconsistent orientation on edge {e}")
            target[e] = (ci, p)
    succ = {}
    for e, (ci, p) in head.items():
        succ[e] = crossings[ci].edges[(p + 2) % 4]
    for e in circles:
        succ[e] = e
    return succ


# ---------------------------------------------------------------------------
# orientation solving
# ---------------------------------------------------------------------------

def _occurrences(tuples: Sequence[Sequence[int]]) -> dict[int, list[Slot]]:
    occ: dict[int, list[Slot]] = {}
    for ci, t in enumerate(tuples):
        for p, e in enumerate(t):
            occ.setdefault(e, []).append((ci, p))
    return occ


def _trace(tuples: Sequence[Sequence[int]]) -> list[list[tuple[int, Slot]]]:
    """Walk every strand component once in an arbitrary direction.

    Returns, per component, the list of ``(edge, head_slot)`` in traversal
    order.  Components are returned in order of their smallest edge id.
    """
    occ = _occurrences(tuples)
    for e, o in occ.items():
        if len(o) != 2:
            raise PDParseError(f"edge {e} occurs {len(o)} times (expected 2)")
    done: set[int] = set()
    comps = []
    for e0 in sorted(occ):
        if e0 in done:
            continue
        walk = []
        e, h = e0, occ[e0][0]
        while True:
            walk.append((e, h))
            done.add(e)
            ci, p = h
            exit_slot = (ci, (p + 2) % 4)
            e = tuples[ci][exit_slot[1]]
            o = occ[e]
            h = o[1] if o[0] == exit_slot else o[0]
            if e == e0:
                if h != walk[0][1]:
                    raise PDParseError(f"strand through edge {e0} does not close up")
                break
        comps.append(walk)
    return comps


def _reverse_walk(walk, occ):
    return [(e, occ[e][1] if occ[e][0] == h else occ[e][0]) for e, h in walk]


def _build(tuples: Sequence[Sequence[int]], heads: set[Slot], circles: Iterable[int]) -> LinkDiagram:
    """Assemble oriented crossings; rotate any tuple whose under-strand runs backwards."""
    out = []
    for ci, t in enumerate(tuples):
        t = tuple(t)
        h = {p for p in range(4) if (ci, p) in heads}
        if 0 not in h:
            t = t[2:] + t[:2]
            h = {(p - 2) % 4 for p in h}
        sign = 1 if 3 in h else -1
        out.append(Crossing(t, sign))
    return LinkDiagram(tuple(out), tuple(circles))


def _canonical_choice(walk, occ) -> bool:
    """Direction for a component with no under-passage: True keeps ``walk``.

    Prefer the traversal whose edge sequence read from the smallest edge is
    lexicographically smaller; tie-break on the head slot of that edge.
    """
    rev = list(reversed(_reverse_walk(walk, occ)))

    def key(w):
        edges = [e for e, _ in w]
        i = edges.index(min(edges))
        rot = edges[i:] + edges[:i]
        return rot, w[i][1]

    return key(walk) <= key(rev)


def orient_pd(tuples: Sequence[Sequence[int]], circles: Iterable[int] = ()) -> LinkDiagram:
    """Derive crossing signs for an unsigned PD code.

    Under-strand positions fix the direction of every component that passes
    under somewhere.  A component that is over at all its crossings is
    oriented by :func:`_canonical_choice`.
    """
    tuples = [tuple(t) for t in tuples]
    occ = _occurrences(tuples)
    heads: set[Slot] = set()
    for walk in _trace(tuples):
        votes = set()
        for e, (ci, p) in walk:
            if p == 0:
                votes.add(True)
            elif p == 2:
                votes.add(False)
        if len(votes) == 2:
            raise PDParseError(f"inconsistent orientation along the component of edge {walk[0][0]}")
        keep = votes.pop() if votes else _canonical_choice(walk, occ)
        chosen = walk if keep else _reverse_walk(walk, occ)
        heads.update(h for _, h in chosen)
    d = _build(tuples, heads, circles)
    if any(a != b.edges for a, b in zip(tuples, d.crossings)):
        raise PDParseError("inconsistent orientation")  # unreachable: votes forbid rotation
    return d


def _reorient(tuples, old_heads: set[Slot], circles) -> LinkDiagram:
    """Orient after a surgery, keeping the old direction where it is consistent.

    Each component keeps the old role (head/tail) of its smallest slot, so a
    component whose old orientation is consistent keeps it entirely, and an
    inconsistent one reverses the piece not containing that slot.
    """
    occ = _occurrences(tuples)
    heads: set[Slot] = set()
    for walk in _trace(tuples):
        fwd_heads = {h for _, h in walk}
        slots = sorted(s for e, _ in walk for s in occ[e])
        s0 = slots[0]
        keep = (s0 in fwd_heads) == (s0 in old_heads)
        chosen = walk if keep else _reverse_walk(walk, occ)
        heads.update(h for _, h in chosen)
    return _build(tuples, heads, circles)


def _head_slots(d: LinkDiagram) -> set[Slot]:
    return {(ci, p) for ci, x in enumerate(d.crossings) for p in x.head_positions()}


# ---------------------------------------------------------------------------
# constructors and parsing
# ---------------------------------------------------------------------------

def unlink_diagram(n: int) -> LinkDiagram:
    """``n`` disjoint crossing-free circles."""
    if n < 1:
        raise ValueError("an unlink needs at least one component")
    return LinkDiagram((), tuple(range(1, n + 1)))


_TOKEN = re.compile(r"\s*([XO])\s*\(([^()]*)\)\s*")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text (``X(a,b,c,d) ... O(e)``) or its JSON equivalent."""
    s = text.strip()
    if not s:
        raise PDParseError("empty PD code")
    if s.startswith("{"):
        return _parse_pd_json(s)
    pos = 0
    tuples, circles = [], []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise PDParseError(f"malformed PD text near {s[pos:pos + 20]!r}")
        kind, body = m.group(1), m.group(2)
        try:
            ids = [int(v) for v in body.split(",")]
        except ValueError:
            raise PDParseError(f"non-integer edge id in {m.group(0).strip()!r}") from None
        if any(v <= 0 for v in ids):
            raise PDParseError("edge ids must be positive")
        if kind == "X":
            if len(ids) != 4:
                raise PDParseError(f"X term needs 4 edges, got {len(ids)}")
            tuples.append(tuple(ids))
        else:
            if len(ids) != 1:
                raise PDParseError("O term takes a single edge id")
            circles.append(ids[0])
        pos = m.end()
    return _from_parts(tuples, circles, None)


def _parse_pd_json(s: str) -> LinkDiagram:
    try:
        obj = json.loads(s)
    except json.JSONDecodeError as exc:
        raise PDParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("crossings", []), list):
        raise PDParseError("JSON PD must be an object with a 'crossings' list")
    try:
        tuples = [tuple(int(v) for v in x) for x in obj.get("crossings", [])]
        circles = [int(v) for v in obj.get("circles", [])]
        signs = obj.get("signs")
        signs = None if signs is None else [int(v) for v in signs]
    except (TypeError, ValueError):
        raise PDParseError("JSON PD entries must be integers") from None
    return _from_parts(tuples, circles, signs)


def _from_parts(tuples, circles, signs) -> LinkDiagram:
    for t in tuples:
        if len(t) != 4:
            raise PDParseError("every crossing needs exactly 4 edges")
        if any(v <= 0 for v in t):
            raise PDParseError("edge ids must be positive")
    if not tuples and not circles:
        raise PDParseError("diagram has no components")
    if signs is not None:
        if len(signs) != len(tuples):
            raise PDParseError("'signs' length does not match 'crossings'")
        return LinkDiagram(tuple(Crossing(t, s) for t, s in zip(tuples, signs)), tuple(circles))
    occ = _occurrences(tuples)
    for e, o in occ.items():
        if len(o) != 2:
            raise PDParseError(f"edge {e} occurs {len(o)} times (expected 2)")
    return orient_pd(tuples, circles)


def to_pd_text(d: LinkDiagram) -> str:
    parts = ["X({},{},{},{})".format(*x.edges) for x in d.crossings]
    parts += [f"O({e})" for e in d.circles]
    return " ".join(parts)


def to_pd_json(d: LinkDiagram, signs: bool = True) -> dict:
    out = {"crossings": [list(x.edges) for x in d.crossings], "circles": list(d.circles)}
    if signs:
        out["signs"] = [x.sign for x in d.crossings]
    return out


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

class _UF:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def _state_bits(d: LinkDiagram, state) -> list[int]:
    if isinstance(state, int):
        if state < 0 or state >> d.n_crossings:
            raise ValueError("state mask out of range")
        return [(state >> k) & 1 for k in range(d.n_crossings)]
    bits = [int(b) for b in state]
    if len(bits) != d.n_crossings:
        raise ValueError(f"state has {len(bits)} bits, diagram has {d.n_crossings} crossings")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("state bits must be 0 or 1")
    return bits


def state_circles(d: LinkDiagram, state) -> list[frozenset[int]]:
    """Circles of a full resolution as edge sets, ordered by smallest edge."""
    bits = _state_bits(d, state)
    uf = _UF(d.edges)
    for x, bit in zip(d.crossings, bits):
        for u, v in x.smoothing_pairs(bit):
            uf.union(u, v)
    groups: dict[int, set[int]] = {}
    for e in d.edges:
        groups.setdefault(uf.find(e), set()).add(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def resolve_all(d: LinkDiagram, state) -> int:
    """Number of circles after smoothing every crossing per ``state``.

    ``state`` is a bit sequence indexed by crossing id, or an int mask with
    bit ``k`` for crossing ``k``.
    """
    return len(state_circles(d, state))


def _check_crossing(d: LinkDiagram, c: int):
    if not isinstance(c, int) or not 0 <= c < d.n_crossings:
        raise KeyError(f"no crossing with id {c!r}")


def smooth_crossing(d: LinkDiagram, c: int, which: int) -> LinkDiagram:
    """Resolve crossing ``c`` with bit ``which``.

    Merged edges are relabelled by the smallest id of their class, so the
    edge ids of a circle in any later resolution keep their minimum.  Where
    the smoothing is orientation-incompatible the merged component keeps the
    direction of its smallest slot and the other piece is reversed.
    """
    _check_crossing(d, c)
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    x = d.crossings[c]
    uf = _UF(d.edges)
    for u, v in x.smoothing_pairs(which):
        uf.union(u, v)
    old_heads = _head_slots(d)
    tuples, heads = [], set()
    for ci, y in enumerate(d.crossings):
        if ci == c:
            continue
        ni = len(tuples)
        tuples.append(tuple(uf.find(e) for e in y.edges))
        heads.update((ni, p) for p in range(4) if (ci, p) in old_heads)
    present = {e for t in tuples for e in t}
    touched = {uf.find(e) for e in x.edges}
    circles = list(d.circles) + sorted(r for r in touched if r not in present)
    return _reorient(tuples, heads, circles)


def switch_crossing(d: LinkDiagram, c: int) -> LinkDiagram:
    """Exchange over and under at crossing ``c``; its sign flips."""
    _check_crossing(d, c)
    x = d.crossings[c]
    a, b, cc, dd = x.edges
    new = Crossing((dd, a, b, cc), -1) if x.sign > 0 else Crossing((b, cc, dd, a), 1)
    crossings = list(d.crossings)
    crossings[c] = new
    return LinkDiagram(tuple(crossings), d.circles)


def mirror(d: LinkDiagram) -> LinkDiagram:
    for c in range(d.n_crossings):
        d = switch_crossing(d, c)
    return d


def reverse_component(d: LinkDiagram, k: int) -> LinkDiagram:
    """Reverse the orientation of component ``k`` (as listed by :meth:`components`)."""
    comps = d.components()
    comp = set(comps[k])
    heads = _head_slots(d)
    # slots on the reversed component swap role (head <-> tail)
    new_heads = {
        (ci, p)
        for ci, x in enumerate(d.crossings)
        for p in range(4)
        if ((ci, p) in heads) != (x.edges[p] in comp)
    }
    return _build([x.edges for x in d.crossings], new_heads, d.circles)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Place ``d2`` beside ``d1`` with its edge ids shifted past those of ``d1``."""
    off = max(d1.edges, default=0)
    cr = list(d1.crossings) + [Crossing(tuple(e + off for e in x.edges), x.sign) for x in d2.crossings]
    return LinkDiagram(tuple(cr), tuple(d1.circles) + tuple(e + off for e in d2.circles))
