"""Integer matrices, Smith normal form and homology of free cochain complexes.

Differentials go *up* in degree: ``d_k : C_k -> C_{k+1}``, stored as an
``IntMatrix`` of shape ``(rank C_{k+1}, rank C_k)``.  All arithmetic uses
Python ints, so nothing overflows.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import ChainComplexError


class IntMatrix:
    """Sparse integer matrix stored as one ``{col: value}`` dict per row."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Mapping[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows, self.cols = rows, cols
        if data is None:
            self._data = [dict() for _ in range(rows)]
        else:
            self._data = [{c: v for c, v in r.items() if v} for r in data]
            if len(self._data) != rows:
                raise ValueError("row count does not match data")
            for r in self._data:
                for c in r:
                    if not 0 <= c < cols:
                        raise ValueError(f"column index {c} out of range")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, ({j: int(v) for j, v in enumerate(r) if v} for r in rows))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        m = cls(rows, cols)
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) out of range")
            nv = m._data[i].get(j, 0) + v
            if nv:
                m._data[i][j] = nv
            else:
                m._data[i].pop(j, None)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, ({i: 1} for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> dict[int, int]:
        return dict(self._data[i])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i].get(j, 0)

    def entries(self):
        for i, r in enumerate(self._data):
            for j, v in r.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def is_zero(self) -> bool:
        return all(not r for r in self._data)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": self.to_dense()}

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_entries(self.cols, self.rows, ((j, i, v) for i, j, v in self.entries()))

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, ({c: -v for c, v in r.items()} for r in self._data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for r1, r2 in zip(self._data, other._data):
            r = dict(r1)
            for c, v in r2.items():
                r[c] = r.get(c, 0) + v
            out.append(r)
        return IntMatrix(self.rows, self.cols, out)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self._data:
            acc: dict[int, int] = {}
            for k, v in r.items():
                for j, w in other._data[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.append(acc)
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a block matrix; every block row/column must have consistent sizes."""
    row_sizes = [blk[0].rows for blk in blocks]
    col_sizes = [b.cols for b in blocks[0]]
    for bi, brow in enumerate(blocks):
        for bj, b in enumerate(brow):
            if b.shape != (row_sizes[bi], col_sizes[bj]):
                raise ValueError("inconsistent block sizes")
    entries = []
    r0 = 0
    for bi, brow in enumerate(blocks):
        c0 = 0
        for bj, b in enumerate(brow):
            entries.extend((r0 + i, c0 + j, v) for i, j, v in b.entries())
            c0 += col_sizes[bj]
        r0 += row_sizes[bi]
    return IntMatrix.from_entries(sum(row_sizes), sum(col_sizes), entries)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn any nonzero diagonal into invariant factors d1 | d2 | ... ."""
    units = [d for d in diag if d == 1]
    rest = sorted(abs(d) for d in diag if abs(d) != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    return units + sorted(rest)


def invariant_factors(m: IntMatrix) -> list[int]:
    """Nonzero invariant factors of ``m`` in divisibility order.

    Sparse elimination in two passes: unit pivots first (cheap, no entry
    growth), then on what remains always the entry of least absolute value,
    ties broken by the Markowitz fill estimate.
    """
    rows = {i: dict(r) for i, r in enumerate(m._data) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    def set_entry(i, j, v):
        r = rows[i]
        if v:
            r[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r.pop(j, None)
            s = cols.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del cols[j]

    def drop(i, j):
        for jj in list(rows[i]):
            set_entry(i, jj, 0)
        del rows[i]
        for ii in list(cols.get(j, ())):
            set_entry(ii, j, 0)

    diag = []
    # phase 1: unit pivots, shortest rows first, sparsest column within the row
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    while heap:
        ln, i = heapq.heappop(heap)
        r = rows.get(i)
        if r is None:
            continue
        if len(r) != ln:
            heapq.heappush(heap, (len(r), i))
            continue
        units = [j for j, v in r.items() if v == 1 or v == -1]
        if not units:
            continue
        pj = min(units, key=lambda j: len(cols[j]))
        p = r[pj]
        for k in list(cols[pj]):
            if k == i:
                continue
            rk = rows[k]
            q = rk[pj] * p
            for j, v in r.items():
                set_entry(k, j, rk.get(j, 0) - q * v)
            if rk:
                heapq.heappush(heap, (len(rk), k))
            else:
                del rows[k]
        diag.append(1)
        drop(i, pj)

    # phase 2: whatever is left, least absolute value first
    while rows:
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                a = abs(v)
                cost = (a, (len(r) - 1) * (len(cols[j]) - 1))
                if best is None or cost < best[0]:
                    best = (cost, i, j)
                    if cost == (1, 0):
                        break
            if best is not None and best[0] == (1, 0):
                break
        _, pi, pj = best
        p = rows[pi][pj]
        prow = rows[pi]
        clean = True
        for i in list(cols[pj]):
            if i == pi:
                continue
            q = rows[i][pj] // p
            if q:
                r = rows[i]
                for j, v in list(prow.items()):
                    set_entry(i, j, r.get(j, 0) - q * v)
            if rows[i].get(pj):
                clean = False
            if not rows[i]:
                del rows[i]
        if not clean:
            continue
        # column pj now only meets row pi; column operations touch row pi only
        for j, v in list(prow.items()):
            if j == pj:
                continue
            q = v // p
            if q:
                set_entry(pi, j, v - q * p)
        if len(prow) > 1:
            continue
        diag.append(abs(p))
        drop(pi, pj)
    return _normalize_diagonal(diag)


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


@dataclass
class SmithForm:
    factors: list[int]
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None
    diagonal: list[list[int]] | None = None


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]], transforms: bool = False) -> SmithForm:
    """Invariant factors of ``m`` and, optionally, unimodular ``U``, ``V`` with ``U m V = D``."""
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_dense(m)
    if not transforms:
        return SmithForm(invariant_factors(m))
    D, U, V = _dense_snf(m.to_dense(), m.rows, m.cols)
    k = min(m.rows, m.cols)
    factors = [D[i][i] for i in range(k) if D[i][i]]
    return SmithForm(factors, U, V, D)


def _dense_snf(A, nr, nc):
    """Classical dense SNF with transforms (min-abs pivoting)."""
    A = [list(r) for r in A]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            cand = [(abs(A[i][t]), i, "r") for i in range(t + 1, nr) if A[i][t]]
            cand += [(abs(A[t][j]), j, "c") for j in range(t + 1, nc) if A[t][j]]
            if cand:
                _, k, kind = min(cand)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologySummand:
    """A finitely generated abelian group ``Z^free + sum Z/t``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = [int(t) for t in self.torsion]
        if self.free_rank < 0 or any(t <= 1 for t in tors):
            raise ValueError("free rank must be >= 0 and torsion coefficients > 1")
        # Z/2 + Z/3 normalizes to Z/1 + Z/6; the unit factor is trivial
        object.__setattr__(self, "torsion", tuple(t for t in _normalize_diagonal(tors) if t > 1))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: "HomologySummand") -> "HomologySummand":
        return HomologySummand(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def to_json(self) -> dict:
        return {"free": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = [f"Z^{self.free_rank}" if self.free_rank > 1 else "Z"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


ZERO = HomologySummand()


@dataclass
class FreeComplex:
    ranks: dict[int, int]
    differentials: dict[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        self.ranks = {k: r for k, r in self.ranks.items() if r}
        for k, d in list(self.differentials.items()):
            want = (self.rank(k + 1), self.rank(k))
            if d.shape != want:
                raise ChainComplexError(f"d_{k} has shape {d.shape}, expected {want}")
            if d.is_zero():
                del self.differentials[k]
        for k, d in self.differentials.items():
            nxt = self.differentials.get(k + 1)
            if nxt is not None and not (nxt @ d).is_zero():
                raise ChainComplexError(f"d_{k + 1} d_{k} != 0")

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def d(self, k: int) -> IntMatrix:
        m = self.differentials.get(k)
        return m if m is not None else IntMatrix.zeros(self.rank(k + 1), self.rank(k))

    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * r for k, r in self.ranks.items())

    def shift(self, s: int) -> "FreeComplex":
        """``C[s]`` with ``C[s]_k = C_{k+s}`` and differential multiplied by ``(-1)^s``."""
        sign = -1 if s % 2 else 1
        return FreeComplex(
            {k - s: r for k, r in self.ranks.items()},
            {k - s: (-d if sign < 0 else d) for k, d in self.differentials.items()},
        )


def direct_sum(a: FreeComplex, b: FreeComplex) -> FreeComplex:
    ks = set(a.ranks) | set(b.ranks)
    ranks = {k: a.rank(k) + b.rank(k) for k in ks}
    diffs = {}
    for k in ks:
        diffs[k] = block_matrix([[a.d(k), IntMatrix.zeros(a.rank(k + 1), b.rank(k))],
                                 [IntMatrix.zeros(b.rank(k + 1), a.rank(k)), b.d(k)]])
    return FreeComplex(ranks, diffs)


def homology(c: FreeComplex) -> dict[int, HomologySummand]:
    """``H^k = ker d_k / im d_{k-1}`` for every degree of ``c``."""
    facs = {k: invariant_factors(d) for k, d in c.differentials.items()}
    out = {}
    for k in c.degrees():
        rk_out = len(facs.get(k, ()))
        inc = facs.get(k - 1, ())
        free = c.rank(k) - rk_out - len(inc)
        out[k] = HomologySummand(free, tuple(f for f in inc if f > 1))
    return out


def field_ranks(h: Mapping[int, HomologySummand], p: int) -> dict[int, int]:
    """Ranks of cohomology with F_p coefficients (universal coefficients, upward differentials)."""
    ks = set(h) | {k - 1 for k in h}
    out = {}
    for k in ks:
        here = h.get(k, ZERO)
        above = h.get(k + 1, ZERO)
        r = here.free_rank + sum(1 for t in here.torsion if t % p == 0) + sum(1 for t in above.torsion if t % p == 0)
        if r:
            out[k] = r
    return out


@dataclass
class ChainMap:
    """Degree-0 cochain map ``f_k : C_k -> C'_k``."""

    source: FreeComplex
    target: FreeComplex
    maps: dict[int, IntMatrix]

    def __post_init__(self):
        for k, f in self.maps.items():
            if f.shape != (self.target.rank(k), self.source.rank(k)):
                raise ChainComplexError(f"f_{k} has shape {f.shape}")
        ks = set(self.source.ranks) | set(self.target.ranks)
        for k in ks:
            lhs = self.f(k + 1) @ self.source.d(k)
            rhs = self.target.d(k) @ self.f(k)
            if lhs != rhs:
                raise ChainComplexError(f"f does not commute with differentials in degree {k}")

    def f(self, k: int) -> IntMatrix:
        m = self.maps.get(k)
        return m if m is not None else IntMatrix.zeros(self.target.rank(k), self.source.rank(k))


def mapping_cone(f: ChainMap) -> FreeComplex:
    """``Cone(f)_k = C_{k+1} + C'_k`` with ``d = [[-d_C, 0], [f, d_C']]``."""
    C, D = f.source, f.target
    ks = {k - 1 for k in C.ranks} | set(D.ranks)
    ranks = {k: C.rank(k + 1) + D.rank(k) for k in ks}
    diffs = {}
    for k in ks:
        diffs[k] = block_matrix([
            [-C.d(k + 1), IntMatrix.zeros(C.rank(k + 2), D.rank(k))],
            [f.f(k + 1), D.d(k)],
        ])
    return FreeComplex(ranks, diffs)


def induced_rank(g_k: IntMatrix, d_src_k: IntMatrix, d_tgt_prev: IntMatrix) -> int:
    """Rank over Q of the map ``H^k(X) -> H^k(Y)`` induced by ``g_k``.

    ``dim(g(Z) + B) - dim B`` computed as
    ``rank [[d_X, 0], [g, d_Y]] - rank d_X - rank d_Y`` with ``d_Y`` the
    differential *into* degree ``k`` of the target.
    """
    big = block_matrix([
        [d_src_k, IntMatrix.zeros(d_src_k.rows, d_tgt_prev.cols)],
        [g_k, d_tgt_prev],
    ])
    return rank(big) - rank(d_src_k) - rank(d_tgt_prev)


@dataclass
class LESReport:
    """Rational bookkeeping of ``H(C') -> H(Cone) -> H(C[1]) -> H(C')``."""

    dims_source: dict[int, int]
    dims_target: dict[int, int]
    dims_cone: dict[int, int]
    rank_f: dict[int, int]
    rank_incl: dict[int, int]
    rank_proj: dict[int, int]
    failures: list[str]

    @property
    def exact(self) -> bool:
        return not self.failures


def long_exact_sequence(f: ChainMap, cone: FreeComplex | None = None) -> LESReport:
    """Check exactness of the cone triangle of ``f`` over Q at every spot.

    The sequence is ``H^k(C') -i-> H^k(Cone) -p-> H^{k+1}(C) -f-> H^{k+1}(C')``.
    """
    C, D = f.source, f.target
    cone = cone if cone is not None else mapping_cone(f)
    hC = {k: s.free_rank for k, s in homology(C).items()}
    hD = {k: s.free_rank for k, s in homology(D).items()}
    hK = {k: s.free_rank for k, s in homology(cone).items()}
    ks = sorted(set(C.ranks) | set(D.ranks) | set(cone.ranks) | {k - 1 for k in C.ranks})
    rank_f, rank_i, rank_p = {}, {}, {}
    for k in set(ks) | {k + 1 for k in ks}:
        rank_f[k] = induced_rank(f.f(k), C.d(k), D.d(k - 1))
    for k in ks:
        # inclusion C'_k -> Cone_k = C_{k+1} + C'_k
        incl = block_matrix([[IntMatrix.zeros(C.rank(k + 1), D.rank(k))], [IntMatrix.identity(D.rank(k))]])
        rank_i[k] = induced_rank(incl, D.d(k), cone.d(k - 1))
        # projection Cone_k -> C_{k+1}; target differential into degree k+1 is -d_C
        proj = block_matrix([[IntMatrix.identity(C.rank(k + 1)), IntMatrix.zeros(C.rank(k + 1), D.rank(k))]])
        rank_p[k] = induced_rank(proj, cone.d(k), C.d(k))
    failures = []
    for k in ks:
        if rank_i[k] != hK.get(k, 0) - rank_p[k]:
            failures.append(f"not exact at H^{k}(Cone)")
        if rank_p[k] != hC.get(k + 1, 0) - rank_f[k + 1]:
            failures.append(f"not exact at H^{k + 1}(C)")
        if rank_f[k] != hD.get(k, 0) - rank_i[k]:
            failures.append(f"not exact at H^{k}(C')")
    return LESReport(hC, hD, hK, rank_f, rank_i, rank_p, failures)
