"""Block-companion slice matrices and their characteristic polynomials.

Everything here is exact: entries are :class:`fractions.Fraction` or
:class:`GaussianRational`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import SliceError


class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


def _zero_like(x):
    return GaussianRational() if isinstance(x, GaussianRational) else Fraction(0)


@dataclass(frozen=True)
class SliceMatrix:
    """``blocks[k]`` is the 2x2 block ``A_{k+1}``; the first one is trace-free."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(tuple(row) for row in b) for b in self.blocks)
        if not blocks:
            raise SliceError("a slice matrix needs at least one block")
        for b in blocks:
            if len(b) != 2 or any(len(r) != 2 for r in b):
                raise SliceError("blocks must be 2x2")
        if blocks[0][0][0] + blocks[0][1][1] != 0:
            raise SliceError("the first block must be trace-free")
        object.__setattr__(self, "blocks", blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)


def assemble(s: SliceMatrix) -> list[list]:
    """The ``2m x 2m`` matrix: blocks down the first block column, identities on the superdiagonal."""
    m = s.m
    zero = _zero_like(s.blocks[0][0][0])
    M = [[zero] * (2 * m) for _ in range(2 * m)]
    for k, b in enumerate(s.blocks):
        for r in range(2):
            for c in range(2):
                M[2 * k + r][c] = b[r][c]
        if k + 1 < m:
            M[2 * k][2 * (k + 1)] = zero + 1
            M[2 * k + 1][2 * (k + 1) + 1] = zero + 1
    return M


def nilpotent_n_plus(m: int) -> SliceMatrix:
    """All blocks zero."""
    z = Fraction(0)
    return SliceMatrix(tuple(((z, z), (z, z)) for _ in range(m)))


def charpoly(M: Sequence[Sequence]) -> list:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(lambda I - M)`` (Faddeev-LeVerrier).

    Works over any field containing Q, so exact for rationals and Q(i).
    """
    n = len(M)
    zero = _zero_like(M[0][0]) if n else Fraction(0)
    coeffs = [zero] * (n + 1)
    coeffs[n] = zero + 1
    # N_k = M N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M N_k)/k
    Nk = [[zero + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        MN = [[sum((M[i][l] * Nk[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        c = -sum((MN[i][i] for i in range(n)), zero) / k
        coeffs[n - k] = c
        Nk = [[MN[i][j] + (c if i == j else zero) for j in range(n)] for i in range(n)]
    return coeffs


def _padd(p, q):
    n = max(len(p), len(q))
    zero = _zero_like((p or q or [Fraction(0)])[0])
    return [(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)]


def _pmul(p, q):
    zero = _zero_like(p[0])
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def block_charpoly(s: SliceMatrix) -> list:
    """Coefficients of ``det(lambda^m I_2 - A_1 lambda^(m-1) - ... - A_m)``."""
    m = s.m
    zero = _zero_like(s.blocks[0][0][0])
    P = [[None, None], [None, None]]
    for r in range(2):
        for c in range(2):
            poly = [zero] * (m + 1)
            if r == c:
                poly[m] = zero + 1
            for k, b in enumerate(s.blocks, start=1):
                poly[m - k] = poly[m - k] - b[r][c]
            P[r][c] = poly
    det = _padd(_pmul(P[0][0], P[1][1]), [-a for a in _pmul(P[0][1], P[1][0])])
    return det[: 2 * m + 1] + [zero] * (2 * m + 1 - len(det))


def charpoly_identity_check(s: SliceMatrix) -> bool:
    return charpoly(assemble(s)) == block_charpoly(s)


def _rand_frac(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_slice(m: int, rng: random.Random, gaussian: bool = False, bound: int = 9) -> SliceMatrix:
    """Random exact slice matrix with ``m`` blocks."""
    def entry():
        if gaussian:
            return GaussianRational(_rand_frac(rng, bound), _rand_frac(rng, bound))
        return _rand_frac(rng, bound)

    blocks = []
    for k in range(m):
        a, b, c, d = entry(), entry(), entry(), entry()
        if k == 0:
            d = -a
        blocks.append(((a, b), (c, d)))
    return SliceMatrix(tuple(blocks))


def exact_rank(M: Sequence[Sequence]) -> int:
    """Rank over the field of the entries (Gaussian elimination)."""
    A = [list(r) for r in M]
    rank = 0
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(rows):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# eigenvalue configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenConfiguration:
    """Distinct complex numbers summing to zero."""

    points: tuple[complex, ...]
    tol: float = 1e-9

    def __post_init__(self):
        pts = tuple(complex(z) for z in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise SliceError("empty configuration")
        diam = max((abs(a - b) for a in pts for b in pts), default=0.0)
        scale = max(diam, max(abs(z) for z in pts), 1.0)
        if abs(sum(pts)) > self.tol * scale:
            raise SliceError("configuration is not balanced")
        sep = self.tol * diam
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                if abs(a - b) <= sep or a == b:
                    raise SliceError("configuration points are not distinct")


def slice_point(config: EigenConfiguration) -> np.ndarray:
    """A slice matrix (complex floats) whose eigenvalues are ``config.points``.

    The points are split into two halves; each half gives a monic
    polynomial whose coefficients fill one diagonal entry of every block.
    """
    pts = config.points
    if len(pts) % 2:
        raise SliceError("slice matrices have even size")
    m = len(pts) // 2
    top = np.poly(pts[:m])  # [1, -e1, e2, ...]
    bot = np.poly(pts[m:])
    blocks = []
    for k in range(1, m + 1):
        blocks.append([[-top[k], 0], [0, -bot[k]]])
    M = np.zeros((2 * m, 2 * m), dtype=complex)
    for k, b in enumerate(blocks):
        M[2 * k:2 * k + 2, 0:2] = b
        if k + 1 < m:
            M[2 * k:2 * k + 2, 2 * k + 2:2 * k + 4] = np.eye(2)
    return M
