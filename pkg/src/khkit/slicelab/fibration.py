"""Horizontal lifts and parallel transport for polynomial maps ``C^n -> C``.

For a holomorphic ``p`` the gradient is taken as the vector of *conjugated*
partial derivatives, so ``dp_x(grad) = |grad|^2`` and the lift

    V_hor = V * conj(dp) / |dp|^2

satisfies ``dp_x(V_hor) = V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import CriticalPointError, SliceError, TransportError

Monomial = tuple[int, ...]


class Polynomial:
    """Polynomial in ``n`` complex variables stored as ``{exponents: coeff}``."""

    def __init__(self, terms: Mapping[Monomial, object], nvars: int):
        self.nvars = nvars
        self.terms = {tuple(e): c for e, c in terms.items() if c != 0}
        for e in self.terms:
            if len(e) != nvars or any(k < 0 for k in e):
                raise SliceError(f"bad exponent vector {e}")
        self._grad = None

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __call__(self, x):
        total = 0
        for e, c in self.terms.items():
            t = c
            for xi, k in zip(x, e):
                if k:
                    t = t * xi**k
            total = total + t
        return total

    def partial(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0) + c * e[i]
        return Polynomial(out, self.nvars)

    def gradient(self) -> list["Polynomial"]:
        if self._grad is None:
            self._grad = [self.partial(i) for i in range(self.nvars)]
        return self._grad

    def dp(self, x) -> list:
        """Holomorphic partial derivatives at ``x``."""
        return [g(x) for g in self.gradient()]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(t, self.nvars)


def sum_of_squares(n: int) -> Polynomial:
    return Polynomial({tuple(2 if k == i else 0 for k in range(n)): 1 for i in range(n)}, n)


def determinant_polynomial(k: int) -> Polynomial:
    """``det`` on ``k x k`` matrices, variables in row-major order."""
    terms = {}
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        e = [0] * (k * k)
        for r, c in enumerate(perm):
            e[r * k + c] = 1
        terms[tuple(e)] = -1 if inv % 2 else 1
    return Polynomial(terms, k * k)


def constant(c, n: int) -> Polynomial:
    return Polynomial({(0,) * n: c}, n)


def euler_identity_check(p: Polynomial, x: Sequence, rtol: float = 1e-12) -> bool:
    """``dp_x(x) == deg(p) * p(x)``; exact for rational input."""
    if not p.is_homogeneous():
        raise SliceError("Euler identity needs a homogeneous polynomial")
    lhs = sum((d * xi for d, xi in zip(p.dp(x), x)), 0)
    rhs = p.degree * p(x)
    if all(isinstance(v, (int, Fraction)) for v in x):
        return lhs == rhs
    return abs(lhs - rhs) <= rtol * max(1.0, abs(rhs), abs(lhs))


def horizontal_lift(p: Polynomial, x, V: complex, threshold: float = 1e-10) -> np.ndarray:
    """Lift the base vector ``V`` to ``T_x C^n`` along the fibre-orthogonal direction."""
    x = np.asarray(x, dtype=complex)
    g = np.array(p.dp(x), dtype=complex)
    norm2 = float(np.vdot(g, g).real)
    scale = max(1.0, float(np.linalg.norm(x))) ** max(p.degree - 1, 0)
    if norm2 <= (threshold * scale) ** 2:
        raise CriticalPointError(f"|dp| = {np.sqrt(norm2):.3e} at a point too close to the critical locus")
    return V * np.conj(g) / norm2


def lift_norm_bound(p: Polynomial, x, V: complex, threshold: float = 1e-10) -> float:
    """``|V| |x| / (deg p |p(x)|)`` for homogeneous ``p``."""
    if not p.is_homogeneous():
        raise SliceError("the norm bound needs a homogeneous polynomial")
    x = np.asarray(x, dtype=complex)
    px = abs(complex(p(x)))
    if px <= threshold * max(1.0, float(np.linalg.norm(x))) ** p.degree:
        raise CriticalPointError("point lies too close to the zero fibre")
    return abs(V) * float(np.linalg.norm(x)) / (p.degree * px)


@dataclass(frozen=True)
class Path:
    """Piecewise-linear path through complex waypoints."""

    waypoints: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(complex(w) for w in self.waypoints))
        if not self.waypoints:
            raise SliceError("a path needs at least one waypoint")

    @classmethod
    def circle(cls, radius: float = 1.0, n: int = 64, turns: int = 1, start_angle: float = 0.0) -> "Path":
        ang = start_angle + 2 * np.pi * turns * np.arange(n * abs(turns) + 1) / (n * abs(turns))
        if turns < 0:
            ang = start_angle - 2 * np.pi * abs(turns) * np.arange(n * abs(turns) + 1) / (n * abs(turns))
        pts = radius * np.exp(1j * ang)
        pts[-1] = radius * np.exp(1j * start_angle)  # close exactly
        return cls(tuple(pts))

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.waypoints)))

    def __add__(self, other: "Path") -> "Path":
        if abs(self.waypoints[-1] - other.waypoints[0]) > 1e-14 * max(1.0, abs(other.waypoints[0])):
            raise SliceError("paths do not connect")
        return Path(self.waypoints + other.waypoints[1:])

    @property
    def start(self) -> complex:
        return self.waypoints[0]

    @property
    def end(self) -> complex:
        return self.waypoints[-1]

    def segments(self):
        w = self.waypoints
        return [(w[k], w[k + 1]) for k in range(len(w) - 1) if w[k] != w[k + 1]]


def _field(p: Polynomial, a: complex, b: complex) -> Callable:
    dv = b - a

    def f(_s, x):
        return horizontal_lift(p, x, dv)

    return f


def _rk4_segment(f, x, steps):
    h = 1.0 / steps
    s = 0.0
    for _ in range(steps):
        k1 = f(s, x)
        k2 = f(s + h / 2, x + h / 2 * k1)
        k3 = f(s + h / 2, x + h / 2 * k2)
        k4 = f(s + h, x + h * k3)
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s += h
    return x


def _dop853_segment(f, x, rtol, atol):
    n = len(x)

    def real_f(s, y):
        z = f(s, y[:n] + 1j * y[n:])
        return np.concatenate([z.real, z.imag])

    y0 = np.concatenate([x.real, x.imag])
    sol = solve_ivp(real_f, (0.0, 1.0), y0, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise TransportError(f"integrator failed: {sol.message}")
    y = sol.y[:, -1]
    return y[:n] + 1j * y[n:]


def parallel_transport(
    p: Polynomial,
    x0,
    path: Path,
    steps: int = 64,
    method: str = "dop853",
    rtol: float = 1e-12,
    atol: float = 1e-12,
    fibre_tol: float = 1e-8,
) -> np.ndarray:
    """Transport ``x0`` from the fibre over ``path.start`` to the fibre over ``path.end``.

    Each linear segment is integrated on its own, with ``steps`` fixed RK4
    steps per segment (``method="rk4"``) or adaptively (``"dop853"``).
    """
    x = np.asarray(x0, dtype=complex)
    scale = max(1.0, abs(path.start))
    if abs(complex(p(x)) - path.start) > fibre_tol * scale:
        raise TransportError("x0 does not lie on the fibre over the path start")
    for a, b in path.segments():
        if abs(b - a) and min(abs(a), abs(b)) == 0:
            raise TransportError("path runs through the critical value 0")
        f = _field(p, a, b)
        try:
            if method == "rk4":
                x = _rk4_segment(f, x, steps)
            elif method == "dop853":
                x = _dop853_segment(f, x, rtol, atol)
            else:
                raise ValueError(f"unknown method {method!r}")
        except CriticalPointError as exc:
            raise TransportError(f"step control failed near a critical point: {exc}") from exc
        if not np.all(np.isfinite(x)):
            raise TransportError("transport diverged")
    return x


def fibre_drift(p: Polynomial, x, target: complex) -> float:
    return abs(complex(p(x)) - target)
