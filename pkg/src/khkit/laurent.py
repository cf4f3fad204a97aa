"""Exact Laurent polynomials in a variable with half-integer exponents.

A :class:`HalfLaurent` stores ``{numerator: coefficient}`` where the
exponent of the term is ``numerator / 2``.  Coefficients are Python ints,
so arithmetic never rounds.  The same type is used for polynomials in
``t`` (Jones, Alexander) and in ``q`` (Khovanov Euler characteristics);
the variable name only affects printing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisibleError


class HalfLaurent:
    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "t"):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for num, coeff in items:
            num, coeff = int(num), int(coeff)
            acc[num] = acc.get(num, 0) + coeff
        self._terms = {k: v for k, v in acc.items() if v}
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, numerator: int, coeff: int = 1, var: str = "t") -> "HalfLaurent":
        """``coeff * var^(numerator/2)``."""
        return cls({numerator: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t") -> "HalfLaurent":
        return cls({0: c}, var)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]], var: str = "t") -> "HalfLaurent":
        return cls(((int(k), int(c)) for k, c in pairs), var)

    # -- basic access -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, numerator: int) -> int:
        return self._terms.get(numerator, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_numerator(self) -> int:
        return min(self._terms)

    def max_numerator(self) -> int:
        return max(self._terms)

    def pairs(self) -> list[list[int]]:
        """JSON form: sorted ``[numerator, coefficient]`` pairs."""
        return [[k, self._terms[k]] for k in sorted(self._terms)]

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "HalfLaurent":
        if isinstance(other, HalfLaurent):
            return other
        if isinstance(other, int):
            return HalfLaurent.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return HalfLaurent(acc, self.var)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({k: -v for k, v in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                acc[k1 + k2] = acc.get(k1 + k2, 0) + v1 * v2
        return HalfLaurent(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise NotDivisibleError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            if abs(c) != 1:
                raise NotDivisibleError("monomial coefficient is not a unit")
            return HalfLaurent({-k * (-n): c ** (-n)}, self.var)
        result = HalfLaurent.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, numerator: int) -> "HalfLaurent":
        """Multiply by ``var^(numerator/2)``."""
        return HalfLaurent({k + numerator: v for k, v in self._terms.items()}, self.var)

    def divide_exact(self, divisor: "HalfLaurent") -> "HalfLaurent":
        """Exact Laurent division; raises :class:`NotDivisibleError` on a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HalfLaurent({}, self.var)
        lead_k = divisor.max_numerator()
        lead_c = divisor._terms[lead_k]
        low_k = divisor.min_numerator()
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - lead_k < min(self._terms) - low_k:
                break
            c = rem[top]
            if c % lead_c:
                raise NotDivisibleError(f"leading coefficient {c} not divisible by {lead_c}")
            q = c // lead_c
            shift = top - lead_k
            quot[shift] = q
            for k, v in divisor._terms.items():
                nk = k + shift
                nv = rem.get(nk, 0) - q * v
                if nv:
                    rem[nk] = nv
                else:
                    rem.pop(nk, None)
        if rem:
            raise NotDivisibleError(f"{self} is not divisible by {divisor}")
        return HalfLaurent(quot, self.var)

    def substitute_inverse(self) -> "HalfLaurent":
        """``p(var) -> p(var^-1)``."""
        return HalfLaurent({-k: v for k, v in self._terms.items()}, self.var)

    def evaluate(self, value) -> complex | Fraction:
        """Evaluate at ``var = value``; ``value`` is taken as the *square root* base.

        The term with numerator ``k`` contributes ``coeff * value**k``, so pass
        ``sqrt(t)`` to evaluate a polynomial in ``t``.
        """
        return sum(c * value**k for k, c in self._terms.items())

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent.constant(other, self.var)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- printing ---------------------------------------------------------
    def canonical(self) -> str:
        """Canonical text form, terms ascending: ``c*t^(k/2)`` joined by ``+``/``-``."""
        if not self._terms:
            return "0"
        out = []
        for i, k in enumerate(sorted(self._terms)):
            c = self._terms[k]
            body = str(abs(c)) if k == 0 else f"{abs(c)}*{self.var}^({k}/2)"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, k in enumerate(sorted(self._terms)):
            c = self._terms[k]
            if k == 0:
                mono = ""
            else:
                e = Fraction(k, 2)
                mono = self.var if e == 1 else f"{self.var}^{e}" if e.denominator == 1 else f"{self.var}^({e})"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            out.append(("-" if c < 0 else "") + body if i == 0 else f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"HalfLaurent({self.pairs()!r}, var={self.var!r})"


def t_power(numerator: int, coeff: int = 1) -> HalfLaurent:
    """``coeff * t^(numerator/2)``."""
    return HalfLaurent.monomial(numerator, coeff, "t")


def q_power(exponent: int, coeff: int = 1) -> HalfLaurent:
    """``coeff * q^exponent`` (integer exponent, stored as numerator ``2*exponent``)."""
    return HalfLaurent.monomial(2 * exponent, coeff, "q")


def q_polynomial(coeffs: Mapping[int, int]) -> HalfLaurent:
    """Build ``sum coeffs[j] * q^j`` from integer q-exponents."""
    return HalfLaurent({2 * j: c for j, c in coeffs.items()}, "q")


def substitute_q_minus_sqrt_t(p: HalfLaurent) -> HalfLaurent:
    """Substitute ``q = -t^(1/2)``: ``q^k -> (-1)^k t^(k/2)``.

    ``p`` must have integer q-exponents (even numerators).
    """
    out = {}
    for num, c in p.terms.items():
        if num % 2:
            raise ValueError("q-polynomial with a half-integer exponent")
        k = num // 2
        out[k] = -c if k % 2 else c
    return HalfLaurent(out, "t")
