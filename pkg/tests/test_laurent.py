from hypothesis import given, strategies as st

from khkit.errors import NotDivisibleError
from khkit.laurent import HalfLaurent, q_polynomial, substitute_q_minus_sqrt_t, t_power
import pytest

polys = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(HalfLaurent)


def test_zero_coefficients_are_dropped():
    p = HalfLaurent({2: 0, 4: 3})
    assert p.terms == {4: 3}
    assert HalfLaurent({1: 2}) - HalfLaurent({1: 2}) == HalfLaurent()


def test_canonical_text_and_pairs():
    p = HalfLaurent({8: -1, 6: 1, 2: 1})
    assert p.canonical() == "1*t^(2/2) + 1*t^(6/2) - 1*t^(8/2)"
    assert p.pairs() == [[2, 1], [6, 1], [8, -1]]
    assert HalfLaurent.constant(1).canonical() == "1"
    assert HalfLaurent().canonical() == "0"
    assert str(HalfLaurent({1: -1, -1: -1})) == "-t^(-1/2) - t^(1/2)"


def test_substitution_examples():
    assert substitute_q_minus_sqrt_t(q_polynomial({1: 1, -1: 1})) == HalfLaurent({1: -1, -1: -1})
    assert substitute_q_minus_sqrt_t(q_polynomial({0: 1})) == HalfLaurent.constant(1)
    assert substitute_q_minus_sqrt_t(q_polynomial({2: 1})) == t_power(2)


def test_exact_division_and_remainder():
    qq = q_polynomial({1: 1, -1: 1})
    num = q_polynomial({1: 1, 3: 1, 5: 1, 9: -1})
    assert num.divide_exact(qq) == q_polynomial({2: 1, 6: 1, 8: -1})
    with pytest.raises(NotDivisibleError):
        q_polynomial({0: 1}).divide_exact(qq)


def test_negative_power_of_monomial():
    assert t_power(3, -1) ** -2 == t_power(-6)
    with pytest.raises(NotDivisibleError):
        HalfLaurent({0: 1, 2: 1}) ** -1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@given(polys, polys)
def test_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divide_exact(b) == a


@given(polys)
def test_evaluation_is_a_homomorphism(a):
    from fractions import Fraction

    x = Fraction(3, 2)
    assert (a * a).evaluate(x) == a.evaluate(x) ** 2
    assert a.substitute_inverse().substitute_inverse() == a
