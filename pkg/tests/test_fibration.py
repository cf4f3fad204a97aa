from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from khkit.errors import CriticalPointError, SliceError, TransportError
from khkit.slicelab import (
    Path,
    Polynomial,
    determinant_polynomial,
    euler_identity_check,
    fibre_drift,
    horizontal_lift,
    lift_norm_bound,
    parallel_transport,
    sum_of_squares,
)
from khkit.slicelab.fibration import constant

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def spiral(a, n=8):
    t = np.arange(n + 1) / n
    return Path(tuple(a * np.exp(2j * t) * (1 + 0.7 * t)))


@given(st.lists(small, min_size=3, max_size=3))
def test_euler_identity_exact_sum_of_squares(x):
    assert euler_identity_check(sum_of_squares(3), x)


@given(st.lists(small, min_size=9, max_size=9))
def test_euler_identity_exact_det3(x):
    assert euler_identity_check(determinant_polynomial(3), x)


def test_determinant_polynomial_values():
    p = determinant_polynomial(3)
    M = [[2, 0, 1], [1, 3, 0], [0, 1, 4]]
    assert p([v for row in M for v in row]) == round(np.linalg.det(np.array(M)))


def test_euler_identity_rejects_inhomogeneous():
    p = sum_of_squares(2) + constant(1, 2)
    assert not p.is_homogeneous()
    with pytest.raises(SliceError):
        euler_identity_check(p, [Fraction(1), Fraction(2)])


def test_lift_of_z_squared():
    p = sum_of_squares(1)
    assert horizontal_lift(p, [1.0], 1.0) == pytest.approx([0.5])


@given(st.integers(0, 10**6))
def test_lift_contract(seed):
    rng = np.random.default_rng(seed)
    for p, n in ((sum_of_squares(2), 2), (sum_of_squares(3), 3), (determinant_polynomial(3), 9)):
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        V = complex(rng.normal(), rng.normal())
        lift = horizontal_lift(p, x, V)
        got = np.dot(np.array(p.dp(x)), lift)
        assert abs(got - V) <= 1e-10 * abs(V)
        assert np.linalg.norm(lift) <= lift_norm_bound(p, x, V) * (1 + 1e-12)


def test_critical_point_raises():
    p = sum_of_squares(2)
    with pytest.raises(CriticalPointError):
        horizontal_lift(p, [0, 0], 1.0)
    with pytest.raises(CriticalPointError):
        horizontal_lift(p, [1e-12, 0], 1.0)
    with pytest.raises(CriticalPointError):
        lift_norm_bound(p, [1, 1j], 1.0)  # on the zero fibre


def test_constant_path_is_identity():
    x0 = np.array([0.6, 0.8])
    assert np.allclose(parallel_transport(sum_of_squares(2), x0, Path((1.0, 1.0))), x0)


@pytest.mark.parametrize("method", ["rk4", "dop853"])
def test_loop_around_origin_negates_real_start(method):
    # for sum of squares the monodromy of a real point is x -> -x
    x0 = np.array([0.6, 0.8])
    x = parallel_transport(sum_of_squares(2), x0, Path.circle(1.0, n=32), steps=32, method=method)
    assert np.allclose(x, -x0, atol=1e-9)


def test_forward_then_reverse_returns():
    p = determinant_polynomial(3)
    rng = np.random.default_rng(5)
    x0 = rng.normal(size=9) + 1j * rng.normal(size=9)
    path = spiral(complex(p(x0)))
    y = parallel_transport(p, x0, path)
    assert fibre_drift(p, y, path.end) < 1e-9
    z = parallel_transport(p, y, path.reversed())
    assert np.linalg.norm(z - x0) < 1e-6


def test_integrators_agree():
    p = sum_of_squares(3)
    x0 = np.array([0.3 + 0.2j, 0.5, -0.1j])
    path = spiral(complex(p(x0)))
    a = parallel_transport(p, x0, path, method="rk4", steps=64)
    b = parallel_transport(p, x0, path)
    assert np.linalg.norm(a - b) < 1e-10


def test_rk4_drift_order():
    p = sum_of_squares(2)
    x0 = np.array([0.6 + 0.3j, 0.5 - 0.2j])
    path = spiral(complex(p(x0)))
    drift = [fibre_drift(p, parallel_transport(p, x0, path, steps=n, method="rk4"), path.end) for n in (4, 8, 16)]
    slopes = np.log2(np.array(drift[:-1]) / np.array(drift[1:]))
    assert np.all(np.abs(slopes - 4) < 0.8)


def test_transport_errors():
    p = sum_of_squares(2)
    with pytest.raises(TransportError):
        parallel_transport(p, [1.0, 0.0], Path((2.0, 3.0)))  # not on the start fibre
    with pytest.raises(TransportError):
        parallel_transport(p, [1.0, 0.0], Path((1.0, 0.0)))
    with pytest.raises(SliceError):
        Path((1.0,)) + Path((2.0, 3.0))
