import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import spence

from qdilog.errors import BranchCut, DomainError, VanishingFactor
from qdilog.special import (
    RationalPolynomial,
    asymptotic_coefficient,
    bernoulli,
    bernoulli_half,
    dilog,
    li2_derivative_poly,
    log_qpochhammer,
    log_qpochhammer_factors,
    log_qpochhammer_series,
    logistic,
)

finite = st.floats(-4, 4, allow_nan=False)


def test_bernoulli_half_values():
    assert bernoulli_half(2) == Fraction(-1, 12)
    assert bernoulli_half(4) == Fraction(7, 240)
    assert bernoulli_half(3) == 0
    assert bernoulli_half(0) == 1


@given(st.integers(0, 60))
def test_bernoulli_half_odd_vanishes(k):
    assert bernoulli_half(2 * k + 1) == 0


def test_bernoulli_known():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(DomainError):
        bernoulli(-1)


def test_derivative_polynomials():
    assert li2_derivative_poly(2) == [0, -1]
    assert li2_derivative_poly(3) == [0, -1, 1]
    assert li2_derivative_poly(4) == [0, -1, 3, -2]
    with pytest.raises(DomainError):
        li2_derivative_poly(1)


@given(st.integers(2, 30))
def test_derivative_polynomial_shape(k):
    p = li2_derivative_poly(k)
    assert p.coefficients[0] == 0
    assert p.degree == k - 1


def test_rational_polynomial_trims():
    p = RationalPolynomial((Fraction(1), Fraction(0), Fraction(0)))
    assert p.coefficients == (1,)
    assert p.exact(Fraction(1, 3)) == 1


@pytest.mark.parametrize("z", [0.0, 1.0, -1 + 0.5j])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_derivative_polynomial_vs_finite_differences(z, k):
    h = 1e-3
    f = lambda t: dilog(-cmath.exp(t))
    second = lambda t: -complex(logistic(t))
    # a 4th difference of f at h=1e-3 drowns in rounding (eps/h^4 ~ 1e-4), so
    # orders 4 and 5 difference the second derivative -u(z) instead
    stencils = {
        2: lambda: (f(z + h) - 2 * f(z) + f(z - h)) / h**2,
        3: lambda: (f(z + 2 * h) - 2 * f(z + h) + 2 * f(z - h) - f(z - 2 * h)) / (2 * h**3),
        4: lambda: (second(z + h) - 2 * second(z) + second(z - h)) / h**2,
        5: lambda: (second(z + 2 * h) - 2 * second(z + h) + 2 * second(z - h)
                    - second(z - 2 * h)) / (2 * h**3),
    }
    exact = li2_derivative_poly(k)(complex(logistic(z)))
    assert abs(stencils[k]() - exact) <= 1e-6 * max(1.0, abs(exact))


def test_asymptotic_coefficient_values():
    assert asymptotic_coefficient(1, 0) == pytest.approx(1j * math.pi / 24, abs=1e-16)
    assert abs(asymptotic_coefficient(2, 0)) < 1e-15
    assert abs(asymptotic_coefficient(1, -60)) < 1e-20
    with pytest.raises(DomainError):
        asymptotic_coefficient(1, 4j)
    with pytest.raises(DomainError):
        asymptotic_coefficient(0, 0)


def test_dilog_values():
    assert dilog(0) == 0
    assert dilog(-1) == pytest.approx(-math.pi**2 / 12, rel=1e-15)
    assert dilog(1) == pytest.approx(math.pi**2 / 6, rel=1e-15)


def test_dilog_direct_series_oracle():
    # accelerated partial sums of sum w^k/k^2
    for w in (0.3, -0.45 + 0.2j, 0.1j):
        k = np.arange(1, 200)
        assert abs(dilog(w) - np.sum(w**k / k**2)) < 1e-15


def test_dilog_branch_cut():
    with pytest.raises(BranchCut):
        dilog(2.0)
    above = dilog(2.0, side=1)
    assert above == pytest.approx(dilog(complex(2.0, 1e-13)), abs=1e-11)
    assert dilog(2.0, side=-1) == pytest.approx(above.conjugate(), abs=1e-15)


@settings(max_examples=300)
@given(finite, finite)
def test_dilog_matches_spence(x, y):
    w = complex(x, y)
    if y == 0 and x > 1:
        return
    ref = complex(spence(1 - w))
    assert abs(dilog(w) - ref) <= 1e-13 * max(1.0, abs(ref))


@given(st.floats(1e-6, 1 - 1e-6))
def test_dilog_reflection(w):
    lhs = dilog(w) + dilog(1 - w)
    rhs = math.pi**2 / 6 - math.log(w) * math.log(1 - w)
    assert abs(lhs - rhs) <= 1e-12


def test_qpochhammer_examples():
    assert log_qpochhammer(0, 0.3) == 0
    direct = log_qpochhammer_factors(0.1, 0.1, 200)
    assert abs(log_qpochhammer(0.1, 0.1) - direct) < 1e-12
    assert abs(log_qpochhammer_series(0.1, 0.1) - direct) < 1e-12
    with pytest.raises(DomainError):
        log_qpochhammer(0.1, 1.0)
    with pytest.raises(VanishingFactor):
        log_qpochhammer(1 / 0.25, 0.5)


@given(st.floats(0.01, 0.99), st.floats(0.0, 0.95))
def test_qpochhammer_real_negative(x, q):
    v = log_qpochhammer(x, q)
    assert v.imag == 0 and v.real < 0


@settings(max_examples=100)
@given(st.floats(0, 0.99), st.floats(-math.pi, math.pi),
       st.floats(0, 0.9), st.floats(-math.pi, math.pi))
def test_qpochhammer_paths_agree(rx, ax, rq, aq):
    x, q = rx * cmath.exp(1j * ax), rq * cmath.exp(1j * aq)
    n = 40 + int(math.log(1e-18) / math.log(max(rq, 1e-3)))
    assert abs(log_qpochhammer_series(x, q) - log_qpochhammer_factors(x, q, max(n, 60))) < 1e-12


def test_qpochhammer_large_argument_is_sum_of_logs():
    q = 0.5 * cmath.exp(0.4j)
    x = 7.0 * cmath.exp(2.9j)
    assert abs(log_qpochhammer(x, q) - log_qpochhammer_factors(x, q, 80)) < 1e-12
