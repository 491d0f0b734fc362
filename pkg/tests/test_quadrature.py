import math

import numpy as np
import pytest

from qdilog.errors import DomainError, NonConvergence
from qdilog.quadrature import (
    QuadratureConfig,
    adaptive_gauss_legendre,
    alternating_sum,
    boundary_limit,
    contour_average,
    crvz_weights,
    extrapolate_to_zero,
    taylor_coefficients,
)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(tol=1e-16)
    with pytest.raises(DomainError):
        QuadratureConfig(max_nodes=10)
    with pytest.raises(DomainError):
        QuadratureConfig(residue_circle_radius=0)
    assert QuadratureConfig().with_(tol=1e-8).tol == 1e-8


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("QDILOG_TOL", "1e-7")
    assert QuadratureConfig.from_env().tol == 1e-7
    monkeypatch.setenv("QDILOG_TOL", "x")
    with pytest.raises(DomainError):
        QuadratureConfig.from_env()
    monkeypatch.delenv("QDILOG_TOL")
    assert QuadratureConfig.from_env().tol == 1e-10


def test_gauss_legendre_smooth():
    r = adaptive_gauss_legendre(np.exp, 0.0, 3.0, 1e-13)
    assert abs(r.value - (math.exp(3) - 1)) < 1e-12


def test_gauss_legendre_near_singularity():
    f = lambda t: 1.0 / (t * t + 1e-6)
    r = adaptive_gauss_legendre(f, -1.0, 1.0, 1e-9, breakpoints=[0.0])
    exact = 2e3 * math.atan(1e3)
    assert abs(r.value - exact) < 1e-9 * exact
    assert r.error < 1e-9


def test_gauss_legendre_complex_oscillatory():
    r = adaptive_gauss_legendre(lambda t: np.exp(30j * t), 0.0, 1.0, 1e-12)
    assert abs(r.value - (np.exp(30j) - 1) / 30j) < 1e-12


def test_gauss_legendre_budget():
    with pytest.raises(NonConvergence):
        adaptive_gauss_legendre(lambda t: np.abs(t - 0.3) ** -0.9, 0.0, 1.0, 1e-12, max_nodes=500)


def test_gauss_legendre_empty_and_reversed():
    assert adaptive_gauss_legendre(np.exp, 1.0, 1.0, 1e-10).value == 0
    with pytest.raises(DomainError):
        adaptive_gauss_legendre(np.exp, 1.0, 0.0, 1e-10)


def test_crvz_alternating_sums():
    n = np.arange(1, 40, dtype=float)
    assert abs(alternating_sum(1 / n**2) - math.pi**2 / 12) < 1e-15
    assert abs(alternating_sum(1 / n) - math.log(2)) < 1e-15
    assert crvz_weights(30).sum() == pytest.approx(0.5, abs=1e-13)


def test_contour_average_residue():
    # (1/2 pi i) int dz/(z - 0.1) around 0 is 1
    assert abs(contour_average(lambda z: 1 / (z - 0.1), 0, 0.5) - 1) < 1e-15


def test_taylor_coefficients_exp():
    c, scale = taylor_coefficients(np.exp, 0.0, 1.0, 8)
    exact = [1 / math.factorial(k) for k in range(9)]
    assert np.max(np.abs(c - exact)) < 1e-15
    assert np.all(scale >= np.abs(exact))


def test_extrapolation():
    g = lambda h: 2.0 + 3 * h - h * h
    assert abs(boundary_limit(g, 1e-2) - 2.0) < 1e-14
    assert abs(extrapolate_to_zero([1, 2], [3, 5]) - 1) < 1e-15
