"""Scalar building blocks: Li2, Bernoulli values at 1/2, the derivative
polynomials of Li2(-e^z), and the logarithm of the infinite q-Pochhammer symbol.

Everything here is binary64 except the Bernoulli numbers and the derivative
polynomials, which are exact rationals (cached; ``functools.lru_cache`` is safe
for concurrent readers).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BranchCut, DomainError, VanishingFactor

PI = math.pi
PI2_6 = PI * PI / 6.0


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(nmax: int) -> tuple[Fraction, ...]:
    # B_m = -1/(m+1) sum_{k<m} binom(m+1,k) B_k, convention B_1 = -1/2
    table = [Fraction(1)]
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * table[k]
            binom = binom * (m + 1 - k) // (k + 1)
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    # grow the table in blocks so that the cache holds few entries
    block = max(32, 1 << (n.bit_length()))
    return _bernoulli_table(block)[n]


def bernoulli_half(n: int) -> Fraction:
    """Exact value of the Bernoulli polynomial B_n(x) at x = 1/2.

    Uses B_n(1/2) = (2^(1-n) - 1) B_n, so every odd index gives 0.
    """
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    return (Fraction(2) ** (1 - n) - 1) * bernoulli(n)


# ---------------------------------------------------------------------------
# Derivative polynomials of Li2(-e^z)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial in ``u`` with exact rational coefficients (index = power)."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def times_u_one_minus_u(self) -> "RationalPolynomial":
        out = [Fraction(0)] * (len(self.coefficients) + 2)
        for k, c in enumerate(self.coefficients):
            out[k + 1] += c
            out[k + 2] -= c
        return RationalPolynomial(tuple(out))

    def exact(self, u: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return acc

    def __call__(self, u):
        """Horner evaluation in floating point (scalar or ndarray)."""
        acc = 0.0 * u
        for c in reversed(self.coefficients):
            acc = acc * u + float(c)
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, Sequence):
            return self == RationalPolynomial(tuple(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)


@lru_cache(maxsize=None)
def li2_derivative_poly(k: int) -> RationalPolynomial:
    """P_k with d^k/dz^k Li2(-e^z) = P_k(u), u = 1/(1 + e^{-z}).

    Base case P_2(u) = -u; then P_{k+1} = u(1-u) P_k'(u) since du/dz = u(1-u).
    """
    if k < 2:
        raise DomainError(f"derivative order must be >= 2, got {k}")
    if k == 2:
        return RationalPolynomial((Fraction(0), Fraction(-1)))
    return li2_derivative_poly(k - 1).derivative().times_u_one_minus_u()


def logistic(z):
    """u(z) = 1/(1 + e^{-z}), evaluated without overflow for large |Re z|."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    neg = z.real < 0
    e = np.exp(z[neg])
    out[neg] = e / (1.0 + e)
    out[~neg] = 1.0 / (1.0 + np.exp(-z[~neg]))
    return out[()] if out.ndim == 0 else out


def _check_strip(z: complex, name: str = "z") -> complex:
    z = complex(z)
    if not (abs(z.imag) < PI):
        raise DomainError(f"|Im {name}| must be < pi, got {name}={z}")
    return z


def asymptotic_coefficient(n: int, z) -> complex:
    """Coefficient of tau^(2n-1) in the formal series phi_tau(z).

    ``(2 pi i)^(2n-1) B_{2n}(1/2)/(2n)! * d^{2n}/dz^{2n} Li2(-e^z)``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    z = _check_strip(z)
    scale = bernoulli_half(2 * n) / math.factorial(2 * n)
    deriv = li2_derivative_poly(2 * n)(complex(logistic(z)))
    return (2j * PI) ** (2 * n - 1) * float(scale) * deriv


# ---------------------------------------------------------------------------
# Dilogarithm
# ---------------------------------------------------------------------------

def _bernoulli_li2_coeffs(nterms: int = 40) -> np.ndarray:
    # Li2(w) = sum_k B_k u^{k+1}/(k+1)!,  u = -log(1-w)
    return np.array([float(bernoulli(k) / math.factorial(k + 1))
                     for k in range(nterms)])


_LI2_COEFFS = _bernoulli_li2_coeffs()


def _li2_bernoulli(w: complex) -> complex:
    u = -cmath.log(1.0 - w)
    acc = 0j
    for c in _LI2_COEFFS[::-1]:
        acc = acc * u + c
    return acc * u


def _li2(w: complex) -> complex:
    if w == 0:
        return 0j
    if w == 1:
        return complex(PI2_6)
    if abs(w) > 1.0:
        lg = cmath.log(-w)
        return -PI2_6 - 0.5 * lg * lg - _li2(1.0 / w)
    if w.real > 0.5:
        return PI2_6 - cmath.log(w) * cmath.log(1.0 - w) - _li2_bernoulli(1.0 - w)
    return _li2_bernoulli(w)


def dilog(w, side: int | None = None) -> complex:
    """Principal branch of Li2(w) = sum_{k>=1} w^k / k^2.

    The cut is (1, inf). On the cut pass ``side=+1`` (limit from above) or
    ``side=-1`` (from below); otherwise :class:`BranchCut` is raised.
    """
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"dilog argument must be finite, got {w}")
    if w.imag == 0.0 and w.real > 1.0:
        if side not in (1, -1):
            raise BranchCut(f"Li2 argument {w.real} lies on the cut (1, inf)")
        x = w.real
        lx = math.log(x)
        re = 2.0 * PI2_6 - 0.5 * lx * lx - _li2(complex(1.0 / x)).real
        return complex(re, side * PI * lx)
    return _li2(w)


# ---------------------------------------------------------------------------
# q-Pochhammer
# ---------------------------------------------------------------------------

def _check_q(q: complex) -> complex:
    q = complex(q)
    if not abs(q) < 1.0:
        raise DomainError(f"|q| must be < 1, got |q|={abs(q)}")
    return q


def log_qpochhammer_series(x, q, rtol: float = 1e-17, max_terms: int = 100_000) -> complex:
    """-sum_{j>=1} x^j / (j (1 - q^j)); needs |x| < 1."""
    x, q = complex(x), _check_q(q)
    if not abs(x) < 1.0:
        raise DomainError(f"series path needs |x| < 1, got |x|={abs(x)}")
    total = 0j
    xj, qj = 1 + 0j, 1 + 0j
    for j in range(1, max_terms + 1):
        xj *= x
        qj *= q
        term = xj / (j * (1.0 - qj))
        total -= term
        if abs(term) <= rtol * max(abs(total), 1e-300) and abs(xj) < 1e-3:
            return total
        if xj == 0:
            return total
    return total


def log_qpochhammer_factors(x, q, nfactors: int) -> complex:
    """sum_{k<nfactors} Log(1 - x q^k), principal log of each factor."""
    x, q = complex(x), _check_q(q)
    total = 0j
    y = x
    for _ in range(nfactors):
        f = 1.0 - y
        if f == 0:
            raise VanishingFactor(f"factor 1 - x q^k vanishes for x={x}, q={q}")
        total += cmath.log(f)
        y *= q
    return total


def log_qpochhammer(x, q) -> complex:
    """log (x; q)_inf as the sum of principal logs of the factors 1 - x q^k.

    Large factors (|x q^k| > 1/2) are summed one by one, the remainder by
    the series. The branch is additive, not the principal log of the product.
    """
    x, q = complex(x), _check_q(q)
    if x == 0:
        return 0j
    total = 0j
    y = x
    while abs(y) > 0.5:
        f = 1.0 - y
        if f == 0:
            raise VanishingFactor(f"factor 1 - x q^k vanishes for x={x}, q={q}")
        total += cmath.log(f)
        y *= q
    return total + log_qpochhammer_series(y, q)
