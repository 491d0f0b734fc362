"""Faddeev's quantum dilogarithm Phi_b by three independent routes.

* ``integral``: exp of the contour integral
  int_{R + i eps} e^{-2ixw} / (4 sinh(xb) sinh(x/b) x) dx, for b > 0.
* ``woronowicz``: log Phi_b(z/(2 pi b)) = (i/2pi) W_{1/tau}(z) with
  W_theta(z) = int_R log(1 + e^{theta xi}) / (1 + e^{xi - z}) dxi, tau > 0.
* ``product``: (e^{2 pi b(w + c_b)}; q)_inf / (e^{2 pi b^{-1}(w - c_b)}; qt)_inf
  for Im b^2 != 0 (b -> 1/b maps the lower half-plane to the upper one).

``borel`` evaluates the Borel sum from :mod:`qdilog.laplace`, which agrees
with the Woronowicz integral for tau > 0.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleHit, VanishingFactor
from .laplace import borel_sum
from .quadrature import QuadratureConfig, adaptive_gauss_legendre, boundary_limit
from .special import PI, log_qpochhammer

TWO_PI_I = 2j * PI


class EvalMethod(str, enum.Enum):
    WORONOWICZ = "woronowicz"
    PRODUCT = "product"
    INTEGRAL = "integral"
    BOREL = "borel"


@dataclass(frozen=True)
class BParam:
    """b with tau = b^2, q = e^{2 pi i tau}, qt = e^{-2 pi i/tau},
    c_b = i(b + 1/b)/2. b is normalized to Re b > 0 (Phi_b = Phi_{-b})."""

    b: complex
    tau: complex
    q: complex
    q_tilde: complex
    c_b: complex
    regime: str

    @classmethod
    def from_b(cls, b) -> "BParam":
        b = complex(b)
        if b.real < 0 or (b.real == 0 and b.imag < 0):
            b = -b
        if not b.real > 0:
            raise DomainError(f"b^2 must avoid (-inf, 0], got b={b}")
        tau = b * b
        if tau.imag == 0 and tau.real > 0:
            regime = "positive_tau"
        elif tau.imag > 0:
            regime = "upper"
        else:
            regime = "lower"
        return cls(
            b=b,
            tau=tau,
            q=cmath.exp(TWO_PI_I * tau),
            q_tilde=cmath.exp(-TWO_PI_I / tau),
            c_b=0.5j * (b + 1.0 / b),
            regime=regime,
        )

    @classmethod
    def from_tau(cls, tau) -> "BParam":
        tau = complex(tau)
        if tau.imag == 0 and tau.real <= 0:
            raise DomainError(f"tau must avoid (-inf, 0], got {tau}")
        return cls.from_b(cmath.sqrt(tau))

    def dual(self) -> "BParam":
        """The parameter 1/b (same Phi, q and qt exchanged)."""
        return BParam.from_b(1.0 / self.b)


def _as_bparam(p) -> BParam:
    return p if isinstance(p, BParam) else BParam.from_b(p)


# ---------------------------------------------------------------------------
# Woronowicz integral
# ---------------------------------------------------------------------------

def _log1p_exp(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def woronowicz_W(z, theta: float, cfg: QuadratureConfig | None = None) -> complex:
    """W_theta(z) = int_R log(1 + e^{theta xi}) / (1 + e^{xi - z}) dxi."""
    cfg = cfg or QuadratureConfig()
    z = complex(z)
    if not theta > 0:
        raise DomainError(f"theta must be > 0, got {theta}")
    if not abs(z.imag) < PI:
        raise DomainError(f"|Im z| must be < pi, got z={z}")
    peak = 1.0 / max(abs(1.0 + cmath.exp(1j * z.imag)), 1e-300)
    logk = math.log(10.0 * max(1.0, peak) / cfg.tol)
    # left tail decays like e^{theta xi}, right tail like theta xi e^{-(xi - Re z)}
    lo = min(0.0, z.real) - (logk + 5.0) / theta - 5.0
    hi = max(0.0, z.real) + logk + math.log(theta * (logk + abs(z.real)) + 10.0) + 5.0

    def f(xi):
        w = xi - z
        return _log1p_exp(theta * xi) * _h(w)

    res = adaptive_gauss_legendre(f, lo, hi, cfg.tol, cfg.max_nodes,
                                  breakpoints=(0.0, z.real), min_panels=int(hi - lo) + 1)
    return res.value


def _h(w):
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    pos = w.real > 0
    e = np.exp(-w[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(w[~pos]))
    return out


def log_phi_woronowicz(z, tau, cfg: QuadratureConfig | None = None) -> complex:
    """log Phi_b(z/(2 pi b)) for tau = b^2 > 0."""
    tau = complex(tau)
    if not (tau.imag == 0 and tau.real > 0):
        raise DomainError(f"the Woronowicz integral needs tau > 0, got {tau}")
    return 1j / (2 * PI) * woronowicz_W(z, 1.0 / tau.real, cfg)


# ---------------------------------------------------------------------------
# Contour integral
# ---------------------------------------------------------------------------

def _csch(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=complex)
    out = np.empty_like(y)
    pos = y.real >= 0
    e = np.exp(-y[pos])
    out[pos] = 2.0 * e / (1.0 - e * e)
    e = np.exp(y[~pos])
    out[~pos] = -2.0 * e / (1.0 - e * e)
    return out


def log_phi_integral(w, p, cfg: QuadratureConfig | None = None) -> complex:
    """int_{R + i eps} e^{-2ixw} / (4 sinh(xb) sinh(x/b) x) dx for real b.

    ``p`` is a :class:`BParam` with tau > 0 or a nonzero real b, used as
    given (the integrand is even in b). eps = (pi/2) min(|b|, 1/|b|), half
    way to the first pole off the origin.
    """
    cfg = cfg or QuadratureConfig()
    w = complex(w)
    if isinstance(p, BParam):
        if p.regime != "positive_tau":
            raise DomainError("the contour integral is implemented for real b only")
        b = p.b.real
    else:
        b = complex(p)
        if b.imag != 0 or b.real == 0:
            raise DomainError(f"the contour integral needs real nonzero b, got {p}")
        b = b.real
    s = abs(b) + 1.0 / abs(b)
    rate = s - 2.0 * abs(w.imag)
    if not rate > 0:
        raise DomainError(f"|Im w| must be < (b + 1/b)/2 = {s / 2}, got w={w}")
    eps = 0.5 * PI * min(abs(b), 1.0 / abs(b))
    # |integrand| <~ e^{2 eps |w|} e^{-rate |t|} / |t|
    scale = math.exp(2 * eps * abs(w)) / (eps * eps)
    X = (math.log(10.0 * max(1.0, scale) / cfg.tol)) / rate + 2.0

    def f(t):
        x = t + 1j * eps
        return np.exp(-2j * x * w) * _csch(x * b) * _csch(x / b) / (4.0 * x)

    res = adaptive_gauss_legendre(f, -X, X, cfg.tol, cfg.max_nodes,
                                  breakpoints=(0.0,), min_panels=int(2 * X) + 1)
    return res.value


def phi_integral(w, p, cfg: QuadratureConfig | None = None) -> complex:
    return cmath.exp(log_phi_integral(w, p, cfg))


# ---------------------------------------------------------------------------
# Product formula
# ---------------------------------------------------------------------------

def _upper(p: BParam) -> BParam:
    if p.regime == "upper":
        return p
    if p.regime == "lower":
        return p.dual()
    raise DomainError("the product formula needs Im b^2 != 0 (|q| < 1)")


def log_phi_product(w, p) -> complex:
    """Sum-of-factor-logs of the product formula (branch is additive)."""
    p = _upper(_as_bparam(p))
    w = complex(w)
    b = p.b
    x = cmath.exp(2 * PI * b * (w + p.c_b))
    y = cmath.exp(2 * PI / b * (w - p.c_b))
    try:
        den = log_qpochhammer(y, p.q_tilde)
    except VanishingFactor:
        raise PoleHit(f"w={w} is a pole of Phi_b") from None
    return log_qpochhammer(x, p.q) - den


def phi_product(w, p) -> complex:
    try:
        return cmath.exp(log_phi_product(w, p))
    except PoleHit:
        raise
    except VanishingFactor:
        return 0j


# ---------------------------------------------------------------------------
# Dispatch and identities
# ---------------------------------------------------------------------------

def default_method(p: BParam) -> EvalMethod:
    return EvalMethod.WORONOWICZ if p.regime == "positive_tau" else EvalMethod.PRODUCT


def log_phi(w, p, method: EvalMethod | str | None = None,
            cfg: QuadratureConfig | None = None) -> complex:
    """log Phi_b(w) by the chosen method."""
    p = _as_bparam(p)
    method = EvalMethod(method) if method is not None else default_method(p)
    w = complex(w)
    if method is EvalMethod.PRODUCT:
        return log_phi_product(w, p)
    if method is EvalMethod.INTEGRAL:
        return log_phi_integral(w, p, cfg)
    if p.regime != "positive_tau":
        raise DomainError(f"method {method.value} needs tau > 0")
    z = 2 * PI * p.b.real * w
    if method is EvalMethod.WORONOWICZ:
        return log_phi_woronowicz(z, p.tau, cfg)
    return borel_sum(z, p.tau, cfg)


def phi(w, p, method=None, cfg=None) -> complex:
    return cmath.exp(log_phi(w, p, method, cfg))


_BOUNDARY_H0 = 1e-3


def _boundary_cfg(cfg: QuadratureConfig | None) -> QuadratureConfig:
    cfg = cfg or QuadratureConfig()
    return cfg.with_(pole_exclusion_radius=min(cfg.pole_exclusion_radius, 1e-6))


def _log_phi_z(z: complex, p: BParam, method: EvalMethod, cfg) -> complex:
    """log Phi_b(z/(2 pi b)); on |Im z| = pi the strip methods take the limit
    from inside by Richardson extrapolation."""
    if method in (EvalMethod.PRODUCT, EvalMethod.INTEGRAL):
        return log_phi(z / (2 * PI * p.b), p, method, cfg)
    if abs(abs(z.imag) - PI) < 1e-12:
        sign = 1.0 if z.imag > 0 else -1.0
        bcfg = _boundary_cfg(cfg)
        return boundary_limit(
            lambda h: log_phi(complex(z.real, sign * (PI - h)) / (2 * PI * p.b.real), p, method, bcfg),
            _BOUNDARY_H0)
    return log_phi(z / (2 * PI * p.b.real), p, method, cfg)


def check_functional_eqs(w, p, method: EvalMethod | str | None = None,
                         cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Relative residuals of

        Phi(w - ib/2)   = (1 + e^{2 pi b w})   Phi(w + ib/2)
        Phi(w - i/(2b)) = (1 + e^{2 pi w/b})   Phi(w + i/(2b)).

    For the strip methods (w = z/(2 pi b) with |Im z| < pi) the second pair of
    points has |Im z| = pi and is reached as a limit from inside the strip.
    """
    p = _as_bparam(p)
    method = EvalMethod(method) if method is not None else default_method(p)
    w = complex(w)
    b = p.b
    z = 2 * PI * b * w
    out = []
    for shift, factor in ((0.5j * b, 1 + cmath.exp(2 * PI * b * w)),
                          (0.5j / b, 1 + cmath.exp(2 * PI * w / b))):
        zs = 2 * PI * b * shift
        lm = _log_phi_z(z - zs, p, method, cfg)
        lp = _log_phi_z(z + zs, p, method, cfg)
        out.append(abs(1.0 - factor * cmath.exp(lp - lm)))
    return out[0], out[1]


def phi_zero(p) -> complex:
    """Phi_b(0) = exp(pi i (b^2 + b^-2)/24)."""
    p = _as_bparam(p)
    return cmath.exp(1j * PI * (p.tau + 1.0 / p.tau) / 24.0)


def phi_zero_printed(p) -> complex:
    """q^{1/24} qt^{-1/24} with the powers read as exp(2 pi i tau/24) etc."""
    p = _as_bparam(p)
    return cmath.exp(TWO_PI_I * (p.tau + 1.0 / p.tau) / 24.0)


def check_inversion(w, p, method: EvalMethod | str | None = None,
                    cfg: QuadratureConfig | None = None, phi0=None) -> float:
    """|Phi(w) Phi(-w) - e^{pi i w^2} Phi(0)^2| / |Phi(0)^2|.

    ``phi0`` defaults to the value of Phi_b(0) computed by the same method.
    """
    p = _as_bparam(p)
    w = complex(w)
    if phi0 is None:
        phi0 = phi(0, p, method, cfg)
    lhs = phi(w, p, method, cfg) * phi(-w, p, method, cfg)
    rhs = cmath.exp(1j * PI * w * w) * phi0 * phi0
    return abs(lhs - rhs) / abs(phi0 * phi0)


def poles_zeros(p, bound: float) -> tuple[list[complex], list[complex]]:
    """Poles c_b + i N b + i M/b and zeros -(c_b + i N b + i M/b), N, M >= 0,
    of modulus <= bound, sorted by modulus then (N, M)."""
    p = _as_bparam(p)
    b = p.b
    # Im(i N b + i M/b) = Re b (N + M/|b|^2) gives the index ranges
    nmax = int(bound / b.real) + 1
    mmax = int(bound * abs(b) ** 2 / b.real) + 1
    pts = []
    for n in range(nmax + 1):
        for m in range(mmax + 1):
            v = p.c_b + 1j * n * b + 1j * m / b
            if abs(v) <= bound:
                pts.append((abs(v), n, m, v))
    pts.sort(key=lambda t: t[:3])
    poles = [t[3] for t in pts]
    return poles, [-v for v in poles]


def fourier_sech(w, sigma=0.0, cfg: QuadratureConfig | None = None) -> complex:
    """int_{R + sigma} e^{2 pi i w x} / cosh(pi x) dx; equals 1/cosh(pi w)."""
    cfg = cfg or QuadratureConfig()
    w, sigma = complex(w), complex(sigma)
    if not (abs(w.imag) < 0.5 and abs(sigma.imag) < 0.5):
        raise DomainError("need |Im w| < 1/2 and |Im sigma| < 1/2")
    rate = PI * (1.0 - 2.0 * abs(w.imag))
    scale = math.exp(2 * PI * abs(w) * abs(sigma)) / max(math.cos(PI * sigma.imag), 1e-300)
    X = math.log(20.0 * max(1.0, scale) / cfg.tol) / rate + abs(sigma.real) + 1.0

    def f(t):
        x = t + sigma
        # 1/cosh(pi x) = 2 e^{-pi |x|}/(1 + e^{-2 pi |x|}) with |.| on the real part
        s = np.where(x.real >= 0, 1.0, -1.0)
        e = np.exp(-PI * s * x)
        return np.exp(TWO_PI_I * w * x) * 2.0 * e / (1.0 + e * e)

    res = adaptive_gauss_legendre(f, -X, X, cfg.tol, cfg.max_nodes,
                                  min_panels=int(2 * X) + 1)
    return res.value
