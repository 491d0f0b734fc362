"""Laplace transforms of G along rays, the Borel sum of phi_tau(z), its
truncations with the Watson-type error bound, and the Stokes jumps between
adjacent cones.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .borel import (
    OnWall,
    borel_G_array,
    cone_midpoint,
    cone_of,
    enumerate_poles,
    sup_bound_G,
)
from .errors import DomainError, RayHitsPole, SectorError
from .quadrature import QuadratureConfig, adaptive_gauss_legendre
from .special import PI, asymptotic_coefficient, dilog, log_qpochhammer

_BREAKPOINT_REACH = 1.0


@dataclass(frozen=True)
class RaySpec:
    """The ray {t e^{i theta} : t >= 0}; ``truncation`` overrides the cutoff."""

    theta: float = 0.0
    truncation: float | None = None

    @classmethod
    def in_cone(cls, k: int, z) -> "RaySpec":
        """Ray through the angular midpoint of cone k."""
        return cls(cone_midpoint(k, z))


def _decay_rate(theta: float, tau: complex) -> float:
    return (cmath.exp(1j * theta) / tau).real


def _ray_sup(z: complex, direction: complex, T: float) -> float:
    t = np.linspace(0.0, T, 65)
    return float(np.max(np.abs(borel_G_array(t * direction, z))))


def laplace_ray(z, tau, ray: RaySpec | float = 0.0, cfg: QuadratureConfig | None = None) -> complex:
    """int_0^inf e^{-t e^{i theta}/tau} G(t e^{i theta}, z) e^{i theta} dt."""
    cfg = cfg or QuadratureConfig()
    if not isinstance(ray, RaySpec):
        ray = RaySpec(float(ray))
    z, tau = complex(z), complex(tau)
    if not abs(z.imag) < PI:
        raise DomainError(f"|Im z| must be < pi, got z={z}")
    c = _decay_rate(ray.theta, tau)
    if not c > 0:
        raise SectorError(
            f"Re(e^(i theta)/tau) = {c:.3e} <= 0: ray theta={ray.theta} does not "
            f"decay for tau={tau}")
    direction = cmath.exp(1j * ray.theta)

    if ray.truncation is not None:
        T = ray.truncation
    elif cfg.truncation_radius is not None:
        T = cfg.truncation_radius
    else:
        # first guess from a unit bound, then refine with the sampled sup
        T = math.log(10.0 / cfg.tol) / c
        sup = 10.0 * max(1.0, _ray_sup(z, direction, T))
        T = math.log(10.0 * sup / cfg.tol) / c

    breaks = []
    for rec in enumerate_poles(z, T + _BREAKPOINT_REACH):
        p = rec.location * direction.conjugate()
        t, dist = p.real, abs(p.imag)
        if t < 0:
            dist = abs(p)
        if dist < cfg.pole_exclusion_radius * (1.0 + abs(rec.location)):
            raise RayHitsPole(
                f"ray theta={ray.theta} passes {dist:.3e} from the pole "
                f"n={rec.n}, m={rec.m} at {rec.location}")
        if dist < _BREAKPOINT_REACH and 0 < t < T:
            breaks.append(t)

    def integrand(t):
        xi = t * direction
        return np.exp(-xi / tau) * borel_G_array(xi, z) * direction

    res = adaptive_gauss_legendre(integrand, 0.0, T, cfg.tol, cfg.max_nodes,
                                  breakpoints=breaks, min_panels=max(1, int(T)))
    return res.value


def borel_sum(z, tau, cfg: QuadratureConfig | None = None, theta: float = 0.0) -> complex:
    """Li2(-e^z)/(2 pi i tau) + Laplace transform of G along the ray theta.

    For tau = b^2 > 0 this is log Phi_b(z/(2 pi b)).
    """
    z, tau = complex(z), complex(tau)
    if theta == 0.0 and not tau.real > 0:
        raise DomainError(f"borel_sum along the positive axis needs Re tau > 0, got {tau}")
    lead = dilog(-cmath.exp(z)) / (2j * PI * tau)
    return lead + laplace_ray(z, tau, RaySpec(theta), cfg)


def truncated_series(z, tau, N: int) -> complex:
    """sum_{n=1}^N a_n(z) tau^(2n-1)."""
    if N < 0:
        raise DomainError("N must be >= 0")
    tau = complex(tau)
    return sum((asymptotic_coefficient(n, z) * tau ** (2 * n - 1) for n in range(1, N + 1)), 0j)


def watson_bound(z, tau, delta: float, N: int) -> float:
    """L M^{2N} (2N)! Re(tau) |tau|^{2N} with L = sup_bound_G(z, delta), M = 2/delta."""
    tau = complex(tau)
    if not tau.real > 0:
        raise DomainError(f"Re tau must be > 0, got {tau}")
    if N < 0:
        raise DomainError("N must be >= 0")
    L = sup_bound_G(z, delta)
    M = 2.0 / delta
    # log form avoids overflow of (2N)! for large N
    log_b = (math.log(L) + 2 * N * math.log(M) + math.lgamma(2 * N + 1)
             + math.log(tau.real) + 2 * N * math.log(abs(tau)))
    return math.exp(log_b) if log_b < 700 else math.inf


def optimal_truncation(z, tau, delta: float, nmax: int = 200) -> int:
    """argmin of watson_bound over N in [0, nmax], ties to the smaller N."""
    values = [watson_bound(z, tau, delta, N) for N in range(nmax + 1)]
    return int(np.argmin(values))


def _check_stokes(z: complex, tau: complex, m: int):
    if not tau.imag > 0:
        raise DomainError(f"Stokes jumps need Im tau > 0, got {tau}")
    if not z.real < 0:
        raise DomainError(f"Stokes jumps need Re z < 0, got {z}")
    if not abs(z.imag) < PI:
        raise DomainError(f"|Im z| must be < pi, got z={z}")
    if m < 0:
        raise DomainError("m must be >= 0")


def stokes_jump(z, tau, m: int, form: str = "q") -> complex:
    """log(1 + e^{z/tau} qt^{m+1/2}), qt = e^{-2 pi i/tau}.

    The transform gains this amount when the ray turns counterclockwise
    across the line through xi_{-m-1}(z), i.e. from cone m to cone m+1.
    ``form="xi"`` evaluates the same quantity as log(1 + e^{xi_{-m-1}(z)/tau}).
    """
    z, tau = complex(z), complex(tau)
    _check_stokes(z, tau, m)
    if form == "q":
        # qt^{m+1/2} means exp(-2 pi i (m+1/2)/tau); a principal power of qt
        # can pick the other square root
        x = cmath.exp(z / tau) * cmath.exp(-2j * PI * (m + 0.5) / tau)
    elif form == "xi":
        x = cmath.exp((z - (2 * m + 1) * PI * 1j) / tau)
    else:
        raise DomainError(f"unknown form {form!r}")
    return cmath.log(1.0 + x)


def laplace_vertical(z, tau, cfg: QuadratureConfig | None = None) -> complex:
    """Laplace transform of G along the positive imaginary axis."""
    z, tau = complex(z), complex(tau)
    if z.real == 0:
        raise DomainError("the imaginary axis meets the poles when Re z = 0")
    if not z.real < 0:
        raise DomainError(f"laplace_vertical needs Re z < 0, got {z}")
    if not tau.imag > 0:
        raise DomainError(f"laplace_vertical needs Im tau > 0, got {tau}")
    return laplace_ray(z, tau, RaySpec(PI / 2), cfg)


def vertical_closed_form(z, tau) -> complex:
    """log(-q^{1/2} e^z; q)_inf - Li2(-e^z)/(2 pi i tau), q = e^{2 pi i tau}.

    The value laplace_vertical should reproduce.
    """
    z, tau = complex(z), complex(tau)
    q = cmath.exp(2j * PI * tau)
    x = -cmath.exp(1j * PI * tau) * cmath.exp(z)
    return log_qpochhammer(x, q) - dilog(-cmath.exp(z)) / (2j * PI * tau)


def stokes_difference(z, tau, m: int, cfg: QuadratureConfig | None = None) -> complex:
    """laplace_ray on the mid-ray of cone m+1 minus that of cone m."""
    z = complex(z)
    for k in (m, m + 1):
        if cone_of(cone_midpoint(k, z), z) is OnWall:
            raise RayHitsPole("cone midpoint landed on a wall")
    a = laplace_ray(z, tau, RaySpec.in_cone(m + 1, z), cfg)
    b = laplace_ray(z, tau, RaySpec.in_cone(m, z), cfg)
    return a - b
