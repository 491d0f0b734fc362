"""The Borel transform G(xi, z) of the formal series phi_tau(z), its pole
lattice n * xi_m(z), cone bookkeeping and the uniform bounds.

G(xi, z) = (1/2 pi i) sum_{n>=1} (-1)^n/n^2 [h(xi/n - z) + h(-xi/n - z)],
h(w) = 1/(1 + e^w).

Evaluation strategy (``method="accelerated"``): the poles of h at w = +-i pi
produce the two wall families closest to the positive axis, n * xi_0(z) and
n * xi_{-1}(z). Their contribution summed over n has the closed form

    sum_n (-1)^n/n^2 [-1/(xi/n - a) - 1/(-xi/n - a)] = -(pi^2/a) k(pi xi / a),
    k(s) = (csc s - 1/s)/s,   a = xi_0(z) or xi_{-1}(z),

so only the remainder h(w) + 2w/(w^2 + pi^2), analytic for |Im w| < 3 pi, is
summed termwise: directly for small n and with Cohen-Rodriguez Villegas-Zagier
acceleration for the smooth tail. This stays accurate when |Im z| is close to
pi, where the plain sum needs ~|xi|/(pi - |Im z|) terms.
``method="direct"`` is the plain truncated sum, kept as an oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import CircleOverlapsPole, DomainError, PoleProximity, ZeroIndex
from .quadrature import QuadratureConfig, alternating_sum, contour_average
from .special import PI, bernoulli

TWO_PI_I = 2j * PI
_TAIL_TERMS = 30


def _check_z(z) -> complex:
    z = complex(z)
    if not (abs(z.imag) < PI):
        raise DomainError(f"|Im z| must be < pi, got z={z}")
    return z


# ---------------------------------------------------------------------------
# Elementary pieces
# ---------------------------------------------------------------------------

def _h(w: np.ndarray) -> np.ndarray:
    """1/(1 + e^w) without overflow."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    pos = w.real > 0
    e = np.exp(-w[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(w[~pos]))
    return out


# 1/(1 - e^v) + 1/v = 1/2 - sum_{k>=2} B_k v^{k-1}/k!   (|v| < 2 pi)
_PHI_COEFFS = np.array(
    [0.5] + [-float(bernoulli(k) / math.factorial(k)) for k in range(2, 34)])


def _phi_series(v: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(v)
    for c in _PHI_COEFFS[::-1]:
        acc = acc * v + c
    return acc


def _regular_part(w: np.ndarray) -> np.ndarray:
    """h(w) + 1/(w - i pi) + 1/(w + i pi); no poles for |Im w| < 3 pi."""
    w = np.asarray(w, dtype=complex)
    out = _h(w) + 2.0 * w / (w * w + PI * PI)
    up = np.abs(w - 1j * PI) < 1.0
    if up.any():
        wu = w[up]
        out[up] = _phi_series(wu - 1j * PI) + 1.0 / (wu + 1j * PI)
    dn = np.abs(w + 1j * PI) < 1.0
    if dn.any():
        wd = w[dn]
        out[dn] = _phi_series(wd + 1j * PI) + 1.0 / (wd - 1j * PI)
    return out


# (csc s - 1/s)/s = sum_j c_j s^{2j-2},  c_j = (-1)^{j+1} 2 (2^{2j-1}-1) B_{2j}/(2j)!
_CSC_COEFFS = np.array([
    float((-1) ** (j + 1) * 2 * (2 ** (2 * j - 1) - 1) * bernoulli(2 * j)
          / Fraction(math.factorial(2 * j)))
    for j in range(1, 20)])


def _csc(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    out = np.empty_like(s)
    up = s.imag >= 0
    e = np.exp(1j * s[up])
    out[up] = 2j * e / (e * e - 1.0)
    e = np.exp(-1j * s[~up])
    out[~up] = 2j * e / (1.0 - e * e)
    return out


def _csc_kernel(s: np.ndarray) -> np.ndarray:
    """k(s) = (csc s - 1/s)/s, analytic for |s| < pi."""
    s = np.asarray(s, dtype=complex)
    out = np.empty_like(s)
    small = np.abs(s) < 1.0
    s2 = s[small] ** 2
    acc = np.zeros_like(s2)
    for c in _CSC_COEFFS[::-1]:
        acc = acc * s2 + c
    out[small] = acc
    sl = s[~small]
    out[~small] = (_csc(sl) - 1.0 / sl) / sl
    return out


def _wall_sum(xi: np.ndarray, a: complex) -> np.ndarray:
    return -(PI * PI / a) * _csc_kernel(PI * xi / a)


# ---------------------------------------------------------------------------
# G itself
# ---------------------------------------------------------------------------

def _direct_terms_needed(xi_max: float) -> int:
    # smooth tail needs |xi|/n well inside the 2 pi analyticity radius
    return 12 + int(math.ceil(0.5 * xi_max))


def borel_G_array(xi, z, tail_terms: int = _TAIL_TERMS) -> np.ndarray:
    """Vectorized G(xi, z) for an array of xi (no pole checks)."""
    z = _check_z(z)
    xi = np.asarray(xi, dtype=complex)
    shape = xi.shape
    xi = xi.ravel()
    if xi.size == 0:
        return xi.reshape(shape)
    n0 = _direct_terms_needed(float(np.max(np.abs(xi))))
    n = np.arange(1, n0 + tail_terms, dtype=float)
    t = xi[:, None] / n[None, :]
    terms = (_regular_part(t - z) + _regular_part(-t - z)) / (n * n)[None, :]
    sign = np.where(n[: n0 - 1] % 2 == 0, 1.0, -1.0)
    head = terms[:, : n0 - 1] @ sign
    tail = (1.0 if n0 % 2 == 0 else -1.0) * alternating_sum(terms[:, n0 - 1:])
    walls = _wall_sum(xi, z + 1j * PI) + _wall_sum(xi, z - 1j * PI)
    return ((head + tail + walls) / TWO_PI_I).reshape(shape)


def borel_G_direct(xi, z, nterms: int = 10 ** 6, chunk: int = 200_000):
    """Plain partial sum of the defining series and an analytic tail bound.

    Returns ``(value, tail_bound)``. The tail of an alternating series whose
    terms are b_n/n^2 with |b_n| <= 2B is bounded by 4B/N^2 (first omitted
    term plus the variation of the pairs); B comes from
    :func:`inv_one_plus_exp_bound`.
    """
    z = _check_z(z)
    xi = complex(xi)
    total = 0j
    for start in range(1, nterms + 1, chunk):
        n = np.arange(start, min(start + chunk, nterms + 1), dtype=float)
        t = xi / n
        terms = (_h(t - z) + _h(-t - z)) / (n * n)
        sign = np.where(n % 2 == 0, 1.0, -1.0)
        total += complex(np.sum(terms * sign))
    # beyond N the arguments are within |xi|/N of -z
    drift = abs(xi) / nterms
    im = min(abs(z.imag) + drift, PI - 1e-300)
    bound = inv_one_plus_exp_bound(complex(0.0, im))
    tail = 4.0 * bound / (nterms * nterms) / (2 * PI)
    return total / TWO_PI_I, tail


def borel_G(xi, z, cfg: QuadratureConfig | None = None, method: str = "accelerated") -> complex:
    """G(xi, z) at a single point, refusing points too close to a pole."""
    cfg = cfg or QuadratureConfig()
    z = _check_z(z)
    xi = complex(xi)
    dist, (n, m) = nearest_pole(xi, z)
    if dist < cfg.pole_exclusion_radius * (1.0 + abs(xi)):
        raise PoleProximity(
            f"xi={xi} is {dist:.3e} from the pole n={n}, m={m} of G(., {z})")
    if method == "accelerated":
        return complex(borel_G_array(np.array([xi]), z)[0])
    if method == "direct":
        return borel_G_direct(xi, z)[0]
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Poles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleRecord:
    """Index pair (n, m) of the pole n * xi_m(z) and its residue.

    ``residue`` is the contribution of this index pair, -(-1)^n/(2 pi i n).
    For Re z != 0 the locations of distinct pairs never coincide; for z on
    the imaginary axis they can, and the residues of coinciding pairs add.
    """

    n: int
    m: int
    location: complex
    residue: complex


def xi_m(m: int, z) -> complex:
    return complex(z) + (2 * m + 1) * PI * 1j


def pole_location(n: int, m: int, z) -> complex:
    if n == 0:
        raise ZeroIndex("pole index n must be nonzero")
    return n * xi_m(m, z)


def residue_const(n: int) -> complex:
    """C_n = (-1)^n / (2 pi i n) as printed for the residue lattice."""
    if n == 0:
        raise ZeroIndex("pole index n must be nonzero")
    return (-1) ** (n % 2) / (TWO_PI_I * n)


def pole_residue(n: int) -> complex:
    """Residue of G(., z) contributed by the index pair (n, m); equals -C_n."""
    return -residue_const(n)


def residue_at(location: complex, z, radius_tol: float = 1e-9) -> complex:
    """Total residue of G(., z) at a point: sum over all index pairs there."""
    z = _check_z(z)
    location = complex(location)
    total = 0j
    for rec in enumerate_poles(z, abs(location) + 1.0):
        if abs(rec.location - location) <= radius_tol * (1 + abs(location)):
            total += rec.residue
    return total


def nearest_pole(xi, z) -> tuple[float, tuple[int, int]]:
    """Distance from xi to the nearest lattice point n * xi_m(z) and its index."""
    z = _check_z(z)
    xi = complex(xi)
    rho = min(abs(xi_m(0, z)), abs(xi_m(-1, z)))
    nmax = int((abs(xi) + 2 * PI) / rho) + 1
    j = np.arange(1, nmax + 1, dtype=float)
    best = (math.inf, (0, 0))
    for s in (1, -1):
        w = s * xi / j - z
        m = np.rint((w.imag - PI) / (2 * PI))
        d = j * np.abs(w - 1j * (2 * m + 1) * PI)
        k = int(np.argmin(d))
        if d[k] < best[0]:
            best = (float(d[k]), (int(s * j[k]), int(m[k])))
    return best


def enumerate_poles(z, radius: float) -> list[PoleRecord]:
    """All index pairs (n, m) with |n xi_m(z)| <= radius, sorted by modulus,
    then argument, then (n, m)."""
    z = _check_z(z)
    if not radius > 0:
        return []
    out = []
    nmax = int(radius / (PI - abs(z.imag))) + 1
    for a in range(1, nmax + 1):
        r = radius / a
        # |z + (2m+1) pi i| <= r  =>  |(2m+1) pi + Im z| <= r
        m_lo = math.floor((-z.imag - r) / (2 * PI) - 0.5) - 1
        m_hi = math.ceil((-z.imag + r) / (2 * PI) - 0.5) + 1
        for m in range(m_lo, m_hi + 1):
            for n in (a, -a):
                loc = pole_location(n, m, z)
                if abs(loc) <= radius:
                    out.append(PoleRecord(n, m, loc, pole_residue(n)))
    out.sort(key=lambda p: (abs(p.location), math.atan2(p.location.imag, p.location.real), p.n, p.m))
    return out


def numeric_residue(n: int, m: int, z, cfg: QuadratureConfig | None = None,
                    nodes: int = 256) -> complex:
    """(1/2 pi i) times the integral of G over a circle around n xi_m(z).

    Trapezoidal rule; the circle radius is ``cfg.residue_circle_radius``. Any
    other pole location within 1.2 radii raises :class:`CircleOverlapsPole`.
    """
    cfg = cfg or QuadratureConfig()
    z = _check_z(z)
    center = pole_location(n, m, z)
    r = cfg.residue_circle_radius
    for rec in enumerate_poles(z, abs(center) + 1.2 * r + 1e-12):
        d = abs(rec.location - center)
        if 1e-12 * (1 + abs(center)) < d < 1.2 * r:
            raise CircleOverlapsPole(
                f"pole n={rec.n}, m={rec.m} at {rec.location} lies {d:.3g} from "
                f"the centre; radius {r} too large")
    return contour_average(lambda p: borel_G_array(p, z), center, r, nodes)


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------

class _OnWall:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OnWall"


OnWall = _OnWall()
ConeIndex = Union[int, _OnWall]

WALL_ANGLE_TOL = 1e-12


def _line_angle(theta: float) -> float:
    """Reduce a direction modulo pi into (-pi/2, pi/2]."""
    t = math.fmod(theta + PI / 2, PI)
    if t <= 0:
        t += PI
    return t - PI / 2


def wall_angle(m: int, z) -> float:
    """Direction of the line R * xi_m(z), in (-pi/2, pi/2]."""
    w = xi_m(m, z)
    return _line_angle(math.atan2(w.imag, w.real))


def _walls_between(z: complex, lo: float, hi: float) -> list[tuple[float, int]]:
    """Walls with direction in the open interval (lo, hi), lo, hi in (-pi/2, pi/2)."""
    x, y = z.real, z.imag
    # wall m has slope ((2m+1) pi + y)/x, monotone in m
    s_lo, s_hi = math.tan(lo), math.tan(hi)
    b1 = ((s_lo * x - y) / PI - 1) / 2
    b2 = ((s_hi * x - y) / PI - 1) / 2
    m_lo, m_hi = math.floor(min(b1, b2)) - 1, math.ceil(max(b1, b2)) + 1
    out = []
    for m in range(m_lo, m_hi + 1):
        a = wall_angle(m, z)
        if lo < a < hi:
            out.append((a, m))
    out.sort()
    return out


def cone_of(theta: float, z) -> ConeIndex:
    """Index of the cone of the wall arrangement containing direction theta.

    Walls are lines, so theta is taken modulo pi. C_0(z) is the cone holding
    the positive real axis; the index grows by one for every wall crossed
    counterclockwise from it and drops by one clockwise. Directions within
    1e-12 of a wall give ``OnWall``.
    """
    z = _check_z(z)
    t = _line_angle(float(theta))
    if abs(abs(t) - PI / 2) < WALL_ANGLE_TOL:
        raise DomainError(
            "theta = +-pi/2 is the accumulation direction of the walls, not a cone")
    if z.real == 0.0:
        return 0
    for m in _nearby_walls(t, z):
        if abs(wall_angle(m, z) - t) < WALL_ANGLE_TOL:
            return OnWall
    if t > 0:
        return len(_walls_between(z, 0.0, t))
    if t < 0:
        return -len(_walls_between(z, t, 0.0))
    return 0


def _nearby_walls(t: float, z: complex) -> range:
    b = ((math.tan(t) * z.real - z.imag) / PI - 1) / 2
    return range(math.floor(b) - 1, math.ceil(b) + 2)


def cone_bounds(k: int, z) -> tuple[float, float]:
    """Open angular interval (lo, hi) of cone C_k(z), as line directions."""
    z = _check_z(z)
    if z.real == 0.0:
        return (-PI / 2, PI / 2)
    if k >= 0:
        walls = [a for a, _ in _walls_between(z, 0.0, _angle_after(k + 1, z))]
        lo = walls[k - 1] if k >= 1 else _last_negative_wall(z)
        hi = walls[k]
        return (lo, hi)
    walls = [a for a, _ in reversed(_walls_between(z, _angle_before(-k + 1, z), 0.0))]
    hi = walls[-k - 1]
    lo = walls[-k]
    return (lo, hi)


def _angle_after(count: int, z: complex) -> float:
    # direction just below pi/2 past at least ``count`` positive walls
    t = PI / 2 - 0.5
    while len(_walls_between(z, 0.0, t)) < count:
        t = PI / 2 - (PI / 2 - t) / 4
    return t


def _angle_before(count: int, z: complex) -> float:
    t = -PI / 2 + 0.5
    while len(_walls_between(z, t, 0.0)) < count:
        t = -PI / 2 + (t + PI / 2) / 4
    return t


def _last_negative_wall(z: complex) -> float:
    return _walls_between(z, _angle_before(1, z), 0.0)[-1][0]


def cone_midpoint(k: int, z) -> float:
    lo, hi = cone_bounds(k, z)
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaStrip:
    """S_delta: points within distance delta of the ray [0, inf)."""

    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be positive")

    def contains(self, xi) -> bool:
        xi = complex(xi)
        if xi.real >= 0:
            return abs(xi.imag) < self.delta
        return abs(xi) < self.delta

    def sample(self, rng: np.random.Generator, size: int, reach: float = 40.0) -> np.ndarray:
        """Uniform points of S_delta with real part below ``reach``."""
        out = []
        while len(out) < size:
            x = rng.uniform(-self.delta, reach)
            y = rng.uniform(-self.delta, self.delta)
            p = complex(x, y)
            if self.contains(p):
                out.append(p)
        return np.array(out)


def sup_bound_G(z, delta: float) -> float:
    """L = max{2, pi^2 / (3 sin(|Im z| + delta))}, bounding |G| on S_delta."""
    z = complex(z)
    if not (0 < delta < PI - abs(z.imag)):
        raise DomainError(f"need 0 < delta < pi - |Im z|, got delta={delta}, z={z}")
    return max(2.0, PI * PI / (3.0 * math.sin(abs(z.imag) + delta)))


def inv_one_plus_exp_bound(z) -> float:
    """Bound on 1/|1 + e^w| over all w with Im w = Im z."""
    z = complex(z)
    if not abs(z.imag) < PI:
        raise DomainError(f"|Im z| must be < pi, got z={z}")
    a = z.imag
    if math.cos(a) >= 0:
        return 1.0
    return 1.0 / abs(math.sin(a))


def taylor_coefficients_G(z, kmax: int, nodes: int = 256):
    """Taylor coefficients of G(., z) at 0 up to order ``kmax`` with their
    Cauchy scales, from a circle of half the distance to the nearest pole."""
    from .quadrature import taylor_coefficients

    z = _check_z(z)
    r = 0.5 * min(abs(xi_m(0, z)), abs(xi_m(-1, z)))
    return taylor_coefficients(lambda p: borel_G_array(p, z), 0.0, r, kmax, nodes)
