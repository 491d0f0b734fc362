"""Registry of identity checks and the suite runner.

Each check evaluates one identity on a fixed grid and reports the largest
residual together with the parameters where it occurred. Random point sets
use ``SEED``; nothing else is random, so two runs give identical reports up
to the timing fields.
"""
from __future__ import annotations

import cmath
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import borel, faddeev, laplace
from .errors import QdilogError, UnknownCheck
from .quadrature import QuadratureConfig
from .special import PI, asymptotic_coefficient

SEED = 20240417

Sample = tuple[float, dict]


def fmt_complex(v) -> str:
    v = complex(v)
    return f"{v.real:.17g}{v.imag:+.17g}i"


def _params(**kw) -> dict:
    return {k: (fmt_complex(v) if isinstance(v, complex) else v) for k, v in kw.items()}


@dataclass(frozen=True)
class CheckSpec:
    name: str
    tol: float
    run: Callable[[QuadratureConfig], Iterator[Sample]]
    fast: bool = True
    doc: str = ""


@dataclass
class CheckResult:
    name: str
    max_residual: float | None
    tol: float
    passed: bool
    seconds: float
    worst_params: dict = field(default_factory=dict)
    error: str | None = None


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [
                {
                    "name": c.name,
                    "max_residual": c.max_residual,
                    "tol": c.tol,
                    "pass": c.passed,
                    "seconds": c.seconds,
                    "worst_params": c.worst_params,
                    **({"error": c.error} if c.error else {}),
                }
                for c in self.checks
            ],
            "pass": self.passed,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


REGISTRY: dict[str, CheckSpec] = {}


def register(name: str, tol: float, fast: bool = True):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"check {name} registered twice")
        REGISTRY[name] = CheckSpec(name, tol, fn, fast, (fn.__doc__ or "").strip())
        return fn
    return deco


# ---------------------------------------------------------------------------
# Borel plane
# ---------------------------------------------------------------------------

@register("g_evenness", 1e-12)
def _g_evenness(cfg):
    """G(xi, z) = G(-xi, z)."""
    rng = np.random.default_rng(SEED)
    for z in (0.0, 1.0, -1 + 0.5j, 0.3 - 2.5j):
        xs = rng.uniform(-8, 8, 20) + 1j * rng.uniform(-2, 2, 20)
        for xi in xs:
            r = abs(borel.borel_G(xi, z, cfg) - borel.borel_G(-xi, z, cfg))
            yield r, _params(xi=complex(xi), z=complex(z))


def coefficient_match(z, n_max: int = 6, cfg: QuadratureConfig | None = None) -> list[float]:
    """Relative residuals between the Taylor coefficients of G(., z) at 0
    and a_n(z)/(2n-2)!, n = 1..n_max. Vanishing coefficients are measured
    against their Cauchy scale."""
    if n_max > 8:
        raise ValueError("n_max must be <= 8")
    coeffs, scale = borel.taylor_coefficients_G(z, 2 * n_max - 2)
    out = []
    for n in range(1, n_max + 1):
        k = 2 * n - 2
        expected = asymptotic_coefficient(n, z) / math.factorial(k)
        denom = abs(expected) if abs(expected) > 1e-8 * scale[k] else scale[k]
        out.append(abs(coeffs[k] - expected) / denom)
    return out


@register("coefficient_match", 1e-6)
def _coefficient_match(cfg):
    """Taylor coefficients of G at 0 equal the series coefficients over (2n-2)!."""
    for z in (0.0, 1.0, -1.0, 0.5 + 0.5j):
        for n, r in enumerate(coefficient_match(z, 6, cfg), start=1):
            yield r, _params(z=complex(z), n=n)


@register("residue_lattice", 1e-9)
def _residue_lattice(cfg):
    """Contour residue at n xi_m(z) equals the summed residues of all index
    pairs located there."""
    for z in (0.0, 1.0, -1 + 0.5j):
        for n in (1, -1, 2, -2):
            for m in (-1, 0, 1):
                num = borel.numeric_residue(n, m, z, cfg)
                exact = borel.residue_at(borel.pole_location(n, m, z), z)
                yield abs(num - exact), _params(z=complex(z), n=n, m=m)


@register("bound_sweep", 0.0)
def _bound_sweep(cfg):
    """|G| <= L on S_delta, delta = 0.5; residual is the excess."""
    strip = borel.DeltaStrip(0.5)
    for z in (0.0, 1 + 0.6j):
        pts = strip.sample(np.random.default_rng(SEED), 200)
        vals = np.abs(borel.borel_G_array(pts, z))
        L = borel.sup_bound_G(z, 0.5)
        k = int(np.argmax(vals))
        yield max(0.0, float(vals[k]) - L), _params(z=complex(z), xi=complex(pts[k]), L=L)


@register("pole_completeness", 1e-4)
def _pole_completeness(cfg):
    """Each enumerated pole shows a simple-pole blow-up of the expected
    residue; random points away from the list show none."""
    z = 1.0
    poles = borel.enumerate_poles(z, 12.0)
    d = 1e-4
    for rec in poles:
        u = rec.location / abs(rec.location)
        gp = borel.borel_G_array(np.array([rec.location + d * u, rec.location - d * u]), z)
        # (G(p+d) - G(p-d)) d/2 -> residue/u
        est = (gp[0] - gp[1]) * d * u / 2
        yield abs(est - rec.residue) / abs(rec.residue), _params(n=rec.n, m=rec.m)
    rng = np.random.default_rng(SEED)
    locs = np.array([p.location for p in poles])
    count = 0
    while count < 50:
        x = complex(rng.uniform(-12, 12), rng.uniform(-12, 12))
        dist = float(np.min(np.abs(locs - x)))
        if dist < 0.05 or abs(x) > 11.5:
            continue
        count += 1
        g = abs(complex(borel.borel_G_array(np.array([x]), z)[0]))
        # away from poles |G| * dist stays at the residue scale 1/(2 pi)
        yield max(0.0, g * min(dist, 1.0) - 1.0), _params(xi=x)


# ---------------------------------------------------------------------------
# Laplace transforms
# ---------------------------------------------------------------------------

BOREL_GRID_TAU = (0.3, 0.7, 1.0, 1.5)
BOREL_GRID_Z = (0.0, 1.0, -1.0, 0.8j, -2 + 0.8j)


@register("borel_vs_woronowicz", 1e-8)
def _borel_vs_woronowicz(cfg):
    """Borel sum equals log Phi_b(z/(2 pi b)) from the Woronowicz integral."""
    for tau in BOREL_GRID_TAU:
        for z in BOREL_GRID_Z:
            a = laplace.borel_sum(z, tau, cfg)
            b = faddeev.log_phi_woronowicz(z, tau, cfg)
            yield abs(a - b), _params(z=complex(z), tau=tau)


@register("watson_bound", 0.0)
def _watson_bound(cfg):
    """Truncation error of the series never exceeds the Watson bound."""
    for z in (0.0, 1.0):
        for tau in (0.05, 0.1, 0.2):
            lap = laplace.laplace_ray(z, tau, 0.0, cfg)
            for N in range(5):
                err = abs(lap - laplace.truncated_series(z, tau, N))
                bound = laplace.watson_bound(z, tau, 1.0, N)
                yield max(0.0, err - bound), _params(z=complex(z), tau=tau, N=N)


def _functional_residuals(which: int, cfg):
    for tau in (0.3, 0.7):
        p = faddeev.BParam.from_tau(tau)
        for z in (0.0, -1.0, 0.5):
            w = z / (2 * PI * p.b.real)
            r = faddeev.check_functional_eqs(w, p, "borel", cfg)[which]
            yield r, _params(z=complex(z), tau=tau)


@register("functional_eq_tau", 1e-7)
def _functional_eq_tau(cfg):
    """f(z - i pi tau) = (1 + e^z) f(z + i pi tau) for f = exp(Borel sum)."""
    yield from _functional_residuals(0, cfg)


@register("functional_eq_dual", 1e-7, fast=False)
def _functional_eq_dual(cfg):
    """f(z - i pi) = (1 + e^{z/tau}) f(z + i pi), as limits from the strip."""
    yield from _functional_residuals(1, cfg)


@register("cone_independence", 1e-10)
def _cone_independence(cfg):
    """The ray transform is constant over rays inside one cone."""
    z, tau = -1.0, 0.5
    for k in (0, 1):
        lo, hi = borel.cone_bounds(k, z)
        thetas = lo + (hi - lo) * np.linspace(0.1, 0.9, 5)
        if k == 0:
            thetas = np.linspace(-0.9, 0.9, 5)
        vals = [laplace.laplace_ray(z, tau, float(t), cfg) for t in thetas]
        ref = vals[2]
        for t, v in zip(thetas, vals):
            yield abs(v - ref), _params(cone=k, theta=float(t))


STOKES_Z, STOKES_TAU = -1.0, 0.2 + 0.5j


@register("stokes_jumps", 1e-8)
def _stokes_jumps(cfg):
    """Crossing the wall from cone m to m+1 adds log(1 + e^{z/tau} qt^{m+1/2})."""
    for m in range(3):
        d = laplace.stokes_difference(STOKES_Z, STOKES_TAU, m, cfg)
        yield abs(d - laplace.stokes_jump(STOKES_Z, STOKES_TAU, m)), _params(m=m)


@register("stokes_telescoping", 1e-7)
def _stokes_telescoping(cfg):
    """Vertical minus horizontal transform equals the sum of the jumps."""
    for z, tau in ((STOKES_Z, STOKES_TAU), (-2.0, 0.2 + 0.6j)):
        diff = laplace.laplace_vertical(z, tau, cfg) - laplace.laplace_ray(z, tau, 0.0, cfg)
        total = sum(laplace.stokes_jump(z, tau, m) for m in range(41))
        yield abs(diff - total), _params(z=complex(z), tau=complex(tau), M=40)


@register("vertical_qpochhammer", 1e-7)
def _vertical_qpochhammer(cfg):
    """Vertical transform = log(-q^{1/2} e^z; q) - Li2(-e^z)/(2 pi i tau)."""
    for z, tau in ((-2.0, 0.2 + 0.6j), (STOKES_Z, STOKES_TAU), (-0.5 + 1j, 0.3 + 0.3j)):
        v = laplace.laplace_vertical(z, tau, cfg)
        yield abs(v - laplace.vertical_closed_form(z, tau)), _params(z=complex(z), tau=complex(tau))


# ---------------------------------------------------------------------------
# Phi_b
# ---------------------------------------------------------------------------

PRODUCT_BS = (cmath.exp(1j * PI / 8), cmath.exp(1j * PI / 6), 0.9 * cmath.exp(1j * PI / 5),
              cmath.exp(-1j * PI / 7))


@register("product_identities", 1e-9)
def _product_identities(cfg):
    """Both difference equations and the inversion relation for the product."""
    for b in PRODUCT_BS:
        p = faddeev.BParam.from_b(b)
        for w in (0.2, 0.4, 0.1 + 0.2j):
            r1, r2 = faddeev.check_functional_eqs(w, p, "product", cfg)
            r3 = faddeev.check_inversion(w, p, "product", cfg)
            yield max(r1, r2, r3), _params(b=complex(b), w=complex(w))


@register("phi_zero", 1e-10)
def _phi_zero(cfg):
    """Phi_b(0) = exp(pi i (b^2 + b^-2)/24) by every applicable method."""
    for b in PRODUCT_BS:
        p = faddeev.BParam.from_b(b)
        yield abs(faddeev.phi_product(0, p) - faddeev.phi_zero(p)), _params(b=complex(b))
    for b in (1.0, 0.7, 1.6):
        p = faddeev.BParam.from_b(b)
        for method in ("woronowicz", "integral"):
            v = faddeev.phi(0, p, method, cfg)
            yield abs(v - faddeev.phi_zero(p)), _params(b=b, method=method)


@register("integral_symmetry", 1e-10)
def _integral_symmetry(cfg):
    """The contour integral is invariant under b -> 1/b and b -> -b."""
    for b in (0.7, 1.3, 2.0):
        for w in (0.2, -0.3 + 0.2j, 0.5j):
            a = faddeev.log_phi_integral(w, b, cfg)
            r1 = abs(a - faddeev.log_phi_integral(w, 1.0 / b, cfg))
            yield r1, _params(b=b, w=complex(w), map="1/b")
            r2 = abs(a - faddeev.log_phi_integral(w, -b, cfg))
            yield r2, _params(b=b, w=complex(w), map="-b")


@register("integral_vs_woronowicz", 1e-9)
def _integral_vs_woronowicz(cfg):
    """Contour integral and Woronowicz integral agree for b > 0."""
    for b in (0.8, 1.0, 1.3):
        p = faddeev.BParam.from_b(b)
        for w in (0.0, 0.2, -0.4, 0.1 + 0.3j):
            a = faddeev.log_phi_integral(w, p, cfg)
            c = faddeev.log_phi_woronowicz(2 * PI * b * w, b * b, cfg)
            yield abs(a - c), _params(b=b, w=complex(w))


@register("woronowicz_limit", 1e-10)
def _woronowicz_limit(cfg):
    """log Phi -> 0 as z -> -inf (at z = -30 the size is ~e^{-30/tau})."""
    for tau in (0.3, 0.7, 1.0):
        yield abs(faddeev.log_phi_woronowicz(-30.0, tau, cfg)), _params(tau=tau)
        yield abs(laplace.borel_sum(-30.0, tau, cfg)), _params(tau=tau, method="borel")


@register("fourier_sech", 1e-10)
def _fourier_sech(cfg):
    """int e^{2 pi i w x}/cosh(pi x) dx = 1/cosh(pi w), also on shifted lines."""
    for w, s in ((0.0, 0.0), (0.3, 0.0), (0.3, 0.2j), (-0.7 + 0.1j, -0.3j), (1.5, 0.1 + 0.4j)):
        v = faddeev.fourier_sech(w, s, cfg)
        yield abs(v - 1 / cmath.cosh(PI * w)), _params(w=complex(w), sigma=complex(s))


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

SUITES = ("all", "fast")


def expand_selection(selection: Iterable[str]) -> list[str]:
    names: list[str] = []
    for s in selection:
        if s == "all":
            names.extend(REGISTRY)
        elif s == "fast":
            names.extend(n for n, c in REGISTRY.items() if c.fast)
        elif s in REGISTRY:
            names.append(s)
        else:
            raise UnknownCheck(s)
    seen = set()
    return [n for n in names if not (n in seen or seen.add(n))]


def run_check(spec: CheckSpec, cfg: QuadratureConfig) -> CheckResult:
    t0 = time.perf_counter()
    worst, params, error = -1.0, {}, None
    try:
        for r, p in spec.run(cfg):
            r = float(r)
            if not math.isfinite(r):
                worst, params = math.inf, p
                break
            if r > worst:
                worst, params = r, p
    except (QdilogError, ArithmeticError, ValueError) as exc:
        error = f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - t0
    if error is not None or not math.isfinite(worst):
        return CheckResult(spec.name, None, spec.tol, False, seconds, params, error or "non-finite residual")
    worst = max(worst, 0.0)
    return CheckResult(spec.name, worst, spec.tol, worst <= spec.tol, seconds, params)


def run_suite(selection: Iterable[str], cfg: QuadratureConfig | None = None,
              suite: str | None = None) -> VerificationReport:
    """Run the selected checks (names, ``"all"`` or ``"fast"``); never stops
    at the first failure."""
    cfg = cfg or QuadratureConfig()
    selection = list(selection)
    names = expand_selection(selection)
    label = suite or (selection[0] if len(selection) == 1 and selection[0] in SUITES else "custom")
    return VerificationReport(label, [run_check(REGISTRY[n], cfg) for n in names])
