"""Truncation error of the asymptotic series against the Watson bound over
N, and the optimal truncation order, for a range of tau.

Example: python scripts/watson_sweep.py --z 1 --delta 1
"""
import argparse
import cmath
from dataclasses import dataclass, field

from qdilog import laplace
from qdilog.cli import parse_complex
from qdilog.quadrature import QuadratureConfig
from qdilog.special import PI, dilog


@dataclass
class SweepConfig:
    z: complex = 1.0
    delta: float = 1.0
    taus: list = field(default_factory=lambda: [0.05, 0.1, 0.2, 0.4])
    n_max: int = 8


def run(cfg: SweepConfig, quad: QuadratureConfig):
    for tau in cfg.taus:
        exact = laplace.borel_sum(cfg.z, tau, quad) - dilog(-cmath.exp(cfg.z)) / (2j * PI * tau)
        n_opt = laplace.optimal_truncation(cfg.z, tau, cfg.delta)
        print(f"tau = {tau}  (bound-optimal N = {n_opt})")
        print(f"  {'N':>2} {'error':>10} {'bound':>10}")
        for N in range(cfg.n_max + 1):
            err = abs(exact - laplace.truncated_series(cfg.z, tau, N))
            bound = laplace.watson_bound(cfg.z, tau, cfg.delta, N)
            print(f"  {N:>2} {err:10.2e} {bound:10.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=parse_complex, default=SweepConfig.z)
    ap.add_argument("--delta", type=float, default=SweepConfig.delta)
    ap.add_argument("--tau", type=float, nargs="+")
    ap.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    a = ap.parse_args()
    cfg = SweepConfig(a.z, a.delta, n_max=a.n_max)
    if a.tau:
        cfg.taus = a.tau
    run(cfg, QuadratureConfig.from_env())


if __name__ == "__main__":
    main()
