"""Stokes jumps between consecutive cones against the ray differences, and
the telescoped sum against the vertical transform.

Example: python scripts/stokes_table.py --z -1 --tau 0.2+0.5i --M 6
"""
import argparse
from dataclasses import dataclass

from qdilog import laplace
from qdilog.cli import parse_complex
from qdilog.quadrature import QuadratureConfig


@dataclass
class StokesConfig:
    z: complex = -1.0
    tau: complex = complex(0.2, 0.5)
    M: int = 6
    M_tail: int = 40


def run(cfg: StokesConfig, quad: QuadratureConfig):
    print(f"{'m':>3} {'|jump|':>12} {'abs diff':>10}")
    for m in range(cfg.M + 1):
        jump = laplace.stokes_jump(cfg.z, cfg.tau, m)
        num = laplace.stokes_difference(cfg.z, cfg.tau, m, quad)
        print(f"{m:>3} {abs(jump):12.4e} {abs(num - jump):10.2e}")
    diff = laplace.laplace_vertical(cfg.z, cfg.tau, quad) - laplace.laplace_ray(cfg.z, cfg.tau, 0.0, quad)
    total = sum(laplace.stokes_jump(cfg.z, cfg.tau, m) for m in range(cfg.M_tail + 1))
    print(f"telescoped to M={cfg.M_tail}: |vertical - horizontal - sum| = {abs(diff - total):.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=parse_complex, default=StokesConfig.z)
    ap.add_argument("--tau", type=parse_complex, default=StokesConfig.tau)
    ap.add_argument("--M", type=int, default=StokesConfig.M)
    a = ap.parse_args()
    run(StokesConfig(a.z, a.tau, a.M), QuadratureConfig.from_env())


if __name__ == "__main__":
    main()
