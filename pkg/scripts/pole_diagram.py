"""Pole lattice of G(., z) in the Borel plane, with the wall lines.

Writes poles.csv (n, m, location, residue) and walls.csv (wall angles) for
plotting. Example: python scripts/pole_diagram.py --z -1+0.5i --radius 25
"""
import argparse
import csv
import math
from dataclasses import dataclass
from pathlib import Path

from qdilog import borel
from qdilog.cli import parse_complex


@dataclass
class DiagramConfig:
    z: complex = complex(-1.0, 0.5)
    radius: float = 25.0
    out: Path = Path("pole_diagram")


def run(cfg: DiagramConfig):
    cfg.out.mkdir(parents=True, exist_ok=True)
    poles = borel.enumerate_poles(cfg.z, cfg.radius)
    with open(cfg.out / "poles.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "m", "re", "im", "res_re", "res_im"])
        for p in poles:
            w.writerow([p.n, p.m, p.location.real, p.location.imag, p.residue.real, p.residue.imag])
    # walls are lines, so angles are taken mod pi
    angles = sorted({borel.wall_angle(m, cfg.z) % math.pi for m in {p.m for p in poles}})
    with open(cfg.out / "walls.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["angle"])
        w.writerows([a] for a in angles)
    print(f"{len(poles)} poles on {len(angles)} walls within |xi| <= {cfg.radius}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=parse_complex, default=DiagramConfig.z)
    ap.add_argument("--radius", type=float, default=DiagramConfig.radius)
    ap.add_argument("--out", type=Path, default=DiagramConfig.out)
    a = ap.parse_args()
    run(DiagramConfig(a.z, a.radius, a.out))


if __name__ == "__main__":
    main()
