"""Sweep |t| and series degree for the generating-function cross-check.

Prints the worst relative gap between the truncated series and the explicit
closed form for each root system, radius and degree.  The gap behaves like a
power of |t| whose exponent grows with the degree, which is how the degree
needed for a given radius can be read off.

    python3 scripts/genfun_truncation.py --radii 0.3,0.1,0.03,0.01 --degrees 8,10
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from rootzeta.genfun import F_general, GenFunSpec
from rootzeta.genfun.explicit import F_explicit
from rootzeta.rootsys import build_root_system

CASES = {
    "B3": ("B", 3, [2, 3], "B3"),
    "B4": ("B", 4, [2, 3, 4], "Br"),
    "D4": ("D", 4, [2, 3, 4], "Dr"),
    "A3": ("A", 3, [1, 3], "A3"),
}


@dataclass
class SweepConfig:
    systems: tuple[str, ...] = ("B3", "D4", "A3")
    radii: tuple[float, ...] = (0.3, 0.1, 0.03, 0.01)
    degrees: tuple[int, ...] = (8, 10)
    n_lambda: int = 3
    n_t: int = 4
    seed: int = 0


def sweep(cfg: SweepConfig):
    rng = np.random.default_rng(cfg.seed)
    for name in cfg.systems:
        kind, r, I, formula = CASES[name]
        rs = build_root_system(kind, r)
        lams = [tuple(int(x) for x in rng.integers(1, 5, size=len(I))) for _ in range(cfg.n_lambda)]
        n = len(GenFunSpec.make(rs, I, lams[0]).variables)
        dirs = []
        for _ in range(cfg.n_t):
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            dirs.append(v / np.linalg.norm(v))
        for deg in cfg.degrees:
            t0 = time.perf_counter()
            series = [F_general(GenFunSpec.make(rs, I, lam), deg) for lam in lams]
            build = time.perf_counter() - t0
            row = []
            for rad in cfg.radii:
                worst = 0.0
                for lam, F in zip(lams, series):
                    for d in dirs:
                        t = rad * d
                        ref = F_explicit(formula, r, t, None, lam)
                        worst = max(worst, abs(F.evaluate(t) - ref) / abs(ref))
                row.append(worst)
            cells = "  ".join(f"{x:8.1e}" for x in row)
            yield f"{name:<3} deg {deg:>2}  {cells}   (build {build / len(lams):.2f} s per lambda)"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", default="B3,D4,A3", help=f"comma list from {','.join(CASES)}")
    ap.add_argument("--radii", default="0.3,0.1,0.03,0.01")
    ap.add_argument("--degrees", default="8,10")
    ap.add_argument("--n-lambda", type=int, default=3)
    ap.add_argument("--n-t", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = SweepConfig(
        systems=tuple(a.systems.split(",")),
        radii=tuple(float(x) for x in a.radii.split(",")),
        degrees=tuple(int(x) for x in a.degrees.split(",")),
        n_lambda=a.n_lambda,
        n_t=a.n_t,
        seed=a.seed,
    )
    print("radius        " + "  ".join(f"{x:8g}" for x in cfg.radii))
    for line in sweep(cfg):
        print(line, flush=True)


if __name__ == "__main__":
    main()
