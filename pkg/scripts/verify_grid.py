"""Run relation checks over a parameter grid and write JSON lines.

    python3 scripts/verify_grid.py a2-three-term --grid k=2,3 l=2,3 s=2,3 -o out.jsonl
    python3 scripts/verify_grid.py all --documented
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from dataclasses import dataclass, field

from rootzeta.relations import registry, relation_ids, verify
from rootzeta.series import PrecisionConfig


@dataclass
class GridConfig:
    relations: list[str]
    grid: dict[str, list] = field(default_factory=dict)
    documented: bool = False
    workers: int = 1
    output: str | None = None


def _value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def points(rid: str, cfg: GridConfig):
    rec = registry()[rid]
    if cfg.documented or not cfg.grid:
        yield from rec.points
        return
    names = list(cfg.grid)
    for combo in itertools.product(*(cfg.grid[n] for n in names)):
        yield dict(zip(names, combo))


def run(cfg: GridConfig) -> int:
    pcfg = PrecisionConfig(workers=cfg.workers)
    out = open(cfg.output, "w") if cfg.output else sys.stdout
    bad = 0
    try:
        for rid in cfg.relations:
            for p in points(rid, cfg):
                t0 = time.perf_counter()
                reps = verify(rid, p, pcfg)
                dt = time.perf_counter() - t0
                for rep in reps:
                    print(rep.to_json(), file=out, flush=True)
                    bad += rep.passed is not True
                print(f"# {rid} {p} {dt:.2f} s", file=sys.stderr)
    finally:
        if out is not sys.stdout:
            out.close()
    return 1 if bad else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("relations", nargs="+", help="relation ids or 'all'")
    ap.add_argument("--grid", nargs="*", default=[], metavar="NAME=V1,V2")
    ap.add_argument("--documented", action="store_true", help="use each relation's listed points")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-o", "--output")
    a = ap.parse_args()
    grid = {}
    for item in a.grid:
        name, _, vals = item.partition("=")
        grid[name] = [_value(v) for v in vals.split(",")]
    rels = relation_ids() if a.relations == ["all"] else a.relations
    sys.exit(run(GridConfig(rels, grid, a.documented, a.workers, a.output)))


if __name__ == "__main__":
    main()
