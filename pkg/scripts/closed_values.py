"""Table of numerical sums against their closed forms in the constant ring."""

from __future__ import annotations

import argparse
import time

from rootzeta import closedform as cf
from rootzeta.relations import CLOSED_VALUES
from rootzeta.series import PrecisionConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--show-forms", action="store_true")
    a = ap.parse_args()
    cfg = PrecisionConfig(workers=a.workers)
    print(f"{'name':<16}{'numeric':>24}{'closed form':>24}{'residual':>11}{'err':>10}{'time':>8}")
    for name, (num, form, _) in CLOSED_VALUES.items():
        t0 = time.perf_counter()
        x = num(cfg)
        y = cf.cf_eval(form, cfg)
        dt = time.perf_counter() - t0
        xv, yv = complex(x.value).real, complex(y.value).real
        res = float(abs(x.value - y.value))
        print(f"{name:<16}{xv:>24.17g}{yv:>24.17g}{res:>11.1e}{x.abs_error_estimate:>10.1e}{dt:>7.2f}s")
        if a.show_forms:
            print(f"    = {cf.render(form)}")


if __name__ == "__main__":
    main()
