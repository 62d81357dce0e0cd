"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 accuracy not reached.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    AccuracyNotReachedError,
    DomainError,
    RootZetaError,
    UnknownRelationError,
    UnsupportedRankError,
)
from .rootsys import build_root_system, coroot_label, form_label
from .series import PrecisionConfig, SeriesResult, default_precision, multizeta_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    prec_bits: int
    target_err: float | None
    ladder: tuple[int, ...] | None
    workers: int
    fmt: str

    def precision(self) -> PrecisionConfig:
        max_cut = max(10**6, self.ladder[-1]) if self.ladder else 10**6
        return PrecisionConfig(
            working_precision=self.prec_bits,
            target_abs_error=self.target_err,
            ladder=self.ladder,
            workers=self.workers,
            max_cutoff=max_cut,
        )


# argument helpers -----------------------------------------------------------
def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fracs(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _complexes(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}") from None


def _number(text: str):
    try:
        v = complex(text)
    except ValueError:
        return text
    if v.imag:
        return v
    return int(v.real) if v.real == int(v.real) and "." not in text else v.real


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    p.add_argument("--prec-bits", type=int, default=None, help="working precision in bits (default $ROOTZETA_PREC_BITS or 128)")
    p.add_argument("--target-err", type=float, default=None, help="absolute error target (default 1e-10 double, 1e-4 triple sums)")
    p.add_argument("--ladder", type=_ints, default=None, help="cutoff ladder, e.g. 1000,2000,4000")
    p.add_argument("--workers", type=int, default=1, help="summation threads; results do not depend on it")
    p.add_argument("--format", dest="fmt", choices=("human", "records"), default="human")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="rootzeta", description="Zeta-functions of root systems of types A, B, C, D.", allow_abbrev=False
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", parents=[common], allow_abbrev=False, help="list positive roots in canonical order")
    d.add_argument("kind")
    d.add_argument("rank", type=int)

    e = sub.add_parser("eval", parents=[common], allow_abbrev=False, help="evaluate zeta_r(s; Delta)")
    e.add_argument("kind")
    e.add_argument("rank", type=int)
    e.add_argument("exponents", nargs="+", help="one exponent per positive root, canonical order")
    e.add_argument("--signs", type=_ints, default=None, help="optional +-1 character per variable")

    v = sub.add_parser(
        "verify",
        parents=[common],
        allow_abbrev=False,
        help="verify registered relations",
        description="Extra options --NAME VALUE set relation parameters; comma lists form a grid.",
    )
    v.add_argument("relations", nargs="+", help="relation ids or 'all'")
    v.add_argument("--quick", action="store_true", help="only the first documented parameter point")

    b = sub.add_parser("bernoulli-p", parents=[common], allow_abbrev=False, help="evaluate P(k, y, lambda)")
    b.add_argument("kind")
    b.add_argument("rank", type=int)
    b.add_argument("--I", dest="I", type=_ints, required=True)
    b.add_argument("--k", dest="k", type=_ints, required=True)
    b.add_argument("--lambda", dest="lam", type=_ints, required=True)
    b.add_argument("--y", dest="y", type=_fracs, default=None)

    g = sub.add_parser("genfun-check", parents=[common], allow_abbrev=False, help="compare the series expansion with an explicit formula")
    g.add_argument("kind")
    g.add_argument("rank", type=int)
    g.add_argument("--lambda", dest="lam", type=_ints, required=True)
    g.add_argument("--t", dest="t", type=_complexes, default=None, help="point in the Delta* variables (default: seeded random)")
    g.add_argument("--y", dest="y", type=_fracs, default=None)
    g.add_argument("--radius", type=float, default=0.3, help="norm of the random t")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--degree", type=int, default=8)
    g.add_argument("--tol", type=float, default=1e-8, help="relative tolerance")
    g.add_argument("--formula", choices=("Br", "Dr", "A3", "B3"), default=None)
    return parser


def _config(args) -> CliConfig:
    bits = args.prec_bits if args.prec_bits is not None else default_precision()
    return CliConfig(bits, args.target_err, args.ladder, args.workers, args.fmt)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, ensure_ascii=False))


# subcommands ----------------------------------------------------------------
def cmd_describe(args, cc: CliConfig) -> int:
    rs = build_root_system(args.kind, args.rank)
    rows = []
    for a, (cr, form) in enumerate(zip(rs.positive_coroots, rs.linear_forms)):
        rows.append({"index": a + 1, "coroot": coroot_label(cr), "form": form_label(form), "vector": list(form)})
    if cc.fmt == "records":
        for r in rows:
            _emit({"root_system": rs.name, **r})
        return EXIT_OK
    print(f"{rs.name}: {rs.n_roots} positive roots")
    print(f"{'#':>3}  {'coroot':<14} {'form':<16} vector")
    for r in rows:
        print(f"{r['index']:>3}  {r['coroot']:<14} {r['form']:<16} {tuple(r['vector'])}")
    print("fundamental weights:")
    for i, w in enumerate(rs.fundamental_weights, 1):
        print(f"  lambda{i} = ({', '.join(str(x) for x in w)})")
    return EXIT_OK


def _show_result(label: str, res: SeriesResult, cc: CliConfig, extra: dict | None = None) -> None:
    z = complex(res.value)
    if cc.fmt == "records":
        val = z.real if z.imag == 0 else [z.real, z.imag]
        _emit({**(extra or {}), "value": val, "err": res.abs_error_estimate, "cutoff": res.cutoff_used})
    else:
        print(f"{label} = {_fmt_complex(z)}  (err {res.abs_error_estimate:.2e}, cutoff {res.cutoff_used})")


def cmd_eval(args, cc: CliConfig) -> int:
    rs = build_root_system(args.kind, args.rank)
    s = [_number(x) for x in args.exponents]
    if len(s) != rs.n_roots:
        raise UsageError(f"{rs.name} needs {rs.n_roots} exponents (see 'describe {rs.kind} {rs.rank}')")
    label = f"zeta({', '.join(str(x) for x in s)}; {rs.name})"
    if any(isinstance(x, str) for x in s):
        raise UsageError("exponents must be numbers")
    extra = {"root_system": rs.name, "exponents": [[x.real, x.imag] if isinstance(x, complex) else x for x in s]}
    try:
        res = multizeta_eval(rs, s, args.signs, cc.precision())
    except AccuracyNotReachedError as exc:
        if exc.best is not None:
            _show_result(label, exc.best, cc, extra)
        print(f"accuracy not reached: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    _show_result(label, res, cc, extra)
    return EXIT_OK


def _grid(rec, given: dict, quick: bool) -> list[dict]:
    if not given:
        return [dict(p) for p in (rec.points[:1] if quick else rec.points)]
    unknown = [k for k in given if k not in rec.parameter_names]
    if unknown:
        raise UsageError(f"{rec.id} has no parameter(s) {unknown}; parameters: {list(rec.parameter_names)}")
    names = list(given)
    values = [[_number(x) for x in given[n].split(",")] for n in names]
    return [dict(zip(names, combo)) for combo in itertools.product(*values)]


def _parse_params(extra: Sequence[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        name, eq, val = tok[2:].partition("=")
        if not eq:
            try:
                val = next(it)
            except StopIteration:
                raise UsageError(f"missing value for {tok}") from None
        out[name] = val
    return out


def cmd_verify(args, cc: CliConfig, extra: Sequence[str]) -> int:
    from .relations import get_relation, relation_ids, verify

    given = _parse_params(extra)
    ids = relation_ids() if args.relations == ["all"] else list(args.relations)
    if "all" in ids:
        raise UsageError("'all' cannot be combined with other ids")
    if given and len(ids) != 1:
        raise UsageError("parameter options need exactly one relation id")
    recs = [get_relation(i) for i in ids]
    cfg = cc.precision()
    reports = []
    for rec in recs:
        for params in _grid(rec, given, args.quick):
            for rep in verify(rec.id, params, cfg):
                reports.append(rep)
                if cc.fmt == "records":
                    print(rep.to_json(), flush=True)
                else:
                    status = {True: "PASS", False: "FAIL", None: "UNDECIDED"}[rep.passed]
                    pstr = ", ".join(f"{k}={v}" for k, v in rep.params.items())
                    res = "n/a" if rep.residual is None else f"{rep.residual:.2e}"
                    tol = "" if rep.tolerance is None else f" tol {rep.tolerance:.1e}"
                    msg = f"  [{rep.message}]" if rep.message else ""
                    print(f"{status:<9} {rep.relation_id:<13} {pstr:<32} {rep.sides:<14} residual {res}{tol}{msg}", flush=True)
    n_fail = sum(r.passed is False for r in reports)
    n_und = sum(r.passed is None for r in reports)
    if cc.fmt == "human":
        print(f"{len(reports)} comparisons: {len(reports) - n_fail - n_und} pass, {n_fail} fail, {n_und} undecided")
    if n_fail:
        return EXIT_FAIL
    return EXIT_ACCURACY if n_und else EXIT_OK


def cmd_bernoulli_p(args, cc: CliConfig) -> int:
    from .genfun import GenFunSpec, bernoulli_P, bernoulli_P_layers, phases_real
    from .rootsys import SubsetSpec, star_roots

    rs = build_root_system(args.kind, args.rank)
    spec = SubsetSpec.from_I(rs.rank, args.I)
    n = len(star_roots(rs, spec))
    if len(args.k) != n:
        raise UsageError(f"--k needs {n} entries (one per root of Delta*), got {len(args.k)}")
    if len(args.lam) != len(spec.I):
        raise UsageError(f"--lambda needs {len(spec.I)} entries (one per index in I)")
    g = GenFunSpec.make(rs, args.I, args.lam, args.y)
    value = bernoulli_P(g, args.k, prec=max(cc.prec_bits, 53))
    layers = bernoulli_P_layers(g, args.k) if phases_real(g) else None
    exact = None
    if layers is not None:
        exact = " + ".join(f"{c} · (2πi)^{e}" for e, c in sorted(layers.items())) or "0"
    if cc.fmt == "records":
        _emit(
            {
                "root_system": rs.name,
                "I": list(spec.sorted_I),
                "k": list(args.k),
                "lambda": list(args.lam),
                "value": [value.real, value.imag],
                "exact": exact,
            }
        )
    else:
        print(f"P = {_fmt_complex(value)}")
        if exact is not None:
            print(f"  = {exact}")
    return EXIT_OK


def _explicit_kind(kind: str, rank: int, formula: str | None) -> tuple[str, tuple[int, ...]]:
    kind = kind.upper()
    if kind == "B":
        f = formula or "Br"
        if f not in ("Br", "B3") or (f == "B3" and rank != 3):
            raise UsageError("type B supports the Br formula (and B3 at rank 3)")
        return f, tuple(range(2, rank + 1))
    if kind == "D":
        if formula not in (None, "Dr"):
            raise UsageError("type D supports the Dr formula")
        return "Dr", tuple(range(2, rank + 1))
    if kind == "A" and rank == 3:
        if formula not in (None, "A3"):
            raise UsageError("type A3 supports the A3 formula")
        return "A3", (1, 3)
    raise UsageError("explicit formulas exist for B_r, D_r and A_3")


def cmd_genfun_check(args, cc: CliConfig) -> int:
    from .genfun import F_general, GenFunSpec
    from .genfun.explicit import F_explicit

    formula, I = _explicit_kind(args.kind, args.rank, args.formula)
    rs = build_root_system(args.kind, args.rank)
    g = GenFunSpec.make(rs, I, args.lam, args.y)
    n = len(g.variables)
    if args.t is None:
        rng = np.random.default_rng(args.seed)
        t = rng.normal(size=n) + 1j * rng.normal(size=n)
        t = args.radius * t / np.linalg.norm(t)
    else:
        t = np.array(args.t, dtype=complex)
        if len(t) != n:
            raise UsageError(f"--t needs {n} entries ({', '.join(g.variables)})")
    series_val = complex(F_general(g, args.degree).evaluate(t))
    explicit_val = F_explicit(formula, rs.rank, t, args.y, args.lam)
    rel = abs(series_val - explicit_val) / max(abs(explicit_val), 1e-300)
    ok = rel <= args.tol
    if cc.fmt == "records":
        _emit(
            {
                "root_system": rs.name,
                "formula": formula,
                "lambda": list(args.lam),
                "t": [[z.real, z.imag] for z in t],
                "degree": args.degree,
                "series": [series_val.real, series_val.imag],
                "explicit": [explicit_val.real, explicit_val.imag],
                "rel_diff": rel,
                "pass": ok,
            }
        )
    else:
        print(f"variables: {', '.join(g.variables)}")
        print(f"t = ({', '.join(_fmt_complex(complex(z)) for z in t)})")
        print(f"series (degree {args.degree}): {_fmt_complex(series_val)}")
        print(f"explicit {formula}:        {_fmt_complex(explicit_val)}")
        print(f"relative difference {rel:.2e} ({'PASS' if ok else 'FAIL'} at tol {args.tol:.0e})")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if extra and args.command != "verify":
        parser.print_usage(sys.stderr)
        print(f"rootzeta: error: unrecognized arguments: {' '.join(extra)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cc = _config(args)
        cc.precision()
        if args.command == "describe":
            return cmd_describe(args, cc)
        if args.command == "eval":
            return cmd_eval(args, cc)
        if args.command == "verify":
            return cmd_verify(args, cc, extra)
        if args.command == "bernoulli-p":
            return cmd_bernoulli_p(args, cc)
        return cmd_genfun_check(args, cc)
    except (UsageError, UnknownRelationError, UnsupportedRankError, DomainError) as exc:
        print(f"rootzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyNotReachedError as exc:
        print(f"rootzeta: accuracy not reached: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except RootZetaError as exc:
        print(f"rootzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
