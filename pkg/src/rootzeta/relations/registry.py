"""Registered functional relations and their numerical verification."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, Mapping

import mpmath

from .. import closedform as cf
from ..errors import AccuracyNotReachedError, DomainError, RootZetaError, UnknownRelationError
from ..genfun.theorem import theorem_rhs
from ..rootsys import RootSystem, SubsetSpec, build_root_system
from ..series import PrecisionConfig, SeriesResult, euler_zagier2, multizeta_eval, riemann_zeta
from ..series.lattice import converges
from .c2 import c2_prop_terms, c2_111_terms, c2_121_terms, c2_333_terms, pfd_terms
from .terms import TermSum

FLOOR_DOUBLE = 1e-12
FLOOR_TRIPLE = 1e-4
TOL_FACTOR = 4.0

Thunk = Callable[[], SeriesResult]


@dataclass(frozen=True)
class Comparison:
    sides: str
    lhs: Thunk
    rhs: Thunk
    triple: bool


@dataclass(frozen=True)
class RelationRecord:
    """One identity with evaluators for both sides.

    ``points`` lists documented parameter points; the first is the quick one.
    """

    id: str
    description: str
    source: str
    parameter_names: tuple[str, ...]
    domain: str
    points: tuple[Mapping[str, Any], ...]
    build: Callable[[dict, PrecisionConfig], list[Comparison]] = field(repr=False)
    check: Callable[[dict], None] = field(repr=False, default=lambda p: None)


@dataclass(frozen=True)
class VerificationReport:
    relation_id: str
    params: dict
    sides: str
    lhs: SeriesResult | None
    rhs: SeriesResult | None
    residual: float | None
    combined_error: float | None
    tolerance: float | None
    passed: bool | None
    message: str = ""

    def record(self) -> dict:
        """Line-record fields, in their fixed order."""
        return {
            "relation_id": self.relation_id,
            "params": {**self.params, "sides": self.sides},
            "lhs_value": _num(self.lhs),
            "lhs_err": None if self.lhs is None else _f(self.lhs.abs_error_estimate),
            "rhs_value": _num(self.rhs),
            "rhs_err": None if self.rhs is None else _f(self.rhs.abs_error_estimate),
            "residual": None if self.residual is None else _f(self.residual),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), ensure_ascii=False)


def _f(x: float):
    return x if math.isfinite(x) else str(x)


def _num(r: SeriesResult | None):
    if r is None:
        return None
    z = complex(r.value)
    if abs(z.imag) <= r.abs_error_estimate + 1e-15 * abs(z.real):
        return z.real
    return [z.real, z.imag]


# evaluation helpers ---------------------------------------------------------
@lru_cache(maxsize=None)
def _rs(kind: str, rank: int) -> RootSystem:
    return build_root_system(kind, rank)


def _z(kind: str, rank: int, exps, cfg: PrecisionConfig) -> SeriesResult:
    return multizeta_eval(_rs(kind, rank), tuple(exps), None, cfg)


def _lin(pairs, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """``sum c_i * r_i`` for SeriesResults ``r_i`` (or thunks producing them)."""
    cfg = cfg or PrecisionConfig()
    total = mpmath.mpc(0)
    err = 0.0
    for c, r in pairs:
        if callable(r):
            r = r()
        with mpmath.workprec(cfg.working_precision + 16):
            total += mpmath.mpmathify(c) * r.value
        err += float(abs(c)) * r.abs_error_estimate
    return SeriesResult(value=total, abs_error_estimate=err)


def _const(x) -> SeriesResult:
    return SeriesResult(value=mpmath.mpmathify(x), abs_error_estimate=0.0)


def _num_param(v):
    z = complex(v)
    return z.real if z.imag == 0 else z


def _int(p: dict, name: str, lo: int = 1) -> int:
    v = p[name]
    if int(v) != v or int(v) < lo:
        raise DomainError(f"{name} must be an integer >= {lo}")
    return int(v)


def _pi2() -> float:
    return mpmath.pi**2


def _require_conv(forms, exps, what: str) -> None:
    if not converges(forms, [complex(e) for e in exps]):
        raise DomainError(f"{what}: exponents {tuple(exps)} outside the convergence region")


_A2 = [(1, 0), (0, 1), (1, 1)]
_B2 = [(1, 0), (0, 1), (1, 1), (2, 1)]
_C2 = [(1, 0), (0, 1), (1, 1), (1, 2)]


# individual relations -------------------------------------------------------
def _a2_three_check(p):
    k, l = _int(p, "k", 0), _int(p, "l", 0)
    s = complex(p["s"])
    for e in [(k, l, s), (k, s, l), (l, s, k)]:
        _require_conv(_A2, e, "A2 sum")


def _binom(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


def _a2_three(p, cfg):
    k, l, s = int(p["k"]), int(p["l"]), _num_param(p["s"])

    def lhs():
        return _lin(
            [
                (1, _z("A", 2, (k, l, s), cfg)),
                ((-1) ** k, _z("A", 2, (k, s, l), cfg)),
                ((-1) ** l, _z("A", 2, (l, s, k), cfg)),
            ]
        )

    def rhs():
        pairs = []
        for j in range(k // 2 + 1):
            c = 2 * _binom(k + l - 2 * j - 1, l - 1)
            if c:
                pairs.append((c, _product(riemann_zeta(2 * j, cfg), riemann_zeta(s + k + l - 2 * j, cfg))))
        for j in range(l // 2 + 1):
            c = 2 * _binom(k + l - 2 * j - 1, k - 1)
            if c:
                pairs.append((c, _product(riemann_zeta(2 * j, cfg), riemann_zeta(s + k + l - 2 * j, cfg))))
        return _lin(pairs)

    return [Comparison("lhs~rhs", lhs, rhs, False)]


def _product(a: SeriesResult, b: SeriesResult) -> SeriesResult:
    with mpmath.workprec(PrecisionConfig().working_precision + 16):
        v = a.value * b.value
    err = float(abs(a.value)) * b.abs_error_estimate + float(abs(b.value)) * a.abs_error_estimate
    return SeriesResult(value=v, abs_error_estimate=err)


def _c2_check(p):
    a, b, c = (_int(p, x) for x in "abc")
    _require_conv(_C2, (a, complex(p["s"]), b, c), "C2 sum")


def _prim_fq(p, cfg):
    a, b, c, s = int(p["a"]), int(p["b"]), int(p["c"]), _num_param(p["s"])

    def rhs():
        # 1/((m+n)^b (m+2n)^c) split with X = m+n, Y = n
        pairs = []
        for coef, x, y, z in pfd_terms(b, c):
            pairs.append((coef, _z("C", 2, (a, s + y, x, z), cfg)))
        return _lin(pairs)

    return [Comparison("lhs~rhs", lambda: _z("C", 2, (a, s, b, c), cfg), rhs, False)]


def _c2_prop(p, cfg):
    a, b, c, s = int(p["a"]), int(p["b"]), int(p["c"]), _num_param(p["s"])
    terms = c2_prop_terms(a, b, c)
    return [Comparison("lhs~rhs", lambda: _z("C", 2, (a, s, b, c), cfg), lambda: terms.evaluate(s, cfg), False)]


def _c2_spec(abc, terms_fn: Callable[[], TermSum]):
    a, b, c = abc

    def build(p, cfg):
        s = _num_param(p["s"])
        terms = terms_fn()
        return [Comparison("lhs~rhs", lambda: _z("C", 2, (a, s, b, c), cfg), lambda: terms.evaluate(s, cfg), False)]

    def check(p):
        _require_conv(_C2, (a, complex(p["s"]), b, c), "C2 sum")

    return build, check


def _b3_lhs(s2, s3, s5, s6, cfg):
    t1 = lambda: _z("B", 3, (1, s2, s3, 1, s5, s6, 1, 1, 2), cfg)  # noqa: E731
    t2 = lambda: _z("B", 3, (1, 1, s3, s2, 1, 2, s5, 1, s6), cfg)  # noqa: E731
    t3 = lambda: _z("B", 3, (s2, 1, 2, 1, 1, s3, 1, s5, s6), cfg)  # noqa: E731
    # six terms, each distinct value appearing twice
    return _lin([(1, t1), (-1, t2), (1, t3), (1, t3), (-1, t2), (1, t1)])


def _b3_b2_rhs(s2, s3, s5, s6, cfg):
    z = lambda *e: (lambda: _z("B", 2, e, cfg))  # noqa: E731
    h = mpmath.power(2, -s3 - s6)
    pi2 = _pi2()
    return _lin(
        [
            (2, z(s2 + 2, s3 + 3, s5 + 1, s6)),
            (2, z(s2 + 2, s3, s5 + 1, s6 + 3)),
            (-10, z(s2 + 1, s3 + 4, s5 + 1, s6)),
            (-h / 4, z(s3 + 4, s2, s6 + 2, s5)),
            (-2, z(s2 + 1, s3 + 3, s5 + 2, s6)),
            (4 * pi2, z(s2, s3 + 2, s5, s6 + 2)),
            (-h * pi2 / 6, z(s3 + 2, s2, s6 + 2, s5)),
            (-h / 4, z(s3 + 2, s2, s6 + 4, s5)),
            (2, z(s2 + 1, s3, s5 + 2, s6 + 3)),
            (10, z(s2 + 1, s3, s5 + 1, s6 + 4)),
        ]
    )


def _b3_fr1_check(p):
    s2, s3, s5, s6 = (complex(p[x]) for x in ("s2", "s3", "s5", "s6"))
    for e in [(1, s2, s3, 1, s5, s6, 1, 1, 2), (1, 1, s3, s2, 1, 2, s5, 1, s6), (s2, 1, 2, 1, 1, s3, 1, s5, s6)]:
        _require_conv(_rs("B", 3).linear_forms, e, "B3 sum")


def _b3_fr1(p, cfg):
    s2, s3, s5, s6 = (_num_param(p[x]) for x in ("s2", "s3", "s5", "s6"))
    B3 = _rs("B", 3)
    spec = SubsetSpec.from_I(3, [2, 3])
    lhs = _memo(lambda: _b3_lhs(s2, s3, s5, s6, cfg))
    mid = _memo(lambda: theorem_rhs(B3, spec, (2, 1, 1, 1, 1), (s2, s3, s5, s6), None, cfg))
    rhs = _memo(lambda: _b3_b2_rhs(s2, s3, s5, s6, cfg))
    return [
        Comparison("lhs~middle", lhs, mid, True),
        Comparison("lhs~rhs", lhs, rhs, True),
        Comparison("middle~rhs", mid, rhs, False),
    ]


def _memo(fn: Thunk) -> Thunk:
    box: list = []

    def get():
        if not box:
            box.append(fn())
        return box[0]

    return get


def _b3_fr2(p, cfg):
    s3 = _num_param(p["s3"])
    z = lambda *e: (lambda: _z("B", 2, e, cfg))  # noqa: E731
    h = mpmath.power(2, -s3)
    pi2 = _pi2()

    def rhs():
        return _lin(
            [
                (2, z(3, s3 + 3, 2, 2)),
                (2, z(3, s3, 2, 5)),
                (-10, z(2, s3 + 4, 2, 2)),
                (-h / 16, z(s3 + 4, 1, 4, 1)),
                (-2, z(2, s3 + 3, 3, 2)),
                (4 * pi2, z(1, s3 + 2, 1, 4)),
                (-h * pi2 / 24, z(s3 + 2, 1, 4, 1)),
                (-h / 16, z(s3 + 2, 1, 6, 1)),
                (2, z(2, s3, 3, 5)),
                (10, z(2, s3, 2, 6)),
            ]
        )

    lhs = lambda: _lin([(2, _z("B", 3, (1, 1, 2, 1, 1, s3, 1, 1, 2), cfg))])  # noqa: E731
    return [Comparison("lhs~rhs", lhs, rhs, True)]


def _b3_fr2_check(p):
    _require_conv(_rs("B", 3).linear_forms, (1, 1, 2, 1, 1, complex(p["s3"]), 1, 1, 2), "B3 sum")


def _a3_lhs(s1, s3, cfg):
    z = lambda *e: (lambda: _z("A", 3, e, cfg))  # noqa: E731
    return _lin(
        [
            (1, z(s1, 1, s3, 1, 1, 1)),
            (-1, z(1, 1, 1, s1, s3, 1)),
            (1, z(1, s3, 1, 1, 1, s1)),
            (1, z(s3, 1, s1, 1, 1, 1)),
            (-1, z(1, 1, 1, s3, s1, 1)),
            (1, z(1, s1, 1, 1, 1, s3)),
        ]
    )


def _a3_rhs(s1, s3, cfg):
    z = lambda *e: (lambda: _z("A", 2, e, cfg))  # noqa: E731
    inner = [
        (2, z(s1 + 2, s3 + 1, 1)),
        (2, z(s1 + 2, 1, s3 + 1)),
        (-2, z(s3 + 1, 1, s1 + 2)),
        (-2, z(s1 + 1, 1, s3 + 2)),
        (2, z(s3 + 2, 1, s1 + 1)),
        (2, z(s1 + 1, s3 + 2, 1)),
        (-2, z(s1 + 1, 2, s3 + 1)),
        (-2, z(s3 + 1, 2, s1 + 1)),
        (2, z(s1 + 1, s3 + 1, 2)),
        (1, lambda: riemann_zeta(s1 + s3 + 4, cfg)),
        (-_pi2() / 3, lambda: riemann_zeta(s1 + s3 + 2, cfg)),
    ]
    return _lin(inner)


def _a3_check(p):
    s1, s3 = complex(p["s1"]), complex(p["s3"])
    for e in [(s1, 1, s3, 1, 1, 1), (1, 1, 1, s1, s3, 1), (1, s3, 1, 1, 1, s1)]:
        _require_conv(_rs("A", 3).linear_forms, e, "A3 sum")
        _require_conv(_rs("A", 3).linear_forms, tuple(e[i] for i in (2, 1, 0, 4, 3, 5)), "A3 sum")


def _a3_six(p, cfg):
    s1, s3 = _num_param(p["s1"]), _num_param(p["s3"])
    A3 = _rs("A", 3)
    spec = SubsetSpec.from_I(3, [1, 3])
    lhs = _memo(lambda: _a3_lhs(s1, s3, cfg))
    rhs = _memo(lambda: _a3_rhs(s1, s3, cfg))
    mid = _memo(lambda: theorem_rhs(A3, spec, (1, 1, 1, 1), (s1, s3), None, cfg))
    return [
        Comparison("lhs~rhs", lhs, rhs, True),
        Comparison("lhs~middle", lhs, mid, True),
        Comparison("middle~rhs", mid, rhs, False),
    ]


def _hwz_check(p):
    k, l, m = _int(p, "k"), _int(p, "l"), _int(p, "m")
    if l + m < 2 or k + m < 2:
        raise DomainError("need l + m >= 2 and k + m >= 2")


def _hwz(p, cfg):
    k, l, m = int(p["k"]), int(p["l"]), int(p["m"])

    def rhs():
        pairs = []
        for i in range(k):
            pairs.append((comb(l - 1 + i, i), lambda i=i: euler_zagier2(k - i, l + m + i, 1, 1, cfg)))
        for i in range(l):
            pairs.append((comb(k - 1 + i, i), lambda i=i: euler_zagier2(l - i, k + m + i, 1, 1, cfg)))
        return _lin(pairs)

    return [Comparison("lhs~rhs", lambda: _z("A", 2, (k, l, m), cfg), rhs, False)]


def _closed_forms() -> dict[str, tuple[Callable[[PrecisionConfig], SeriesResult], cf.ClosedForm, bool]]:
    C = cf.ClosedForm
    z, pi, L2, li4 = C.zeta, C.pi, C.log2(), C.li4_half()
    F = Fraction
    ez13 = 2 * li4 + F(1, 12) * L2**4 - F(15, 8) * z(4) + F(7, 4) * z(3) * L2 - F(1, 2) * z(2) * L2**2
    c2_1111 = F(17, 10) * z(2) ** 2 - 4 * li4 - F(7, 2) * z(3) * L2 + z(2) * L2**2 - F(1, 6) * L2**4
    c2_1021 = -F(3, 2) * z(2) ** 2 + 4 * li4 + F(7, 2) * z(3) * L2 - z(2) * L2**2 + F(1, 6) * L2**4
    b3 = {
        1: F(9, 320) * pi(4) * z(7) - F(1429, 384) * pi(2) * z(9) + F(4355, 128) * z(11),
        3: -F(7, 320) * pi(4) * z(9) + F(5143, 1536) * pi(2) * z(11) - F(15833, 512) * z(13),
        5: F(23, 2419200) * pi(8) * z(7)
        + F(11, 20160) * pi(6) * z(9)
        - F(941, 15360) * pi(4) * z(11)
        + F(16121, 2048) * pi(2) * z(13)
        - F(74079, 1024) * z(15),
    }
    out = {
        "a3-value": (lambda cfg: _z("A", 3, (1,) * 6, cfg), 2 * z(3) ** 2 - F(31, 11340) * pi(6), True),
        "c2-value": (lambda cfg: _z("C", 2, (1, 1, 1, 1), cfg), c2_1111, False),
        "c2-value-2": (lambda cfg: _z("C", 2, (1, 0, 2, 1), cfg), c2_1021, False),
        "ez2-alt": (lambda cfg: euler_zagier2(1, 3, 1, -1, cfg), ez13, False),
        "c2-value-2-ez2": (lambda cfg: _lin([(2, euler_zagier2(1, 3, 1, -1, cfg))]), c2_1021, False),
    }
    for s3, form in b3.items():
        # the listed values equal twice the B3 sum (see the notes on this relation)
        out[f"b3-value-{s3}"] = (
            lambda cfg, s3=s3: _lin([(2, _z("B", 3, (1, 1, 2, 1, 1, s3, 1, 1, 2), cfg))]),
            form,
            True,
        )
    return out


CLOSED_VALUES = _closed_forms()


def _closed_check(p):
    if p.get("which", "all") not in ("all", *CLOSED_VALUES):
        raise DomainError(f"unknown closed value {p['which']!r}; choose from {sorted(CLOSED_VALUES)}")


def _closed(p, cfg):
    which = p.get("which", "all")
    names = list(CLOSED_VALUES) if which == "all" else [which]
    out = []
    for name in names:
        num, form, triple = CLOSED_VALUES[name]
        out.append(Comparison(name, lambda num=num: num(cfg), lambda form=form: cf.cf_eval(form, cfg), triple))
    return out


# registry -------------------------------------------------------------------
def _c2pts(*pts):
    return tuple({"s": s} for s in pts)


_REGISTRY: dict[str, RelationRecord] = {}


def _register(rec: RelationRecord) -> None:
    _REGISTRY[rec.id] = rec


_register(
    RelationRecord(
        "a2-three-term",
        "signed sum of three A2 zeta-functions equals products of zeta values",
        "classical functional relation for the A2 (Mordell-Tornheim) double zeta-function, with zeta(0) = -1/2",
        ("k", "l", "s"),
        "k, l >= 0 integers; s with all three A2 sums convergent",
        ({"k": 2, "l": 2, "s": 3}, {"k": 2, "l": 3, "s": 2}, {"k": 3, "l": 3, "s": 2.5}),
        _a2_three,
        _a2_three_check,
    )
)
_register(
    RelationRecord(
        "prim-fq-c2",
        "C2 zeta-function split into A2-type and shifted C2-type double sums",
        "partial fractions of 1/((m+n)^b (m+2n)^c) with X = m+n, Y = n",
        ("a", "b", "c", "s"),
        "a, b, c >= 1 integers; s with the C2 sum convergent",
        ({"a": 1, "b": 1, "c": 1, "s": 1}, {"a": 1, "b": 2, "c": 1, "s": 0}, {"a": 2, "b": 1, "c": 2, "s": 1}),
        _prim_fq,
        _c2_check,
    )
)
_register(
    RelationRecord(
        "c2-prop",
        "C2 zeta-function as zeta, alternating zeta and signed double zeta values",
        "three partial-fraction blocks with a parity split of m+2n",
        ("a", "b", "c", "s"),
        "a, b, c >= 1 integers; real s with every term convergent",
        ({"a": 1, "b": 1, "c": 1, "s": 1}, {"a": 1, "b": 2, "c": 1, "s": 0}, {"a": 3, "b": 3, "c": 3, "s": 2}),
        _c2_prop,
        _c2_check,
    )
)
for _id, _abc, _fn in (
    ("c2-spec-111", (1, 1, 1), c2_111_terms),
    ("c2-spec-121", (1, 2, 1), c2_121_terms),
    ("c2-spec-333", (3, 3, 3), c2_333_terms),
):
    _b, _c = _c2_spec(_abc, _fn)
    _register(
        RelationRecord(
            _id,
            f"hand-written specialization of the C2 decomposition at (a,b,c) = {_abc}",
            "explicit term list at fixed (a, b, c)",
            ("s",),
            "real s with the C2 sum and every term convergent",
            _c2pts(1, 0, 2),
            _b,
            _c,
        )
    )
_register(
    RelationRecord(
        "b3-fr-1",
        "six B3 zeta-functions = lambda-sum of Bernoulli functions = ten B2 zeta-functions",
        "generating-function relation for B3 with I = {2, 3}, k = (2,1,1,1,1)",
        ("s2", "s3", "s5", "s6"),
        "s2, s3, s5, s6 with all B3 and B2 sums convergent",
        ({"s2": 2, "s3": 2, "s5": 2, "s6": 2}, {"s2": 1, "s3": 1, "s5": 1, "s6": 2}, {"s2": 1, "s3": 3, "s5": 1, "s6": 2}),
        _b3_fr1,
        _b3_fr1_check,
    )
)
_register(
    RelationRecord(
        "b3-fr-2",
        "2 zeta_3(1,1,2,1,1,s3,1,1,2; B3) as a B2 combination",
        "the B3 relation at (s2, s5, s6) = (1, 1, 2)",
        ("s3",),
        "s3 >= 1",
        ({"s3": 1}, {"s3": 3}, {"s3": 2}),
        _b3_fr2,
        _b3_fr2_check,
    )
)
_register(
    RelationRecord(
        "a3-six-term",
        "six A3 zeta-functions = nine A2 zeta-functions plus zeta terms; also the lambda-sum form",
        "generating-function relation for A3 with I = {1, 3}, k = (1,1,1,1)",
        ("s1", "s3"),
        "s1, s3 >= 1",
        ({"s1": 1, "s3": 1}, {"s1": 2, "s3": 2}, {"s1": 1, "s3": 2}),
        _a3_six,
        _a3_check,
    )
)
_register(
    RelationRecord(
        "hwz",
        "A2 zeta values as binomial sums of double zeta values",
        "partial fractions 1/(X^p Y^q) in X = m, Y = n",
        ("k", "l", "m"),
        "k, l, m >= 1 integers",
        ({"k": 1, "l": 1, "m": 2}, {"k": 2, "l": 1, "m": 3}, {"k": 3, "l": 2, "m": 2}),
        _hwz,
        _hwz_check,
    )
)
_register(
    RelationRecord(
        "closed-values",
        "numerical sums against closed forms in the constant ring",
        "listed special values of A3, B3, C2 and the alternating double zeta value",
        ("which",),
        "which in " + ", ".join(["all", *CLOSED_VALUES]),
        ({"which": "all"},),
        _closed,
        _closed_check,
    )
)


def registry() -> dict[str, RelationRecord]:
    return dict(_REGISTRY)


def relation_ids() -> list[str]:
    return list(_REGISTRY)


def get_relation(relation_id: str) -> RelationRecord:
    try:
        return _REGISTRY[relation_id]
    except KeyError:
        raise UnknownRelationError(f"unknown relation {relation_id!r}; known: {', '.join(_REGISTRY)}") from None


def verify(relation_id: str, params: Mapping[str, Any] | None = None, cfg: PrecisionConfig | None = None) -> list[VerificationReport]:
    """Evaluate every side comparison of a relation at one parameter point.

    A relation may compare more than two expressions, so one report is
    returned per compared pair.  Numerical failures inside an evaluator give
    a report with ``passed = None`` and the error message.
    """
    rec = get_relation(relation_id)
    cfg = cfg or PrecisionConfig()
    params = dict(params if params is not None else rec.points[0])
    missing = [n for n in rec.parameter_names if n not in params and not (rec.id == "closed-values")]
    if missing:
        raise DomainError(f"{relation_id} needs parameters {missing}")
    extra = [n for n in params if n not in rec.parameter_names]
    if extra:
        raise DomainError(f"{relation_id} does not take {extra}")
    params = {n: params[n] for n in rec.parameter_names if n in params}
    rec.check(params)
    out = []
    for comp in rec.build(params, cfg):
        out.append(_compare(rec.id, params, comp))
    return out


def _compare(rid: str, params: dict, comp: Comparison) -> VerificationReport:
    sides = []
    for thunk in (comp.lhs, comp.rhs):
        try:
            sides.append((thunk(), ""))
        except AccuracyNotReachedError as exc:
            sides.append((exc.best, str(exc)))
        except RootZetaError as exc:
            sides.append((None, str(exc)))
    (lhs, m1), (rhs, m2) = sides
    message = "; ".join(m for m in (m1, m2) if m)
    if lhs is None or rhs is None:
        return VerificationReport(rid, params, comp.sides, lhs, rhs, None, None, None, None, message)
    residual = float(abs(lhs.value - rhs.value))
    combined = lhs.abs_error_estimate + rhs.abs_error_estimate
    floor = FLOOR_TRIPLE if comp.triple else FLOOR_DOUBLE
    tol = max(floor, TOL_FACTOR * combined)
    passed = None if message else bool(residual <= tol)
    return VerificationReport(rid, params, comp.sides, lhs, rhs, residual, combined, tol, passed, message)
