import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootzeta.errors import AssumptionError, DomainError, EvaluationInstabilityError, SingularFactorError
from rootzeta.genfun import (
    F_general,
    GenFunSpec,
    PTemplate,
    Shape,
    TruncatedSeries,
    bernoulli_P,
    bernoulli_P_layers,
    bernoulli_poly,
    expand_unit_factor,
    phases_real,
    singular_pairs,
)
from rootzeta.genfun.explicit import F_explicit
from rootzeta.genfun.theorem import check_condition_sharp, theorem_rhs
from rootzeta.genfun.tseries import EXACT, variables_series
from rootzeta.rootsys import SubsetSpec, build_root_system
from rootzeta.series import PrecisionConfig

PI = math.pi
A3 = build_root_system("A", 3)
B3 = build_root_system("B", 3)
D3 = build_root_system("D", 3)


# independent closed forms for two Bernoulli functions -----------------------
def p_b3(m2, m3):
    s = (-1) ** m3
    a, b = m2 + m3, 2 * m2 + m3
    p6, p4 = PI**6, PI**4
    return (
        1 / (16 * p6 * m2**2 * m3**3 * a)
        + 1 / (16 * p6 * m2**2 * a * b**3)
        - 5 / (16 * p6 * m2 * m3**4 * a)
        - s / (4 * p6 * m3**4 * b**2)
        - 1 / (4 * p6 * m3**4 * b**2)
        - 1 / (16 * p6 * m2 * m3**3 * a**2)
        - s / (24 * p4 * m3**2 * b**2)
        - s / (4 * p6 * m3**2 * b**4)
        - 1 / (4 * p6 * m3**2 * b**4)
        + 1 / (12 * p4 * m3**2 * b**2)
        + 1 / (16 * p6 * m2 * a**2 * b**3)
        + 5 / (16 * p6 * m2 * a * b**4)
    )


def p_a3(m1, m3):
    p4 = PI**4
    if m1 == m3:
        return 7 / (32 * p4 * m1**4) - 1 / (48 * PI**2 * m1**2)
    return (
        1 / (8 * p4 * m1**2 * m3 * (m1 + m3))
        + 1 / (8 * p4 * m1**2 * m3 * (m3 - m1))
        - 1 / (8 * p4 * m1 * m3**2 * (m3 - m1))
        + 1 / (8 * p4 * m1 * m3**2 * (m1 + m3))
        - 1 / (8 * p4 * m1 * m3 * (m3 - m1) ** 2)
        + 1 / (8 * p4 * m1 * m3 * (m1 + m3) ** 2)
    )


# truncated series ------------------------------------------------------------
VARS = ("x", "y", "z")
SHAPE = Shape(3, 4)
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exact_series = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), small, max_size=6
).map(lambda d: TruncatedSeries.from_dict(VARS, SHAPE, d, EXACT))


@given(exact_series, exact_series, exact_series)
def test_series_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries.zero(VARS, SHAPE, EXACT)


@given(exact_series, st.fractions(min_value=1, max_value=4, max_denominator=3))
def test_series_inverse(a, c0):
    a = a - a.coefficient_layers((0, 0, 0))[0] + c0
    one = TruncatedSeries.monomial(VARS, SHAPE, (0, 0, 0), 1, 0, EXACT)
    assert a * a.inverse() == one


@given(exact_series, exact_series)
def test_numeric_matches_exact(a, b):
    t = np.array([0.3 + 0.1j, -0.2, 0.15j])
    assert (a * b).to_numeric().evaluate(t) == pytest.approx((a * b).evaluate(t), abs=1e-12)


@given(exact_series, st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_divide_linear_recovers_factor(q, c):
    ext = SHAPE.extended(0, 1)
    u = variables_series(VARS, ext, EXACT)
    qe = TruncatedSeries.from_dict(VARS, ext, {K: q.coefficient_layers(K)[0] for K in q.monomials}, EXACT)
    # keep only degree <= D so the product is fully represented on ext
    prod = (u[0] - u[1] * c) * qe
    assert prod.divide_linear(0, 1, c, SHAPE) == q


def test_permute_and_restrict():
    s = TruncatedSeries.from_dict(VARS, SHAPE, {(1, 0, 0): 1, (0, 2, 1): Fraction(1, 3)}, EXACT)
    p = s.permute([2, 0, 1])
    assert p.variables == ("z", "x", "y")
    assert p.coefficient_layers((1, 0, 2))[0] == Fraction(1, 3)
    assert p.permute([1, 2, 0]) == s
    r = s.restrict(Shape(3, 2))
    assert r.coefficient((1, 0, 0)) == 1
    with pytest.raises(DomainError):
        r.coefficient((0, 2, 1))
    with pytest.raises(DomainError):
        s.permute([0, 0, 1])
    with pytest.raises(DomainError):
        s + TruncatedSeries.zero(VARS, SHAPE)


def test_series_exp_evaluates():
    # exp(x) truncated at degree 10 vs math.exp
    sh = Shape(1, 10)
    e = TruncatedSeries.from_dict(("x",), sh, {(n,): Fraction(1, math.factorial(n)) for n in range(11)}, EXACT)
    assert e.evaluate([0.3]) == pytest.approx(math.exp(0.3), rel=1e-12)
    assert (e * e).evaluate([0.3]) == pytest.approx(math.exp(0.6), rel=1e-9)


# unit factors and Bernoulli polynomials ----------------------------------------
@pytest.mark.parametrize("c,d", [(Fraction(1), Fraction(2)), (Fraction(-1, 2), Fraction(3)), (Fraction(2), Fraction(-1))])
def test_unit_factor_exact_identity(c, d):
    D = 7
    F = expand_unit_factor(c, d, D)
    sh = F.shape
    u = variables_series(F.variables, sh, EXACT)
    lhs = F * (u[0] - u[1] * c - d)
    assert lhs == u[0]


def test_unit_factor_numeric_and_singular():
    F = expand_unit_factor(0.5, 2.0, 12)
    t = (0.05, 0.03)
    assert F.evaluate(t) == pytest.approx(t[0] / (t[0] - 0.5 * t[1] - 2.0), rel=1e-12)
    with pytest.raises(SingularFactorError):
        expand_unit_factor(Fraction(1), Fraction(0), 4)


@pytest.mark.parametrize("n", range(8))
def test_bernoulli_poly_generating_function(n):
    # t e^{xt}/(e^t - 1) = sum B_n(x) t^n / n!
    x = Fraction(1, 3)
    coeffs = [float(bernoulli_poly(j, x)) / math.factorial(j) for j in range(20)]
    t = 0.4
    assert sum(c * t**j for j, c in enumerate(coeffs)) == pytest.approx(t * math.exp(float(x) * t) / math.expm1(t), rel=1e-12)
    assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


# Bernoulli functions against closed forms ---------------------------------------
@pytest.mark.parametrize("m2", range(1, 7))
@pytest.mark.parametrize("m3", range(1, 7))
def test_bernoulli_p_b3_closed_form(m2, m3):
    g = GenFunSpec.make(B3, [2, 3], [m2, m3])
    assert bernoulli_P(g, (2, 1, 1, 1, 1)).real == pytest.approx(p_b3(m2, m3), rel=1e-10, abs=1e-22)


@pytest.mark.parametrize("m1", range(1, 7))
@pytest.mark.parametrize("m3", range(1, 7))
def test_bernoulli_p_a3_closed_form(m1, m3):
    g = GenFunSpec.make(A3, [1, 3], [m1, m3])
    assert bernoulli_P(g, (1, 1, 1, 1)).real == pytest.approx(p_a3(m1, m3), rel=1e-10, abs=1e-22)


def test_bernoulli_p_layers_exact():
    g = GenFunSpec.make(A3, [1, 3], [1, 1])
    # 7/(32 pi^4) - 1/(48 pi^2) = 7/2 (2 pi i)^-4 + 1/12 (2 pi i)^-2
    assert bernoulli_P_layers(g, (1, 1, 1, 1)) == {-4: Fraction(7, 2), -2: Fraction(1, 12)}


def test_exact_and_numeric_agree():
    g = GenFunSpec.make(B3, [2, 3], [2, 3], (1, Fraction(1, 2), 0))
    assert phases_real(g)
    a = bernoulli_P(g, (2, 1, 1, 1, 1), mode="exact")
    b = bernoulli_P(g, (2, 1, 1, 1, 1), mode="numeric")
    assert abs(a - b) <= 1e-13 * abs(a)
    g2 = GenFunSpec.make(B3, [2, 3], [2, 3], (Fraction(1, 3), 0, 0))
    assert not phases_real(g2)
    with pytest.raises(DomainError):
        F_general(g2, 4, mode="exact")


@pytest.mark.parametrize(
    "kind,r,I,k",
    [("A", 3, [1, 3], (1, 1, 1, 1)), ("B", 3, [2, 3], (2, 1, 1, 1, 1)), ("D", 4, [2, 3, 4], (1,) * 6), ("C", 3, [1, 2], None)],
)
def test_template_matches_series_route(kind, r, I, k):
    rs = build_root_system(kind, r)
    spec = SubsetSpec.from_I(r, I)
    probe = GenFunSpec.make(rs, I, [1] * len(I))
    n = len(probe.variables)
    k = k or (2,) + (1,) * (n - 1)
    tmpl = PTemplate(rs, spec, k)
    rng = np.random.default_rng(5)
    lams = rng.integers(1, 7, size=(6, len(I)))
    vals, singular = tmpl.evaluate(lams)
    for lam, v, sg in zip(lams, vals, singular):
        ref = bernoulli_P(GenFunSpec.make(rs, I, lam), k)
        if sg:
            assert np.isnan(v)
        else:
            assert abs(v - ref) <= 1e-12 * max(abs(ref), 1e-20)


def test_singular_pairs():
    assert singular_pairs(GenFunSpec.make(A3, [1, 3], [2, 2])) != []
    assert singular_pairs(GenFunSpec.make(A3, [1, 3], [1, 2])) == []


# explicit formulas ---------------------------------------------------------------
@pytest.mark.parametrize(
    "kind,r,I,formula,lam",
    [
        ("B", 3, [2, 3], "B3", (2, 1)),
        ("B", 3, [2, 3], "Br", (1, 3)),
        ("D", 3, [2, 3], "Dr", (1, 2)),
        ("A", 3, [1, 3], "A3", (1, 2)),
        ("A", 3, [1, 3], "A3", (2, 2)),
        ("D", 4, [2, 3, 4], "Dr", (1, 2, 1)),
    ],
)
def test_series_matches_explicit_small_t(kind, r, I, formula, lam):
    rs = build_root_system(kind, r)
    g = GenFunSpec.make(rs, I, lam)
    F = F_general(g, 8)
    rng = np.random.default_rng(11)
    n = len(g.variables)
    for _ in range(3):
        t = rng.normal(size=n) + 1j * rng.normal(size=n)
        t *= 0.01 / np.linalg.norm(t)
        ref = F_explicit(formula, r, t, None, lam)
        assert abs(F.evaluate(t) - ref) <= 1e-8 * abs(ref)


def test_series_matches_explicit_with_y():
    y = (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
    g = GenFunSpec.make(B3, [2, 3], [1, 2], y)
    F = F_general(g, 8)
    t = np.array([0.01, 0.02j, -0.01, 0.015, 0.01 - 0.01j])
    ref = F_explicit("Br", 3, t, y, (1, 2))
    assert abs(F.evaluate(t) - ref) <= 1e-8 * abs(ref)


def test_explicit_errors():
    with pytest.raises(DomainError):
        F_explicit("E8", 3, [0.1] * 5, None, (1, 1))
    with pytest.raises(DomainError):
        F_explicit("B3", 3, [0.1] * 5, (Fraction(1, 2), 0, 0), (1, 1))
    with pytest.raises(EvaluationInstabilityError):
        # t14 - t13 = 2 pi i m3 is a pole of the first term
        F_explicit("A3", 3, [0.1, 0.2, 0.3, 0.1 + 2j * PI], None, (1, 1))


def test_d3_a3_coincidence_exact():
    h = Fraction(1, 2)
    for lam, y in [((3, 1), (h, h, 0)), ((1, 1), (0, 0, 0))]:
        gD = GenFunSpec.make(D3, [2, 3], lam, y)
        gA = GenFunSpec.make(A3, [1, 3], lam, (y[1], y[0], y[2]))
        FD = F_general(gD, 6, "exact")
        assert FD.permute([1, 0, 3, 2], gA.variables) == F_general(gA, 6, "exact")


# lambda-sum side ------------------------------------------------------------------
def test_condition_sharp():
    check_condition_sharp(B3, (1, 1, 1))
    with pytest.raises(AssumptionError):
        check_condition_sharp(B3, (0, 1))
    a1 = build_root_system("A", 1)
    with pytest.raises(AssumptionError):
        check_condition_sharp(a1, (1,))
    check_condition_sharp(a1, (2,))


def test_theorem_rhs_rank_one():
    a1 = build_root_system("A", 1)
    res = theorem_rhs(a1, SubsetSpec(1, 1), (2,), ())
    assert complex(res.value) == pytest.approx(PI**2 / 3, rel=1e-13)


def test_theorem_rhs_argument_checks():
    spec = SubsetSpec.from_I(3, [2, 3])
    with pytest.raises(DomainError):
        theorem_rhs(B3, spec, (1, 1, 1), (2, 2, 2, 2))
    with pytest.raises(DomainError):
        theorem_rhs(B3, spec, (2, 1, 1, 1, 1), (2, 2))


def test_theorem_rhs_deterministic_across_workers():
    spec = SubsetSpec.from_I(3, [2, 3])
    a = theorem_rhs(B3, spec, (2, 1, 1, 1, 1), (2, 2, 2, 2), None, PrecisionConfig(workers=1))
    b = theorem_rhs(B3, spec, (2, 1, 1, 1, 1), (2, 2, 2, 2), None, PrecisionConfig(workers=3))
    assert complex(a.value) == complex(b.value)
