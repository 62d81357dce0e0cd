import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootzeta.errors import AccuracyNotReachedError, DivergenceError, DomainError, PoleError
from rootzeta.rootsys import build_root_system
from rootzeta.series import (
    PrecisionConfig,
    SeriesResult,
    euler_zagier2,
    hurwitz_zeta,
    lattice_sum,
    multizeta_eval,
    phi,
    polylog,
    riemann_zeta,
)
from rootzeta.series.extrapolate import extrapolate
from rootzeta.series.lattice import converges

mpmath.mp.prec = 160


def close(res, ref, tol):
    assert abs(complex(res.value) - complex(ref)) <= tol, (res.value, ref)


# scalar functions -----------------------------------------------------------
@pytest.mark.parametrize("s", [2, 3, 4.5, 7, 0.5, -1.5, 2 + 3j, 0])
def test_riemann_zeta_against_mpmath(s, cfg):
    r = riemann_zeta(s, cfg)
    close(r, mpmath.zeta(s), 1e-30 * max(1, abs(mpmath.zeta(s))))
    assert r.abs_error_estimate < 1e-30


def test_zeta_zero_and_pole(cfg):
    assert complex(riemann_zeta(0, cfg).value) == pytest.approx(-0.5, abs=1e-35)
    with pytest.raises(PoleError):
        riemann_zeta(1, cfg)


@pytest.mark.parametrize("s,a", [(2, 0.5), (3, 2.25), (1.5, 0.1), (-0.5, 1.3)])
def test_hurwitz(s, a, cfg):
    close(hurwitz_zeta(s, a, cfg), mpmath.zeta(s, a), 1e-28)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, -1, cfg)


@pytest.mark.parametrize("s", [2, 3, 4, 0.5])
def test_phi(s, cfg):
    close(phi(s, cfg), -mpmath.altzeta(s), 1e-30)


@pytest.mark.parametrize("n,z", [(2, 0.5), (4, 0.5), (3, -1), (2, 1j), (1, -1), (3, 0.9 + 0.3j)])
def test_polylog(n, z, cfg):
    close(polylog(n, z, cfg), mpmath.polylog(n, z), 1e-25)


def test_polylog_errors(cfg):
    with pytest.raises(DivergenceError):
        polylog(1, 1, cfg)
    with pytest.raises(DomainError):
        polylog(2, 2, cfg)
    with pytest.raises(DomainError):
        polylog(0, 0.5, cfg)
    with pytest.raises(DomainError):
        polylog(2, mpmath.expj(1), cfg)


def test_polylog_root_of_unity_from_double(cfg):
    import cmath

    z = cmath.exp(2j * cmath.pi / 3)
    with mpmath.workprec(200):
        ref = mpmath.polylog(3, mpmath.expjpi(mpmath.mpf(2) / 3))
    close(polylog(3, z, cfg), ref, 1e-30)


def _ez2_brute(a, b, s1, s2):
    # sum over m of s1^m m^-a times the tail sum_{n>m} s2^n n^-b
    def term(m):
        m = int(m)
        if s2 == 1:
            tail = mpmath.zeta(b, m + 1)
        else:
            alt = mpmath.power(2, -b) * (mpmath.zeta(b, (m + 1) / mpmath.mpf(2)) - mpmath.zeta(b, (m + 2) / mpmath.mpf(2)))
            tail = (-1) ** (m + 1) * alt
        return s1**m * mpmath.power(m, -a) * tail

    return mpmath.nsum(term, [1, mpmath.inf])


def test_ez2_classical(cfg):
    # Euler: sum_{m<n} 1/(m n^2) = zeta(3)
    close(euler_zagier2(1, 2, 1, 1, cfg), mpmath.zeta(3), 1e-30)
    # stuffle: zeta(2,2) = (zeta(2)^2 - zeta(4)) / 2
    close(euler_zagier2(2, 2, 1, 1, cfg), (mpmath.zeta(2) ** 2 - mpmath.zeta(4)) / 2, 1e-30)


@pytest.mark.parametrize("a,b,s1,s2", [(1, 3, 1, -1), (2, 2, -1, 1), (1, 2, -1, -1), (3, 1.5, 1, -1)])
def test_ez2_signed(a, b, s1, s2, cfg):
    val = euler_zagier2(a, b, s1, s2, cfg)
    close(val, _ez2_brute(a, b, s1, s2), 1e-15)
    if (a, b, s1, s2) == (1, 3, 1, -1):
        # closed form for zeta_EZ(1,3; 1,-1)
        L = mpmath.log(2)
        cf = 2 * mpmath.polylog(4, 0.5) + L**4 / 12 - mpmath.mpf(15) / 8 * mpmath.zeta(4) + mpmath.mpf(7) / 4 * mpmath.zeta(3) * L - mpmath.zeta(2) * L**2 / 2
        close(val, cf, 1e-30)


def test_ez2_domain(cfg):
    with pytest.raises(DomainError):
        euler_zagier2(1, 1, 1, 1, cfg)
    with pytest.raises(DomainError):
        euler_zagier2(1, 2, 2, 1, cfg)


# lattice sums ---------------------------------------------------------------
def test_convergence_region():
    A2 = [(1, 0), (0, 1), (1, 1)]
    assert converges(A2, [1, 1, 1])
    assert not converges(A2, [1, 0, 1])
    assert not converges(A2, [2, 2, -0.5])
    assert converges(A2, [0, 0, 2.5])


def test_a1_is_riemann_zeta(cfg):
    close(multizeta_eval(build_root_system("A", 1), [2], None, cfg), mpmath.pi**2 / 6, 1e-30)
    close(multizeta_eval(build_root_system("A", 1), [2], [-1], cfg), -mpmath.pi**2 / 12, 1e-30)


@pytest.mark.parametrize(
    "s,ref,target",
    [
        ((1, 1, 1), lambda: 2 * mpmath.zeta(3), 1e-6),
        ((2, 2, 2), lambda: mpmath.pi**6 / 2835, None),
        ((0, 0, 3), lambda: mpmath.zeta(2) - mpmath.zeta(3), None),
        ((1, 0, 2), lambda: mpmath.zeta(3), None),
    ],
)
def test_a2_known_values(s, ref, target):
    res = multizeta_eval(build_root_system("A", 2), s, None, PrecisionConfig(target_abs_error=target))
    assert abs(complex(res.value) - complex(ref())) <= max(1e-12, 4 * res.abs_error_estimate)


def test_direct_against_truncated_brute_force(cfg):
    # fast-converging C2 sum: compare with a plain double loop plus a crude tail bound
    forms = [(1, 0), (0, 1), (1, 1), (1, 2)]
    exps = (3, 2, 2, 1)
    res = lattice_sum(forms, exps, None, cfg)
    N = 400
    brute = math.fsum(
        1.0 / (m**3 * n**2 * (m + n) ** 2 * (m + 2 * n)) for m in range(1, N + 1) for n in range(1, N + 1)
    )
    assert abs(complex(res.value).real - brute) < 1e-6
    assert res.abs_error_estimate < 1e-10


def test_signed_lattice(cfg):
    # sum (-1)^m m^-2 n^-2 = phi(2) zeta(2)
    res = lattice_sum([(1, 0), (0, 1)], (2, 2), (-1, 1), cfg)
    close(res, -mpmath.altzeta(2) * mpmath.zeta(2), max(1e-12, 4 * res.abs_error_estimate))


def test_lattice_errors(cfg):
    with pytest.raises(DomainError):
        lattice_sum([(1, 0), (0, 1), (1, 1)], (1, 0, 1), None, cfg)
    with pytest.raises(DomainError):
        lattice_sum([(1, 0)], (2, 2), None, cfg)
    with pytest.raises(DomainError):
        lattice_sum([(1, 0), (0, 1)], (2, 2), (2, 1), cfg)
    with pytest.raises(DomainError):
        multizeta_eval(build_root_system("A", 2), (2, 2), None, cfg)


def test_accuracy_not_reached_keeps_best():
    tight = PrecisionConfig(target_abs_error=1e-30)
    with pytest.raises(AccuracyNotReachedError) as exc:
        lattice_sum([(1, 0), (0, 1), (1, 1)], (1, 1, 1.5), None, tight)
    assert exc.value.best is not None
    loose = PrecisionConfig(target_abs_error=1e-30, strict=False)
    res = lattice_sum([(1, 0), (0, 1), (1, 1)], (1, 1, 1.5), None, loose)
    assert res.abs_error_estimate > 0


def test_workers_do_not_change_results():
    forms = [(1, 0), (0, 1), (1, 1), (2, 1)]
    a = lattice_sum(forms, (1, 2, 1, 1), None, PrecisionConfig(workers=1))
    b = lattice_sum(forms, (1, 2, 1, 1), None, PrecisionConfig(workers=4))
    assert complex(a.value) == complex(b.value)
    assert a.abs_error_estimate == b.abs_error_estimate


# extrapolation and containers -------------------------------------------------
@given(st.floats(0.5, 4.0), st.floats(-3, 3), st.floats(0.1, 10))
def test_extrapolation_exact_on_power_law(p, S, c):
    Ns = [100, 200, 400, 800]
    vals = [S + c * n**-p for n in Ns]
    v, err, meta = extrapolate(Ns, vals)
    assert abs(v - S) <= 1e-8 * max(1, abs(c))
    assert meta["fitted_p"][-1] == pytest.approx(p, rel=1e-5)


def test_extrapolation_short_ladders():
    assert extrapolate([10], [1.0])[1] == math.inf
    v, err, _ = extrapolate([10, 20], [1.0, 1.5])
    assert v == 1.5 and err == 0.5


def test_config_validation():
    for bad in [dict(working_precision=32), dict(target_abs_error=0), dict(ladder=(10, 5)), dict(workers=0), dict(ladder=(10, 2 * 10**6))]:
        with pytest.raises(DomainError):
            PrecisionConfig(**bad)


def test_precision_env(monkeypatch):
    monkeypatch.setenv("ROOTZETA_PREC_BITS", "200")
    assert PrecisionConfig().working_precision == 200
    monkeypatch.setenv("ROOTZETA_PREC_BITS", "abc")
    with pytest.raises(DomainError):
        PrecisionConfig()


def test_series_result_combine():
    a = SeriesResult(value=1.0, abs_error_estimate=0.1)
    b = SeriesResult(value=2.0, abs_error_estimate=0.2)
    c = a.combine(b, 2, -1)
    assert complex(c.value) == 0 and c.abs_error_estimate == pytest.approx(0.4)
    with pytest.raises(ValueError):
        SeriesResult(value=1.0, abs_error_estimate=-1)


def test_scalar_results_keep_working_precision(cfg):
    # results must not be rounded to the ambient 53-bit mpmath context
    z3 = riemann_zeta(3, cfg)
    ez = euler_zagier2(1, 3, 1, -1, cfg)
    with mpmath.workprec(200):
        ref = (
            2 * mpmath.polylog(4, mpmath.mpf(1) / 2)
            + mpmath.log(2) ** 4 / 12
            - mpmath.mpf(15) / 8 * mpmath.zeta(4)
            + mpmath.mpf(7) / 4 * mpmath.zeta(3) * mpmath.log(2)
            - mpmath.zeta(2) * mpmath.log(2) ** 2 / 2
        )
        assert abs(z3.value - mpmath.zeta(3)) <= 2 * z3.abs_error_estimate + 1e-45
        assert abs(z3.value - mpmath.zeta(3)) < 1e-35
        assert abs(ez.value - ref) <= 2 * ez.abs_error_estimate
        assert abs(ez.value - ref) < 1e-35
