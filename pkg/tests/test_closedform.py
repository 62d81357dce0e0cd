from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootzeta.closedform import SYMBOLS, ClosedForm, cf_add, cf_equal, cf_eval, cf_mul, cf_scale, parse, render
from rootzeta.errors import DomainError, ParseError

mpmath.mp.prec = 160

Z, PI = ClosedForm.zeta, ClosedForm.pi

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
monomials = st.tuples(*[st.integers(0, 2) for _ in SYMBOLS])
forms = st.dictionaries(monomials, rationals, max_size=4).map(ClosedForm._from)


@given(forms, forms, forms)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert a + 0 == a and a * 1 == a and (a * 0).is_zero()


@given(forms)
def test_normal_form_has_no_zero_coefficients(a):
    assert all(c != 0 for _, c in a.terms)
    assert all(e >= 0 for m, _ in a.terms for e in m)


@given(forms)
def test_render_parse_roundtrip(a):
    assert parse(render(a)) == a


def test_even_zeta_normalised():
    assert Z(2) == PI(2) / 6
    assert Z(4) == PI(4) / 90
    assert Z(6) == PI(6) / 945
    assert Z(8) == PI(8) / 9450
    assert cf_equal(Fraction(17, 10) * Z(2) ** 2, Fraction(17, 360) * PI(4))
    assert not cf_equal(Z(3) ** 2, Z(9))


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_even_zeta_numeric(n, cfg):
    assert abs(complex(cf_eval(Z(n), cfg).value) - complex(mpmath.zeta(n))) < 1e-30


def test_products_and_helpers():
    a = 2 * Z(3)
    assert a * a == 4 * Z(3) ** 2
    assert cf_mul(a, a) == a * a
    assert cf_add(PI(2), 0) == PI(2)
    assert cf_scale(Z(3), Fraction(1, 2)) == Z(3) / 2
    assert (PI() ** 3) == PI(3)


def test_eval_values(cfg):
    assert abs(complex(cf_eval(Z(3), cfg).value) - 1.2020569031595942853997381) < 1e-20
    li = cf_eval(ClosedForm.li4_half(), cfg)
    assert abs(complex(li.value) - complex(mpmath.polylog(4, 0.5))) < 1e-30
    a3 = 2 * Z(3) ** 2 - Fraction(31, 11340) * PI(6)
    v = cf_eval(a3, cfg)
    assert abs(complex(v.value) - complex(2 * mpmath.zeta(3) ** 2 - 31 * mpmath.pi**6 / 11340)) < 1e-30


@given(forms, forms)
def test_eval_is_additive(a, b):
    ea, eb, eab = cf_eval(a), cf_eval(b), cf_eval(a + b)
    assert abs(eab.value - ea.value - eb.value) <= ea.abs_error_estimate + eb.abs_error_estimate + eab.abs_error_estimate + 1e-25


def test_render_format():
    x = Fraction(9, 320) * PI(4) * Z(7) - Fraction(1429, 384) * PI(2) * Z(9)
    assert render(x) == "9/320 · π^4 · ζ(7) + -1429/384 · π^2 · ζ(9)"
    assert render(ClosedForm()) == "0"
    assert parse("9/320 * pi^4 * zeta(7) + -1429/384 * pi^2 * zeta(9)") == x
    assert parse("2 · Li4(1/2) + 1/12 · log(2)^4") == 2 * ClosedForm.li4_half() + Fraction(1, 12) * ClosedForm.log2() ** 4
    assert parse("1/2 · ζ(4)") == PI(4) / 180


@pytest.mark.parametrize("bad", ["", "1 · q", "1 · ζ(17)", "1 ·  · π", "1/0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_domain_errors():
    with pytest.raises(DomainError):
        Z(1)
    with pytest.raises(DomainError):
        Z(17)
    with pytest.raises(DomainError):
        PI(-1)
    with pytest.raises(DomainError):
        PI() ** -1
    with pytest.raises(DomainError):
        PI() + 0.5
