import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from radicalroots import (InputSyntaxError, IntPolynomial, eval_poly,
                          make_complex, parse_polynomial, render_polynomial,
                          sanity_check, to_monic)


def test_parse_quintic():
    assert parse_polynomial("x^5+20x+32").coeffs == (32, 20, 0, 0, 0, 1)


def test_parse_bare_x():
    assert parse_polynomial("x").coeffs == (0, 1)


def test_parse_rational_clearing():
    assert parse_polynomial("x^2 - 1/2").coeffs == (-1, 0, 2)


def test_parse_assorted_forms():
    assert parse_polynomial("-x^2 + 3").coeffs == (3, 0, -1)
    assert parse_polynomial("2*x^3 - x").coeffs == (0, -1, 0, 2)
    assert parse_polynomial("1/2x^2+1/3x").coeffs == (0, 2, 3)
    assert parse_polynomial("x + x").coeffs == (0, 2)


@pytest.mark.parametrize("bad", ["", "5", "x - x", "x^^2", "y^2", "x^2 + 1/0x",
                                 "3x^2 * 4"])
def test_parse_errors(bad):
    with pytest.raises(InputSyntaxError):
        parse_polynomial(bad)


@given(coeffs=st.lists(st.integers(-999, 999), min_size=2, max_size=8))
@settings(max_examples=100, deadline=None)
def test_parse_render_idempotent(coeffs):
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    p = IntPolynomial(tuple(coeffs))
    once = parse_polynomial(render_polynomial(p))
    twice = parse_polynomial(render_polynomial(once))
    assert once == twice == p


def test_to_monic_examples():
    p = parse_polynomial("x^5+20x+32")
    red = to_monic(p)
    assert red.monic == p and red.scale == 1

    red = to_monic(parse_polynomial("2x^2-1"))
    assert red.monic.coeffs == (-2, 0, 1)  # y^2 - 2
    assert red.scale == 2

    red = to_monic(parse_polynomial("3x^3+1"))
    assert red.monic.coeffs == (9, 0, 0, 1)  # y^3 + 9
    assert red.scale == 3


def test_monic_roots_correspondence():
    # z is a root of p exactly when scale*z is a root of the monic reduction
    p = parse_polynomial("2x^2-1")
    red = to_monic(p)
    with mp.workdps(30):
        z_str = mpmath.nstr(mpmath.sqrt(mpf(1) / 2), 25)
    z = make_complex(z_str, "0", 25)
    assert eval_poly(p, z).magnitude() < mpf(10) ** -22
    scaled = z.scaled_by_int(red.scale)
    tau = mpf(10) ** -22
    assert eval_poly(red.monic, scaled).magnitude() < tau * red.scale ** p.degree


def test_eval_poly_trivial():
    p = parse_polynomial("x^2-2")
    v = eval_poly(p, make_complex("0", "0", 12))
    assert v.re == -2 and v.im == 0


def test_eval_poly_paper_root_residual():
    # the 13-decimal approximation satisfies the quintic to ~1.5e-12
    p = parse_polynomial("x^5+20x+32")
    z = make_complex("-1.3639621650899", "0", 30)
    mag = eval_poly(p, z).magnitude()
    assert mag < mpf("2e-12")


def test_eval_poly_cube_root():
    digits = 24
    with mp.workdps(digits + 10):
        c = mpmath.nstr(mpmath.cbrt(2), digits + 2)
    z = make_complex(c, "0", digits)
    p = parse_polynomial("x^3-2")
    assert eval_poly(p, z).magnitude() < mpf(10) ** (3 - digits)


def test_sanity_check_clean():
    rep = sanity_check(parse_polynomial("x^2-2"))
    assert rep.square_free and rep.integer_roots == () and rep.clean


def test_sanity_check_integer_roots():
    rep = sanity_check(parse_polynomial("x^2-1"))
    assert rep.integer_roots == (-1, 1)
    assert not rep.clean


def test_sanity_check_not_square_free():
    rep = sanity_check(parse_polynomial("x^4-4x^2+4"))  # (x^2-2)^2
    assert not rep.square_free


def test_sanity_check_requires_monic():
    with pytest.raises(ValueError):
        sanity_check(parse_polynomial("2x^2-1"))
