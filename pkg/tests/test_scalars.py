from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahodge.scalars import (
    DivisionByZero,
    I,
    ONE,
    PI,
    ParseError,
    Scalar,
    ZERO,
    format_scalar,
    parse_scalar,
    sign_at_pi,
)

rationals = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=9
)


@st.composite
def scalars(draw):
    """Small elements of Q(pi)(i): rational + rational*pi (+ i multiples)."""
    a = draw(rationals)
    b = draw(rationals)
    c = draw(rationals)
    value = Scalar.rational(a) + Scalar.pi_power(1, b) + I * Scalar.rational(c)
    if draw(st.booleans()):
        value = value * PI
    return value


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_inverse_roundtrip(a):
    if a.is_zero():
        with pytest.raises(DivisionByZero):
            a.inv()
    else:
        assert a * a.inv() == ONE


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_conj_is_involutive_automorphism(a, b):
    assert a.conj().conj() == a
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_re_im_decomposition(a):
    assert a.re() + I * a.im() == a
    assert a.re().is_real() and a.im().is_real()


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_canonical_forms_make_equality_syntactic():
    assert parse_scalar("2/4") == parse_scalar("1/2")
    # (pi^2 - 1)/(pi - 1) reduces to pi + 1
    q = (PI * PI - ONE) / (PI - ONE)
    assert q == PI + ONE
    assert q.num == (PI + ONE).num and q.den == (PI + ONE).den


def test_basic_arithmetic_examples():
    assert Scalar.integer(2).inv() == parse_scalar("1/2")
    assert parse_scalar("4*pi") * parse_scalar("1/2") == parse_scalar("2*pi")
    with pytest.raises(DivisionByZero):
        ZERO.inv()


def test_pi_linear_combinations_with_integers_never_vanish():
    # -4*pi*k + 1 and -4*pi*k - 1 keep a constant term for every integer k
    for k in range(-50, 51):
        for sign in (1, -1):
            value = Scalar.pi_power(1, -4 * k) + Scalar.integer(sign)
            assert not value.is_zero()


def test_pi_times_rational_never_equals_nonzero_rational():
    # pi*k - 1/(2a) is nonzero for k != 0 by transcendence: exact zero test
    for k in range(1, 6):
        for a in (1, 2, 3):
            value = Scalar.pi_power(1, k) - Scalar.rational(1, 2 * a)
            assert not value.is_zero()
            assert sign_at_pi(value) == 1


def test_certified_signs():
    assert sign_at_pi(PI - Scalar.integer(3)) == 1
    assert sign_at_pi(PI - Scalar.integer(4)) == -1
    assert sign_at_pi(ZERO) == 0
    assert sign_at_pi((PI - Scalar.integer(3)) * (PI - Scalar.integer(4))) == -1
    with pytest.raises(ValueError):
        sign_at_pi(I)


def test_sign_resolves_tight_values():
    # 113 pi - 355 is about -3e-5: needs a finer enclosure than a few bits
    tight = Scalar.pi_power(1, 113) - Scalar.integer(355)
    assert sign_at_pi(tight, prec=8) == -1


def test_parser_grammar():
    env = {"a": Scalar.integer(2), "c": parse_scalar("4*pi")}
    assert parse_scalar("1/2") == Scalar.rational(1, 2)
    assert parse_scalar("-(1/2)*i") == -(Scalar.rational(1, 2) * I)
    assert parse_scalar("c/4", env) == PI
    assert parse_scalar("pi^2") == PI * PI
    assert parse_scalar("i*pi/(a*1)", env) == I * PI * Scalar.rational(1, 2)
    assert parse_scalar("2 + 3*i - 1") == Scalar.integer(1) + Scalar.integer(3) * I
    assert parse_scalar("i^2") == -ONE


@pytest.mark.parametrize(
    "bad", ["", "1 +", "unknown_name", "pi^x", "(1", "1/0", "2 ** 3"]
)
def test_parser_rejects_malformed_input(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as err:
        parse_scalar("1 +", lineno=7)
    assert "line 7" in str(err.value)
