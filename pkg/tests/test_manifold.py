import random

import pytest

from ahodge.algebra import Form, words_of_degree
from ahodge.builtins import BUILTINS, get_builtin
from ahodge.manifold import (
    JacobiViolation,
    NonInvertibleCoframe,
    load_spec,
)
from ahodge.scalars import ONE, ParseError, Scalar
from util import S, form, word

ALL_BUILTINS = ["fls", "fls_nonak", "iwasawa_ak", "iwasawa_std", "iwasawa_complex"]


@pytest.fixture(scope="module", params=ALL_BUILTINS)
def any_builtin(request):
    return get_builtin(request.param)


def brute_force_d(spec, alpha):
    """Independent Leibniz oracle: split each word at its first letter."""
    out = Form.zero(spec.n)
    for w, c in alpha.coeffs.items():
        out = out + _d_word_recursive(spec, w).scale(c)
    return out


def _d_word_recursive(spec, w):
    if not w:
        return Form.zero(spec.n)
    head, rest = w[0], w[1:]
    head_form = Form.monomial(spec.n, (head,))
    term = spec.d_generator(head).wedge(Form.monomial(spec.n, rest))
    return term - head_form.wedge(_d_word_recursive(spec, rest))


def test_builtins_load_and_validate():
    for name in ALL_BUILTINS:
        spec = get_builtin(name)
        assert spec.name == name
        assert spec.n == 3


def test_family_point_loads():
    spec = get_builtin("fls", {"a": "1", "b": "0", "c": "4*pi"})
    assert spec.params["c"] == S("4*pi")


def test_real_structure_equations_roundtrip(fls):
    # d e5 = -e15 and d e3 = -e13 - e25, read back through the phi-basis
    e = fls.e_form
    assert fls.exterior_d(e(5)) == -e(1).wedge(e(5))
    assert fls.exterior_d(e(3)) == -e(1).wedge(e(3)) - e(2).wedge(e(5))
    assert fls.exterior_d(e(1)).is_zero()


def test_complex_structure_equations_fls():
    spec = get_builtin("fls", {"a": "2", "b": "1", "c": "4*pi"})
    assert spec.dphi[0].is_zero()
    expected_d2 = form(
        spec,
        [
            ("c/4", ("1", "3")),
            ("-1/(2*a)", ("1", "2b")),
            ("-c/4", ("1", "3b")),
            ("c/4", ("3", "1b")),
            ("-1/(2*a)", ("1b", "2b")),
            ("c/4", ("1b", "3b")),
        ],
    )
    assert spec.dphi[1] == expected_d2
    expected_d3 = form(
        spec,
        [
            ("c/4", ("1", "2")),
            ("-c/4", ("1", "2b")),
            ("1/(2*a)", ("1", "3b")),
            ("c/4", ("2", "1b")),
            ("c/4", ("1b", "2b")),
            ("1/(2*a)", ("1b", "3b")),
        ],
    )
    assert spec.dphi[2] == expected_d3


def test_complex_structure_equations_iwasawa_ak(iwasawa_ak):
    expected_d1 = form(
        iwasawa_ak,
        [
            ("-1/4", ("1", "3")),
            ("-i/4", ("2", "3")),
            ("1/4", ("1", "3b")),
            ("-i/4", ("2", "3b")),
            ("1/4", ("3", "1b")),
            ("i/4", ("3", "2b")),
            ("1/4", ("1b", "3b")),
            ("-i/4", ("2b", "3b")),
        ],
    )
    assert iwasawa_ak.dphi[0] == expected_d1
    assert iwasawa_ak.dphi[2].is_zero()


def test_exterior_d_leibniz_example(fls):
    e = fls.e_form
    d13 = fls.exterior_d(e(1).wedge(e(3)))
    assert d13 == e(1).wedge(e(2)).wedge(e(5))


def test_exterior_d_is_linear_and_leibniz(fls_4pi):
    spec = fls_4pi
    rng = random.Random(7)
    words = [w for k in range(5) for w in words_of_degree(3, k)]
    coeffs = [ONE, Scalar.rational(1, 2), Scalar.pi_power(1), -ONE]
    for _ in range(40):
        a = Form.monomial(3, rng.choice(words), rng.choice(coeffs))
        b = Form.monomial(3, rng.choice(words), rng.choice(coeffs))
        da, db = spec.exterior_d(a), spec.exterior_d(b)
        assert spec.exterior_d(a + b) == da + db
        ka = a.degree()
        sign = ONE if ka % 2 == 0 else -ONE
        both = spec.exterior_d(a.wedge(b))
        assert both == da.wedge(b) + a.wedge(db).scale(sign)


def test_exterior_d_matches_bruteforce_oracle(any_builtin):
    spec = any_builtin
    rng = random.Random(11)
    words = [w for k in range(7) for w in words_of_degree(3, k)]
    coeffs = [ONE, -ONE, Scalar.rational(2, 3), Scalar.pi_power(1)]
    for _ in range(100):
        alpha = Form.zero(3)
        for _ in range(rng.randint(1, 3)):
            alpha = alpha + Form.monomial(3, rng.choice(words), rng.choice(coeffs))
        assert spec.exterior_d(alpha) == brute_force_d(spec, alpha)


def test_d_squared_vanishes_on_random_forms(any_builtin):
    spec = any_builtin
    rng = random.Random(3)
    words = [w for k in range(6) for w in words_of_degree(3, k)]
    for _ in range(25):
        alpha = Form.monomial(3, rng.choice(words), Scalar.rational(rng.randint(1, 5)))
        assert spec.exterior_d(spec.exterior_d(alpha)).is_zero()


def test_split_components_sum_to_d(any_builtin):
    assert any_builtin.split_d().sum_is_d()


def test_split_shifts_bidegree(fls_4pi):
    split = fls_4pi.split_d()
    for which, (dp, dq) in (
        ("mu", (2, -1)),
        ("del", (1, 0)),
        ("dbar", (0, 1)),
        ("mubar", (-1, 2)),
    ):
        for w in words_of_degree(3, 2):
            image = split.apply(which, Form.monomial(3, w))
            for part in image.bidegree_split():
                p = sum(1 for j in w if j <= 3)
                q = len(w) - p
                assert part == (p + dp, q + dq)


def test_split_block_matrices(iwasawa_std, fls):
    split = iwasawa_std.split_d()
    src, tgt, mat = split.matrix("mubar", (1, 0))
    assert src == [(1,), (2,), (3,)]
    # d psi^3 = -psi^{1bar 2bar} is the only (0,2) image
    col = src.index((3,))
    row = tgt.index(word(3, "1b", "2b"))
    assert mat[row][col] == -ONE
    assert all(
        mat[r][c].is_zero()
        for r in range(len(tgt))
        for c in range(len(src))
        if (r, c) != (row, col)
    )
    # matrices on empty blocks are empty, not errors
    src, tgt, mat = fls.split_d().matrix("mu", (1, 0))
    assert tgt == [] and mat == []


def test_operator_values_from_structure_equations(fls, iwasawa_std):
    # mu on a (1,0)-form is trivially zero (it would land in q = -1)
    assert fls.op_apply("mu", Form.monomial(3, (2,))).is_zero()
    # mubar phi^3 = -psi^{1bar 2bar} for the conjugated Iwasawa coframe
    img = iwasawa_std.op_apply("mubar", Form.monomial(3, (3,)))
    assert img == -Form.monomial(3, word(3, "1b", "2b"))
    # mubar phi^{123} for the family
    img = fls.op_apply("mubar", Form.monomial(3, (1, 2, 3)))
    expected = form(
        fls,
        [
            ("1/(2*a)", ("1", "3", "1b", "2b")),
            ("-c/4", ("1", "3", "1b", "3b")),
            ("c/4", ("1", "2", "1b", "2b")),
            ("1/(2*a)", ("1", "2", "1b", "3b")),
        ],
    )
    assert img == expected


def test_seven_relations_hold_on_builtins(any_builtin):
    report = any_builtin.check_d2_relations()
    assert len(report) == 7
    for name, ok, witness in report:
        assert ok, (name, witness)


def test_integrability_flags(fls, iwasawa_std, iwasawa_complex):
    assert not fls.is_integrable()
    assert not iwasawa_std.is_integrable()
    assert iwasawa_complex.is_integrable()


TOY = """
[manifold]
name = toy
dim = 6

[coframe]
d e1 = 0
d e2 = 0
d e3 = e12
d e4 = {DE4}
d e5 = 0
d e6 = 0

[acs]
phi1 = e1 + i*e2
phi2 = e3 + i*e4
phi3 = e5 + i*e6
"""


def test_two_step_example_has_vanishing_d_squared():
    # de3 = e12, de4 = e13: expanding d^2 e4 = -e1 ^ de3 = -e1 ^ e12 = 0,
    # so this loads cleanly
    spec = load_spec(TOY.replace("{DE4}", "e13"))
    assert spec.exterior_d(spec.exterior_d(spec.e_form(4))).is_zero()


def test_jacobi_violation_detected():
    with pytest.raises(JacobiViolation):
        load_spec(TOY.replace("{DE4}", "e34"))


def test_sign_flip_in_structure_equation_is_caught():
    bad = BUILTINS["fls"].replace("d e5 = -e15", "d e5 = e15")
    with pytest.raises(JacobiViolation):
        load_spec(bad)


def test_non_invertible_coframe_rejected():
    bad = BUILTINS["fls_nonak"].replace("phi3 = e5 + i*e6", "phi3 = e1 + i*e2")
    with pytest.raises(NonInvertibleCoframe):
        load_spec(bad)


CROSS_VALIDATED = (
    BUILTINS["fls_nonak"]
    + """
[complex_coframe]
d phi1 = 0
d phi2 = (i/2)*phi[1 3] - (1/2)*phi[1 2b] + (i/2)*phi[3 1b] - (1/2)*phi[1b 2b]
d phi3 = -(1/2)*phi[1 3b] - (1/2)*phi[1b 3b]
"""
)


def test_cross_validation_of_declared_complex_equations():
    spec = load_spec(CROSS_VALIDATED)
    assert spec.name == "fls_nonak"


def test_cross_validation_rejects_wrong_declaration():
    wrong = CROSS_VALIDATED.replace("(i/2)*phi[1 3]", "(i/2)*phi[1 2]")
    with pytest.raises(ParseError):
        load_spec(wrong)


def test_empty_and_malformed_manifests():
    with pytest.raises(ParseError):
        load_spec("")
    with pytest.raises(ParseError):
        load_spec("[manifold]\nname = x\n")  # no dim
    with pytest.raises(ParseError):
        load_spec("stray line\n")


def test_fibration_validation():
    bad = BUILTINS["fls"].replace("V2: fiber", "V2: base, symbol = [1, 0]")
    with pytest.raises(ParseError):
        load_spec(bad)  # fiber_span lists V2, which is no longer pure fiber
    bad2 = BUILTINS["fls"].replace(
        "V1: base, symbol = [-pi, i*pi/(a*a0)]", "V1: base, symbol = [-pi]"
    )
    with pytest.raises(ParseError):
        load_spec(bad2)


def test_parameter_override_validation():
    with pytest.raises(ParseError):
        get_builtin("fls", {"zz": "1"})


def test_mode_symbols(fls, iwasawa_ak):
    # conj V1 acts on exp(2 pi i (lambda x + mu t / a0)) by -pi l + i pi m/(a a0)
    sig = fls.fibration.sigma(1, (2, 3))
    assert sig == S("-2*pi + 3*i*pi", fls)
    tau = fls.fibration.tau(1, (2, 3))
    assert tau == S("2*pi + 3*i*pi", fls)
    sig3 = iwasawa_ak.fibration.sigma(3, (1, 1))
    assert sig3 == S("i*pi - pi")
