import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahodge.algebra import (
    DegreeMismatch,
    DimensionMismatch,
    Form,
    GramData,
    NotPositive,
    words_of_degree,
)
from ahodge.scalars import I, ONE, Scalar, ZERO, sign_at_pi
from util import S, form, word

N = 3
all_words = [w for k in range(7) for w in words_of_degree(N, k)]
monomials = st.sampled_from(all_words)
small_coeffs = st.sampled_from(
    [ONE, -ONE, I, Scalar.rational(1, 2), Scalar.pi_power(1), Scalar.rational(-3)]
)


@st.composite
def forms(draw):
    total = Form.zero(N)
    for _ in range(draw(st.integers(0, 3))):
        total = total + Form.monomial(N, draw(monomials), draw(small_coeffs))
    return total


def test_wedge_examples():
    phi1 = Form.monomial(N, (1,))
    phi2b = Form.monomial(N, (5,))
    assert phi1.wedge(phi1).is_zero()
    assert phi1.wedge(phi2b) == Form.monomial(N, (1, 5))
    assert phi2b.wedge(phi1) == -Form.monomial(N, (1, 5))


@settings(max_examples=80, deadline=None)
@given(monomials, monomials)
def test_wedge_graded_anticommutation(w1, w2):
    a, b = Form.monomial(N, w1), Form.monomial(N, w2)
    sign = -ONE if (len(w1) * len(w2)) % 2 else ONE
    assert a.wedge(b) == b.wedge(a).scale(sign)


@settings(max_examples=60, deadline=None)
@given(monomials, monomials, monomials)
def test_wedge_associative(w1, w2, w3):
    a, b, c = (Form.monomial(N, w) for w in (w1, w2, w3))
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=60, deadline=None)
@given(forms(), forms())
def test_wedge_bilinear(a, b):
    c = Scalar.rational(3, 7)
    assert a.scale(c).wedge(b) == a.wedge(b).scale(c)
    assert a.wedge(b.scale(c)) == a.wedge(b).scale(c)


def test_wedge_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Form.monomial(2, (1,)).wedge(Form.monomial(3, (1,)))


@settings(max_examples=60, deadline=None)
@given(forms())
def test_bidegree_split_reassembles(alpha):
    parts = alpha.bidegree_split()
    total = Form.zero(N)
    for (p, q), part in parts.items():
        for w in part.coeffs:
            assert (sum(1 for j in w if j <= N), sum(1 for j in w if j > N)) == (p, q)
        total = total + part
    assert total == alpha


def test_bidegree_split_examples():
    alpha = Form.monomial(N, (1, 5)) + Form.monomial(N, (4, 5))
    parts = alpha.bidegree_split()
    assert set(parts) == {(1, 1), (0, 2)}
    assert parts[(1, 1)] == Form.monomial(N, (1, 5))
    assert Form.zero(N).bidegree_split() == {}


def test_bidegree_split_of_family_structure_equation(fls):
    parts = fls.dphi[1].bidegree_split()
    assert set(parts) == {(2, 0), (1, 1), (0, 2)}
    assert parts[(2, 0)] == form(fls, [("c/4", ("1", "3"))])
    assert parts[(1, 1)] == form(
        fls,
        [
            ("-1/(2*a)", ("1", "2b")),
            ("-c/4", ("1", "3b")),
            ("c/4", ("3", "1b")),
        ],
    )
    assert parts[(0, 2)] == form(
        fls, [("-1/(2*a)", ("1b", "2b")), ("c/4", ("1b", "3b"))]
    )


@settings(max_examples=60, deadline=None)
@given(forms())
def test_conj_involution(alpha):
    assert alpha.conj().conj() == alpha


def test_star_star_is_parity_on_all_monomials(fls_metric, iwasawa_ak_metric):
    for gram in (fls_metric.gram, iwasawa_ak_metric.gram):
        for w in all_words:
            alpha = Form.monomial(N, w)
            twice = gram.hodge_star(gram.hodge_star(alpha))
            expect = alpha if len(w) % 2 == 0 else -alpha
            assert twice == expect, w


def test_star_closed_form_values(fls_metric):
    gram = fls_metric.gram
    half_i = S("(1/2)*i")
    assert gram.hodge_star(Form.monomial(N, (1, 2))) == Form.monomial(
        N, (1, 2, 3, 6), half_i
    )
    assert gram.hodge_star(Form.monomial(N, (1, 3))) == Form.monomial(
        N, (1, 2, 3, 5), -half_i
    )


def test_star_unit_and_volume(fls_metric):
    gram = fls_metric.gram
    one = Form.scalar(N, ONE)
    assert gram.hodge_star(one) == gram.vol
    assert gram.hodge_star(gram.vol) == one
    assert gram.inner_product(gram.vol, gram.vol) == ONE


def test_defining_relation_of_star(fls_4pi_metric):
    gram = fls_4pi_metric.gram
    vol = gram.vol
    for k in (1, 2):
        for w1 in words_of_degree(N, k):
            for w2 in words_of_degree(N, k):
                a = Form.monomial(N, w1)
                b = Form.monomial(N, w2)
                lhs = a.wedge(gram.hodge_star(b.conj()))
                rhs = vol.scale(gram.inner_product(a, b))
                assert lhs == rhs


def test_inner_product_values(fls_metric):
    gram = fls_metric.gram
    phi1, phi2 = Form.monomial(N, (1,)), Form.monomial(N, (2,))
    assert gram.inner_product(phi1, phi1) == Scalar.integer(2)
    assert gram.inner_product(phi1, phi2) == ZERO


@settings(max_examples=40, deadline=None)
@given(a=forms(), b=forms())
def test_inner_product_conjugate_symmetric(fls_metric, a, b):
    gram = fls_metric.gram
    da, db = a.degree(), b.degree()
    if a.is_zero() or b.is_zero() or da is None or db is None or da != db:
        return
    assert gram.inner_product(a, b) == gram.inner_product(b, a).conj()


@settings(max_examples=40, deadline=None)
@given(alpha=forms())
def test_inner_product_positive_definite(fls_metric, alpha):
    gram = fls_metric.gram
    if alpha.is_zero() or alpha.degree() is None:
        return
    norm = gram.inner_product(alpha, alpha)
    assert norm.is_real()
    assert sign_at_pi(norm) == 1


def test_inner_product_degree_mismatch(fls_metric):
    with pytest.raises(DegreeMismatch):
        fls_metric.gram.inner_product(Form.monomial(N, (1,)), Form.monomial(N, (1, 2)))


def test_gram_validation_rejects_bad_matrices(fls_metric):
    good = fls_metric.gram
    bad = [row[:] for row in good.g1]
    bad[0][1] = ONE  # breaks Hermitian symmetry
    with pytest.raises(ValueError):
        GramData(N, bad, good.vol_coeff, good.orientation)
    indef = [row[:] for row in good.g1]
    indef[0][0] = -indef[0][0]
    with pytest.raises(NotPositive):
        GramData(N, indef, good.vol_coeff, good.orientation)


def test_word_helper():
    assert word(3, "1", "2b") == (1, 5)
    assert word(3, "3b", "1") == (1, 6)
