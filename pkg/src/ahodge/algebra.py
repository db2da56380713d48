"""Complexified exterior algebra on an invariant coframe, with bigrading.

Basis one-forms are indexed 1..n (the (1,0) generators) and n+1..2n (their
conjugates), so the fixed index order 1 < ... < n < 1bar < ... < nbar is just
integer order.  A Form is a finitely supported map from strictly increasing
index words to scalars in Q(pi)(i); no zero coefficients are ever stored.

GramData carries the Hermitian inner products of the coframe and the volume
form, and from those alone computes inner products on every exterior degree
(Gram determinants) and the complex-linear Hodge star, defined against the
volume by  alpha ^ star(conj(beta)) = <alpha, beta> vol  on each degree.
No hand-coded sign tables.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .scalars import ONE, ZERO, Scalar, format_scalar, is_positive


class DimensionMismatch(ValueError):
    """Operands live over coframes of different dimension."""


class DegreeMismatch(ValueError):
    """Inner product of forms of different total degree."""


class NotPositive(ValueError):
    """A metric failed certified positive-definiteness."""


def word_bidegree(word, n: int):
    p = sum(1 for j in word if j <= n)
    return (p, len(word) - p)


def words_of_degree(n: int, k: int):
    return [tuple(w) for w in combinations(range(1, 2 * n + 1), k)]


def merge_words(w1, w2):
    """Concatenate-and-sort two strictly increasing words.

    Returns (sign, word) or None when an index repeats.
    """
    if not w1:
        return 1, tuple(w2)
    if not w2:
        return 1, tuple(w1)
    out = []
    sign = 1
    i = j = 0
    while i < len(w1) and j < len(w2):
        a, b = w1[i], w2[j]
        if a == b:
            return None
        if a < b:
            out.append(a)
            i += 1
        else:
            # b jumps over the remaining len(w1) - i letters of w1
            if (len(w1) - i) % 2 == 1:
                sign = -sign
            out.append(b)
            j += 1
    out.extend(w1[i:])
    out.extend(w2[j:])
    return sign, tuple(out)


def sort_word(indices):
    """Sort an arbitrary index sequence, tracking the permutation sign."""
    word = ()
    sign = 1
    for j in indices:
        merged = merge_words(word, (j,))
        if merged is None:
            return None
        s, word = merged
        sign *= s
    return sign, word


def conj_word(word, n: int):
    """Bar-swap every index and resort; returns (sign, word)."""
    swapped = [j + n if j <= n else j - n for j in word]
    return sort_word(swapped)


def complement_word(word, n: int):
    full = range(1, 2 * n + 1)
    inside = set(word)
    return tuple(j for j in full if j not in inside)


class Form:
    """Finitely supported exterior element over the complexified coframe."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = coeffs or {}

    @staticmethod
    def zero(n: int) -> "Form":
        return Form(n)

    @staticmethod
    def monomial(n: int, word, coeff: Scalar = ONE) -> "Form":
        if coeff.is_zero():
            return Form(n)
        return Form(n, {tuple(word): coeff})

    @staticmethod
    def scalar(n: int, value: Scalar) -> "Form":
        return Form.monomial(n, (), value)

    def _check(self, other: "Form"):
        if self.n != other.n:
            raise DimensionMismatch(f"dimension {self.n} vs {other.n}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return Form(self.n, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.n, {w: -c for w, c in self.coeffs.items()})

    def scale(self, s: Scalar) -> "Form":
        if s.is_zero():
            return Form(self.n)
        return Form(self.n, {w: c * s for w, c in self.coeffs.items()})

    def __rmul__(self, s: Scalar) -> "Form":
        return self.scale(s)

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                merged = merge_words(w1, w2)
                if merged is None:
                    continue
                sign, w = merged
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return Form(self.n, out)

    def conj(self) -> "Form":
        out: dict = {}
        for w, c in self.coeffs.items():
            sign, cw = conj_word(w, self.n)
            cc = c.conj()
            if sign < 0:
                cc = -cc
            out[cw] = cc
        return Form(self.n, out)

    def bidegree_split(self) -> dict:
        parts: dict = {}
        for w, c in self.coeffs.items():
            pq = word_bidegree(w, self.n)
            parts.setdefault(pq, {})[w] = c
        return {pq: Form(self.n, coeffs) for pq, coeffs in sorted(parts.items())}

    def component(self, p: int, q: int) -> "Form":
        out = {
            w: c
            for w, c in self.coeffs.items()
            if word_bidegree(w, self.n) == (p, q)
        }
        return Form(self.n, out)

    def degree(self) -> int | None:
        degs = {len(w) for w in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, word) -> Scalar:
        return self.coeffs.get(tuple(word), ZERO)

    def terms(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and self.n == other.n
            and (self - other).is_zero()
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def pretty(self, symbol: str = "phi") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self.terms():
            body = _word_str(w, self.n, symbol)
            prefix = _coeff_prefix(c)
            parts.append(prefix + body if body else format_scalar(c))
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"Form({self.pretty()})"


def _word_str(word, n: int, symbol: str) -> str:
    if not word:
        return ""
    plain = "".join(str(j) for j in word if j <= n)
    barred = "".join(f"{j - n}b" for j in word if j > n)
    inner = plain if not barred else (f"{plain} {barred}" if plain else barred)
    return f"{symbol}^{{{inner}}}"


def _coeff_prefix(c: Scalar) -> str:
    if c == ONE:
        return ""
    if c == -ONE:
        return "-"
    text = format_scalar(c)
    sign = ""
    if text.startswith("-") and " " not in text:
        sign, text = "-", text[1:]
    if any(op in text[1:] for op in "+-") or "/" in text or "*" in text:
        text = f"({text})"
    return f"{sign}{text}*"


class GramData:
    """Inner products and Hodge star data for one metric.

    ``g1`` is the 2n x 2n Hermitian matrix of coframe inner products in the
    basis (phi^1..phi^n, conj phi^1..conj phi^n); ``vol`` is the metric
    volume form, a scalar multiple of the full wedge word.  Positivity of
    the (1,0) block is certified by interval evaluation at tau = pi.
    """

    __slots__ = (
        "n",
        "g1",
        "vol_coeff",
        "orientation",
        "_inner_cache",
        "_star_cache",
        "_gram_cache",
    )

    def __init__(self, n: int, g1, vol_coeff: Scalar, orientation: int, prec: int = 128):
        self.n = n
        self.g1 = g1
        self.vol_coeff = vol_coeff
        self.orientation = orientation
        self._inner_cache: dict = {}
        self._star_cache: dict = {}
        self._gram_cache: dict = {}
        self._validate(prec)

    def _validate(self, prec: int):
        size = 2 * self.n
        for a in range(size):
            for b in range(size):
                if not (self.g1[a][b] - self.g1[b][a].conj()).is_zero():
                    raise ValueError("coframe Gram matrix is not Hermitian")
        h = [row[: self.n] for row in self.g1[: self.n]]
        for k in range(1, self.n + 1):
            minor = linalg.det([row[:k] for row in h[:k]])
            if not minor.is_real():
                raise ValueError("principal minor of the Gram matrix not real")
            if not is_positive(minor, prec):
                raise NotPositive(f"leading principal minor {k} is not positive")

    @property
    def hermitian_block(self):
        return [row[: self.n] for row in self.g1[: self.n]]

    def word_inner(self, w1, w2) -> Scalar:
        """<m_w1, m_w2> as a Gram determinant of coframe inner products."""
        if len(w1) != len(w2):
            raise DegreeMismatch("inner product of words of different degree")
        key = (w1, w2)
        cached = self._inner_cache.get(key)
        if cached is not None:
            return cached
        sub = [[self.g1[a - 1][b - 1] for b in w2] for a in w1]
        value = linalg.det(sub)
        self._inner_cache[key] = value
        return value

    def inner_product(self, alpha: Form, beta: Form) -> Scalar:
        da, db = alpha.degree(), beta.degree()
        if alpha.is_zero() or beta.is_zero():
            return ZERO
        if da is None or db is None or da != db:
            raise DegreeMismatch("inner product requires equal homogeneous degree")
        total = ZERO
        for w1, c1 in alpha.coeffs.items():
            for w2, c2 in beta.coeffs.items():
                g = self.word_inner(w1, w2)
                if not g.is_zero():
                    total = total + c1 * c2.conj() * g
        return total

    @property
    def vol(self) -> Form:
        return Form.monomial(self.n, tuple(range(1, 2 * self.n + 1)), self.vol_coeff)

    def _star_word(self, word) -> Form:
        cached = self._star_cache.get(word)
        if cached is not None:
            return cached
        n = self.n
        k = len(word)
        conj_mono = Form.monomial(n, word).conj()
        out = Form.zero(n)
        for other in words_of_degree(n, k):
            comp = complement_word(other, n)
            merged = merge_words(other, comp)
            sign, _full = merged
            value = self.inner_product(Form.monomial(n, other), conj_mono)
            if value.is_zero():
                continue
            coeff = value * self.vol_coeff
            if sign < 0:
                coeff = -coeff
            out = out + Form.monomial(n, comp, coeff)
        self._star_cache[word] = out
        return out

    def hodge_star(self, alpha: Form) -> Form:
        out = Form.zero(self.n)
        for w, c in alpha.coeffs.items():
            out = out + self._star_word(w).scale(c)
        return out

    def gram_matrix(self, degree: int):
        """Gram matrix of the sorted monomial basis of one exterior degree."""
        cached = self._gram_cache.get(degree)
        if cached is not None:
            return cached
        words = words_of_degree(self.n, degree)
        m = [[self.word_inner(w1, w2) for w2 in words] for w1 in words]
        self._gram_cache[degree] = m
        return m
