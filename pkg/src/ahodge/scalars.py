"""Exact scalar arithmetic in the field Q(pi)(i).

A scalar is a rational function in one transcendental symbol tau (evaluated
at pi whenever a sign is needed) with Gaussian-rational coefficients, kept in
canonical form: numerator and denominator coprime, denominator monic.  With
that normalization equality is syntactic, so zero tests are exact; in
particular expressions like ``-4*pi*k + 1`` with integer ``k`` are provably
nonzero without any floating point.

Sign queries (needed only for inequalities, e.g. metric positivity) evaluate
the two polynomials at a certified interval enclosure of pi via mpmath,
doubling the precision until the sign is resolved.  Transcendence of pi
guarantees termination for nonzero inputs.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


class DivisionByZero(ZeroDivisionError):
    """Inversion or division by the zero scalar."""


class ParseError(ValueError):
    """Malformed scalar or manifest expression; carries a line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


_F0 = Fraction(0)
_F1 = Fraction(1)


class QQi:
    """Gaussian rational a + b*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other):
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QQi(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        return QQi(a * c - b * d, a * d + b * c)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("1/0 in QQi")
        return QQi(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * other.inv()

    def conj(self):
        return QQi(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        return isinstance(other, QQi) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


QQI_ZERO = QQi(0)
QQI_ONE = QQi(1)
QQI_I = QQi(0, 1)


# Polynomials over QQi are tuples of coefficients, ascending degree, no
# trailing zeros.  The empty tuple is the zero polynomial.

P_ZERO: tuple = ()
P_ONE = (QQI_ONE,)


def pnorm(coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


def padd(p, q):
    if not p:
        return q
    if not q:
        return p
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else QQI_ZERO
        b = q[k] if k < len(q) else QQI_ZERO
        out.append(a + b)
    return pnorm(out)


def pneg(p):
    return tuple(-c for c in p)


def psub(p, q):
    return padd(p, pneg(q))


def pmul(p, q):
    if not p or not q:
        return P_ZERO
    if len(p) == 1 and len(q) == 1:
        c = p[0] * q[0]
        return P_ZERO if c.is_zero() else (c,)
    out = [QQI_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return pnorm(out)


def pscale(p, c: QQi):
    if c.is_zero() or not p:
        return P_ZERO
    return pnorm(tuple(a * c for a in p))


def pdivmod(p, q):
    if not q:
        raise DivisionByZero("polynomial division by zero")
    r = list(p)
    d = len(q) - 1
    lead_inv = q[-1].inv()
    quot = [QQI_ZERO] * max(0, len(p) - d)
    while len(r) - 1 >= d and pnorm(r):
        r = list(pnorm(r))
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        c = r[-1] * lead_inv
        quot[k] = c
        for j in range(len(q)):
            r[k + j] = r[k + j] - c * q[j]
        r = list(pnorm(r))
    return pnorm(quot), pnorm(r)


def pmonic(p):
    if not p:
        return p
    lead = p[-1]
    if lead == QQI_ONE:
        return p
    return pscale(p, lead.inv())


def pgcd(p, q):
    """Monic gcd via the Euclidean algorithm over Q(i)."""
    a, b = p, q
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pconj(p):
    return tuple(c.conj() for c in p)


class Scalar:
    """Element of Q(pi)(i) as a canonical fraction num/den of tau-polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num = P_ZERO
            self.den = P_ONE
            return
        g = pgcd(num, den)
        if len(g) > 1 or g[0] != QQI_ONE:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
        lead = den[-1]
        if lead != QQI_ONE:
            inv = lead.inv()
            num = pscale(num, inv)
            den = pscale(den, inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_qqi(c: QQi) -> "Scalar":
        if c.is_zero():
            return ZERO
        return Scalar((c,), P_ONE, _canonical=True)

    @staticmethod
    def rational(p, q=1) -> "Scalar":
        return Scalar.from_qqi(QQi(Fraction(p, q)))

    @staticmethod
    def integer(k: int) -> "Scalar":
        cached = _INT_CACHE.get(k)
        if cached is None:
            cached = Scalar.from_qqi(QQi(k))
            if -64 <= k <= 64:
                _INT_CACHE[k] = cached
        return cached

    @staticmethod
    def pi_power(k: int, coeff=1) -> "Scalar":
        c = QQi(Fraction(coeff)) if not isinstance(coeff, QQi) else coeff
        if c.is_zero():
            return ZERO
        return Scalar(tuple([QQI_ZERO] * k) + (c,), P_ONE, _canonical=True)

    # -- field operations ---------------------------------------------

    def __add__(self, other):
        if self.num == P_ZERO:
            return other
        if other.num == P_ZERO:
            return self
        if self.den == other.den:
            return Scalar(padd(self.num, other.num), self.den)
        return Scalar(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Scalar(pneg(self.num), self.den, _canonical=True)

    def __mul__(self, other):
        if self.num == P_ZERO or other.num == P_ZERO:
            return ZERO
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(pmul(self.num, other.num), P_ONE, _canonical=True)
        return Scalar(pmul(self.num, other.num), pmul(self.den, other.den))

    def inv(self):
        if self.num == P_ZERO:
            raise DivisionByZero("inverse of zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def conj(self):
        return Scalar(pconj(self.num), pconj(self.den))

    # -- predicates and parts -----------------------------------------

    def is_zero(self) -> bool:
        return self.num == P_ZERO

    def is_real(self) -> bool:
        return self == self.conj()

    def re(self) -> "Scalar":
        return (self + self.conj()) * HALF

    def im(self) -> "Scalar":
        return (self - self.conj()) * HALF * MINUS_I

    def is_rational_multiple_of_pi_power(self):
        """Return (k, Fraction) if self = r * pi^k with r rational, else None."""
        if self.den != P_ONE:
            return None
        nz = [(k, c) for k, c in enumerate(self.num) if not c.is_zero()]
        if len(nz) != 1:
            return None
        k, c = nz[0]
        if c.im != 0:
            return None
        return k, c.re

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


_INT_CACHE: dict = {}

ZERO = Scalar(P_ZERO, P_ONE, _canonical=True)
ONE = Scalar(P_ONE, P_ONE, _canonical=True)
HALF = Scalar((QQi(Fraction(1, 2)),), P_ONE, _canonical=True)
I = Scalar((QQI_I,), P_ONE, _canonical=True)
MINUS_I = Scalar((QQi(0, -1),), P_ONE, _canonical=True)
PI = Scalar((QQI_ZERO, QQI_ONE), P_ONE, _canonical=True)


# -- pretty printing ---------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coeff_str(c: QQi) -> str:
    """Format a Gaussian rational, parenthesized when it is a sum."""
    if c.im == 0:
        return _frac_str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        if c.im < 0:
            return f"-({_frac_str(-c.im)})*i"
        return f"({_frac_str(c.im)})*i"
    return f"({_frac_str(c.re)} + ({_frac_str(c.im)})*i)"


def _poly_str(p) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        if k == 0:
            parts.append(_coeff_str(c))
            continue
        pi_part = "pi" if k == 1 else f"pi^{k}"
        if c == QQI_ONE:
            parts.append(pi_part)
        elif c == QQi(-1):
            parts.append(f"-{pi_part}")
        else:
            cs = _coeff_str(c)
            if "+" in cs or ("/" in cs) or cs.lstrip("-").find("*") >= 0:
                cs = cs if cs.startswith("(") else f"({cs})"
            parts.append(f"{cs}*{pi_part}")
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def format_scalar(s: Scalar) -> str:
    if s.den == P_ONE:
        body = _poly_str(s.num)
        return body
    num = _poly_str(s.num)
    den = _poly_str(s.den)
    return f"({num})/({den})"


# -- parsing -----------------------------------------------------------

_TOKEN_OPS = set("+-*/^(),=[]:")


def tokenize(text: str, lineno: int | None = None):
    tokens = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            j = k
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[k:j]))
            k = j
            continue
        if ch.isalpha() or ch == "_":
            j = k
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[k:j]))
            k = j
            continue
        if ch in _TOKEN_OPS:
            tokens.append(("op", ch))
            k += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", lineno)
    return tokens


class _ScalarParser:
    """Recursive descent over +, -, *, /, ^, parentheses, pi, i, rationals
    and bound parameter names."""

    def __init__(self, tokens, params, lineno=None):
        self.tokens = tokens
        self.pos = 0
        self.params = params or {}
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}", self.lineno)

    def parse(self) -> Scalar:
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r}", self.lineno)
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> Scalar:
        value = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", self.lineno)
                    value = value / rhs
            else:
                return value

    def factor(self) -> Scalar:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            return inner if val == "+" else -inner
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = False
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer", self.lineno)
            k = int(val)
            out = ONE
            for _ in range(k):
                out = out * base
            if neg:
                out = out.inv()
            return out
        return base

    def atom(self) -> Scalar:
        kind, val = self.take()
        if kind == "int":
            return Scalar.integer(int(val))
        if kind == "name":
            if val == "pi":
                return PI
            if val == "i":
                return I
            if val in self.params:
                return self.params[val]
            raise ParseError(f"unknown name {val!r}", self.lineno)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", self.lineno)


def parse_scalar(text: str, params: dict | None = None, lineno: int | None = None) -> Scalar:
    tokens = tokenize(text, lineno)
    if not tokens:
        raise ParseError("empty scalar expression", lineno)
    return _ScalarParser(tokens, params, lineno).parse()


# -- certified signs at tau = pi ---------------------------------------

_MAX_SIGN_BITS = 1 << 16


def _real_coeffs(p, what: str):
    out = []
    for c in p:
        if c.im != 0:
            raise ValueError(f"{what} has a non-real coefficient; sign undefined")
        out.append(c.re)
    return out


def _interval_eval(coeffs, prec: int):
    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = prec
        x = iv.pi
        acc = iv.mpf(0)
        for c in reversed(coeffs):
            acc = acc * x + iv.mpf(c.numerator) / iv.mpf(c.denominator)
        return acc
    finally:
        iv.prec = old


def _poly_sign_at_pi(p, prec: int) -> int:
    if not p:
        return 0
    coeffs = _real_coeffs(p, "polynomial")
    bits = prec
    while bits <= _MAX_SIGN_BITS:
        box = _interval_eval(coeffs, bits)
        if box.a > 0:
            return 1
        if box.b < 0:
            return -1
        bits *= 2
    raise RuntimeError("interval sign determination did not converge")


def sign_at_pi(s: Scalar, prec: int = 128) -> int:
    """Certified sign of a real scalar evaluated at tau = pi.

    Exact zero short-circuits; otherwise interval evaluation refines until
    zero is excluded, which transcendence of pi guarantees.
    """
    if s.is_zero():
        return 0
    if not s.is_real():
        raise ValueError("sign requested for a non-real scalar")
    return _poly_sign_at_pi(s.num, prec) * _poly_sign_at_pi(s.den, prec)


def is_positive(s: Scalar, prec: int = 128) -> bool:
    return sign_at_pi(s, prec) > 0
