"""Manifold specifications: manifest ingestion, the invariant exterior
derivative, and the bidegree splitting d = mu + del + dbar + mubar.

A manifest declares structure equations either for a real coframe e^1..e^2n
together with a (1,0)-coframe (the complex equations are then derived), or
directly for the (1,0)-coframe; when both are present they are
cross-validated.  All downstream forms live in the complexified phi-basis.
Everything is validated at load: d of d vanishes on every generator, the
coframe change of basis is invertible, and fibration data is consistent.

Frame vectors are never represented as coordinate vector fields.  Only their
structural role is kept: duality to the coframe, a pure-fiber flag, and the
scalar symbol by which each conjugated frame vector acts on base torus
characters.  The coordinate expressions behind the built-in manifests are
recorded as comments next to the manifest text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import linalg
from .algebra import Form, word_bidegree, words_of_degree
from .scalars import (
    ONE,
    ParseError,
    Scalar,
    ZERO,
    parse_scalar,
    tokenize,
    _ScalarParser,
)


class JacobiViolation(ValueError):
    """d of d is nonzero on a coframe element."""

    def __init__(self, index: str, residue: Form):
        self.index = index
        self.residue = residue
        super().__init__(f"d^2 {index} = {residue.pretty()} != 0")


class NonInvertibleCoframe(ValueError):
    """The declared (1,0)-coframe does not span the complexified coframe."""


BIDEGREE_SHIFTS = {
    "mu": (2, -1),
    "del": (1, 0),
    "dbar": (0, 1),
    "mubar": (-1, 2),
}


@dataclass(frozen=True)
class FibrationData:
    """Base-mode bookkeeping for the torus fibration.

    ``symbols[i]`` lists, per base lattice direction, the scalar by which the
    conjugated frame vector of phi^i acts on the character of that direction;
    pure fiber vectors carry the zero symbol.  ``fiber_span`` certifies which
    frame vectors span the fiber directions (declared, checked only for
    pure-fiber membership).
    """

    rank: int
    coords: tuple
    pure_fiber: dict
    symbols: dict
    fiber_span: tuple

    def sigma(self, i: int, mode) -> Scalar:
        """Symbol of the conjugated frame vector i at an integer mode."""
        total = ZERO
        for s, m in zip(self.symbols[i], mode):
            if m and not s.is_zero():
                total = total + s * Scalar.integer(m)
        return total

    def tau(self, i: int, mode) -> Scalar:
        """Symbol of the unconjugated frame vector i at an integer mode."""
        total = ZERO
        for s, m in zip(self.symbols[i], mode):
            if m and not s.is_zero():
                total = total - s.conj() * Scalar.integer(m)
        return total

    def validate(self, n: int):
        if self.rank < 0:
            raise ParseError("fibration rank must be nonnegative")
        if len(self.coords) != self.rank:
            raise ParseError("fibration coords must list one label per rank")
        for i in range(1, n + 1):
            syms = self.symbols[i]
            if len(syms) != self.rank:
                raise ParseError(f"V{i}: symbol must list {self.rank} scalars")
            if self.pure_fiber[i] and any(not s.is_zero() for s in syms):
                raise ParseError(f"V{i}: pure fiber vectors must have zero symbol")
        for i in self.fiber_span:
            if not self.pure_fiber.get(i, False):
                raise ParseError(f"fiber_span lists V{i}, which is not pure fiber")


def trivial_fibration(n: int) -> FibrationData:
    return FibrationData(
        rank=0,
        coords=(),
        pure_fiber={i: False for i in range(1, n + 1)},
        symbols={i: () for i in range(1, n + 1)},
        fiber_span=(),
    )


class ManifoldSpec:
    """Validated manifold data: structure equations, coframe, metric source,
    fibration."""

    def __init__(
        self,
        name: str,
        n: int,
        params: dict,
        dphi: list,
        cmatrix,
        metric_source,
        fibration: FibrationData,
        symbol: str = "phi",
    ):
        self.name = name
        self.n = n
        self.params = params
        self.dphi = dphi
        self.C = cmatrix
        self.metric_source = metric_source
        self.fibration = fibration
        self.symbol = symbol
        size = 2 * n
        self.P = [list(row) for row in cmatrix] + [
            [c.conj() for c in row] for row in cmatrix
        ]
        try:
            self.E = linalg.inverse(self.P)
        except ValueError as exc:
            raise NonInvertibleCoframe(str(exc)) from exc
        self._dword_cache: dict = {}
        self._dgen = {}
        for j in range(1, n + 1):
            self._dgen[j] = dphi[j - 1]
            self._dgen[j + n] = dphi[j - 1].conj()
        self._e_forms = [
            Form(
                n,
                {
                    (a + 1,): self.E[k][a]
                    for a in range(size)
                    if not self.E[k][a].is_zero()
                },
            )
            for k in range(size)
        ]
        self.validate()

    # -- basic geometry -------------------------------------------------

    def generator(self, a: int) -> Form:
        return Form.monomial(self.n, (a,))

    def e_form(self, k: int) -> Form:
        """The real coframe element e^k expressed in the phi-basis."""
        return self._e_forms[k - 1]

    def d_generator(self, a: int) -> Form:
        return self._dgen[a]

    def d_word(self, word) -> Form:
        cached = self._dword_cache.get(word)
        if cached is not None:
            return cached
        out = Form.zero(self.n)
        for t, j in enumerate(word):
            term = Form.monomial(self.n, word[:t]).wedge(self._dgen[j]).wedge(
                Form.monomial(self.n, word[t + 1 :])
            )
            out = out + (term if t % 2 == 0 else -term)
        self._dword_cache[word] = out
        return out

    def exterior_d(self, alpha: Form) -> Form:
        out = Form.zero(self.n)
        for w, c in alpha.coeffs.items():
            out = out + self.d_word(w).scale(c)
        return out

    def op_apply(self, which: str, alpha: Form) -> Form:
        """One bidegree component of d applied to a form."""
        dp, dq = BIDEGREE_SHIFTS[which]
        out = Form.zero(self.n)
        for w, c in alpha.coeffs.items():
            p, q = word_bidegree(w, self.n)
            out = out + self.d_word(w).component(p + dp, q + dq).scale(c)
        return out

    def split_d(self) -> "OperatorSplit":
        return OperatorSplit(self)

    def is_integrable(self) -> bool:
        for a in range(1, 2 * self.n + 1):
            img = self._dgen[a]
            p, q = (1, 0) if a <= self.n else (0, 1)
            if not img.component(p + 2, q - 1).is_zero():
                return False
            if not img.component(p - 1, q + 2).is_zero():
                return False
        return True

    # -- validation -------------------------------------------------------

    def validate(self):
        n = self.n
        for j in range(1, n + 1):
            if self.dphi[j - 1].degree() not in (None, 2):
                raise ParseError(f"d phi{j} is not a 2-form")
        for k in range(1, 2 * n + 1):
            residue = self.exterior_d(self.exterior_d(self.e_form(k)))
            if not residue.is_zero():
                raise JacobiViolation(f"e{k}", residue)
        self.fibration.validate(n)

    def check_d2_relations(self):
        """Evaluate the seven bidegree components of d^2 = 0 on every
        invariant monomial; returns (name, holds, witness word or None)."""
        relations = [
            ("mu mu", [("mu", "mu")]),
            ("mu del + del mu", [("mu", "del"), ("del", "mu")]),
            (
                "del del + mu dbar + dbar mu",
                [("del", "del"), ("mu", "dbar"), ("dbar", "mu")],
            ),
            (
                "del dbar + dbar del + mu mubar + mubar mu",
                [("del", "dbar"), ("dbar", "del"), ("mu", "mubar"), ("mubar", "mu")],
            ),
            (
                "dbar dbar + mubar del + del mubar",
                [("dbar", "dbar"), ("mubar", "del"), ("del", "mubar")],
            ),
            ("mubar dbar + dbar mubar", [("mubar", "dbar"), ("dbar", "mubar")]),
            ("mubar mubar", [("mubar", "mubar")]),
        ]
        report = []
        n = self.n
        all_words = [w for k in range(2 * n + 1) for w in words_of_degree(n, k)]
        for name, pairs in relations:
            holds = True
            witness = None
            for w in all_words:
                base = Form.monomial(n, w)
                total = Form.zero(n)
                for outer, inner in pairs:
                    total = total + self.op_apply(outer, self.op_apply(inner, base))
                if not total.is_zero():
                    holds = False
                    witness = w
                    break
            report.append((name, holds, witness))
        return report


class OperatorSplit:
    """The four bidegree-homogeneous pieces of d on invariant forms."""

    def __init__(self, spec: ManifoldSpec):
        self.spec = spec
        self._matrix_cache: dict = {}

    def apply(self, which: str, alpha: Form) -> Form:
        return self.spec.op_apply(which, alpha)

    def block_words(self, p: int, q: int):
        n = self.spec.n
        return [w for w in words_of_degree(n, p + q) if word_bidegree(w, n) == (p, q)]

    def matrix(self, which: str, pq):
        """Matrix of one component from block pq into its target block;
        returns (source_words, target_words, matrix)."""
        key = (which, pq)
        cached = self._matrix_cache.get(key)
        if cached is not None:
            return cached
        p, q = pq
        dp, dq = BIDEGREE_SHIFTS[which]
        src = self.block_words(p, q)
        tgt = self.block_words(p + dp, q + dq)
        index = {w: k for k, w in enumerate(tgt)}
        mat = linalg.zeros(len(tgt), len(src))
        for col, w in enumerate(src):
            image = self.apply(which, Form.monomial(self.spec.n, w))
            for iw, c in image.coeffs.items():
                mat[index[iw]][col] = c
        out = (src, tgt, mat)
        self._matrix_cache[key] = out
        return out

    def sum_is_d(self) -> bool:
        n = self.spec.n
        for k in range(2 * n + 1):
            for w in words_of_degree(n, k):
                base = Form.monomial(n, w)
                total = Form.zero(n)
                for which in BIDEGREE_SHIFTS:
                    total = total + self.apply(which, base)
                if not (total - self.spec.exterior_d(base)).is_zero():
                    return False
        return True


# ---------------------------------------------------------------------------
# Manifest parsing
# ---------------------------------------------------------------------------

_SECTION_RE = re.compile(r"^\[([a-z_]+)\]$")
_COFRAME_RE = re.compile(r"^d\s+e(\d+)\s*=\s*(.+)$")
_CPLX_RE = re.compile(r"^d\s+phi(\d+)\s*=\s*(.+)$")
_ACS_RE = re.compile(r"^phi(\d+)\s*=\s*(.+)$")
_ASSIGN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")
_VECTOR_RE = re.compile(r"^V(\d+)\s*:\s*(.+)$")


class _FormParser(_ScalarParser):
    """Expression parser producing scalars or forms.

    ``mode`` selects the admissible form atoms: real coframe monomials like
    ``e13`` or (1,0)-coframe monomials like ``phi12`` / ``phi[1 2b]``.
    """

    def __init__(self, tokens, params, n, mode, lineno=None):
        super().__init__(tokens, params, lineno)
        self.n = n
        self.mode = mode

    def parse_value(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r}", self.lineno)
        return value

    # arithmetic on (kind, value) pairs --------------------------------

    def expr(self):
        value = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = self._addsub(value, rhs, val)
            else:
                return value

    def _addsub(self, a, b, op):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b if op == "+" else a - b
        fa = self._as_form(a)
        fb = self._as_form(b)
        return fa + fb if op == "+" else fa - fb

    def _as_form(self, v):
        if isinstance(v, Form):
            return v
        if isinstance(v, Scalar) and v.is_zero():
            return Form.zero(self.n)
        raise ParseError("scalar used where a form is required", self.lineno)

    def term(self):
        value = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                value = self._muldiv(value, rhs, val)
            else:
                return value

    def _muldiv(self, a, b, op):
        if op == "*":
            if isinstance(a, Scalar) and isinstance(b, Scalar):
                return a * b
            if isinstance(a, Scalar):
                return b.scale(a)
            if isinstance(b, Scalar):
                return a.scale(b)
            return a.wedge(b)
        if not isinstance(b, Scalar):
            raise ParseError("division by a form", self.lineno)
        if b.is_zero():
            raise ParseError("division by zero", self.lineno)
        if isinstance(a, Scalar):
            return a / b
        return a.scale(b.inv())

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            if val == "-":
                return -inner
            return inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            if not isinstance(base, Scalar):
                raise ParseError("exponent applied to a form", self.lineno)
            return super_power(self, base)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "name":
            if self.mode == "e" and re.fullmatch(r"e\d+", val):
                self.take()
                return self._e_monomial(val)
            if self.mode == "phi" and val == "phi" and self._next_is_bracket():
                self.take()
                return self._phi_bracket()
            if self.mode == "phi" and re.fullmatch(r"phi\d+", val):
                self.take()
                return self._phi_plain(val)
        return super().atom()

    def _next_is_bracket(self):
        if self.pos + 1 < len(self.tokens):
            kind, val = self.tokens[self.pos + 1]
            return kind == "op" and val == "["
        return False

    def _e_monomial(self, token):
        digits = [int(ch) for ch in token[1:]]
        for d in digits:
            if not 1 <= d <= 2 * self.n:
                raise ParseError(f"coframe index {d} out of range", self.lineno)
        from .algebra import sort_word

        sorted_ = sort_word(digits)
        if sorted_ is None:
            return Form.zero(self.n)
        sign, word = sorted_
        coeff = ONE if sign > 0 else -ONE
        return Form.monomial(self.n, word, coeff)

    def _phi_plain(self, token):
        digits = [int(ch) for ch in token[3:]]
        for d in digits:
            if not 1 <= d <= self.n:
                raise ParseError(f"coframe index {d} out of range", self.lineno)
        from .algebra import sort_word

        sorted_ = sort_word(digits)
        if sorted_ is None:
            return Form.zero(self.n)
        sign, word = sorted_
        return Form.monomial(self.n, word, ONE if sign > 0 else -ONE)

    def _phi_bracket(self):
        self.expect_op("[")
        indices = []
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "]":
                self.take()
                break
            if kind == "op" and val == ",":
                self.take()
                continue
            if kind != "int":
                raise ParseError(f"bad index {val!r} in phi[...]", self.lineno)
            self.take()
            j = int(val)
            if not 1 <= j <= self.n:
                raise ParseError(f"index {j} out of range", self.lineno)
            kind2, val2 = self.peek()
            if kind2 == "name" and val2 == "b":
                self.take()
                j += self.n
            indices.append(j)
        from .algebra import sort_word

        sorted_ = sort_word(indices)
        if sorted_ is None:
            return Form.zero(self.n)
        sign, word = sorted_
        return Form.monomial(self.n, word, ONE if sign > 0 else -ONE)


def super_power(parser, base: Scalar) -> Scalar:
    parser.take()
    neg = False
    kind, val = parser.peek()
    if kind == "op" and val == "-":
        parser.take()
        neg = True
    kind, val = parser.take()
    if kind != "int":
        raise ParseError("exponent must be an integer", parser.lineno)
    out = ONE
    for _ in range(int(val)):
        out = out * base
    return out.inv() if neg else out


def _parse_form_expr(text, params, n, mode, lineno):
    tokens = tokenize(text, lineno)
    value = _FormParser(tokens, params, n, mode, lineno).parse_value()
    if isinstance(value, Scalar):
        if value.is_zero():
            return Form.zero(n)
        raise ParseError("expected a form, got a nonzero scalar", lineno)
    return value


def _parse_scalar_list(text, params, lineno):
    """Parse ``[expr, expr, ...]`` into a list of scalars."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected a bracketed list", lineno)
    inner = text[1:-1].strip()
    if not inner:
        return []
    return [parse_scalar(part, params, lineno) for part in _split_top(inner, lineno)]


def _split_top(text, lineno):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", lineno)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def _parse_matrix(text, params, lineno):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected [[...], ...]", lineno)
    rows_text = _split_top(text[1:-1].strip(), lineno)
    return [_parse_scalar_list(row, params, lineno) for row in rows_text]


def load_spec(document: str, overrides: dict | None = None) -> ManifoldSpec:
    """Parse and validate a manifest; ``overrides`` rebinds [params] entries
    (values may be scalar expression strings or Scalars)."""
    sections: dict = {}
    current = None
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            current = m.group(1)
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError(f"content before any [section]: {line!r}", lineno)
        sections[current].append((lineno, line))
    if not sections:
        raise ParseError("empty manifest")
    if "manifold" not in sections:
        raise ParseError("missing [manifold] section")

    name = None
    dim = None
    symbol = "phi"
    for lineno, line in sections["manifold"]:
        m = _ASSIGN_RE.match(line)
        if not m:
            raise ParseError(f"bad [manifold] line: {line!r}", lineno)
        key, value = m.group(1), m.group(2).strip()
        if key == "name":
            name = value
        elif key == "dim":
            dim = int(value)
        elif key == "symbol":
            symbol = value
        else:
            raise ParseError(f"unknown [manifold] key {key!r}", lineno)
    if name is None or dim is None:
        raise ParseError("[manifold] must set name and dim")
    if dim % 2 != 0 or not 2 <= dim <= 8:
        raise ParseError("dim must be an even integer between 2 and 8")
    n = dim // 2

    params: dict = {}
    for lineno, line in sections.get("params", []):
        m = _ASSIGN_RE.match(line)
        if not m:
            raise ParseError(f"bad [params] line: {line!r}", lineno)
        params[m.group(1)] = parse_scalar(m.group(2), params, lineno)
    for key, value in (overrides or {}).items():
        if key not in params:
            raise ParseError(f"override for unknown parameter {key!r}")
        params[key] = value if isinstance(value, Scalar) else parse_scalar(value, params)

    de: dict = {}
    for lineno, line in sections.get("coframe", []):
        m = _COFRAME_RE.match(line)
        if not m:
            raise ParseError(f"bad [coframe] line: {line!r}", lineno)
        k = int(m.group(1))
        if not 1 <= k <= 2 * n:
            raise ParseError(f"coframe index {k} out of range", lineno)
        de[k] = _parse_form_expr(m.group(2), params, n, "e", lineno)
    if de and len(de) != 2 * n:
        raise ParseError("[coframe] must give d e for every coframe index")

    acs_rows: dict = {}
    for lineno, line in sections.get("acs", []):
        m = _ACS_RE.match(line)
        if not m:
            raise ParseError(f"bad [acs] line: {line!r}", lineno)
        j = int(m.group(1))
        if not 1 <= j <= n:
            raise ParseError(f"phi index {j} out of range", lineno)
        acs_rows[j] = _parse_form_expr(m.group(2), params, n, "e", lineno)
    if acs_rows and len(acs_rows) != n:
        raise ParseError("[acs] must define phi1..phin")

    declared_dphi: dict = {}
    for lineno, line in sections.get("complex_coframe", []):
        m = _CPLX_RE.match(line)
        if not m:
            raise ParseError(f"bad [complex_coframe] line: {line!r}", lineno)
        j = int(m.group(1))
        if not 1 <= j <= n:
            raise ParseError(f"phi index {j} out of range", lineno)
        declared_dphi[j] = _parse_form_expr(m.group(2), params, n, "phi", lineno)
    if declared_dphi and len(declared_dphi) != n:
        raise ParseError("[complex_coframe] must give d phi for every index")

    real_route = bool(de) and bool(acs_rows)
    if bool(de) != bool(acs_rows):
        raise ParseError("[coframe] and [acs] must be given together")
    if not real_route and not declared_dphi:
        raise ParseError("manifest declares no structure equations")

    if real_route:
        cmatrix = []
        for j in range(1, n + 1):
            row = [acs_rows[j].coefficient((k,)) for k in range(1, 2 * n + 1)]
            cmatrix.append(row)
        dphi = _derive_complex_equations(n, de, cmatrix)
        if declared_dphi:
            for j in range(1, n + 1):
                if not (dphi[j - 1] - declared_dphi[j]).is_zero():
                    raise ParseError(
                        f"declared d phi{j} disagrees with the real coframe derivation"
                    )
    else:
        cmatrix = linalg.zeros(n, 2 * n)
        from .scalars import I as IMAG

        for j in range(1, n + 1):
            cmatrix[j - 1][2 * j - 2] = ONE
            cmatrix[j - 1][2 * j - 1] = IMAG
        dphi = [declared_dphi[j] for j in range(1, n + 1)]

    metric_source = None
    for lineno, line in sections.get("metric", []):
        m = _ASSIGN_RE.match(line)
        if not m:
            raise ParseError(f"bad [metric] line: {line!r}", lineno)
        key, value = m.group(1), m.group(2)
        if key == "omega":
            metric_source = ("omega", ("e", value, lineno))
        elif key == "gram":
            h = _parse_matrix(value, params, lineno)
            if len(h) != n or any(len(r) != n for r in h):
                raise ParseError(f"gram must be {n}x{n}", lineno)
            metric_source = ("gram", h)
        else:
            raise ParseError(f"unknown [metric] key {key!r}", lineno)

    fibration = _parse_fibration(sections.get("fibration", []), params, n)

    spec = ManifoldSpec(
        name=name,
        n=n,
        params=params,
        dphi=dphi,
        cmatrix=cmatrix,
        metric_source=None,
        fibration=fibration,
        symbol=symbol,
    )
    # converting the omega expression to the phi-basis needs the inverse
    # change of basis, which only exists once the object is built
    if metric_source is not None and metric_source[0] == "omega":
        _mode, (_basis, text, lineno) = metric_source
        e_form = _parse_form_expr(text, params, n, "e", lineno)
        metric_source = ("omega", _e_to_phi(spec, e_form))
    spec.metric_source = metric_source
    return spec


def _derive_complex_equations(n: int, de: dict, cmatrix):
    """Derive d phi^j from real structure equations and the acs rows."""
    probe = ManifoldSpec(
        name="_probe",
        n=n,
        params={},
        dphi=[Form.zero(n) for _ in range(n)],
        cmatrix=cmatrix,
        metric_source=None,
        fibration=trivial_fibration(n),
    )
    d_e_phi = {}
    for k in range(1, 2 * n + 1):
        d_e_phi[k] = _e_to_phi(probe, de[k])
    out = []
    for j in range(1, n + 1):
        total = Form.zero(n)
        for k in range(1, 2 * n + 1):
            c = cmatrix[j - 1][k - 1]
            if not c.is_zero():
                total = total + d_e_phi[k].scale(c)
        out.append(total)
    return out


def _e_to_phi(spec: ManifoldSpec, e_expr: Form) -> Form:
    """Convert a form written over real coframe indices to the phi-basis."""
    out = Form.zero(spec.n)
    for word, c in e_expr.coeffs.items():
        term = Form.scalar(spec.n, c)
        for k in word:
            term = term.wedge(spec.e_form(k))
        out = out + term
    return out


def _parse_fibration(lines, params, n) -> FibrationData:
    rank = 0
    coords: tuple = ()
    pure_fiber = {i: False for i in range(1, n + 1)}
    symbols: dict = {i: None for i in range(1, n + 1)}
    fiber_span: tuple = ()
    for lineno, line in lines:
        vm = _VECTOR_RE.match(line)
        if vm:
            i = int(vm.group(1))
            if not 1 <= i <= n:
                raise ParseError(f"frame index V{i} out of range", lineno)
            body = vm.group(2).strip()
            if body == "fiber":
                pure_fiber[i] = True
                symbols[i] = tuple(ZERO for _ in range(rank))
            elif body.startswith("base"):
                rest = body[len("base") :].strip()
                if rest.startswith(","):
                    rest = rest[1:].strip()
                m = _ASSIGN_RE.match(rest)
                if not m or m.group(1) != "symbol":
                    raise ParseError(f"expected 'symbol = [...]' in {line!r}", lineno)
                symbols[i] = tuple(_parse_scalar_list(m.group(2), params, lineno))
            else:
                raise ParseError(f"bad vector kind in {line!r}", lineno)
            continue
        m = _ASSIGN_RE.match(line)
        if not m:
            raise ParseError(f"bad [fibration] line: {line!r}", lineno)
        key, value = m.group(1), m.group(2).strip()
        if key == "rank":
            rank = int(value)
        elif key == "coords":
            if not (value.startswith("[") and value.endswith("]")):
                raise ParseError("coords must be a bracketed list", lineno)
            inner = value[1:-1].strip()
            coords = tuple(p.strip() for p in inner.split(",")) if inner else ()
        elif key == "fiber_span":
            if not (value.startswith("[") and value.endswith("]")):
                raise ParseError("fiber_span must be a bracketed list", lineno)
            inner = value[1:-1].strip()
            items = [p.strip() for p in inner.split(",")] if inner else []
            span = []
            for item in items:
                if not re.fullmatch(r"V\d+", item):
                    raise ParseError(f"bad fiber_span entry {item!r}", lineno)
                span.append(int(item[1:]))
            fiber_span = tuple(span)
        else:
            raise ParseError(f"unknown [fibration] key {key!r}", lineno)
    for i in range(1, n + 1):
        if symbols[i] is None:
            symbols[i] = tuple(ZERO for _ in range(rank))
    data = FibrationData(
        rank=rank,
        coords=coords,
        pure_fiber=pure_fiber,
        symbols=symbols,
        fiber_span=fiber_span,
    )
    data.validate(n)
    return data
