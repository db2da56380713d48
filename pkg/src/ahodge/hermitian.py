"""Hermitian metrics on a manifold spec: compatibility, Gram adjoints,
invariant-form Laplacians, and the almost-Kahler comparison of the two
mixed Laplacians.

Adjoints are pure Gram-matrix linear algebra: A = conj(G_src)^-1 M^H conj(G_tgt)
satisfies <Mx, y> = <x, Ay> exactly on invariant forms.  No star-conjugation
sign conventions enter; the star-based kernel criterion is validated against
these adjoints in the test suite rather than assumed.

The restriction of the L2 adjoint to invariant forms is the Gram adjoint;
this uses that averaging over the compact quotient preserves invariant forms,
which holds for the unimodular groups behind every built-in manifest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import Form, GramData, NotPositive, words_of_degree
from .manifold import ManifoldSpec
from .scalars import ONE, ZERO, I as IMAG, Scalar, is_positive


class NotCompatible(ValueError):
    """The candidate fundamental form is not real of pure type (1,1)."""


class NotAlmostKahler(ValueError):
    """Operation requires a closed fundamental form."""


@dataclass
class HermitianData:
    gram: GramData
    omega: Form
    is_compatible: bool
    is_almost_kahler: bool
    _lap_cache: dict = field(default_factory=dict, repr=False)
    _op_cache: dict = field(default_factory=dict, repr=False)


def _j_on_coframe_vectors(spec: ManifoldSpec):
    """Matrix of J on the dual vectors of the real coframe: J e_l = sum_k J[k][l] e_k."""
    n = spec.n
    size = 2 * n
    jmat = linalg.zeros(size, size)
    for l in range(size):
        for k in range(size):
            total = ZERO
            for a in range(size):
                c = spec.P[a][l]
                if c.is_zero():
                    continue
                e = spec.E[k][a]
                if e.is_zero():
                    continue
                term = c * e
                total = total + (IMAG * term if a < n else -(IMAG * term))
            jmat[k][l] = total
    for row in jmat:
        for x in row:
            if not x.is_real():
                raise ValueError("J is not real on the coframe vectors")
    return jmat


def _two_form_on_frame(omega: Form, spec: ManifoldSpec):
    """Evaluate a 2-form on pairs of phi-frame vectors."""
    size = 2 * spec.n
    w = linalg.zeros(size, size)
    for word, c in omega.coeffs.items():
        r, s = word[0] - 1, word[1] - 1
        w[r][s] = w[r][s] + c
        w[s][r] = w[s][r] - c
    return w


def _omega_on_coframe_vectors(omega: Form, spec: ManifoldSpec):
    size = 2 * spec.n
    wf = _two_form_on_frame(omega, spec)
    out = linalg.zeros(size, size)
    for k in range(size):
        for l in range(size):
            total = ZERO
            for a in range(size):
                pa = spec.P[a][k]
                if pa.is_zero():
                    continue
                for b in range(size):
                    if wf[a][b].is_zero():
                        continue
                    pb = spec.P[b][l]
                    if not pb.is_zero():
                        total = total + pa * pb * wf[a][b]
            out[k][l] = total
    return out


def _certify_positive(matrix, prec: int, what: str):
    for k in range(1, len(matrix) + 1):
        minor = linalg.det([row[:k] for row in matrix[:k]])
        if not minor.is_real():
            raise NotPositive(f"{what}: principal minor {k} not real")
        if not is_positive(minor, prec):
            raise NotPositive(f"{what}: principal minor {k} not positive")


def _build_from_vector_metric(
    spec: ManifoldSpec, g_vec, declared_omega: Form | None, prec: int
) -> HermitianData:
    n = spec.n
    size = 2 * n
    for k in range(size):
        for l in range(size):
            if not g_vec[k][l].is_real():
                raise NotCompatible("induced metric has non-real components")
            if not (g_vec[k][l] - g_vec[l][k]).is_zero():
                raise NotCompatible("induced metric is not symmetric")
    _certify_positive(g_vec, prec, "vector metric")

    jmat = _j_on_coframe_vectors(spec)
    # fundamental form omega(u, v) = g(Ju, v) rebuilt on the coframe
    wmat = linalg.mat_mul(linalg.transpose(jmat), g_vec)
    omega = Form.zero(n)
    for k in range(size):
        for l in range(k + 1, size):
            c = wmat[k][l]
            if not c.is_zero():
                omega = omega + spec.e_form(k + 1).wedge(spec.e_form(l + 1)).scale(c)
    if declared_omega is not None and not (omega - declared_omega).is_zero():
        raise NotCompatible("fundamental form reconstruction mismatch")

    ge_cov = linalg.inverse(g_vec)
    g1 = linalg.zeros(size, size)
    for a in range(size):
        for b in range(size):
            total = ZERO
            for k in range(size):
                pa = spec.P[a][k]
                if pa.is_zero():
                    continue
                for l in range(size):
                    if ge_cov[k][l].is_zero():
                        continue
                    pb = spec.P[b][l]
                    if not pb.is_zero():
                        total = total + pa * pb.conj() * ge_cov[k][l]
            g1[a][b] = total
    for i in range(n):
        for j in range(n, size):
            if not g1[i][j].is_zero():
                raise NotCompatible("(1,0) and (0,1) coframes are not orthogonal")

    # volume: omega^n / n!, signed to be a positive multiple of e^1...e^2n
    vol_raw = Form.scalar(n, ONE)
    fact = 1
    for k in range(1, n + 1):
        vol_raw = vol_raw.wedge(omega)
        fact *= k
    vol_raw = vol_raw.scale(Scalar.rational(1, fact))
    full_word = tuple(range(1, size + 1))
    v_raw = vol_raw.coefficient(full_word)
    det_e = linalg.det(spec.E)
    ratio = v_raw / det_e
    sign = 1 if is_positive(ratio, prec) else -1
    vol_coeff = v_raw if sign > 0 else -v_raw

    gram = GramData(n, g1, vol_coeff, orientation=sign, prec=prec)
    closed = spec.exterior_d(omega).is_zero()
    return HermitianData(
        gram=gram, omega=omega, is_compatible=True, is_almost_kahler=closed
    )


def metric_from_pair(omega: Form, spec: ManifoldSpec, prec: int = 128) -> HermitianData:
    """Metric g(u, v) = omega(u, Jv) from a compatible fundamental 2-form."""
    if omega.degree() != 2:
        raise NotCompatible("fundamental form must be a 2-form")
    if not (omega - omega.conj()).is_zero():
        raise NotCompatible("fundamental form must be real")
    parts = omega.bidegree_split()
    if set(parts) != {(1, 1)}:
        raise NotCompatible("fundamental form has a component outside type (1,1)")
    jmat = _j_on_coframe_vectors(spec)
    we = _omega_on_coframe_vectors(omega, spec)
    g_vec = linalg.mat_mul(we, jmat)
    return _build_from_vector_metric(spec, g_vec, omega, prec)


def metric_from_gram(h, spec: ManifoldSpec, prec: int = 128) -> HermitianData:
    """Metric from an explicit Hermitian Gram matrix on the (1,0)-coframe."""
    n = spec.n
    size = 2 * n
    g1 = linalg.zeros(size, size)
    for i in range(n):
        for j in range(n):
            g1[i][j] = h[i][j]
            g1[i + n][j + n] = h[i][j].conj()
    ge_cov = linalg.zeros(size, size)
    for k in range(size):
        for l in range(size):
            total = ZERO
            for a in range(size):
                ea = spec.E[k][a]
                if ea.is_zero():
                    continue
                for b in range(size):
                    if g1[a][b].is_zero():
                        continue
                    eb = spec.E[l][b]
                    if not eb.is_zero():
                        total = total + ea * eb.conj() * g1[a][b]
            ge_cov[k][l] = total
    g_vec = linalg.inverse(ge_cov)
    return _build_from_vector_metric(spec, g_vec, None, prec)


def metric_for(spec: ManifoldSpec, prec: int = 128) -> HermitianData:
    """Build the metric declared by the manifest."""
    if spec.metric_source is None:
        raise ValueError(f"manifest {spec.name!r} declares no metric")
    kind, payload = spec.metric_source
    if kind == "omega":
        return metric_from_pair(payload, spec, prec)
    return metric_from_gram(payload, spec, prec)


def is_almost_kahler(h: HermitianData, spec: ManifoldSpec) -> bool:
    return spec.exterior_d(h.omega).is_zero()


# -- adjoints and Laplacians on invariant forms -------------------------


def adjoint_matrix(m, g_src, g_tgt):
    """Gram adjoint: <M x, y>_tgt = <x, A y>_src for all basis vectors."""
    if not m:
        return []
    gs_conj = [[x.conj() for x in row] for row in g_src]
    gt_conj = [[x.conj() for x in row] for row in g_tgt]
    mh = linalg.conj_transpose(m)
    return linalg.mat_mul(linalg.inverse(gs_conj), linalg.mat_mul(mh, gt_conj))


_OPERATOR_PARTS = {
    "dbar": ("dbar",),
    "deltabar": ("dbar", "mu"),
    "delta": ("del", "mubar"),
    "d": ("mu", "del", "dbar", "mubar"),
}


def operator_matrix(which: str, spec: ManifoldSpec, k: int, cache: dict | None = None):
    """Matrix of one first-order operator from degree k to degree k+1."""
    key = (which, k)
    if cache is not None and key in cache:
        return cache[key]
    n = spec.n
    src = words_of_degree(n, k)
    tgt = words_of_degree(n, k + 1)
    index = {w: i for i, w in enumerate(tgt)}
    mat = linalg.zeros(len(tgt), len(src))
    for col, w in enumerate(src):
        image = Form.zero(n)
        for part in _OPERATOR_PARTS[which]:
            image = image + spec.op_apply(part, Form.monomial(n, w))
        for iw, c in image.coeffs.items():
            mat[index[iw]][col] = c
    if cache is not None:
        cache[key] = mat
    return mat


def laplacian_matrix(which: str, h: HermitianData, spec: ManifoldSpec, k: int):
    """Matrix of O O* + O* O on invariant k-forms."""
    key = (which, k)
    cached = h._lap_cache.get(key)
    if cached is not None:
        return cached
    n = spec.n
    dim_k = len(words_of_degree(n, k))
    gram_k = h.gram.gram_matrix(k)
    lap = linalg.zeros(dim_k, dim_k)
    if k < 2 * n:
        up = operator_matrix(which, spec, k, h._op_cache)
        up_adj = adjoint_matrix(up, gram_k, h.gram.gram_matrix(k + 1))
        lap = linalg.mat_add(lap, linalg.mat_mul(up_adj, up))
    if k > 0:
        down = operator_matrix(which, spec, k - 1, h._op_cache)
        down_adj = adjoint_matrix(down, h.gram.gram_matrix(k - 1), gram_k)
        lap = linalg.mat_add(lap, linalg.mat_mul(down, down_adj))
    h._lap_cache[key] = lap
    return lap


@dataclass
class BlockKernel:
    bidegree: tuple
    dimension: int
    basis: list


def laplacian_invariant(which: str, h: HermitianData, spec: ManifoldSpec) -> dict:
    """Kernel of the chosen Laplacian restricted to each bidegree block of
    invariant forms.  Returns {(p, q): BlockKernel}."""
    n = spec.n
    out = {}
    for k in range(2 * n + 1):
        words = words_of_degree(n, k)
        lap = laplacian_matrix(which, h, spec, k)
        blocks: dict = {}
        for i, w in enumerate(words):
            from .algebra import word_bidegree

            blocks.setdefault(word_bidegree(w, n), []).append(i)
        for pq, cols in sorted(blocks.items()):
            sub = [[row[c] for c in cols] for row in lap]
            kernel = linalg.nullspace(sub, cols=len(cols))
            basis = []
            for vec in kernel:
                form = Form.zero(n)
                for c, col in zip(vec, cols):
                    if not c.is_zero():
                        form = form + Form.monomial(n, words[col], c)
                basis.append(form)
            out[pq] = BlockKernel(pq, len(kernel), basis)
    return out


def delta_laplacians_equal(h: HermitianData, spec: ManifoldSpec) -> bool:
    """Whether the two mixed Laplacians coincide on every invariant degree."""
    for k in range(2 * spec.n + 1):
        a = laplacian_matrix("deltabar", h, spec, k)
        b = laplacian_matrix("delta", h, spec, k)
        if not linalg.mat_eq(a, b):
            return False
    return True


def check_ak_identity(h: HermitianData, spec: ManifoldSpec) -> bool:
    """Exact matrix identity between the two mixed Laplacians; only
    meaningful (and only claimed) for almost-Kahler metrics."""
    if not h.is_almost_kahler:
        raise NotAlmostKahler("fundamental form is not closed")
    return delta_laplacians_equal(h, spec)
