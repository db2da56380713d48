"""Dense exact linear algebra over the Q(pi)(i) scalar field.

Matrices are lists of row lists of Scalars.  Everything here is small (at
most 20 x 20), so plain Gauss-Jordan with exact division is fine.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar


def zeros(rows: int, cols: int):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int):
    m = zeros(n, n)
    for k in range(n):
        m[k][k] = ONE
    return m


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c.is_zero():
                continue
            bk = b[k]
            for j in range(cols):
                if not bk[j].is_zero():
                    oi[j] = oi[j] + c * bk[j]
    return out


def mat_vec(a, v):
    return [
        sum((c * x for c, x in zip(row, v) if not c.is_zero()), ZERO) for row in a
    ]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def conj_transpose(a):
    return [[x.conj() for x in col] for col in zip(*a)] if a else []


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not (x - y).is_zero():
                return False
    return True


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def rref(a):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a, cols: int | None = None):
    """Basis of the right kernel, each vector scaled so its first nonzero
    coordinate is one.  ``cols`` covers the empty-matrix case."""
    if not a:
        n = cols or 0
        basis = []
        for k in range(n):
            v = [ZERO] * n
            v[k] = ONE
            basis.append(v)
        return basis
    n = len(a[0])
    red, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(normalize_vector(v))
    return basis


def kernel_nontrivial(a, cols: int) -> bool:
    """Whether the right kernel is nonzero, by fraction-free elimination
    (no divisions, hence no gcd normalization on the hot path)."""
    if cols == 0:
        return False
    if not a:
        return True
    mat = [row[:] for row in a]
    rows = len(mat)
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if not mat[r][c].is_zero():
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pval = mat[rank][c]
        prow = mat[rank]
        for r in range(rank + 1, rows):
            f = mat[r][c]
            if f.is_zero():
                continue
            mat[r] = [pval * x - f * y for x, y in zip(mat[r], prow)]
        rank += 1
        if rank == cols:
            return False
    return rank < cols


def normalize_vector(v):
    for x in v:
        if not x.is_zero():
            inv = x.inv()
            return [y * inv for y in v]
    return v


def inverse(a):
    n = len(a)
    aug = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def det(a) -> Scalar:
    n = len(a)
    if n == 0:
        return ONE
    m = [row[:] for row in a]
    sign = ONE
    out = ONE
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        piv = m[c][c]
        out = out * piv
        inv = piv.inv()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out * sign


def row_space_equal(a, b) -> bool:
    """Whether two row sets span the same subspace (exact)."""
    ra = rank(a) if a else 0
    rb = rank(b) if b else 0
    if ra != rb:
        return False
    stacked = [row[:] for row in a] + [row[:] for row in b]
    return (rank(stacked) if stacked else 0) == ra
