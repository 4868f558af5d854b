"""Exact rational matrix kernel.

Matrices are tuples of row tuples of ``mpq``.  Nothing here uses floating
point; every rank decision is exact.
"""

from gmpy2 import mpq

__all__ = [
    "Q", "parse_rational", "to_matrix", "zeros", "identity", "transpose",
    "matmul", "matvec", "rref", "rank", "nullspace", "row_basis", "inverse",
    "block_diag", "left_inverse", "compose_bases", "preimage", "image",
]


def Q(x):
    """Coerce ``x`` (int, str "p/q", Fraction, mpq) to an exact rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use 'p/q' strings")
    if isinstance(x, str):
        return parse_rational(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def parse_rational(text):
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, _, den = s.partition("/")
        p, q = int(num.strip()), int(den.strip())
    else:
        p, q = int(s), 1
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return mpq(p, q)


def to_matrix(rows):
    return tuple(tuple(Q(x) for x in row) for row in rows)


def zeros(n, m):
    z = mpq(0)
    return tuple((z,) * m for _ in range(n))


def identity(n):
    return tuple(tuple(mpq(1) if i == j else mpq(0) for j in range(n)) for i in range(n))


def transpose(A, ncols=None):
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), mpq(0)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum((a * b for a, b in zip(row, v)), mpq(0)) for row in A)


def rref(A):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    M = [list(r) for r in A]
    if not M:
        return (), ()
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        pivot_row = [x * inv for x in M[r]]
        M[r] = pivot_row
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f != 0:
                    row = M[i]
                    M[i] = [x - f * y for x, y in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in M[:r]), tuple(pivots)


def rank(A):
    return len(rref(A)[1])


def nullspace(A, ncols):
    """Basis (list of vectors) of ``{x : A x = 0}``; ``ncols`` fixes the width when A has no rows."""
    R, pivots = rref(A) if A else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def row_basis(vectors, ncols):
    """Canonical basis of the span of ``vectors``: nonzero rows of the RREF."""
    vs = [tuple(Q(x) for x in v) for v in vectors]
    for v in vs:
        if len(v) != ncols:
            raise ValueError(f"vector of length {len(v)} in a space of dimension {ncols}")
    if not vs:
        return ()
    return rref(vs)[0]


def inverse(A):
    n = len(A)
    aug = [tuple(row) + identity(n)[i] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def block_diag(*blocks):
    """Block diagonal matrix; blocks may be rectangular."""
    rows = sum(len(b) for b in blocks)
    cols = sum(len(b[0]) if b else 0 for b in blocks)
    out = [[mpq(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += len(b)
        c0 += len(b[0]) if b else 0
    return tuple(tuple(r) for r in out)


def left_inverse(columns, dim):
    """Matrix ``P`` with ``P @ B = I`` where B has the given independent columns."""
    k = len(columns)
    if k == 0:
        return ()
    B = transpose(columns)  # dim x k
    Bt = tuple(tuple(c) for c in columns)  # k x dim
    G = matmul(Bt, B)
    return matmul(inverse(G), Bt)


def compose_bases(B1, n_u, n_v, B2, n_w):
    """Relational composite of two linear relations given by spanning vectors.

    ``B1`` spans a subspace of U+V, ``B2`` of V+W; the result spans
    ``{(u, w) : exists v, (u, v) in B1, (v, w) in B2}`` inside U+W.
    """
    B1 = list(B1)
    B2 = list(B2)
    k1, k2 = len(B1), len(B2)
    # coefficients (a, b) with  sum a_i v(B1_i) - sum b_j v(B2_j) = 0
    rows = []
    for r in range(n_v):
        rows.append(tuple(B1[i][n_u + r] for i in range(k1)) + tuple(-B2[j][r] for j in range(k2)))
    coeffs = nullspace(rows, k1 + k2) if rows else [
        tuple(mpq(1) if i == c else mpq(0) for i in range(k1 + k2)) for c in range(k1 + k2)]
    out = []
    for cf in coeffs:
        a, b = cf[:k1], cf[k1:]
        u = [sum((a[i] * B1[i][x] for i in range(k1)), mpq(0)) for x in range(n_u)]
        w = [sum((b[j] * B2[j][n_v + x] for j in range(k2)), mpq(0)) for x in range(n_w)]
        out.append(tuple(u) + tuple(w))
    return row_basis(out, n_u + n_w)


def preimage(A, basis, ncols):
    """Basis of ``{x : A x in span(basis)}`` for an m x ncols matrix ``A``."""
    m = len(A)
    ann = nullspace(basis, m) if basis else [tuple(mpq(1) if i == j else mpq(0) for j in range(m)) for i in range(m)]
    if not ann:
        return row_basis([tuple(mpq(1) if i == j else mpq(0) for j in range(ncols)) for i in range(ncols)], ncols)
    cond = matmul(ann, A) if A else ()
    return row_basis(nullspace(cond, ncols), ncols)


def image(A, basis, nrows):
    return row_basis([matvec(A, v) for v in basis], nrows)
