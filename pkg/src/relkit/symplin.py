"""Exact symplectic linear algebra over the rationals.

Vectors are tuples of ``mpq``; subspaces are stored by the canonical RREF of
a spanning set, so equality of subspaces is equality of bases.  The
standard form on ``Q^{2n}`` is ``omega = [[0, I], [-I, 0]]`` in ``(q, p)``
coordinates and ``omega(v, w) = v^T omega w``.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from gmpy2 import mpq

from . import linalg as la
from .linalg import Q

__all__ = [
    "SympSpace", "Subspace", "LinRelation", "Reduction", "NotCoisotropic",
    "standard", "point", "direct_sum", "span", "zero", "whole", "orthogonal",
    "classify_subspace", "intersect", "add", "reduce", "project_lagrangian",
    "compose_linrel", "dagger", "graph", "identity", "linrel_product",
    "reduction_relations", "transport_through_reduction", "is_lagrangian",
    "darboux_basis", "random_symplectic_matrix", "random_lagrangian",
    "random_subspace", "random_coisotropic", "shear", "is_symplectic_matrix",
    "DiracCarrier", "dirac_check", "dirac_image", "graph_bivector", "graph_form",
    "dirac_from_distribution", "random_dirac", "random_skew",
]

ZERO, ONE = mpq(0), mpq(1)


class NotCoisotropic(ValueError):
    pass


def _vec(v):
    return tuple(Q(x) for x in v)


def _unit(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


@dataclass(frozen=True)
class SympSpace:
    """``Q^{dim}`` with a skew nondegenerate form given by its matrix."""

    omega: tuple

    def __post_init__(self):
        om = la.to_matrix(self.omega)
        object.__setattr__(self, "omega", om)
        n = len(om)
        if any(len(r) != n for r in om):
            raise ValueError("omega must be square")
        if n % 2:
            raise ValueError("a symplectic space has even dimension")
        for i in range(n):
            for j in range(n):
                if om[i][j] != -om[j][i]:
                    raise ValueError("omega is not skew-symmetric")
        if n and la.rank(om) != n:
            raise ValueError("omega is degenerate")

    @property
    def dim(self):
        return len(self.omega)

    def form(self, v, w):
        return sum((a * b for a, b in zip(v, la.matvec(self.omega, w))), ZERO) if self.dim else ZERO

    def conj(self):
        """The same space with ``-omega``."""
        return SympSpace(tuple(tuple(-x for x in r) for r in self.omega))

    def __add__(self, other):
        return direct_sum(self, other)

    def __repr__(self):
        return f"SympSpace(dim={self.dim})"


def standard(n):
    """``Q^{2n}`` with the standard form."""
    I = la.identity(n)
    Z = la.zeros(n, n)
    top = [tuple(Z[i]) + tuple(I[i]) for i in range(n)]
    bot = [tuple(-x for x in I[i]) + tuple(Z[i]) for i in range(n)]
    return SympSpace(tuple(top + bot))


def point():
    return SympSpace(())


def direct_sum(*spaces):
    return SympSpace(la.block_diag(*(s.omega for s in spaces)))


@dataclass(frozen=True)
class Subspace:
    """A subspace of an ambient space (SympSpace, DiracCarrier, or a bare dimension)."""

    ambient: object
    basis: tuple

    @property
    def n(self):
        a = self.ambient
        return a if isinstance(a, int) else a.dim

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __contains__(self, v):
        v = _vec(v)
        return la.rank(list(self.basis) + [v]) == self.dim if any(v) else True

    def __le__(self, other):
        return all(b in other for b in self.basis)

    def columns(self):
        return [list(b) for b in self.basis]

    def __repr__(self):
        return f"Subspace(dim {self.dim} in {self.n})"


def span(ambient, vectors):
    n = ambient if isinstance(ambient, int) else ambient.dim
    return Subspace(ambient, la.row_basis(vectors, n))


def zero(ambient):
    return Subspace(ambient, ())


def whole(ambient):
    n = ambient if isinstance(ambient, int) else ambient.dim
    return Subspace(ambient, tuple(_unit(n, i) for i in range(n)))


def _same_ambient(W, Z):
    if W.ambient != Z.ambient:
        raise ValueError("subspaces live in different ambient spaces")


def add(W, Z):
    _same_ambient(W, Z)
    return span(W.ambient, list(W.basis) + list(Z.basis))


def annihilator_rows(W):
    return la.nullspace(W.basis, W.n) if W.basis else [_unit(W.n, i) for i in range(W.n)]


def intersect(W, Z):
    _same_ambient(W, Z)
    rows = annihilator_rows(W) + annihilator_rows(Z)
    return span(W.ambient, la.nullspace(rows, W.n) if rows else whole(W.n).basis)


def orthogonal(W):
    """``W^perp = {v : omega(v, w) = 0 for all w in W}``."""
    V = W.ambient
    if not W.basis:
        return whole(V)
    rows = [la.matvec(V.omega, w) for w in W.basis]
    return span(V, la.nullspace(rows, V.dim))


def classify_subspace(W):
    P = orthogonal(W)
    iso = W <= P
    coiso = P <= W
    return {
        "isotropic": iso,
        "coisotropic": coiso,
        "lagrangian": iso and coiso,
        "symplectic": intersect(W, P).dim == 0,
    }


def is_lagrangian(W):
    return 2 * W.dim == W.n and W <= orthogonal(W)


# ---------------------------------------------------------------- reduction

def darboux_basis(space, vectors=None):
    """Symplectic basis ``(u_1..u_k, v_1..v_k)`` of a symplectic subspace.

    ``vectors`` spans a subspace on which the form is nondegenerate (the
    whole space by default).  In the returned basis the form is standard.
    """
    n = space.dim
    vecs = [list(v) for v in (vectors if vectors is not None else la.identity(n))]
    us, vs = [], []
    while vecs:
        u = vecs.pop(0)
        if not any(u):
            continue
        j = next((k for k, w in enumerate(vecs) if space.form(u, w) != 0), None)
        if j is None:
            raise ValueError("form is degenerate on the given vectors")
        v = vecs.pop(j)
        c = space.form(u, v)
        v = [x / c for x in v]
        rest = []
        for w in vecs:
            a, b = space.form(w, v), space.form(w, u)
            rest.append([wi - a * ui + b * vi for wi, ui, vi in zip(w, u, v)])
        vecs = rest
        us.append(tuple(u))
        vs.append(tuple(v))
    return us + vs


@dataclass(frozen=True)
class Reduction:
    """``W / (W cap W^perp)``: representatives, kernel, induced form and projection."""

    W: Subspace
    reps: tuple
    kernel: Subspace
    space: SympSpace
    proj: tuple  # len(reps) x n matrix, valid on W

    def coords(self, w):
        return la.matvec(self.proj, _vec(w)) if self.proj else ()

    def lift(self, c):
        n = self.W.n
        out = [ZERO] * n
        for ci, r in zip(c, self.reps):
            out = [o + ci * x for o, x in zip(out, r)]
        return tuple(out)


def reduce(W, darboux=False):
    """The reduction of ``W`` with its induced form.

    With ``darboux=True`` representatives are chosen so that the induced
    form is the standard one.
    """
    V = W.ambient
    K = intersect(W, orthogonal(W))
    reps = []
    cur = list(K.basis)
    r = len(cur)
    for b in W.basis:
        if la.rank(cur + [b]) > r:
            cur.append(b)
            reps.append(b)
            r += 1
    if darboux and reps:
        reps = darboux_basis(V, reps)
    k = len(reps)
    form = tuple(tuple(V.form(a, b) for b in reps) for a in reps)
    cols = list(reps) + list(K.basis)
    P = la.left_inverse(cols, W.n)[:k] if cols else ()
    return Reduction(W, tuple(tuple(x) for x in reps), K, SympSpace(form), tuple(P))


def project_lagrangian(L, W):
    """``L_W`` = image of ``L cap W`` in the reduction of ``W``."""
    if not classify_subspace(W)["coisotropic"]:
        raise NotCoisotropic("W must be coisotropic")
    if not is_lagrangian(L):
        raise ValueError("L must be Lagrangian")
    R = reduce(W)
    LW = intersect(L, W)
    return span(R.space, [R.coords(v) for v in LW.basis])


# ---------------------------------------------------------------- canonical relations

@dataclass(frozen=True)
class LinRelation:
    """A linear relation ``src -/-> dst``: a subspace of ``src (+) dst`` with form
    ``(-omega_src) (+) omega_dst``."""

    src: SympSpace
    dst: SympSpace
    space: Subspace

    def __post_init__(self):
        amb = direct_sum(self.src.conj(), self.dst)
        if self.space.ambient != amb:
            object.__setattr__(self, "space", span(amb, self.space.basis))

    @classmethod
    def from_vectors(cls, src, dst, vectors):
        amb = direct_sum(src.conj(), dst)
        return cls(src, dst, span(amb, vectors))

    def __eq__(self, other):
        return (isinstance(other, LinRelation) and self.src == other.src
                and self.dst == other.dst and self.space.basis == other.space.basis)

    def __hash__(self):
        return hash((self.src, self.dst, self.space.basis))

    def __contains__(self, pair):
        u, w = pair
        return (tuple(_vec(u)) + tuple(_vec(w))) in self.space

    def is_lagrangian(self):
        return is_lagrangian(self.space)

    def classify(self):
        return classify_subspace(self.space)

    def __repr__(self):
        return f"LinRelation({self.src.dim}->{self.dst.dim}, dim {self.space.dim})"


def compose_linrel(L1, L2):
    """``L2 o L1``: first ``L1 : U -/-> V`` then ``L2 : V -/-> W``."""
    if L1.dst != L2.src:
        raise ValueError("middle spaces differ")
    nu, nv, nw = L1.src.dim, L1.dst.dim, L2.dst.dim
    B = la.compose_bases(L1.space.basis, nu, nv, L2.space.basis, nw)
    return LinRelation.from_vectors(L1.src, L2.dst, B)


def dagger(L):
    nu = L.src.dim
    return LinRelation.from_vectors(L.dst, L.src, [b[nu:] + b[:nu] for b in L.space.basis])


def graph(src, dst, A):
    """Graph ``{(v, A v)}`` of a linear map given by a dst.dim x src.dim matrix."""
    A = la.to_matrix(A)
    vecs = [_unit(src.dim, i) + (la.matvec(A, _unit(src.dim, i)) if dst.dim else ()) for i in range(src.dim)]
    return LinRelation.from_vectors(src, dst, vecs)


def identity(V):
    return graph(V, V, la.identity(V.dim))


def linrel_product(L1, L2):
    """``L1 x L2 : U1 (+) U2 -/-> V1 (+) V2``."""
    u1, v1, u2, v2 = L1.src.dim, L1.dst.dim, L2.src.dim, L2.dst.dim
    z = lambda k: (ZERO,) * k
    vecs = [b[:u1] + z(u2) + b[u1:] + z(v2) for b in L1.space.basis]
    vecs += [z(u1) + b[:u2] + z(v1) + b[u2:] for b in L2.space.basis]
    return LinRelation.from_vectors(direct_sum(L1.src, L2.src), direct_sum(L1.dst, L2.dst), vecs)


def reduction_relations(C, darboux=False):
    """``I = {([w], w)} : C/ -/-> V`` and ``P = I^dagger``."""
    if not classify_subspace(C)["coisotropic"]:
        raise NotCoisotropic("C must be coisotropic")
    R = reduce(C, darboux=darboux)
    V = C.ambient
    vecs = [tuple(R.coords(w)) + tuple(w) for w in C.basis]
    I = LinRelation.from_vectors(R.space, V, vecs)
    return I, dagger(I), R


def transport_through_reduction(direction, L, C, darboux=False):
    """``lift``: ``I o L o P``; ``project``: ``P o L o I``."""
    I, P, R = reduction_relations(C, darboux=darboux)
    if direction == "lift":
        if L.src != R.space or L.dst != R.space:
            raise ValueError("lift needs an endorelation of the reduced space")
        return compose_linrel(compose_linrel(P, L), I)
    if direction == "project":
        if L.src != C.ambient or L.dst != C.ambient:
            raise ValueError("project needs an endorelation of the ambient space")
        return compose_linrel(compose_linrel(I, L), P)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------- random instances

def _rq(rng, lo=-3, hi=3, den=(1, 1, 1, 2, 3)):
    return mpq(rng.randint(lo, hi), rng.choice(den))


def random_skew(rng, n):
    A = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = _rq(rng)
            A[i][j], A[j][i] = x, -x
    return tuple(tuple(r) for r in A)


def random_symmetric(rng, n):
    A = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = _rq(rng, -2, 2)
    return tuple(tuple(r) for r in A)


def shear(S, lower=False):
    """``[[I, S], [0, I]]`` (or the lower version) for symmetric ``S``."""
    n = len(S)
    I = la.identity(n)
    Z = la.zeros(n, n)
    if lower:
        rows = [I[i] + Z[i] for i in range(n)] + [tuple(S[i]) + I[i] for i in range(n)]
    else:
        rows = [I[i] + tuple(S[i]) for i in range(n)] + [Z[i] + I[i] for i in range(n)]
    return tuple(tuple(Q(x) for x in r) for r in rows)


def _random_invertible(rng, n):
    while True:
        A = tuple(tuple(_rq(rng, -2, 2) for _ in range(n)) for _ in range(n))
        if la.rank(A) == n:
            return A


def random_symplectic_matrix(rng, n, steps=3):
    """Random element of Sp(2n, Q) for the standard form."""
    M = la.identity(2 * n)
    for _ in range(steps):
        k = rng.randrange(3)
        if k == 2:
            A = _random_invertible(rng, n)
            At = la.transpose(la.inverse(A))
            T = la.block_diag(A, At)
        else:
            T = shear(random_symmetric(rng, n), lower=bool(k))
        M = la.matmul(T, M)
    return M


def is_symplectic_matrix(M, space):
    return la.matmul(la.matmul(la.transpose(M), space.omega), M) == space.omega


def random_lagrangian(rng, space):
    """A random Lagrangian subspace of any symplectic space."""
    if space.dim == 0:
        return zero(space)
    n = space.dim // 2
    B = darboux_basis(space)
    M = random_symplectic_matrix(rng, n)
    # columns of M give standard-coordinate vectors; q-span is Lagrangian
    Bt = la.transpose(B)
    vecs = []
    for i in range(n):
        col = [M[r][i] for r in range(2 * n)]
        vecs.append(la.matvec(Bt, col))
    return span(space, vecs)


def random_subspace(rng, ambient, k=None):
    n = ambient if isinstance(ambient, int) else ambient.dim
    if k is None:
        k = rng.randint(0, n)
    while True:
        vecs = [tuple(_rq(rng, -2, 2) for _ in range(n)) for _ in range(k)]
        W = span(ambient, vecs)
        if W.dim == k:
            return W


def random_coisotropic(rng, space):
    """``C = I^perp`` for a random isotropic ``I`` inside a random Lagrangian."""
    L = random_lagrangian(rng, space)
    k = rng.randint(0, L.dim)
    coeffs = random_subspace(rng, L.dim, k)
    iso = span(space, [tuple(sum((c * b[j] for c, b in zip(row, L.basis)), ZERO) for j in range(space.dim))
                       for row in coeffs.basis])
    return orthogonal(iso)


# ---------------------------------------------------------------- linear Dirac structures

@dataclass(frozen=True)
class DiracCarrier:
    """``V (+) V*`` with ``<(X, a), (Y, b)> = b(X) + a(Y)``."""

    n: int

    @property
    def dim(self):
        return 2 * self.n

    def pairing(self, u, v):
        n = self.n
        return sum((u[i] * v[n + i] + u[n + i] * v[i] for i in range(n)), ZERO)


def dirac_check(L):
    """Maximal isotropy under the tangent pairing."""
    D = L.ambient
    if not isinstance(D, DiracCarrier):
        raise ValueError("ambient is not a Dirac carrier")
    if L.dim != D.n:
        return False
    return all(D.pairing(a, b) == 0 for a in L.basis for b in L.basis)


def graph_bivector(Pi):
    """``{(Pi a, a)}``."""
    Pi = la.to_matrix(Pi)
    n = len(Pi)
    D = DiracCarrier(n)
    return span(D, [la.matvec(Pi, _unit(n, i)) + _unit(n, i) for i in range(n)])


def graph_form(om):
    """``{(X, om X)}``."""
    om = la.to_matrix(om)
    n = len(om)
    D = DiracCarrier(n)
    return span(D, [_unit(n, i) + la.matvec(om, _unit(n, i)) for i in range(n)])


def dirac_from_distribution(Dsub):
    """``D (+) D^o`` for a subspace ``D`` of ``V``."""
    n = Dsub.n
    ann = la.nullspace(Dsub.basis, n) if Dsub.basis else [_unit(n, i) for i in range(n)]
    z = (ZERO,) * n
    return span(DiracCarrier(n), [tuple(b) + z for b in Dsub.basis] + [z + tuple(a) for a in ann])


def _block(A, B, C, Dm):
    """``[[A, B], [C, D]]`` for given blocks (lists of rows)."""
    top = [tuple(a) + tuple(b) for a, b in zip(A, B)]
    bot = [tuple(c) + tuple(d) for c, d in zip(C, Dm)]
    return tuple(top + bot)


def _zeros(r, c):
    return [tuple(ZERO for _ in range(c)) for _ in range(r)]


def dirac_image(direction, L, phi):
    """Backward image (``L`` in ``W (+) W*``) or forward image (``L`` in ``V (+) V*``)
    under ``phi : V -> W`` given as a dim W x dim V matrix."""
    phi = la.to_matrix(phi)
    m = len(phi)
    n = len(phi[0]) if phi else 0
    if phi and any(len(r) != n for r in phi):
        raise ValueError("phi is not a matrix")
    phit = la.transpose(phi, n)
    Im, In = la.identity(m), la.identity(n)
    if direction == "backward":
        if L.n != 2 * m:
            raise ValueError("dimension mismatch for the backward image")
        # (v, b) in V (+) W*  ->  (phi v, b) in W (+) W*  and  (v, phit b) in V (+) V*
        A = _block(phi, _zeros(m, m), _zeros(m, n), Im)
        Bm = _block(In, _zeros(n, m), _zeros(n, n), phit)
        pre = la.preimage(A, L.basis, n + m)
        return span(DiracCarrier(n), la.image(Bm, pre, 2 * n))
    if direction == "forward":
        if L.n != 2 * n:
            raise ValueError("dimension mismatch for the forward image")
        # (v, b) in V (+) W*  ->  (v, phit b) in V (+) V*  and  (phi v, b) in W (+) W*
        A = _block(In, _zeros(n, m), _zeros(n, n), phit)
        Bm = _block(phi, _zeros(m, m), _zeros(m, n), Im)
        pre = la.preimage(A, L.basis, n + m)
        return span(DiracCarrier(m), la.image(Bm, pre, 2 * m))
    raise ValueError(f"unknown direction {direction!r}")


def random_dirac(rng, n):
    """A random linear Dirac structure: ``D (+) D^o`` moved by B- and beta-transforms."""
    L = dirac_from_distribution(random_subspace(rng, n))
    for _ in range(rng.randint(0, 2)):
        S = random_skew(rng, n)
        In = la.identity(n)
        if rng.random() < 0.5:   # B-transform (X, a) -> (X, a + B X)
            T = _block(In, _zeros(n, n), S, In)
        else:                    # beta-transform (X, a) -> (X + beta a, a)
            T = _block(In, S, _zeros(n, n), In)
        L = span(L.ambient, la.image(T, L.basis, 2 * n))
    return L


def default_rng(seed=None):
    return _random.Random(seed)
