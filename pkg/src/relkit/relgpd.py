"""Relational (symplectic) groupoids: derived relations, axioms A.1 to A.9,
reduction to a groupoid, morphisms and the standard examples.

A candidate is ``(G, L, I)``.  In set mode ``G`` is a :class:`Carrier`, ``L``
a set of triples and ``I`` a dict; in linear mode ``G`` is a
:class:`SympSpace`, ``L`` a subspace of ``G^3`` and ``I`` a matrix.  The same
relational formulas drive both modes through a small backend object.

Types follow the conjugation conventions: ``L_rel : G x G -/-> conj G``,
``I_rel : conj G -/-> G``, ``L3 = I_rel o L_rel``, ``L_I : pt -/-> G x G``,
``L1 = L3 o L_I``, ``L2 = L3 o (L1 x Id)``, ``C = L2 o G``.  In set mode
conjugation is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from . import finrel as fr
from . import linalg as la
from . import symplin as sl
from .finrel import Carrier, Rel, Report, POINT, STAR, atom_key
from .frobenius import Groupoid, check_groupoid_axioms, groupoid_equal, relabel_units

__all__ = [
    "RelGroupoidCandidate", "DerivedData", "Regularity", "NotInvolutive",
    "derive", "check_core_axioms", "check_regularity", "reduce_to_groupoid",
    "check_morphism", "build_example", "opposite", "power", "diagonal_into_power",
    "projection_to_reduced", "candidate_from_groupoid", "relabel", "transport_groupoid",
]


class NotInvolutive(ValueError):
    pass


# ---------------------------------------------------------------- backends

class _SetOps:
    mode = "set"
    point = POINT

    prod = staticmethod(lambda A, B: A * B)
    conj = staticmethod(lambda A: A)
    identity = staticmethod(fr.identity)
    compose = staticmethod(fr.compose)
    dagger = staticmethod(fr.dagger)
    product = staticmethod(fr.product)
    swap = staticmethod(fr.swap)
    assoc = staticmethod(fr.assoc)
    lunit_inv = staticmethod(fr.left_unitor_inv)
    runit_inv = staticmethod(fr.right_unitor_inv)
    whole = staticmethod(fr.whole)

    @staticmethod
    def split():
        return fr.split_point()

    @staticmethod
    def graph(A, B, I):
        return fr.graph(A, B, I)

    @staticmethod
    def L_rel(G, L, src, dst):
        return Rel(src, dst, (((x, y), z) for x, y, z in L), check=False)

    @staticmethod
    def L_I(G, I):
        return Rel(POINT, G * G, ((STAR, (x, I[x])) for x in G), check=False)

    @staticmethod
    def equation(rep, law, label, lhs, rhs):
        return fr.equation(rep, law, label, lhs, rhs)

    @staticmethod
    def points(R):
        return fr.points_of(R)


def _qs(v):
    return tuple(str(x) for x in v)


class _LinOps:
    mode = "linear"
    point = sl.point()

    prod = staticmethod(lambda A, B: sl.direct_sum(A, B))
    conj = staticmethod(lambda A: A.conj())
    identity = staticmethod(sl.identity)
    compose = staticmethod(sl.compose_linrel)
    dagger = staticmethod(sl.dagger)
    product = staticmethod(sl.linrel_product)

    @staticmethod
    def swap(A, B):
        a, b = A.dim, B.dim
        M = [[mpq(0)] * (a + b) for _ in range(a + b)]
        for i in range(b):
            M[i][a + i] = mpq(1)
        for i in range(a):
            M[b + i][i] = mpq(1)
        return sl.graph(sl.direct_sum(A, B), sl.direct_sum(B, A), M)

    @staticmethod
    def assoc(A, B, C):
        return sl.identity(sl.direct_sum(A, B, C))

    @staticmethod
    def lunit_inv(A):
        return sl.identity(A)

    runit_inv = lunit_inv

    @staticmethod
    def whole(A):
        return sl.LinRelation(sl.point(), A, sl.whole(sl.direct_sum(sl.point(), A)))

    @staticmethod
    def split():
        return sl.identity(sl.point())

    @staticmethod
    def graph(A, B, I):
        return sl.graph(A, B, I)

    @staticmethod
    def L_rel(G, L, src, dst):
        return sl.LinRelation.from_vectors(src, dst, L.basis)

    @staticmethod
    def L_I(G, I):
        n = G.dim
        vecs = []
        for i in range(n):
            e = tuple(mpq(1) if j == i else mpq(0) for j in range(n))
            vecs.append(e + la.matvec(I, e))
        return sl.LinRelation.from_vectors(sl.point(), sl.direct_sum(G, G), vecs)

    @staticmethod
    def equation(rep, law, label, lhs, rhs):
        if (lhs.src, lhs.dst) != (rhs.src, rhs.dst):
            raise ValueError(f"{label}: sides have different types")
        if lhs.space.basis == rhs.space.basis:
            rep.record(law, True)
            return True
        extra = [v for v in lhs.space.basis if v not in rhs.space]
        side, v = ("lhs", extra[0]) if extra else ("rhs", next(v for v in rhs.space.basis if v not in lhs.space))
        rep.derived[label] = (lhs, rhs)
        rep.record(law, False, (label, _qs(v), side, f"dim {lhs.space.dim}", f"dim {rhs.space.dim}"))
        return False

    @staticmethod
    def points(R):
        return sl.Subspace(R.dst, tuple(b[R.src.dim:] for b in R.space.basis))


def _ops(mode):
    return _SetOps if mode == "set" else _LinOps


# ---------------------------------------------------------------- candidates

@dataclass(frozen=True)
class RelGroupoidCandidate:
    mode: str
    G: object
    L: object
    I: object
    name: str = ""

    def __post_init__(self):
        if self.mode == "set":
            if not isinstance(self.G, Carrier):
                raise TypeError("set mode needs a Carrier")
            L = frozenset(tuple(t) for t in self.L)
            for t in L:
                if len(t) != 3 or any(x not in self.G for x in t):
                    raise ValueError(f"triple {t!r} is not in G^3")
            object.__setattr__(self, "L", L)
            object.__setattr__(self, "I", dict(self.I))
        elif self.mode == "linear":
            if not isinstance(self.G, sl.SympSpace):
                raise TypeError("linear mode needs a SympSpace")
            amb = sl.direct_sum(self.G, self.G, self.G)
            L = self.L if isinstance(self.L, sl.Subspace) else sl.span(amb, self.L)
            object.__setattr__(self, "L", sl.span(amb, L.basis))
            object.__setattr__(self, "I", la.to_matrix(self.I))
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def ops(self):
        return _ops(self.mode)

    def I_graph(self, src=None, dst=None):
        G = self.G
        return self.ops.graph(src or G, dst or G, self.I)


@dataclass
class DerivedData:
    L_rel: object
    I_rel: object
    L_I: object
    L1: object
    L2: object
    L2_right: object
    L3: object
    C: object
    flags: dict = field(default_factory=dict)

    def as_dict(self):
        return {"L_I": self.L_I, "L1": self.L1, "L2": self.L2, "L3": self.L3, "C": self.C}


def _check_involution(c):
    G, I = c.G, c.I
    if c.mode == "set":
        bad = [x for x in G.sorted() if x not in I or I[x] not in G]
        if bad:
            raise NotInvolutive(f"I is not a total map on G (at {bad[0]!r})")
        bad = [x for x in G.sorted() if I[I[x]] != x]
        if bad:
            raise NotInvolutive(f"I is not an involution: I(I({bad[0]!r})) = {I[I[bad[0]]]!r}")
    else:
        n = G.dim
        if len(I) != n or any(len(r) != n for r in I):
            raise NotInvolutive("I has the wrong size")
        if la.matmul(I, I) != la.identity(n):
            raise NotInvolutive("I is not an involution")


def derive(c):
    """Compute ``L_rel, I_rel, L_I, L1, L2, L3, C``."""
    _check_involution(c)
    o, G = c.ops, c.G
    Gb = o.conj(G)
    GG = o.prod(G, G)
    L_rel = o.L_rel(G, c.L, GG, Gb)
    I_rel = o.graph(Gb, G, c.I)
    L3 = o.compose(L_rel, I_rel)
    L_I = o.L_I(G, c.I)
    L1 = o.compose(L_I, L3)
    one = o.identity(G)
    L2 = o.compose(o.compose(o.lunit_inv(G), o.product(L1, one)), L3)
    L2r = o.compose(o.compose(o.runit_inv(G), o.product(one, L1)), L3)
    C = o.compose(o.whole(G), L2)
    d = DerivedData(L_rel, I_rel, L_I, L1, L2, L2r, L3, C)
    if c.mode == "linear":
        d.flags = {
            "L": sl.is_lagrangian(c.L),
            "graph(I)": I_rel.is_lagrangian(),
            "L1": L1.is_lagrangian(),
            "L2": L2.is_lagrangian(),
            "L3": L3.is_lagrangian(),
        }
    return d


def _cyclic_ok(c):
    if c.mode == "set":
        bad = sorted((t for t in c.L if (t[1], t[2], t[0]) not in c.L), key=atom_key)
        return not bad, bad[:1]
    n = c.G.dim
    rot = [b[n:2 * n] + b[2 * n:] + b[:n] for b in c.L.basis]
    W = sl.span(c.L.ambient, rot)
    if W == c.L:
        return True, []
    v = next(v for v in rot if v not in c.L)
    return False, [_qs(v)]


def check_core_axioms(c, derived=None):
    """Axioms A.1 to A.6.  ``report.derived['data']`` holds the derived relations."""
    rep = Report()
    try:
        d = derived or derive(c)
    except NotInvolutive as exc:
        rep.record("A.2", False, (str(exc),))
        return rep
    o, G = c.ops, c.G
    rep.derived["data"] = d
    Gb = o.conj(G)
    one = o.identity(G)

    ok, w = _cyclic_ok(c)
    rep.record("A.1", ok, *[("not cyclic",) + tuple(x) for x in w])

    rep.record("A.2", True)
    if c.mode == "linear":
        om = G.omega
        anti = la.matmul(la.matmul(la.transpose(c.I), om), c.I) == tuple(tuple(-x for x in r) for r in om)
        rep.record("A.2", anti, ("I is not antisymplectic",))
        rep.record("A.2", d.flags["graph(I)"], ("graph(I) is not Lagrangian",))

    # A.3: I_rel o L_rel = conj(L_rel) o conj(T) o (conj(I) x conj(I))
    Lb = o.L_rel(G, c.L, o.prod(Gb, Gb), G)
    Ib = o.graph(G, Gb, c.I)
    rhs = o.compose(o.compose(o.product(Ib, Ib), o.swap(Gb, Gb)), Lb)
    o.equation(rep, "A.3", "I∘L = L̄∘T̄∘(Ī×Ī)", d.L3, rhs)
    if c.mode == "linear":
        rep.record("A.3", d.flags["L3"], ("L3 is not Lagrangian",))

    # A.4
    L3 = d.L3
    left = o.compose(o.product(L3, one), L3)
    right = o.compose(o.compose(o.assoc(G, G, G), o.product(one, L3)), L3)
    o.equation(rep, "A.4", "L3∘(L3×Id) = L3∘(Id×L3)", left, right)
    if c.mode == "linear":
        rep.record("A.4", left.is_lagrangian() and right.is_lagrangian(), ("associativity composite not Lagrangian",))

    # A.5
    L1 = d.L1
    l11 = o.compose(o.compose(o.split(), o.product(L1, L1)), L3)
    o.equation(rep, "A.5", "L3∘(L1×L1) = L1", l11, L1)
    if c.mode == "linear":
        rep.record("A.5", d.flags["L1"] and l11.is_lagrangian(), ("L1 is not Lagrangian",))

    # A.6
    L2 = d.L2
    o.equation(rep, "A.6", "L3∘(Id×L1) = L3∘(L1×Id)", d.L2_right, L2)
    o.equation(rep, "A.6", "L2∘L1 = L1", o.compose(L1, L2), L1)
    o.equation(rep, "A.6", "L2∘L3 = L3", o.compose(L3, L2), L3)
    o.equation(rep, "A.6", "L3∘(L2×L2) = L3", o.compose(o.product(L2, L2), L3), L3)
    Ib2 = o.graph(G, Gb, c.I)
    L2b = _conj_rel(c, L2)
    o.equation(rep, "A.6", "Ī∘L2 = L̄2∘Ī", o.compose(L2, Ib2), o.compose(Ib2, L2b))
    o.equation(rep, "A.6", "L2† = L2", o.dagger(L2), L2)
    o.equation(rep, "A.6", "L2∘L2 = L2", o.compose(L2, L2), L2)
    if c.mode == "linear":
        rep.record("A.6", d.flags["L2"] and d.L2_right.is_lagrangian(), ("L2 is not Lagrangian",))
    return rep


def _conj_rel(c, R):
    """The same relation between conjugated objects."""
    if c.mode == "set":
        return R
    return sl.LinRelation.from_vectors(R.src.conj(), R.dst.conj(), R.space.basis)


# ---------------------------------------------------------------- regularity

@dataclass
class Regularity:
    C: object
    M: object          # set mode: list of frozenset classes; linear: dimension
    classes: object    # set mode: C/L2 classes; linear: dimension of C/L2
    S: object
    T: object
    cls_of: dict = field(default_factory=dict)


def _set_regularity(c, d, rep):
    G, I = c.G, c.I
    L2 = d.L2
    C = frozenset(fr.points_of(d.C))
    L1 = frozenset(fr.points_of(d.L1))
    # A.7
    rel = L2.pairs
    w = []
    outside = sorted((p for p in rel if p[0] not in C or p[1] not in C), key=atom_key)
    if outside:
        w.append(("L2 leaves C", outside[0]))
    for x in sorted(C, key=atom_key):
        if (x, x) not in rel:
            w.append(("not reflexive", x))
            break
    for (x, y) in sorted(rel, key=atom_key):
        if (y, x) not in rel:
            w.append(("not symmetric", (x, y)))
            break
    fwd = L2.forward()
    trans = [(x, z) for (x, y) in rel for z in fwd.get(y, ()) if (x, z) not in rel]
    if trans:
        w.append(("not transitive", sorted(trans, key=atom_key)[0]))
    rep.record("A.7", not w, *w)
    if w:
        return None
    cls_of = {x: frozenset(fwd.get(x, ())) for x in C}
    classes = sorted(set(cls_of.values()), key=atom_key)
    # A.8
    w = [("L1 not inside C", x) for x in sorted(L1 - C, key=atom_key)[:1]]
    rep.record("A.8", not w, *w)
    if w:
        return None
    mcls = {x: cls_of[x] & L1 for x in L1}
    M = sorted(set(mcls.values()), key=atom_key)
    # A.9
    L3 = d.L3
    S = {(cc, mcls[l]) for ((l, cc), _g) in L3.pairs if l in L1 and cc in C}
    T = {(cc, mcls[l]) for ((cc, l), _g) in L3.pairs if l in L1 and cc in C}
    w = []
    Sf = {}
    for cc, m in S:
        Sf.setdefault(cc, set()).add(m)
    for cc in sorted(C, key=atom_key):
        vals = Sf.get(cc, set())
        if len(vals) != 1:
            w.append(("S not single-valued and total", cc, len(vals)))
            break
    image = {m for _, m in S}
    missing = [m for m in M if m not in image]
    if missing:
        w.append(("S not surjective", tuple(sorted(missing[0], key=atom_key))))
    comp = {(m1, m2) for (x, y) in rel for m1 in Sf.get(x, ()) for m2 in Sf.get(y, ())}
    diag = {(m, m) for m in M}
    if comp != diag:
        bad = sorted(comp ^ diag, key=atom_key)[0]
        w.append(("(S×S)∘L2 != Δ_M", tuple(tuple(sorted(b, key=atom_key)) for b in bad)))
    SI = {(cc, m) for (x, m) in S for cc in C if I[cc] == x}
    if SI != T:
        w.append(("T != S∘I", sorted(SI ^ T, key=atom_key)[0][0]))
    rep.record("A.9", not w, *w)
    if w:
        return None
    Smap = {cc: next(iter(v)) for cc, v in Sf.items()}
    Tmap = {cc: m for cc, m in T}
    return Regularity(C, M, classes, Smap, Tmap, cls_of)


def _lin_regularity(c, d, rep):
    n = c.G.dim
    L2 = d.L2
    Csub = sl.span(n, d.C.space.basis)
    L1 = sl.span(n, d.L1.space.basis)
    L2s = sl.span(2 * n, L2.space.basis)
    z = (mpq(0),) * n
    w = []
    if not sl.classify_subspace(sl.span(c.G, Csub.basis))["coisotropic"]:
        w.append(("C is not coisotropic",))
    CC = sl.span(2 * n, [tuple(b) + z for b in Csub.basis] + [z + tuple(b) for b in Csub.basis])
    if not L2s <= CC:
        w.append(("L2 leaves C",))
    if not sl.span(2 * n, [tuple(b) + tuple(b) for b in Csub.basis]) <= L2s:
        w.append(("not reflexive",))
    if sl.dagger(L2) != L2:
        w.append(("not symmetric",))
    if not sl.span(2 * n, sl.compose_linrel(L2, L2).space.basis) <= L2s:
        w.append(("not transitive",))
    rep.record("A.7", not w, *w)
    if w:
        return None
    K = _kernel_of(L2s, n)
    if not L1 <= Csub:
        rep.record("A.8", False, ("L1 not inside C",))
        return None
    rep.record("A.8", True)
    L1K = sl.intersect(L1, K)
    dimM = L1.dim - L1K.dim
    dimCL2 = Csub.dim - K.dim
    # S = {(c, l) : (l, c, g) in L3, l in L1, c in C}
    L3sp = sl.span(3 * n, d.L3.space.basis)
    rows = _constraint_rows(L1, 0, 3 * n) + _constraint_rows(Csub, n, 3 * n)
    cons = sl.span(3 * n, la.nullspace(rows, 3 * n)) if rows else sl.whole(3 * n)
    both = sl.intersect(L3sp, cons)
    S = sl.span(2 * n, [tuple(v[n:2 * n]) + tuple(v[:n]) for v in both.basis])
    w = []
    if not _kernel_of(S, n) <= K:
        w.append(("S not single-valued",))
    if sl.span(n, [v[:n] for v in S.basis]) != Csub:
        w.append(("S not total on C",))
    if sl.span(n, [v[n:] for v in S.basis] + list(L1K.basis)) != L1:
        w.append(("S not surjective",))
    # (S x S) o L2 = Delta_M: S-values of L2-related points agree modulo K
    for b in L2s.basis:
        l1, l2 = _solve_S(S, b[:n], n), _solve_S(S, b[n:], n)
        if l1 is None or l2 is None or tuple(x - y for x, y in zip(l1, l2)) not in K:
            w.append(("(S×S)∘L2 != Δ_M",))
            break
    rep.record("A.9", not w, *w)
    if w:
        return None
    return Regularity(Csub, dimM, dimCL2, S, None, {"K": K})


def _constraint_rows(W, offset, total):
    """Rows ``r`` with ``r . v = 0`` iff the block of ``v`` at ``offset`` lies in ``W``."""
    rows = []
    for a in sl.annihilator_rows(W):
        r = [mpq(0)] * total
        r[offset:offset + W.n] = a
        rows.append(tuple(r))
    return rows


def _kernel_of(R, n):
    """``{x : (0, x) in R}`` for a subspace ``R`` of ``Q^n (+) Q^n``."""
    second = sl.span(2 * n, [(mpq(0),) * n + sl._unit(n, i) for i in range(n)])
    both = sl.intersect(sl.span(2 * n, R.basis), second)
    return sl.span(n, [v[n:] for v in both.basis])


def _solve_S(S, c, n):
    """Some ``l`` with ``(c, l) in S``."""
    B = list(S.basis)
    k = len(B)
    if not k:
        return (mpq(0),) * n if not any(c) else None
    aug = [[B[i][j] for i in range(k)] + [c[j]] for j in range(n)]
    R, piv = la.rref(aug)
    if k in piv:
        return None
    a = [mpq(0)] * k
    for row, p in zip(R, piv):
        a[p] = row[k]
    return tuple(sum((a[i] * B[i][n + j] for i in range(k)), mpq(0)) for j in range(n))


def check_regularity(c, core=None):
    """Axioms A.7 to A.9.  ``report.derived['regularity']`` holds M, S, T and classes."""
    core = core or check_core_axioms(c)
    if not core.verdict:
        raise ValueError(f"core axioms fail: {', '.join(core.failed())}")
    d = core.derived["data"]
    rep = Report()
    reg = _set_regularity(c, d, rep) if c.mode == "set" else _lin_regularity(c, d, rep)
    rep.derived["data"] = d
    rep.derived["regularity"] = reg
    return rep


def reduce_to_groupoid(c):
    """The groupoid ``C/L2 => L1/L2`` of a regular candidate.

    Source is ``T`` and target is ``S`` so that ``mu[(g, f)] = g o f`` is
    defined when ``s(g) == t(f)``.
    """
    rep = check_regularity(c)
    if not rep.verdict:
        raise ValueError(f"regularity fails: {', '.join(rep.failed())}")
    reg = rep.derived["regularity"]
    if c.mode == "linear":
        if reg.classes != 0:
            raise ValueError(f"C/L2 has dimension {reg.classes}; only the zero-dimensional case is a finite groupoid")
        z = "[0]"
        return Groupoid(Carrier([z]), Carrier([z]), {z: z}, {z: z}, {z: z}, {z: z}, {(z, z): z})
    d = rep.derived["data"]
    cls_of = reg.cls_of
    G1 = Carrier(reg.classes)
    G0 = Carrier(reg.M)
    s = {k: reg.T[next(iter(sorted(k, key=atom_key)))] for k in reg.classes}
    t = {k: reg.S[next(iter(sorted(k, key=atom_key)))] for k in reg.classes}
    e = {}
    for m in reg.M:
        vals = {cls_of[l] for l in m}
        if len(vals) != 1:
            raise ValueError(f"unit of {sorted(m, key=atom_key)!r} is not a single class")
        e[m] = vals.pop()
    inv = {}
    for k in reg.classes:
        vals = {cls_of[c.I[x]] for x in k if c.I[x] in cls_of}
        if len(vals) != 1:
            raise ValueError("inversion is not well defined on classes")
        inv[k] = vals.pop()
    table = {}
    C = reg.C
    for ((a, b), g) in d.L3.pairs:
        if a in C and b in C and g in C:
            table.setdefault((cls_of[a], cls_of[b]), set()).add(cls_of[g])
    mu = {}
    for key, vals in sorted(table.items(), key=lambda kv: atom_key(kv[0])):
        if len(vals) != 1:
            witness = tuple(tuple(sorted(x, key=atom_key)) for x in key)
            raise ValueError(f"projected multiplication is multi-valued at {witness!r}")
        mu[key] = vals.pop()
    G = Groupoid(G0, G1, s, t, e, inv, mu)
    return G


def transport_groupoid(G, f1, f0=None):
    """Rename arrows by ``f1`` and objects by ``f0``."""
    f0 = f0 or (lambda x: x)
    return Groupoid(Carrier([f0(x) for x in G.G0]), Carrier([f1(g) for g in G.G1]),
                    {f1(g): f0(x) for g, x in G.s.items()}, {f1(g): f0(x) for g, x in G.t.items()},
                    {f0(x): f1(g) for x, g in G.e.items()}, {f1(g): f1(h) for g, h in G.inv.items()},
                    {(f1(g), f1(f)): f1(h) for (g, f), h in G.mu.items()})


# ---------------------------------------------------------------- morphisms

def _untagged(c):
    o, G = c.ops, c.G
    return o.graph(G, G, c.I), o.L_rel(G, c.L, o.prod(G, G), G)


def check_morphism(F, A, B, mode="morphism"):
    """``F : A.G -/-> B.G``.  Morphism: ``F∘I_A = I_B∘F`` and ``L_B∘(F×F) = F∘L_A``.
    Equivalence: the same for ``F†`` and ``F†∘F = L2_A``, ``F∘F† = L2_B``."""
    if A.mode != B.mode:
        raise ValueError("candidates have different modes")
    o = A.ops
    rep = Report()
    IA, LA = _untagged(A)
    IB, LB = _untagged(B)

    def one_way(R, X, Y, IX, LX, IY, LY, tag):
        o.equation(rep, tag, f"{tag}∘I = I∘{tag}", o.compose(IX, R), o.compose(R, IY))
        o.equation(rep, tag, f"L∘({tag}×{tag}) = {tag}∘L", o.compose(o.product(R, R), LY), o.compose(LX, R))

    one_way(F, A, B, IA, LA, IB, LB, "F")
    if mode == "equivalence":
        Fd = o.dagger(F)
        one_way(Fd, B, A, IB, LB, IA, LA, "F†")
        dA, dB = derive(A), derive(B)
        o.equation(rep, "equivalence", "F†∘F = L2", o.compose(F, Fd), dA.L2)
        o.equation(rep, "equivalence", "F∘F† = L2'", o.compose(Fd, F), dB.L2)
    elif mode != "morphism":
        raise ValueError(f"unknown mode {mode!r}")
    return rep


# ---------------------------------------------------------------- examples

def candidate_from_groupoid(G, name="from_groupoid"):
    """``L = {(g, f, inv(g f))}`` over composable pairs, ``I = inv``."""
    L = {(g, f, G.inv[h]) for (g, f), h in G.mu.items()}
    return RelGroupoidCandidate("set", Carrier(G.G1), L, G.inv, name)


def _linear_pair(V):
    """Pair groupoid of a symplectic space: ``G = V (+) conj V``."""
    n = V.dim
    G = sl.direct_sum(V, V.conj())
    z = (mpq(0),) * n
    E = [tuple(mpq(1) if j == i else mpq(0) for j in range(n)) for i in range(n)]
    vecs = []
    for x in E:   # ((x, 0), (0, 0), (0, x))
        vecs.append(x + z + z + z + z + x)
    for y in E:   # ((0, y), (y, 0), (0, 0))
        vecs.append(z + y + y + z + z + z)
    for w in E:   # ((0, 0), (0, w), (w, 0))
        vecs.append(z + z + z + w + w + z)
    I = [[mpq(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        I[i][n + i] = mpq(1)
        I[n + i][i] = mpq(1)
    return RelGroupoidCandidate("linear", G, vecs, I, "linear_pair")


def lagrangian_triple(mode="set", G=None, Lag=None, phi=None):
    if mode == "set":
        G = Carrier(G)
        Lag = frozenset(Lag)
        phi = dict(phi)
        if {phi[x] for x in Lag} != set(Lag):
            raise ValueError("phi does not preserve the chosen subset")
        return RelGroupoidCandidate("set", G, {(a, b, c) for a in Lag for b in Lag for c in Lag}, phi,
                                    "lagrangian_triple")
    if G is None:
        G = sl.standard(1)
    n = G.dim // 2
    if phi is None:
        phi = la.block_diag(la.identity(n), tuple(tuple(-x for x in r) for r in la.identity(n)))
    phi = la.to_matrix(phi)
    if Lag is None:
        Lag = sl.span(G, [tuple(mpq(1) if j == i else mpq(0) for j in range(2 * n)) for i in range(n)])
    if not sl.is_lagrangian(Lag):
        raise ValueError("the chosen subspace is not Lagrangian")
    if sl.span(G, [la.matvec(phi, v) for v in Lag.basis]) != Lag:
        raise ValueError("phi does not preserve the Lagrangian")
    m = G.dim
    z = (mpq(0),) * m
    vecs = [tuple(v) + z + z for v in Lag.basis] + [z + tuple(v) + z for v in Lag.basis] + \
        [z + z + tuple(v) for v in Lag.basis]
    return RelGroupoidCandidate("linear", G, vecs, phi, "lagrangian_triple")


def power(c, n=2):
    """Componentwise power ``(G^n, L^n, I^n)`` (set mode)."""
    if c.mode != "set" or n < 1:
        raise ValueError("power needs a set-mode candidate and n >= 1")
    G, L, I = c.G, list(c.L), c.I
    if n == 1:
        return c
    prev = power(c, n - 1)
    GG = prev.G * G
    LL = {((x1, x2), (y1, y2), (z1, z2)) for (x1, y1, z1) in prev.L for (x2, y2, z2) in L}
    II = {(a, b): (prev.I[a], I[b]) for a, b in GG}
    return RelGroupoidCandidate("set", GG, LL, II, f"power{n}")


def cyclic_counterexample(k=5):
    if k < 3:
        raise ValueError("cyclic counterexample needs k >= 3")
    G = Carrier(range(k))
    L = {(a, b, (-a - b - 1) % k) for a in G for b in G}
    return RelGroupoidCandidate("set", G, L, {a: (-a) % k for a in G}, f"cyclic_counterexample({k})")


def parity(N2=8):
    if N2 < 2 or N2 % 2:
        raise ValueError("parity needs an even modulus")
    G = Carrier(range(N2))
    L = {(a, b, q) for a in G for b in G for q in G if (a + b + q) % 2 == 1}
    return RelGroupoidCandidate("set", G, L, {a: (-a) % N2 for a in G}, f"parity({N2})")


def build_example(kind, **params):
    kind = kind.replace("-", "_")
    if kind == "from_groupoid":
        if params.get("mode") == "linear":
            return _linear_pair(params.get("V") or sl.standard(1))
        return candidate_from_groupoid(params["groupoid"])
    if kind == "lagrangian_triple":
        return lagrangian_triple(params.get("mode", "set"), params.get("G"), params.get("Lag"), params.get("phi"))
    if kind == "power":
        return power(params["candidate"], params.get("n", 2))
    if kind == "cyclic_counterexample":
        return cyclic_counterexample(params.get("k", 5))
    if kind == "parity":
        return parity(params.get("N", 8))
    raise ValueError(f"unknown example kind {kind!r}")


def opposite(c):
    """``(conj G, L∘T, I)``: the first two slots of each triple swapped."""
    if c.mode == "set":
        return RelGroupoidCandidate("set", c.G, {(y, x, z) for x, y, z in c.L}, c.I, "opposite")
    n = c.G.dim
    vecs = [b[n:2 * n] + b[:n] + b[2 * n:] for b in c.L.basis]
    return RelGroupoidCandidate("linear", c.G.conj(), vecs, c.I, "opposite")


def diagonal_into_power(c, n=2):
    """``Delta : G -/-> G^n`` as a relation into ``power(c, n)``."""
    P = power(c, n)

    def tup(g):
        x = g
        for _ in range(n - 1):
            x = (x, g)
        return x

    return Rel(c.G, P.G, ((g, tup(g)) for g in c.G)), P


def projection_to_reduced(c):
    """``p = {(g, [g])}`` from ``c`` to the candidate of its reduced groupoid."""
    Gr = reduce_to_groupoid(c)
    target = candidate_from_groupoid(Gr, "reduced")
    reg = check_regularity(c).derived["regularity"]
    p = Rel(c.G, target.G, ((g, reg.cls_of[g]) for g in reg.C))
    return p, target, Gr


def relabel(c, f):
    """Candidate with every atom renamed by the bijection ``f`` (set mode)."""
    G = Carrier([f(x) for x in c.G])
    return RelGroupoidCandidate("set", G, {(f(x), f(y), f(z)) for x, y, z in c.L},
                                {f(x): f(y) for x, y in c.I.items()}, c.name)
