"""Relative Frobenius algebras in Rel and their groupoids.

A candidate is a carrier ``X`` with a relation ``m : X x X -/-> X``; we write
``hg`` for any ``f`` with ``((h, g), f) in m``.  Groupoid composition follows
the same order: ``mu[(g, f)] = g o f`` is defined iff ``s(g) == t(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import finrel as fr
from .finrel import Carrier, Rel, Report, atom_key, equation

__all__ = [
    "FrobCandidate", "Groupoid", "FrobMorphism", "NotFrobenius", "NotGroupoid",
    "check_frobenius_axioms", "find_units", "to_groupoid", "from_groupoid",
    "check_groupoid_axioms", "check_morphism", "induced_subgroupoid",
    "relabel_units", "groupoid_equal", "pair_groupoid", "group_groupoid",
    "cyclic_group", "klein_group", "product_groupoid", "disjoint_union",
    "empty_groupoid", "small_groupoids", "table_to_rel",
]


class NotFrobenius(ValueError):
    def __init__(self, report, msg="candidate fails the Frobenius axioms"):
        super().__init__(f"{msg}: {', '.join(report.failed())}")
        self.report = report


class NotGroupoid(ValueError):
    def __init__(self, report, msg="structure fails the groupoid axioms"):
        super().__init__(f"{msg}: {', '.join(report.failed())}")
        self.report = report


@dataclass(frozen=True)
class FrobCandidate:
    X: Carrier
    m: Rel

    def __post_init__(self):
        if self.m.src != self.X * self.X or self.m.dst != self.X:
            raise fr.CarrierMismatch("m must be a relation X x X -/-> X")

    def products(self, h, g):
        return self.m((h, g))


def table_to_rel(X, table):
    """``m`` from an iterable of triples ``(h, g, hg)``."""
    return Rel(X * X, X, (((h, g), f) for h, g, f in table))


@dataclass(frozen=True)
class Groupoid:
    G0: Carrier
    G1: Carrier
    s: dict
    t: dict
    e: dict
    inv: dict
    mu: dict  # (g, f) -> g o f, on pairs with s(g) == t(f)

    def composable(self, g, f):
        return self.s[g] == self.t[f]

    def pairs(self):
        return [(g, f) for g in self.G1 for f in self.G1 if self.s.get(g) == self.t.get(f)]

    def __repr__(self):
        return f"Groupoid(|G0|={len(self.G0)}, |G1|={len(self.G1)})"


@dataclass(frozen=True)
class FrobMorphism:
    src: FrobCandidate
    dst: FrobCandidate
    r: Rel

    def __post_init__(self):
        if self.r.src != self.src.X or self.r.dst != self.dst.X:
            raise fr.CarrierMismatch("morphism carriers do not match its algebras")


# ---------------------------------------------------------------- axioms

def _unit_laws(c, U):
    """Elementwise form of m o (u x 1) = 1 = m o (1 x u)."""
    fwd = c.m.forward()
    for f in c.X:
        left, right = set(), set()
        for u in U:
            left |= fwd.get((u, f), frozenset())
            right |= fwd.get((f, u), frozenset())
        if left != {f} or right != {f}:
            return False
    return True


def find_units(c):
    """All subsets U with m o (u x 1) = 1 = m o (1 x u), size-ascending."""
    n = len(c.X)
    fr.ensure_budget(2 ** n, "unit search over subsets")
    elems = c.X.sorted()
    found = []
    for k in range(n + 1):
        for U in combinations(elems, k):
            if _unit_laws(c, U):
                found.append(frozenset(U))
    return found


def unit_relations(c, U):
    """The relational unit equations, as (lhs, rhs) pairs of relations X -/-> X."""
    X = c.X
    u = fr.subset_rel(X, U)
    lhs_l = fr.compose(fr.compose(fr.left_unitor_inv(X), fr.product(u, fr.identity(X))), c.m)
    lhs_r = fr.compose(fr.compose(fr.right_unitor_inv(X), fr.product(fr.identity(X), u)), c.m)
    return lhs_l, lhs_r


def frobenius_sides(c):
    X, m = c.X, c.m
    one = fr.identity(X)
    md = fr.dagger(m)
    a = fr.assoc(X, X, X)
    mdm = fr.compose(m, md)
    f1 = fr.compose(fr.compose(fr.product(md, one), a), fr.product(one, m))
    f2 = fr.compose(fr.compose(fr.product(one, md), fr.dagger(a)), fr.product(m, one))
    return f1, mdm, f2


def check_frobenius_axioms(c):
    """Check (F), (M), (A), (U).  ``report.derived['U']`` holds the unit or None."""
    rep = Report()
    X, m = c.X, c.m
    one = fr.identity(X)
    md = fr.dagger(m)
    f1, mdm, f2 = frobenius_sides(c)
    equation(rep, "F", "(1×m)∘α∘(m†×1) = m†∘m", f1, mdm)
    equation(rep, "F", "(m×1)∘α⁻¹∘(1×m†) = m†∘m", f2, mdm)
    equation(rep, "M", "m∘m† = 1", fr.compose(md, m), one)
    a = fr.assoc(X, X, X)
    equation(rep, "A", "m∘(1×m)∘α = m∘(m×1)", fr.compose(fr.compose(a, fr.product(one, m)), m),
             fr.compose(fr.product(m, one), m))
    units = find_units(c)
    if units:
        U = units[0]
        rep.record("U", True)
        rep.derived["U"] = U
        ll, lr = unit_relations(c, U)
        equation(rep, "U", "m∘(u×1)∘λ⁻¹ = 1", ll, one)
        equation(rep, "U", "m∘(1×u)∘ρ⁻¹ = 1", lr, one)
        if len(units) > 1:
            rep.notes.append(f"unit not unique: {len(units)} subsets satisfy (U)")
            rep.record("U", False, ("non-unique unit", tuple(sorted(units[1], key=atom_key))))
    else:
        rep.derived["U"] = None
        rep.record("U", False, ("no subset U satisfies the unit laws",))
    return rep


def check_groupoid_axioms(G):
    """Axioms A.1 to A.6 by enumeration.

    A.1  s e = t e = id;  A.2  mu defined exactly on composable pairs,
    s(gf) = s(f), t(gf) = t(g);  A.3  unit laws;  A.4  g inv(g) = e(t g);
    A.5  inv(g) g = e(s g);  A.6  associativity.
    """
    rep = Report()
    G0, G1 = G.G0, G.G1
    s, t, e, inv, mu = G.s, G.t, G.e, G.inv, G.mu
    # maps must be total with values in the right sets
    for name, mp, dom, cod in (("s", s, G1, G0), ("t", t, G1, G0), ("e", e, G0, G1), ("inv", inv, G1, G1)):
        bad = [x for x in dom.sorted() if x not in mp or mp[x] not in cod]
        extra = sorted((k for k in mp if k not in dom), key=atom_key)
        law = "A.1" if name in ("s", "t", "e") else "A.4"
        if bad or extra:
            rep.record(law, False, (f"{name} is not a total map", (bad + extra)[0]))
    if not rep.verdict:
        return rep

    w = [(x,) for x in G0.sorted() if s[e[x]] != x or t[e[x]] != x]
    rep.record("A.1", not w, *w)

    w = []
    for g in G1.sorted():
        for f in G1.sorted():
            comp = s[g] == t[f]
            if comp != ((g, f) in mu):
                w.append(("defined" if not comp else "undefined", g, f))
            elif comp:
                h = mu[(g, f)]
                if h not in G1:
                    w.append(("value outside G1", g, f))
                elif s[h] != s[f] or t[h] != t[g]:
                    w.append(("source/target", g, f))
    rep.record("A.2", not w, *w)
    if w:
        return rep

    w = []
    for g in G1.sorted():
        if mu[(g, e[s[g]])] != g:
            w.append(("right unit", g))
        if mu[(e[t[g]], g)] != g:
            w.append(("left unit", g))
    rep.record("A.3", not w, *w)

    w4, w5 = [], []
    for g in G1.sorted():
        i = inv[g]
        if s[g] != t[i] or mu.get((g, i)) != e[t[g]]:
            w4.append((g, i))
        if s[i] != t[g] or mu.get((i, g)) != e[s[g]]:
            w5.append((i, g))
    rep.record("A.4", not w4, *w4)
    rep.record("A.5", not w5, *w5)

    w = []
    srt = G1.sorted()
    for h in srt:
        for g in srt:
            if s[h] != t[g]:
                continue
            hg = mu[(h, g)]
            for f in srt:
                if s[g] != t[f]:
                    continue
                if mu[(hg, f)] != mu[(h, mu[(g, f)])]:
                    w.append((h, g, f))
    rep.record("A.6", not w, *w)
    return rep


# ---------------------------------------------------------------- constructions

def _unique(values, what, f):
    vals = sorted(values, key=atom_key)
    if len(vals) != 1:
        raise ValueError(f"{what} of {f!r} is not unique: {vals!r}")
    return vals[0]


def to_groupoid(c, check=True):
    """The groupoid of a Frobenius candidate, with ``G0 = U``.

    With ``check=False`` the construction is attempted without first
    validating the axioms (used to test completeness of the checker).
    """
    if check:
        rep = check_frobenius_axioms(c)
        if not rep.verdict:
            raise NotFrobenius(rep)
        U = rep.derived["U"]
    else:
        units = find_units(c)
        if not units:
            raise ValueError("no unit subset")
        U = units[0]
    fwd = c.m.forward()
    G0 = Carrier([x for x in c.X if x in U])
    s = {f: _unique([u for u in U if (f, u) in fwd], "source", f) for f in c.X}
    t = {f: _unique([u for u in U if (u, f) in fwd], "target", f) for f in c.X}
    e = {u: u for u in G0}
    inv = {}
    for f in c.X:
        cand = [g for g in c.X
                if fwd.get((g, f), frozenset()) & U and fwd.get((f, g), frozenset()) & U]
        inv[f] = _unique(cand, "inverse", f)
    mu = {}
    for g in c.X:
        for f in c.X:
            if s[g] == t[f]:
                mu[(g, f)] = _unique(fwd.get((g, f), ()), "product", (g, f))
    return Groupoid(G0, Carrier(c.X), s, t, e, inv, mu)


def from_groupoid(G, check=True):
    if check:
        rep = check_groupoid_axioms(G)
        if not rep.verdict:
            raise NotGroupoid(rep)
    X = G.G1
    return FrobCandidate(X, Rel(X * X, X, ((gf, h) for gf, h in G.mu.items())))


def relabel_units(G):
    """Rename each object x to its identity arrow e(x)."""
    e = G.e
    return Groupoid(
        Carrier([e[x] for x in G.G0]), G.G1,
        {g: e[x] for g, x in G.s.items()}, {g: e[x] for g, x in G.t.items()},
        {e[x]: e[x] for x in G.G0}, dict(G.inv), dict(G.mu))


def groupoid_equal(G, H, relabel=True):
    """On-the-nose equality of all components, optionally after unit relabeling."""
    if relabel:
        G, H = relabel_units(G), relabel_units(H)
    return (G.G0 == H.G0 and G.G1 == H.G1 and G.s == H.s and G.t == H.t
            and G.e == H.e and G.inv == H.inv and G.mu == H.mu)


# ---------------------------------------------------------------- morphisms

def _ext_sides(X, Y, r):
    """Both sides of axiom (R) as relations pt -/-> X x Y."""
    nr = fr.name(r)
    XY = X * Y
    XX, YY = X * X, Y * Y
    shuffle = fr.graph(XY * XY, XX * YY, lambda p: ((p[0][0], p[1][0]), (p[0][1], p[1][1])))
    lhs = fr.compose(fr.split_point(), fr.product(nr, nr))
    return lhs, shuffle, nr


def check_morphism(mor, mode="ext"):
    """Check a relation between two Frobenius algebras in one of the modes
    ``ext``, ``frob``, ``func``, ``mfunc``."""
    X, Y, r = mor.src.X, mor.dst.X, mor.r
    mX, mY = mor.src.m, mor.dst.m
    rep = Report()
    if mode == "ext":
        pre, shuffle, nr = _ext_sides(X, Y, r)
        lhs = fr.compose(fr.compose(pre, shuffle), fr.product(mX, mY))
        equation(rep, "R", "(m×m)∘σ∘(⌜r⌝×⌜r⌝) = ⌜r⌝", lhs, nr)
        return rep
    if mode in ("frob", "func"):
        equation(rep, "frob", "r∘m = m∘(r×r)", fr.compose(mX, r), fr.compose(fr.product(r, r), mY))
        equation(rep, "frob", "m†∘r = (r×r)∘m†", fr.compose(r, fr.dagger(mY)),
                 fr.compose(fr.dagger(mX), fr.product(r, r)))
        if mode == "func":
            rx = check_frobenius_axioms(mor.src)
            ry = check_frobenius_axioms(mor.dst)
            if not (rx.verdict and ry.verdict):
                raise NotFrobenius(rx if not rx.verdict else ry, "endpoint is not Frobenius")
            UX, UY = rx.derived["U"], ry.derived["U"]
            fwd = r.forward()
            w = []
            for u in sorted(UX, key=atom_key):
                vals = sorted(fwd.get(u, frozenset()) & UY, key=atom_key)
                if len(vals) != 1:
                    w.append((u, tuple(vals)))
            rep.record("func", not w, *w)
        return rep
    if mode == "mfunc":
        G = to_groupoid(mor.src)
        H = to_groupoid(mor.dst)
        fwd = r.forward()
        w = []
        for (g, f), h in sorted(G.mu.items(), key=atom_key):
            reach = {H.mu[(y, z)] for y in fwd.get(g, ()) for z in fwd.get(f, ()) if H.composable(y, z)}
            missing = sorted(fwd.get(h, frozenset()) - reach, key=atom_key)
            if missing:
                w.append(("composition", g, f, missing[0]))
        units = set(H.e.values())
        for x in G.G0.sorted():
            bad = sorted(fwd.get(G.e[x], frozenset()) - units, key=atom_key)
            if bad:
                w.append(("identity", G.e[x], bad[0]))
        rep.record("mfunc", not w, *w)
        return rep
    raise ValueError(f"unknown morphism mode {mode!r}")


def product_groupoid(G, H):
    G0, G1 = G.G0 * H.G0, G.G1 * H.G1
    s = {(a, b): (G.s[a], H.s[b]) for a, b in G1}
    t = {(a, b): (G.t[a], H.t[b]) for a, b in G1}
    e = {(x, y): (G.e[x], H.e[y]) for x, y in G0}
    inv = {(a, b): (G.inv[a], H.inv[b]) for a, b in G1}
    mu = {((g1, g2), (f1, f2)): (G.mu[(g1, f1)], H.mu[(g2, f2)])
          for (g1, f1) in G.mu for (g2, f2) in H.mu}
    return Groupoid(G0, G1, s, t, e, inv, mu)


def induced_subgroupoid(mor):
    """The groupoid carried by the pairs of an ext-morphism, multiplied componentwise."""
    rep = check_morphism(mor, "ext")
    if not rep.verdict:
        raise ValueError(f"relation does not satisfy (R): {rep.witnesses[0]}")
    R = Carrier(mor.r.sorted_pairs())
    fX, fY = mor.src.m.forward(), mor.dst.m.forward()
    triples = []
    for (a, b) in R:
        for (c, d) in R:
            for ac in fX.get((a, c), ()):
                for bd in fY.get((b, d), ()):
                    if (ac, bd) in R:
                        triples.append(((a, b), (c, d), (ac, bd)))
    cand = FrobCandidate(R, table_to_rel(R, triples))
    Gr = to_groupoid(cand)
    GX, GY = to_groupoid(mor.src), to_groupoid(mor.dst)
    P = product_groupoid(GX, GY)
    units = {P.e[x] for x in P.G0}
    ok = (all(u in units for u in Gr.G0)
          and all(Gr.s[g] == P.e[P.s[g]] and Gr.t[g] == P.e[P.t[g]] and Gr.inv[g] == P.inv[g] for g in Gr.G1)
          and all(P.mu[k] == v for k, v in Gr.mu.items()))
    if not ok:
        raise AssertionError("induced groupoid does not embed into the product groupoid")
    return Gr


# ---------------------------------------------------------------- example groupoids

def pair_groupoid(objects):
    """Pair groupoid: arrows (a, b) : b -> a, (a, b)(b, c) = (a, c)."""
    G0 = Carrier(objects)
    G1 = Carrier([(a, b) for a in G0 for b in G0])
    s = {(a, b): b for a, b in G1}
    t = {(a, b): a for a, b in G1}
    e = {x: (x, x) for x in G0}
    inv = {(a, b): (b, a) for a, b in G1}
    mu = {((a, b), (b2, c)): (a, c) for a, b in G1 for b2, c in G1 if b == b2}
    return Groupoid(G0, G1, s, t, e, inv, mu)


def group_groupoid(elements, mul, unit, obj="*"):
    """One-object groupoid from a finite group given by its multiplication."""
    G1 = Carrier(elements)
    inv = {}
    for g in G1:
        inv[g] = next(h for h in G1 if mul(g, h) == unit)
    return Groupoid(Carrier([obj]), G1, {g: obj for g in G1}, {g: obj for g in G1},
                    {obj: unit}, inv, {(g, f): mul(g, f) for g in G1 for f in G1})


def cyclic_group(n, obj="*"):
    return group_groupoid(range(n), lambda a, b: (a + b) % n, 0, obj)


def klein_group(obj="*"):
    els = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return group_groupoid(els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0), obj)


def empty_groupoid():
    return Groupoid(Carrier(), Carrier(), {}, {}, {}, {}, {})


def disjoint_union(*Gs):
    """Disjoint union; atoms are tagged ``(i, x)`` by component index."""
    G0, G1, s, t, e, inv, mu = [], [], {}, {}, {}, {}, {}
    for i, G in enumerate(Gs):
        G0 += [(i, x) for x in G.G0]
        G1 += [(i, g) for g in G.G1]
        s.update({(i, g): (i, x) for g, x in G.s.items()})
        t.update({(i, g): (i, x) for g, x in G.t.items()})
        e.update({(i, x): (i, g) for x, g in G.e.items()})
        inv.update({(i, g): (i, h) for g, h in G.inv.items()})
        mu.update({((i, g), (i, f)): (i, h) for (g, f), h in G.mu.items()})
    return Groupoid(Carrier(G0), Carrier(G1), s, t, e, inv, mu)


def small_groupoids():
    """One representative of each groupoid with at most four arrows, by name."""
    triv = lambda: cyclic_group(1)
    return {
        "empty": empty_groupoid(),
        "1": triv(),
        "Z2": cyclic_group(2),
        "1+1": disjoint_union(triv(), triv()),
        "Z3": cyclic_group(3),
        "Z2+1": disjoint_union(cyclic_group(2), triv()),
        "1+1+1": disjoint_union(triv(), triv(), triv()),
        "Z4": cyclic_group(4),
        "Z2xZ2": klein_group(),
        "pair2": pair_groupoid(["a", "b"]),
        "Z3+1": disjoint_union(cyclic_group(3), triv()),
        "Z2+Z2": disjoint_union(cyclic_group(2), cyclic_group(2)),
        "Z2+1+1": disjoint_union(cyclic_group(2), triv(), triv()),
        "1+1+1+1": disjoint_union(triv(), triv(), triv(), triv()),
    }
