"""Relative H*-algebras in Rel and locally cancellative regular semigroupoids.

Products may be partial or multi-valued; ``prod(c, h, g)`` is the set of
values ``hg``, empty when undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import finrel as fr
from .finrel import Carrier, Rel, Report, atom_key, equation
from .frobenius import _ext_sides

__all__ = [
    "HStarCandidate", "Semigroupoid", "NotHStar", "star_set", "star_elementwise",
    "check_hstar_axioms", "to_semigroupoid", "from_semigroupoid",
    "check_semigroupoid_properties", "adjunction_check", "pseudoinverses",
    "rectangular_band", "rectangular_band_semigroupoid", "null_semigroup", "from_groupoid",
]


class NotHStar(ValueError):
    def __init__(self, report, msg="candidate fails the H* axioms"):
        super().__init__(f"{msg}: {', '.join(report.failed())}")
        self.report = report


@dataclass(frozen=True)
class HStarCandidate:
    X: Carrier
    m: Rel

    def __post_init__(self):
        if self.m.src != self.X * self.X or self.m.dst != self.X:
            raise fr.CarrierMismatch("m must be a relation X x X -/-> X")


@dataclass(frozen=True)
class Semigroupoid:
    G0: Carrier
    G1: Carrier
    s: dict
    t: dict
    mu: dict

    def __repr__(self):
        return f"Semigroupoid(|G0|={len(self.G0)}, |G1|={len(self.G1)})"


def prod(c, h, g):
    return c.m((h, g))


def _triple(c, a, b, d):
    """All values of abd under either bracketing."""
    fwd = c.m.forward()
    out = set()
    for x in fwd.get((a, b), ()):
        out |= fwd.get((x, d), frozenset())
    for y in fwd.get((b, d), ()):
        out |= fwd.get((a, y), frozenset())
    return out


def _is_pseudoinverse(c, a, b):
    return _triple(c, b, a, b) == {b} and _triple(c, a, b, a) == {a}


def star_set(c, A):
    """``{b : b a b = b and a b a = a for every a in A}``; ``A = {}`` gives ``X``."""
    A = list(A)
    return frozenset(b for b in c.X if all(_is_pseudoinverse(c, a, b) for a in A))


def star_elementwise(c, A):
    """Union of ``star_set({a})`` over ``a in A``: the involution used for (H)."""
    out = set()
    for a in A:
        out |= star_set(c, [a])
    return frozenset(out)


def pseudoinverses(c, a):
    return sorted(star_set(c, [a]), key=atom_key)


def _ma_checks(rep, X, m):
    one = fr.identity(X)
    equation(rep, "M", "m∘m† = 1", fr.compose(fr.dagger(m), m), one)
    a = fr.assoc(X, X, X)
    equation(rep, "A", "m∘(1×m)∘α = m∘(m×1)", fr.compose(fr.compose(a, fr.product(one, m)), m),
             fr.compose(fr.product(m, one), m))


def h_sides(c, A, Astar):
    """The two (H) equations for the subset A with star A*, as relations X -/-> X."""
    X, m = c.X, c.m
    one = fr.identity(X)
    md = fr.dagger(m)
    x = fr.subset_rel(X, A)
    xs = fr.subset_rel(X, Astar)
    rho = fr.dagger(fr.right_unitor_inv(X))
    lam = fr.dagger(fr.left_unitor_inv(X))
    r1 = fr.compose(fr.compose(fr.right_unitor_inv(X), fr.product(one, xs)), m)
    r2 = fr.compose(fr.compose(md, fr.product(one, fr.dagger(x))), rho)
    l1 = fr.compose(fr.compose(fr.left_unitor_inv(X), fr.product(xs, one)), m)
    l2 = fr.compose(fr.compose(md, fr.product(fr.dagger(x), one)), lam)
    return (r1, r2), (l1, l2)


def _fmt(A):
    return "{" + ",".join(repr(a).replace(", ", ",") for a in sorted(A, key=atom_key)) + "}"


def check_hstar_axioms(c):
    """Check (M), (A) and (H) over every subset ``A`` of ``X``.

    (H) uses ``A* = star_elementwise(A)``.  Observations about the literal
    ``star_set`` go to ``report.notes`` / ``report.derived`` only.
    """
    rep = Report()
    X = c.X
    _ma_checks(rep, X, c.m)
    n = len(X)
    fr.ensure_budget(2 ** n, "(H) subset enumeration")
    elems = X.sorted()
    contains_dd = True
    literal_ok = True
    hok = True
    for k in range(n + 1):
        for A in combinations(elems, k):
            As = star_elementwise(c, A)
            (r1, r2), (l1, l2) = h_sides(c, A, As)
            hok &= equation(rep, "H", f"m∘(1×A*) = ρ∘(1×A†)∘m† at A={_fmt(A)}", r1, r2)
            hok &= equation(rep, "H", f"m∘(A*×1) = λ∘(A†×1)∘m† at A={_fmt(A)}", l1, l2)
            if not set(A) <= star_elementwise(c, As):
                contains_dd = False
            L = star_set(c, A)
            (q1, q2), (p1, p2) = h_sides(c, A, L)
            if q1 != q2 or p1 != p2:
                literal_ok = False
    rep.derived["A_subset_A**"] = contains_dd
    rep.derived["literal_star_set_satisfies_H"] = literal_ok
    if not contains_dd:
        rep.notes.append("the star is not inflationary (A not contained in A**) on some subset")
    return rep


# ---------------------------------------------------------------- semigroupoids

def _sg_pseudo(S, a, b):
    mu = S.mu
    ab = mu.get((a, b))
    ba = mu.get((b, a))
    if ab is None or ba is None:
        return False
    return mu.get((ab, a)) == a and mu.get((ba, b)) == b


def check_semigroupoid_properties(S):
    """Keys: ``well_formed``, ``associative``, ``regular``, ``locally_cancellative``."""
    rep = Report()
    G1 = S.G1.sorted()
    s, t, mu = S.s, S.t, S.mu
    w = [(f,) for f in G1 if s.get(f) not in S.G0 or t.get(f) not in S.G0]
    if w:
        rep.record("well_formed", False, *w)
        return rep
    for g in G1:
        for f in G1:
            comp = s[g] == t[f]
            if comp != ((g, f) in mu):
                w.append(("defined" if not comp else "undefined", g, f))
            elif comp:
                h = mu[(g, f)]
                if h not in S.G1 or s[h] != s[f] or t[h] != t[g]:
                    w.append(("source/target", g, f))
    rep.record("well_formed", not w, *w)
    if w:
        return rep
    w = []
    for h in G1:
        for g in G1:
            if s[h] != t[g]:
                continue
            for f in G1:
                if s[g] == t[f] and mu[(mu[(h, g)], f)] != mu[(h, mu[(g, f)])]:
                    w.append((h, g, f))
    rep.record("associative", not w, *w)
    pinv = {a: [b for b in G1 if _sg_pseudo(S, a, b)] for a in G1}
    w = [(a,) for a in G1 if not pinv[a]]
    rep.record("regular", not w, *w)
    w = []
    for f in G1:
        for h in G1:
            if (f, h) not in mu:
                continue
            fh = mu[(f, h)]
            for hs in pinv[h]:
                fhh = mu.get((fh, hs))
                if fhh is None:
                    continue
                for g in G1:
                    if mu.get((g, hs)) == fhh and fh != g:
                        w.append((f, g, h, hs))
    rep.record("locally_cancellative", not w, *w)
    return rep


def to_semigroupoid(c, check=True):
    if check:
        rep = check_hstar_axioms(c)
        if not rep.verdict:
            raise NotHStar(rep)
    X = c.X
    fwd = c.m.forward()
    G0 = Carrier([f for f in X if fwd.get((f, f)) == frozenset([f])])
    s, t = {}, {}
    for f in X:
        ps = pseudoinverses(c, f)
        svals = {}
        tvals = {}
        for p in ps:
            for v in fwd.get((p, f), ()):
                svals.setdefault(v, p)
            for v in fwd.get((f, p), ()):
                tvals.setdefault(v, p)
        for name, vals, out in (("s", svals, s), ("t", tvals, t)):
            keys = sorted(vals, key=atom_key)
            if len(keys) != 1:
                if not keys:
                    raise ValueError(f"{name}({f!r}) undefined: no pseudoinverse")
                raise ValueError(
                    f"{name}({f!r}) is ill-defined: pseudoinverses {vals[keys[0]]!r} and "
                    f"{vals[keys[1]]!r} give {keys[0]!r} and {keys[1]!r}")
            if keys[0] not in G0:
                raise ValueError(f"{name}({f!r}) = {keys[0]!r} is not idempotent")
            out[f] = keys[0]
    mu = {}
    for g in X:
        for f in X:
            if s[g] == t[f]:
                vals = sorted(fwd.get((g, f), ()), key=atom_key)
                if len(vals) != 1:
                    raise ValueError(f"product of composable pair {(g, f)!r} is {vals!r}")
                mu[(g, f)] = vals[0]
    return Semigroupoid(G0, Carrier(X), s, t, mu)


def from_semigroupoid(S, check=True):
    if check:
        rep = check_semigroupoid_properties(S)
        if not rep.verdict:
            raise ValueError(f"semigroupoid is not locally cancellative regular: {', '.join(rep.failed())}")
    X = S.G1
    return HStarCandidate(X, Rel(X * X, X, (((g, f), h) for (g, f), h in S.mu.items())))


def from_groupoid(G):
    """A groupoid viewed as a semigroupoid."""
    return Semigroupoid(G.G0, G.G1, dict(G.s), dict(G.t), dict(G.mu))


def _ext_ok(mX, mY, X, Y, r):
    pre, shuffle, nr = _ext_sides(X, Y, r)
    return fr.compose(fr.compose(pre, shuffle), fr.product(mX, mY)) == nr


def _diagonal_subsemigroupoid(S, T):
    """``{(g, g)}`` inside ``S x T`` (same arrows), or None if not closed."""
    G1 = [(g, g) for g in S.G1]
    s = {(g, g): (S.s[g], T.s[g]) for g in S.G1}
    t = {(g, g): (S.t[g], T.t[g]) for g in S.G1}
    mu = {}
    for (g, _) in G1:
        for (f, _) in G1:
            if S.s[g] == S.t[f] and T.s[g] == T.t[f]:
                a, b = S.mu[(g, f)], T.mu[(g, f)]
                if a != b:
                    return None
                mu[((g, g), (f, f))] = (a, a)
    G0 = Carrier(sorted(set(s.values()) | set(t.values()), key=atom_key))
    return Semigroupoid(G0, Carrier(G1), s, t, mu)


def adjunction_check(c):
    """Instance-level check of the adjunction between H*-algebras and
    locally cancellative regular semigroupoids."""
    base = check_hstar_axioms(c)
    if not base.verdict:
        raise NotHStar(base)
    rep = Report()
    X, m = c.X, c.m
    fwd = m.forward()
    ps = {a: pseudoinverses(c, a) for a in X}

    def idem(p, a):
        return fwd.get((p, a), frozenset())

    unit_pairs = set()
    for g in X:
        for f in X:
            ok = any(idem(gs, g) and idem(gs, g) == fwd.get((f, fs))
                     for gs in ps[g] for fs in ps[f])
            if ok:
                unit_pairs |= {((g, f), h) for h in fwd.get((g, f), ())}
    unit = Rel(X * X, X, unit_pairs, check=False)
    rep.derived["unit"] = unit
    extra = sorted(unit.pairs - m.pairs, key=atom_key)
    rep.record("unit_subrelation", not extra, *[(p,) for p in extra[:1]])

    S = to_semigroupoid(c, check=False)
    c2 = from_semigroupoid(S)
    equation(rep, "unit_matches", "from(to(m)) = unit", c2.m, unit)
    one = fr.identity(X)
    rep.record("unit_morphism", _ext_ok(c2.m, m, X, X, one), ("identity fails (R)",))

    S2 = to_semigroupoid(from_semigroupoid(S), check=False)
    D = _diagonal_subsemigroupoid(S, S2)
    if D is None:
        rep.record("counit_morphism", False, ("diagonal not closed",))
    else:
        dr = check_semigroupoid_properties(D)
        rep.record("counit_morphism", dr.verdict, *[(law,) + tuple(w) for law, w in dr.witnesses[:1]])
    # triangle composites: every component is an identity relation on X
    tri1 = fr.compose(one, one)  # to(eps) o eta_to
    tri2 = fr.compose(one, one)  # eps_from o from(eta)
    rep.record("triangle_left", tri1 == one and S2.G1 == S.G1 and S2.s == S.s and S2.t == S.t
               and S2.mu == S.mu, ("to-side composite is not the identity",))
    c3 = from_semigroupoid(to_semigroupoid(c2, check=False))
    rep.record("triangle_right", tri2 == one and c3.m == c2.m, ("from-side composite is not the identity",))
    return rep


# ---------------------------------------------------------------- examples

def rectangular_band(n=2):
    """``(i, j)(k, l) = (i, l)`` on ``{1..n}^2`` as an H* candidate."""
    X = Carrier([(i, j) for i in range(1, n + 1) for j in range(1, n + 1)])
    return HStarCandidate(X, Rel(X * X, X, (((a, b), (a[0], b[1])) for a in X for b in X)))


def rectangular_band_semigroupoid(n=2):
    c = rectangular_band(n)
    return Semigroupoid(Carrier(["*"]), c.X, {x: "*" for x in c.X}, {x: "*" for x in c.X},
                        {k: next(iter(v)) for k, v in c.m.forward().items()})


def null_semigroup():
    """``xy = 0`` on ``{0, a}``, one object."""
    X = Carrier([0, "a"])
    return Semigroupoid(Carrier(["*"]), X, {x: "*" for x in X}, {x: "*" for x in X},
                        {(x, y): 0 for x in X for y in X})
