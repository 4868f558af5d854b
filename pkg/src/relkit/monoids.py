"""Weak monoids, weak *-monoids and cyclic weak *-monoids in Rel."""

from __future__ import annotations

from dataclasses import dataclass

from . import finrel as fr
from .finrel import Carrier, Rel, Report, POINT, STAR, atom_key, equation

__all__ = [
    "WeakMonoidCandidate", "StarMonoidCandidate", "CyclicCandidate",
    "check_weak_monoid", "check_weak_star_monoid", "check_cyclic_weak_star_monoid",
    "unitors", "psi_R", "cyclic_triples", "shift", "ternary",
    "monoid_example", "commutative_p_example",
]


@dataclass(frozen=True)
class WeakMonoidCandidate:
    X: Carrier
    L1: Rel  # pt -/-> X
    L3: Rel  # X x X -/-> X

    def __post_init__(self):
        if self.L1.src != POINT or self.L1.dst != self.X:
            raise fr.CarrierMismatch("L1 must be a relation pt -/-> X")
        if self.L3.src != self.X * self.X or self.L3.dst != self.X:
            raise fr.CarrierMismatch("L3 must be a relation X x X -/-> X")


@dataclass(frozen=True)
class StarMonoidCandidate:
    X: Carrier
    L3: Rel
    psi: dict


@dataclass(frozen=True)
class CyclicCandidate:
    X: Carrier
    psi: dict
    L: Rel  # X x X -/-> X


def ternary(X, triples):
    """Relation X x X -/-> X from triples (a, b, c) meaning ((a, b), c)."""
    return Rel(X * X, X, (((a, b), c) for a, b, c in triples))


def unitors(X, L1, L3):
    """``(L3 o (L1 x Id) o lam^-1, L3 o (Id x L1) o rho^-1)`` as relations X -/-> X."""
    one = fr.identity(X)
    left = fr.compose(fr.compose(fr.left_unitor_inv(X), fr.product(L1, one)), L3)
    right = fr.compose(fr.compose(fr.right_unitor_inv(X), fr.product(one, L1)), L3)
    return left, right


def check_weak_monoid(c):
    """Keys ``associativity``, ``unitors``, ``idempotence``; ``derived['L2']``."""
    rep = Report()
    X, L1, L3 = c.X, c.L1, c.L3
    one = fr.identity(X)
    a = fr.assoc(X, X, X)
    equation(rep, "associativity", "L3∘(L3×Id) = L3∘(Id×L3)∘α", fr.compose(fr.product(L3, one), L3),
             fr.compose(fr.compose(a, fr.product(one, L3)), L3))
    left, right = unitors(X, L1, L3)
    equation(rep, "unitors", "L3∘(L1×Id) = L3∘(Id×L1)", left, right)
    L2 = left
    rep.derived["L2"] = L2
    equation(rep, "idempotence", "L2∘L2 = L2", fr.compose(L2, L2), L2)
    return rep


def _check_psi(rep, X, psi):
    w = [(x,) for x in X.sorted() if x not in psi or psi[x] not in X]
    if w:
        rep.record("involutivity", False, ("psi is not a total map on X", w[0][0]))
        return None
    g = fr.graph(X, X, psi)
    gd = fr.dagger(g)
    equation(rep, "involutivity", "ψ†∘ψ = 1", fr.compose(g, gd), fr.identity(X))
    equation(rep, "involutivity", "ψ† = ψ", gd, g)
    return g


def psi_R(X, psi):
    """``pt -/-> X x X``, ``{(*, (x, psi(x)))}``."""
    return Rel(POINT, X * X, ((STAR, (x, psi[x])) for x in X))


def check_weak_star_monoid(c):
    """Involutivity of psi, then (X, L3 o psi_R, L3) must be a weak monoid."""
    rep = Report()
    g = _check_psi(rep, c.X, c.psi)
    if g is None:
        return rep
    L1 = fr.compose(psi_R(c.X, c.psi), c.L3)
    rep.derived["L1"] = L1
    inner = check_weak_monoid(WeakMonoidCandidate(c.X, L1, c.L3))
    rep.merge(inner)
    return rep


def cyclic_triples(c, twist_pairing=False):
    """``L_R`` as a frozenset of triples.

    By default ``(a, b, c)`` is in ``L_R`` iff ``((a, b), c)`` is in ``L``;
    ``twist_pairing`` inserts psi on the last slot.
    """
    if twist_pairing:
        return frozenset((a, b, z) for (a, b), y in c.L.pairs for z in c.X if c.psi[z] == y)
    return frozenset((a, b, y) for (a, b), y in c.L.pairs)


def shift(triples):
    """``sigma(a, b, c) = (c, a, b)``."""
    return frozenset((z, x, y) for x, y, z in triples)


def check_cyclic_weak_star_monoid(c, twist_pairing=False):
    rep = Report()
    LR = cyclic_triples(c, twist_pairing)
    s1 = shift(LR)
    diff = sorted(LR ^ s1, key=atom_key)
    rep.record("cyclicity", not diff, *[(d, "in L_R" if d in LR else "in sigma L_R") for d in diff[:1]])
    rep.derived["L_R"] = LR
    w = [(x,) for x in c.X.sorted() if x not in c.psi or c.psi[x] not in c.X]
    if w:
        rep.record("involutivity", False, ("psi is not a total map on X", w[0][0]))
        return rep
    L3 = fr.compose(c.L, fr.dagger(fr.graph(c.X, c.X, c.psi)))
    rep.derived["L3"] = L3
    rep.merge(check_weak_star_monoid(StarMonoidCandidate(c.X, L3, c.psi)))
    return rep


# ---------------------------------------------------------------- examples

def monoid_example(elements, mul, unit):
    X = Carrier(elements)
    return WeakMonoidCandidate(X, fr.subset_rel(X, [unit]),
                               ternary(X, ((a, b, mul(a, b)) for a in X for b in X)))


def commutative_p_example(elements, mul, unit, p, reading="pair"):
    """A commutative monoid with ``p p = 1``.

    ``reading="singleton"`` takes ``L1 = {p}``; ``reading="pair"`` takes ``L1 = {1, p}``.
    """
    X = Carrier(elements)
    if mul(p, p) != unit:
        raise ValueError("p must square to the unit")
    L1 = {"singleton": [p], "pair": sorted({unit, p}, key=atom_key)}[reading]
    return WeakMonoidCandidate(X, fr.subset_rel(X, L1),
                               ternary(X, ((a, b, mul(a, b)) for a in X for b in X)))
