import itertools

import pytest
from hypothesis import given, settings, strategies as st

from relkit import finrel as fr
from relkit import frobenius as fb
from relkit.finrel import Carrier, Rel
from relkit.frobenius import FrobCandidate, FrobMorphism

SMALL = fb.small_groupoids()


def frob(G):
    return fb.from_groupoid(G)


def all_relations(X):
    XX = X * X
    cells = [(k, x) for k in XX for x in X]
    for bits in itertools.product((0, 1), repeat=len(cells)):
        yield Rel(XX, X, [c for c, b in zip(cells, bits) if b], check=False)


def groupoid_ok(c):
    try:
        return fb.check_groupoid_axioms(fb.to_groupoid(c, check=False)).verdict
    except ValueError:
        return False


def test_z2_table():
    rep = fb.check_frobenius_axioms(frob(fb.cyclic_group(2)))
    assert rep.verdict
    assert rep.derived["U"] == frozenset({0})
    G = fb.to_groupoid(frob(fb.cyclic_group(2)))
    assert len(G.G0) == 1 and len(G.G1) == 2


def test_total_relation_fails_M():
    X = Carrier([0, 1])
    m = Rel(X * X, X, [(k, x) for k in X * X for x in X])
    rep = fb.check_frobenius_axioms(FrobCandidate(X, m))
    assert not rep.checks["M"]
    assert any(law == "M" for law, _ in rep.witnesses)


def test_pair_groupoid():
    P = fb.pair_groupoid(["a", "b"])
    c = frob(P)
    assert len(c.m.pairs) == 8
    assert fb.check_frobenius_axioms(c).verdict
    G = fb.to_groupoid(c)
    assert G.G0 == Carrier([("a", "a"), ("b", "b")])
    assert G.s[("a", "b")] == ("b", "b")
    assert G.t[("a", "b")] == ("a", "a")


def test_z3_cayley_graph():
    c = frob(fb.cyclic_group(3))
    assert c.m.pairs == {((a, b), (a + b) % 3) for a in range(3) for b in range(3)}


def test_inverse_redefined_fails():
    P = fb.pair_groupoid(["a", "b"])
    bad = fb.Groupoid(P.G0, P.G1, P.s, P.t, P.e, {g: g for g in P.G1}, P.mu)
    rep = fb.check_groupoid_axioms(bad)
    assert not rep.checks["A.4"] and not rep.checks["A.5"]
    with pytest.raises(fb.NotGroupoid):
        fb.from_groupoid(bad)


@pytest.mark.parametrize("name", list(SMALL))
def test_small_groupoids_round_trip(name):
    G = SMALL[name]
    assert fb.check_groupoid_axioms(G).verdict
    c = frob(G)
    assert fb.check_frobenius_axioms(c).verdict
    H = fb.to_groupoid(c)
    assert fb.groupoid_equal(H, G)
    assert frob(H).m == c.m


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 3)])
def test_exhaustive_small_carriers(n, count):
    """Every relation on |X| <= 2; the count of Frobenius ones equals the
    number of groupoid structures on n labelled arrows."""
    X = Carrier(range(n))
    found = 0
    for m in all_relations(X):
        c = FrobCandidate(X, m)
        ok = fb.check_frobenius_axioms(c).verdict
        assert ok == groupoid_ok(c)
        if ok:
            found += 1
            assert frob(fb.to_groupoid(c)).m == m
    assert found == count


def test_non_unique_units_are_flagged():
    # the empty relation on the empty carrier has the unique unit {}
    X = Carrier()
    assert fb.check_frobenius_axioms(FrobCandidate(X, Rel(X * X, X))).derived["U"] == frozenset()


def _mor(G, H, pairs):
    return FrobMorphism(frob(G), frob(H), Rel(G.G1, H.G1, pairs))


def test_morphism_examples():
    Z4, Z2 = fb.cyclic_group(4), fb.cyclic_group(2)
    diag = _mor(Z4, Z4, [(g, g) for g in Z4.G1])
    assert fb.check_morphism(diag, "ext").verdict
    empty = _mor(Z4, Z2, [])
    assert fb.check_morphism(empty, "ext").verdict
    surj = _mor(Z4, Z2, [(g, g % 2) for g in Z4.G1])
    for mode in ("ext", "frob", "func", "mfunc"):
        assert fb.check_morphism(surj, mode).verdict, mode


def test_non_homomorphism_fails_frob():
    Z3 = fb.cyclic_group(3)
    r = _mor(Z3, Z3, [(0, 0), (1, 1), (2, 1)])
    assert not fb.check_morphism(r, "frob").verdict


def test_induced_subgroupoids():
    Z4, Z2 = fb.cyclic_group(4), fb.cyclic_group(2)
    diag = fb.induced_subgroupoid(_mor(Z4, Z4, [(g, g) for g in Z4.G1]))
    assert set(diag.G1) == {(g, g) for g in Z4.G1}
    graph = fb.induced_subgroupoid(_mor(Z4, Z2, [(g, g % 2) for g in Z4.G1]))
    assert set(graph.G1) == {(g, g % 2) for g in Z4.G1}
    assert len(fb.induced_subgroupoid(_mor(Z4, Z2, [])).G1) == 0


def _subrels(A, B, rng, k):
    pairs = [(a, b) for a in A for b in B]
    return [Rel(A, B, [p for p in pairs if rng.random() < 0.4]) for _ in range(k)]


def test_mode_inclusions_and_ext_closure(rng):
    """func => frob => ext on sampled relations, and ext morphisms compose."""
    gs = [SMALL[k] for k in ("1", "Z2", "1+1", "Z3", "Z2+1")]
    for G, H, K in itertools.product(gs, repeat=3):
        for r in _subrels(G.G1, H.G1, rng, 3):
            m = FrobMorphism(frob(G), frob(H), r)
            func = fb.check_morphism(m, "func").verdict
            frb = fb.check_morphism(m, "frob").verdict
            ext = fb.check_morphism(m, "ext").verdict
            assert not func or frb
            assert not frb or ext
            if not ext:
                continue
            for s in _subrels(H.G1, K.G1, rng, 2):
                n = FrobMorphism(frob(H), frob(K), s)
                if fb.check_morphism(n, "ext").verdict:
                    comp = FrobMorphism(frob(G), frob(K), fr.compose(r, s))
                    assert fb.check_morphism(comp, "ext").verdict


def test_unknown_mode():
    Z2 = fb.cyclic_group(2)
    with pytest.raises(ValueError):
        fb.check_morphism(_mor(Z2, Z2, []), "bogus")


@settings(max_examples=25)
@given(st.permutations([0, 1, 2, 3]))
def test_relabeling_preserves_verdict(perm):
    G = fb.cyclic_group(4)
    c = frob(G)
    f = dict(zip(range(4), perm))
    X = Carrier(f[x] for x in c.X)
    m = Rel(X * X, X, (((f[a], f[b]), f[h]) for (a, b), h in c.m.pairs))
    rep = fb.check_frobenius_axioms(FrobCandidate(X, m))
    assert rep.verdict and rep.derived["U"] == frozenset({f[0]})
