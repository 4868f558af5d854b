import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from relkit import linalg as la
from relkit import symplin as sp


def e(n, *idx):
    """Unit vectors e_i (1-based) in Q^n."""
    return [tuple(mpq(1) if j + 1 == i else mpq(0) for j in range(n)) for i in idx]


V2, V4 = sp.standard(1), sp.standard(2)


def brute_orthogonal_ok(W, P):
    V = W.ambient
    return (all(V.form(p, w) == 0 for p in P.basis for w in W.basis)
            and P.dim == V.dim - W.dim)


# ------------------------------------------------------------ orthogonals

def test_orthogonal_examples():
    assert sp.orthogonal(sp.whole(V4)).dim == 0
    L = sp.span(V2, e(2, 1))
    assert sp.orthogonal(L) == L
    assert sp.classify_subspace(L)["lagrangian"]
    assert sp.classify_subspace(sp.zero(V4))["isotropic"]


def test_diagonal_is_lagrangian():
    amb = sp.direct_sum(V4.conj(), V4)
    diag = sp.span(amb, [v + v for v in e(4, 1, 2, 3, 4)])
    flags = sp.classify_subspace(diag)
    assert flags["lagrangian"] and flags["isotropic"] and flags["coisotropic"]
    assert sp.identity(V4).space == diag


@settings(max_examples=40)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_orthogonal_identities(n, rnd):
    V = sp.standard(n)
    W = sp.random_subspace(rnd, V)
    Z = sp.random_subspace(rnd, V)
    perp = sp.orthogonal
    assert brute_orthogonal_ok(W, perp(W))
    assert perp(sp.add(W, Z)) == sp.intersect(perp(W), perp(Z))
    assert sp.add(perp(W), perp(Z)) <= perp(sp.intersect(W, Z))
    assert W <= perp(perp(W)) and perp(perp(W)) == W
    assert perp(W) == perp(perp(perp(W)))
    if W <= Z:
        assert perp(Z) <= perp(W)
    WZ = sp.intersect(W, Z)
    assert perp(W) <= perp(WZ)


@settings(max_examples=30)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_classification_consistency(n, rnd):
    W = sp.random_subspace(rnd, sp.standard(n))
    f = sp.classify_subspace(W)
    assert f["lagrangian"] == (f["isotropic"] and f["coisotropic"])
    assert f["lagrangian"] == sp.is_lagrangian(W)
    assert f["symplectic"] == (sp.intersect(W, sp.orthogonal(W)).dim == 0)


# ------------------------------------------------------------ reduction

def test_reduce_examples():
    L = sp.span(V4, e(4, 1, 2))
    assert sp.reduce(L).space.dim == 0
    C = sp.span(V4, e(4, 1, 3, 4))
    R = sp.reduce(C)
    assert R.space.dim == 2 and R.kernel == sp.span(V4, e(4, 4))
    R = sp.reduce(sp.whole(V4))
    assert R.space.dim == 4 and R.kernel.dim == 0


def test_project_lagrangian_example():
    L = sp.span(V4, e(4, 1, 2))
    W = sp.span(V4, e(4, 1, 3, 4))
    LW = sp.project_lagrangian(L, W)
    assert LW.dim == 1 and LW.n == 2 and sp.is_lagrangian(LW)
    assert sp.project_lagrangian(L, L).dim == 0
    with pytest.raises(sp.NotCoisotropic):
        sp.project_lagrangian(L, sp.span(V4, e(4, 1)))
    with pytest.raises(ValueError):
        sp.project_lagrangian(sp.span(V4, e(4, 1)), W)


@settings(max_examples=25)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_random_projection_and_sandwich(n, rnd):
    V = sp.standard(n)
    C = sp.random_coisotropic(rnd, V)
    assert sp.classify_subspace(C)["coisotropic"]
    L = sp.random_lagrangian(rnd, V)
    assert sp.is_lagrangian(sp.project_lagrangian(L, C))
    # coisotropic sandwich: lift a Lagrangian of the quotient
    R = sp.reduce(C)
    Lq = sp.random_lagrangian(rnd, R.space)
    lifted = sp.add(sp.span(V, [R.lift(v) for v in Lq.basis]), R.kernel)
    assert sp.orthogonal(C) <= lifted <= C
    assert sp.is_lagrangian(lifted)


def test_darboux_reduction():
    C = sp.span(V4, e(4, 1, 3, 4))
    R = sp.reduce(C, darboux=True)
    assert R.space == sp.standard(1)


# ------------------------------------------------------------ canonical relations

def test_identity_law_and_graph_composition(rng):
    for n in (1, 2):
        V = sp.standard(n)
        L = sp.LinRelation(V, V, sp.random_lagrangian(rng, sp.direct_sum(V.conj(), V)))
        assert sp.compose_linrel(L, sp.identity(V)) == L
        assert sp.compose_linrel(sp.identity(V), L) == L
        A = sp.random_symplectic_matrix(rng, n)
        B = sp.random_symplectic_matrix(rng, n)
        assert sp.is_symplectic_matrix(A, V) and sp.is_symplectic_matrix(B, V)
        gA, gB = sp.graph(V, V, A), sp.graph(V, V, B)
        assert gA.is_lagrangian()
        assert sp.compose_linrel(gA, gB) == sp.graph(V, V, la.matmul(B, A))


def test_middle_mismatch():
    with pytest.raises(ValueError):
        sp.compose_linrel(sp.identity(V2), sp.identity(V4))


@settings(max_examples=30)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.randoms(use_true_random=False))
def test_composition_of_lagrangians(ns, rnd):
    U, V, W = (sp.standard(k) for k in ns)
    L1 = sp.LinRelation(U, V, sp.random_lagrangian(rnd, sp.direct_sum(U.conj(), V)))
    L2 = sp.LinRelation(V, W, sp.random_lagrangian(rnd, sp.direct_sum(V.conj(), W)))
    out = sp.compose_linrel(L1, L2)
    assert out.is_lagrangian()
    assert sp.dagger(sp.dagger(out)) == out
    assert sp.dagger(out) == sp.compose_linrel(sp.dagger(L2), sp.dagger(L1))


def _coiso():
    # C = span{q1, p1, p2} in Q^4; C-perp = span{p2}
    return sp.span(V4, e(4, 1, 3, 4))


def test_reduction_relations():
    C = _coiso()
    I, P, R = sp.reduction_relations(C)
    assert I.is_lagrangian() and P.is_lagrangian()
    assert sp.compose_linrel(I, P) == sp.identity(R.space)
    IP = sp.compose_linrel(P, I)
    # I o P relates exactly the pairs of C with the same class
    assert IP.space == sp.span(IP.space.ambient,
                               [v + v for v in C.basis] + [(0,) * 4 + k for k in R.kernel.basis])
    I, P, R = sp.reduction_relations(sp.whole(V4))
    assert I == sp.graph(R.space, V4, la.transpose(R.reps))
    with pytest.raises(sp.NotCoisotropic):
        sp.reduction_relations(sp.span(V4, e(4, 1)))


def shear_flow(t):
    return ((1, t), (0, 1))


def test_lift_and_project():
    C = _coiso()
    I, P, R = sp.reduction_relations(C, darboux=True)
    Vq = R.space
    Id = sp.identity(Vq)
    lid = sp.transport_through_reduction("lift", Id, C, darboux=True)
    assert lid == sp.compose_linrel(P, I) and lid != sp.identity(V4)
    assert sp.transport_through_reduction("project", lid, C, darboux=True) == Id
    flows = {t: sp.graph(Vq, Vq, shear_flow(mpq(t))) for t in (1, 2, 3)}
    lifted = {t: sp.transport_through_reduction("lift", g, C, darboux=True) for t, g in flows.items()}
    assert sp.compose_linrel(lifted[1], lifted[2]) == lifted[3]
    for g in flows.values():
        assert sp.transport_through_reduction("project", sp.transport_through_reduction(
            "lift", g, C, darboux=True), C, darboux=True) == g
    with pytest.raises(ValueError):
        sp.transport_through_reduction("sideways", Id, C)
    with pytest.raises(ValueError):
        sp.transport_through_reduction("lift", sp.identity(V4), C)


# ------------------------------------------------------------ Dirac

def test_dirac_examples(rng):
    for n in (1, 2, 3):
        Pi = sp.random_skew(rng, n)
        om = sp.random_skew(rng, n)
        assert sp.dirac_check(sp.graph_bivector(Pi))
        assert sp.dirac_check(sp.graph_form(om))
        assert sp.dirac_check(sp.dirac_from_distribution(sp.random_subspace(rng, n)))
    not_max = sp.span(sp.DiracCarrier(2), e(4, 1))
    assert not sp.dirac_check(not_max)
    with pytest.raises(ValueError):
        sp.dirac_check(sp.span(V2, e(2, 1)))


def test_backward_of_form_is_pullback(rng):
    for m, n in ((2, 1), (2, 3), (3, 2)):
        om = sp.random_skew(rng, m)
        phi = tuple(tuple(sp._rq(rng) for _ in range(n)) for _ in range(m))
        back = sp.dirac_image("backward", sp.graph_form(om), phi)
        pull = la.matmul(la.matmul(la.transpose(phi, n), om), phi)
        assert back == sp.graph_form(pull)


def test_forward_of_bivector_is_pushforward(rng):
    for n in (1, 2, 3):
        Pi = sp.random_skew(rng, n)
        phi = sp._random_invertible(rng, n)
        fwd = sp.dirac_image("forward", sp.graph_bivector(Pi), phi)
        push = la.matmul(la.matmul(phi, Pi), la.transpose(phi))
        assert fwd == sp.graph_bivector(push)


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_images_are_dirac(n, m, rnd):
    phi = tuple(tuple(sp._rq(rnd) for _ in range(n)) for _ in range(m))
    assert sp.dirac_check(sp.dirac_image("backward", sp.random_dirac(rnd, m), phi))
    assert sp.dirac_check(sp.dirac_image("forward", sp.random_dirac(rnd, n), phi))


def test_dirac_dimension_mismatch():
    with pytest.raises(ValueError):
        sp.dirac_image("backward", sp.graph_form(((0, 1), (-1, 0))), ((1,),) * 3)


def test_symp_space_validation():
    with pytest.raises(ValueError):
        sp.SympSpace(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        sp.SympSpace(((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        sp.SympSpace(((0,),))
    assert sp.point().dim == 0
