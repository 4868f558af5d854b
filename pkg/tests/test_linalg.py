from fractions import Fraction
from itertools import combinations

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from relkit import linalg as la
from strategies import matrices


def det(M):
    """Laplace expansion over Fractions; independent of the RREF kernel."""
    if not M:
        return Fraction(1)
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def minor_rank(A):
    F = [[Fraction(int(x.numerator), int(x.denominator)) for x in r] for r in A]
    m, n = len(F), len(F[0])
    for k in range(min(m, n), 0, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                if det([[F[i][j] for j in cols] for i in rows]):
                    return k
    return 0


@given(matrices())
def test_rank_matches_minors(A):
    assert la.rank(A) == minor_rank(A)


@given(matrices())
def test_nullspace_is_kernel_of_right_size(A):
    n = len(A[0])
    N = la.nullspace(A, n)
    assert len(N) == n - la.rank(A)
    for v in N:
        assert all(x == 0 for x in la.matvec(A, v))


@given(matrices())
def test_rref_is_canonical(A):
    R, piv = la.rref(A)
    assert la.rref(R) == (R, piv)
    assert la.row_basis(list(A) + list(R), len(A[0])) == R


@given(matrices(rows=3, cols=3))
def test_inverse(A):
    if la.rank(A) < 3:
        with pytest.raises(ZeroDivisionError):
            la.inverse(A)
    else:
        assert la.matmul(A, la.inverse(A)) == la.identity(3)


@given(matrices(max_dim=3), matrices(max_dim=3))
def test_block_diag_rank_adds(A, B):
    assert la.rank(la.block_diag(A, B)) == la.rank(A) + la.rank(B)


@given(st.integers(-50, 50), st.integers(1, 50))
def test_parse_rational_roundtrip(p, q):
    assert la.parse_rational(f"{p}/{q}") == mpq(p, q)
    assert la.parse_rational(f" {p} / {q} ") == mpq(p, q)


@pytest.mark.parametrize("bad", ["1/0", "", "x", "1.5", "2/3/4"])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        la.parse_rational(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        la.Q(0.5)


def test_compose_bases_graphs():
    # graph of x -> 2x composed with graph of y -> 3y is the graph of 6x
    B = la.compose_bases([(1, 2)], 1, 1, [(1, 3)], 1)
    assert la.row_basis(B, 2) == ((1, 6),)


def test_preimage_and_image():
    A = ((1, 0), (0, 0))
    assert la.row_basis(la.preimage(A, [(1, 0)], 2), 2) == ((1, 0), (0, 1))
    assert la.row_basis(la.image(A, [(1, 1)], 2), 2) == ((1, 0),)
