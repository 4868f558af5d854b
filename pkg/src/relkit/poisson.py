"""Polynomial bivectors of degree <= 1 on Q^n, their Jacobi residual and the
coordinate Poisson bracket.

Polynomials are dicts ``{exponent tuple: mpq}`` with zero coefficients
dropped.  Indices are 0-based throughout; the document format is 1-based.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import Q

__all__ = [
    "PolyBivector", "poly", "padd", "pmul", "pscale", "pderiv", "degree", "var", "const",
    "parse_poly", "format_poly", "jacobi_residual", "is_poisson", "from_structure_constants",
    "structure_constants", "lie_jacobi_violations", "poisson_bracket", "jacobiator",
    "random_linear_bivector", "epsilon_constants", "perturbed_example", "DegreeOverflow",
]

ZERO = mpq(0)


class DegreeOverflow(ValueError):
    pass


# ---------------------------------------------------------------- polynomials

def poly(terms):
    out = {}
    for e, c in terms:
        c = Q(c)
        e = tuple(e)
        out[e] = out.get(e, ZERO) + c
    return {e: c for e, c in out.items() if c}


def const(n, c):
    return poly([((0,) * n, c)])


def var(n, i):
    return {tuple(1 if j == i else 0 for j in range(n)): mpq(1)}


def padd(*ps):
    out = {}
    for p in ps:
        for e, c in p.items():
            out[e] = out.get(e, ZERO) + c
    return {e: c for e, c in out.items() if c}


def pscale(p, c):
    c = Q(c)
    return {e: c * x for e, x in p.items()} if c else {}


def pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, ZERO) + c1 * c2
    return {e: c for e, c in out.items() if c}


def pderiv(p, i):
    out = {}
    for e, c in p.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return out


def degree(p):
    return max((sum(e) for e in p), default=-1)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text, n):
    """Parse ``"x1*x2^2 - 3/2*x3 + 1"`` (1-based variables) into a polynomial."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    terms = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        sign, body = m.group(1), m.group(2).strip()
        pos = m.end()
        coef = mpq(-1 if sign == "-" else 1)
        exps = [0] * n
        for factor in body.split("*"):
            f = factor.strip()
            if not f:
                raise ValueError(f"empty factor in {text!r}")
            vm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", f)
            if vm:
                i = int(vm.group(1)) - 1
                if not 0 <= i < n:
                    raise ValueError(f"variable {f} outside x1..x{n}")
                exps[i] += int(vm.group(2) or 1)
            else:
                coef *= Q(f)
        terms.append((exps, coef))
    return poly(terms)


def _fmt_q(c):
    return str(int(c)) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p):
    """Canonical text: monomials by descending degree, then lexicographically."""
    if not p:
        return "0"
    parts = []
    for e in sorted(p, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p[e]
        mon = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        a = abs(c)
        if mon:
            body = mon if a == 1 else f"{_fmt_q(a)}*{mon}"
        else:
            body = _fmt_q(a)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sg, body in parts[1:]:
        out += f" {sg} {body}"
    return out


# ---------------------------------------------------------------- bivectors

@dataclass(frozen=True)
class PolyBivector:
    """``Pi^{ij}(x) = const[i][j] + sum_k lin[i][j][k] x_k``."""

    n: int
    const: tuple
    lin: tuple

    def __post_init__(self):
        n = self.n
        a = tuple(tuple(Q(x) for x in r) for r in self.const)
        c = tuple(tuple(tuple(Q(x) for x in v) for v in r) for r in self.lin)
        if len(a) != n or any(len(r) != n for r in a):
            raise ValueError("constant part must be n x n")
        if len(c) != n or any(len(r) != n or any(len(v) != n for v in r) for r in c):
            raise ValueError("linear part must be n x n x n")
        for i in range(n):
            for j in range(n):
                if a[i][j] != -a[j][i]:
                    raise ValueError(f"constant part is not skew at ({i + 1},{j + 1})")
                if any(c[i][j][k] != -c[j][i][k] for k in range(n)):
                    raise ValueError(f"linear part is not skew at ({i + 1},{j + 1})")
        object.__setattr__(self, "const", a)
        object.__setattr__(self, "lin", c)

    @classmethod
    def zero(cls, n):
        return cls(n, [[0] * n for _ in range(n)], [[[0] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_entries(cls, n, entries):
        """``entries``: ``{(i, j): degree <= 1 polynomial}`` for ``i < j`` (0-based)."""
        a = [[ZERO] * n for _ in range(n)]
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), p in entries.items():
            if not (0 <= i < j < n):
                raise ValueError(f"entry ({i + 1},{j + 1}) needs i < j within 1..{n}")
            if degree(p) > 1:
                raise DegreeOverflow(f"entry ({i + 1},{j + 1}) has degree {degree(p)} > 1")
            for e, x in p.items():
                if not any(e):
                    a[i][j] += x
                    a[j][i] -= x
                else:
                    k = e.index(1)
                    c[i][j][k] += x
                    c[j][i][k] -= x
        return cls(n, a, c)

    def entry(self, i, j):
        n = self.n
        return padd(const(n, self.const[i][j]),
                    *(pscale(var(n, k), self.lin[i][j][k]) for k in range(n)))

    def entries(self):
        return {(i, j): self.entry(i, j) for i in range(self.n) for j in range(i + 1, self.n)}


def jacobi_residual(P):
    """``{(s, l, k): J^{slk}}`` for ``s < l < k``."""
    n = P.n
    E = [[P.entry(i, j) for j in range(n)] for i in range(n)]
    D = [[[pderiv(E[i][j], r) for r in range(n)] for j in range(n)] for i in range(n)]
    out = {}
    for s, l, k in itertools.combinations(range(n), 3):
        terms = []
        for r in range(n):
            terms.append(pmul(E[s][r], D[l][k][r]))
            terms.append(pmul(E[k][r], D[s][l][r]))
            terms.append(pmul(E[l][r], D[k][s][r]))
        out[(s, l, k)] = padd(*terms)
    return out


def is_poisson(P):
    return all(not p for p in jacobi_residual(P).values())


def from_structure_constants(c):
    """``Pi^{ij}(x) = sum_k c[i][j][k] x_k``."""
    n = len(c)
    return PolyBivector(n, [[0] * n for _ in range(n)], c)


def structure_constants(P):
    if any(x for r in P.const for x in r):
        raise ValueError("bivector has a constant part")
    return P.lin


def lie_jacobi_violations(c):
    """``(i, j, k, l)`` with ``sum_m c_ij^m c_mk^l + cyclic != 0``."""
    n = len(c)
    bad = []
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            v = sum((c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                     for m in range(n)), ZERO)
            if v:
                bad.append((i, j, k, l))
    return bad


def poisson_bracket(P, f, g, max_degree=32):
    """``sum_ij Pi^{ij} d_i f d_j g``."""
    if degree(f) + degree(g) > max_degree:
        raise DegreeOverflow(f"degree {degree(f)} + {degree(g)} exceeds {max_degree}")
    n = P.n
    df = [pderiv(f, i) for i in range(n)]
    dg = [pderiv(g, j) for j in range(n)]
    terms = []
    for i in range(n):
        if not df[i]:
            continue
        for j in range(n):
            if i != j and dg[j]:
                terms.append(pmul(P.entry(i, j), pmul(df[i], dg[j])))
    return padd(*terms)


def jacobiator(P, f, g, h):
    br = lambda a, b: poisson_bracket(P, a, b)
    return padd(br(f, br(g, h)), br(g, br(h, f)), br(h, br(f, g)))


# ---------------------------------------------------------------- examples

def epsilon_constants():
    """``c_ij^k = eps_ijk`` on Q^3."""
    c = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j, k) in itertools.permutations(range(3)):
        sign = 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        c[i][j][k] = mpq(sign)
    return c


def perturbed_example():
    """``Pi^12 = x1``, ``Pi^23 = x2``, ``Pi^13 = 0``."""
    return PolyBivector.from_entries(3, {(0, 1): var(3, 0), (1, 2): var(3, 1)})


def random_linear_bivector(rng, n, density=0.5, lo=-2, hi=2):
    """Sparse random structure constants, so that both verdicts occur."""
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            if rng.random() < density:
                x = mpq(rng.randint(lo, hi))
                c[i][j][k] = x
                c[j][i][k] = -x
    return from_structure_constants(c)
