"""Finite sets and relations: the dagger monoidal calculus of **Rel**.

A :class:`Carrier` is a finite ordered set of atoms; a :class:`Rel` is a set
of pairs between two carriers.  Products of carriers are left-nested tuples,
so ``A x (B x C)`` and ``(A x B) x C`` are different carriers related by the
explicit re-associator :func:`assoc`.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as _iproduct

__all__ = [
    "Carrier", "Rel", "Report", "CarrierMismatch", "BudgetExceeded",
    "POINT", "STAR", "atom_key", "budget", "current_budget", "ensure_budget",
    "compose", "dagger", "product", "structural", "identity", "diagonal",
    "swap", "graph", "name", "point", "assoc", "left_unitor_inv",
    "right_unitor_inv", "split_point", "whole", "subset_rel", "points_of",
    "classify_relation", "equation",
]

DEFAULT_BUDGET = 10**6
_BUDGET: ContextVar[int] = ContextVar("relkit_budget", default=DEFAULT_BUDGET)


class CarrierMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An exhaustive check would exceed the configured enumeration budget."""


def current_budget():
    return _BUDGET.get()


@contextlib.contextmanager
def budget(n):
    token = _BUDGET.set(int(n))
    try:
        yield
    finally:
        _BUDGET.reset(token)


def ensure_budget(count, what):
    limit = _BUDGET.get()
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} exceeds budget {limit}")


def atom_key(x):
    """Total order on heterogeneous atoms, used for deterministic output."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(atom_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(atom_key(y) for y in x)))
    if x is None:
        return (-1,)
    try:
        return (0, x + 0)  # mpq / Fraction compare with ints
    except TypeError:
        return (4, repr(x))


class Carrier:
    """Finite set of distinct atoms with a fixed iteration order.

    Equality is set equality; the order only affects iteration and printing.
    """

    __slots__ = ("elements", "_set", "_hash")

    def __init__(self, elements=()):
        elems = tuple(elements)
        s = frozenset(elems)
        if len(s) != len(elems):
            seen, dup = set(), None
            for e in elems:
                if e in seen:
                    dup = e
                    break
                seen.add(e)
            raise ValueError(f"duplicate atom {dup!r} in carrier")
        self.elements = elems
        self._set = s
        self._hash = hash(s)

    @classmethod
    def range(cls, n):
        return cls(range(n))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __eq__(self, other):
        return isinstance(other, Carrier) and self._set == other._set

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Carrier(%r)" % (list(self.elements),)

    def __mul__(self, other):
        return _cartesian(self, other)

    def sorted(self):
        return sorted(self.elements, key=atom_key)


@lru_cache(maxsize=4096)
def _cartesian(A, B):
    return Carrier(tuple(_iproduct(A.elements, B.elements)))


STAR = "*"
POINT = Carrier((STAR,))


def point():
    return POINT


class Rel:
    """A relation ``src -/-> dst``: an immutable set of pairs."""

    __slots__ = ("src", "dst", "pairs", "_fwd")

    def __init__(self, src, dst, pairs=(), check=True):
        self.src = src
        self.dst = dst
        ps = frozenset(pairs)
        if check:
            for p in ps:
                if not (isinstance(p, tuple) and len(p) == 2):
                    raise ValueError(f"relation entry {p!r} is not a pair")
                a, b = p
                if a not in src:
                    raise ValueError(f"{a!r} is not in the source carrier")
                if b not in dst:
                    raise ValueError(f"{b!r} is not in the target carrier")
        self.pairs = ps
        self._fwd = None

    def forward(self):
        """Map each source atom to the frozenset of atoms it relates to."""
        if self._fwd is None:
            fwd = {}
            for a, b in self.pairs:
                fwd.setdefault(a, set()).add(b)
            self._fwd = {a: frozenset(bs) for a, bs in fwd.items()}
        return self._fwd

    def image(self, xs):
        fwd = self.forward()
        out = set()
        for x in xs:
            out |= fwd.get(x, frozenset())
        return frozenset(out)

    def __call__(self, x):
        return self.forward().get(x, frozenset())

    def __eq__(self, other):
        return (isinstance(other, Rel) and self.src == other.src
                and self.dst == other.dst and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.src, self.dst, self.pairs))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())

    def __contains__(self, pair):
        return pair in self.pairs

    def __le__(self, other):
        _same(self.src, other.src, "source")
        _same(self.dst, other.dst, "target")
        return self.pairs <= other.pairs

    def sorted_pairs(self):
        return sorted(self.pairs, key=atom_key)

    def __repr__(self):
        return "Rel(%s)" % ", ".join(f"{a!r}->{b!r}" for a, b in self.sorted_pairs())

    # algebra
    def __matmul__(self, other):
        """``S @ R`` is ``S o R`` (first R, then S)."""
        return compose(other, self)

    def dagger(self):
        return dagger(self)

    def __mul__(self, other):
        return product(self, other)

    def union(self, other):
        _same(self.src, other.src, "source")
        _same(self.dst, other.dst, "target")
        return Rel(self.src, self.dst, self.pairs | other.pairs, check=False)

    def intersection(self, other):
        _same(self.src, other.src, "source")
        _same(self.dst, other.dst, "target")
        return Rel(self.src, self.dst, self.pairs & other.pairs, check=False)

    def restrict(self, xs, ys=None):
        ys = xs if ys is None else ys
        return Rel(self.src, self.dst, ((a, b) for a, b in self.pairs if a in xs and b in ys), check=False)

    def domain(self):
        return frozenset(a for a, _ in self.pairs)

    def range(self):
        return frozenset(b for _, b in self.pairs)

    def is_single_valued(self):
        return all(len(v) == 1 for v in self.forward().values())

    def is_total(self):
        fwd = self.forward()
        return all(a in fwd for a in self.src)

    def is_function(self):
        return self.is_total() and self.is_single_valued()

    def as_map(self):
        if not self.is_function():
            raise ValueError("relation is not the graph of a function")
        return {a: next(iter(bs)) for a, bs in self.forward().items()}


def _same(A, B, what):
    if A != B:
        raise CarrierMismatch(f"{what} carriers differ: {_short(A)} vs {_short(B)}")


def _short(C, limit=6):
    els = C.sorted()
    body = ", ".join(repr(e) for e in els[:limit])
    if len(els) > limit:
        body += f", ... ({len(els)} atoms)"
    return "{" + body + "}"


def compose(R, S):
    """``S o R``: first ``R : A -/-> B``, then ``S : B -/-> C``."""
    if R.dst != S.src:
        raise CarrierMismatch(
            f"cannot compose: target of first {_short(R.dst)} != source of second {_short(S.src)}")
    sf = S.forward()
    out = set()
    for a, b in R.pairs:
        cs = sf.get(b)
        if cs:
            for c in cs:
                out.add((a, c))
    return Rel(R.src, S.dst, out, check=False)


def dagger(R):
    return Rel(R.dst, R.src, ((b, a) for a, b in R.pairs), check=False)


def product(R, S):
    ensure_budget(len(R.pairs) * len(S.pairs), "product relation size")
    return Rel(R.src * S.src, R.dst * S.dst,
               (((a, c), (b, d)) for a, b in R.pairs for c, d in S.pairs), check=False)


def identity(A):
    return Rel(A, A, ((a, a) for a in A), check=False)


def diagonal(A):
    return Rel(A, A * A, ((a, (a, a)) for a in A), check=False)


def swap(A, B):
    return Rel(A * B, B * A, (((a, b), (b, a)) for a in A for b in B), check=False)


def graph(src, dst, mapping):
    """Graph of a total single-valued map given as a dict or callable."""
    get = mapping.get if isinstance(mapping, dict) else None
    pairs = []
    for a in src:
        if get is not None:
            if a not in mapping:
                raise ValueError(f"map is not total: no value for {a!r}")
            vals = mapping[a]
        else:
            vals = mapping(a)
        if isinstance(vals, (set, list)) or (isinstance(vals, frozenset) and vals not in dst):
            vals = list(vals)
            if len(vals) != 1:
                raise ValueError(f"map is not single-valued at {a!r}: {vals!r}")
            vals = vals[0]
        if vals not in dst:
            raise ValueError(f"value {vals!r} of {a!r} is outside the target carrier")
        pairs.append((a, vals))
    return Rel(src, dst, pairs, check=False)


def name(R):
    """The name of ``r : A -/-> B`` as a relation ``pt -/-> A x B``."""
    return Rel(POINT, R.src * R.dst, ((STAR, p) for p in R.pairs), check=False)


def assoc(A, B, C):
    """Re-associator ``(A x B) x C -/-> A x (B x C)``."""
    return Rel((A * B) * C, A * (B * C),
               ((((a, b), c), (a, (b, c))) for a in A for b in B for c in C), check=False)


def left_unitor_inv(A):
    """``A -/-> pt x A``."""
    return Rel(A, POINT * A, ((a, (STAR, a)) for a in A), check=False)


def right_unitor_inv(A):
    """``A -/-> A x pt``."""
    return Rel(A, A * POINT, ((a, (a, STAR)) for a in A), check=False)


def split_point():
    """``pt -/-> pt x pt``."""
    return Rel(POINT, POINT * POINT, ((STAR, (STAR, STAR)),), check=False)


def whole(A):
    """``A`` seen as the relation ``pt -/-> A``."""
    return Rel(POINT, A, ((STAR, a) for a in A), check=False)


def subset_rel(A, xs):
    """A subset ``xs`` of ``A`` as the relation ``pt -/-> A``."""
    return Rel(POINT, A, ((STAR, x) for x in xs))


def points_of(R):
    """The subset named by a relation ``pt -/-> A`` (or ``pt x pt -/-> A``)."""
    return frozenset(b for _, b in R.pairs)


def structural(kind, A=None, B=None, mapping=None, rel=None):
    """Build a named structural relation.

    kind is one of ``identity``, ``diagonal``, ``swap``, ``graph``
    (``graph-of-map``), ``name`` (``name-of-rel``), ``point``.
    """
    k = kind.replace("_", "-")
    if k == "identity":
        return identity(A)
    if k == "diagonal":
        return diagonal(A)
    if k == "swap":
        return swap(A, A if B is None else B)
    if k in ("graph", "graph-of-map"):
        return graph(A, B, mapping)
    if k in ("name", "name-of-rel"):
        return name(rel)
    if k == "point":
        return POINT
    raise ValueError(f"unknown structural kind {kind!r}")


@dataclass
class Report:
    """Outcome of a law check.

    ``checks`` maps each law to its verdict; ``witnesses`` holds one or more
    ``(law, counterexample)`` entries for every failing law.
    """

    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def verdict(self):
        return not self.witnesses

    def __bool__(self):
        return self.verdict

    def record(self, law, ok, *witnesses):
        ok = bool(ok)
        self.checks[law] = self.checks.get(law, True) and ok
        if not ok:
            if not witnesses:
                witnesses = (("fails",),)
            for w in witnesses:
                self.witnesses.append((law, w))
        return ok

    def failed(self):
        return [k for k, v in self.checks.items() if not v]

    def merge(self, other, prefix=""):
        for k, v in other.checks.items():
            self.checks[prefix + k] = self.checks.get(prefix + k, True) and v
        for law, w in other.witnesses:
            self.witnesses.append((prefix + law, w))
        for k, v in other.derived.items():
            self.derived.setdefault(prefix + k, v)
        self.notes.extend(other.notes)
        return self


def _summary(R):
    if R.src == POINT or (len(R.src) == 1 and all(isinstance(a, tuple) and set(a) == {STAR} for a in R.src)):
        return tuple(sorted(points_of(R), key=atom_key))
    return tuple(R.sorted_pairs())


def equation(report, law, label, lhs, rhs):
    """Record ``lhs == rhs`` under ``law``; on failure store a witness.

    The witness is ``(label, first differing entry, side, lhs summary, rhs summary)``
    where *side* says which side holds the entry.  Both sides are also
    kept in ``report.derived`` under the label.
    """
    if lhs.src != rhs.src or lhs.dst != rhs.dst:
        raise CarrierMismatch(f"{label}: sides live between different carriers")
    if lhs.pairs == rhs.pairs:
        report.record(law, True)
        return True
    diff = sorted(lhs.pairs ^ rhs.pairs, key=atom_key)[0]
    side = "lhs" if diff in lhs.pairs else "rhs"
    report.derived[label] = (lhs, rhs)
    report.record(law, False, (label, diff, side, _summary(lhs), _summary(rhs)))
    return False


def classify_relation(R):
    """Flags of an endorelation computed by enumeration."""
    if R.src != R.dst:
        raise CarrierMismatch("classify_relation needs an endorelation")
    A = R.src
    ps = R.pairs
    reflexive = all((a, a) in ps for a in A)
    symmetric = all((b, a) in ps for a, b in ps)
    RR = compose(R, R)
    transitive = RR.pairs <= ps
    return {
        "is_function": R.is_function(),
        "is_equivalence": reflexive and symmetric and transitive,
        "is_symmetric": symmetric,
        "is_idempotent": RR.pairs == ps,
    }
