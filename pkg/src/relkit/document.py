"""JSON structure documents: parsing with schema checks and canonical printing.

Atoms are JSON strings or integers (arrays become tuples), rationals are
strings ``"p/q"`` or integers, matrices are row-major arrays.  Every
document carries a ``kind`` tag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import finrel as fr
from . import linalg as la
from . import poisson as po
from . import symplin as sl
from .finrel import Carrier, Rel, atom_key
from .frobenius import FrobCandidate, Groupoid
from .hstar import HStarCandidate, Semigroupoid
from .monoids import CyclicCandidate, StarMonoidCandidate, WeakMonoidCandidate, ternary
from .relgpd import RelGroupoidCandidate

__all__ = ["Document", "DocumentError", "KINDS", "parse_document", "print_document", "to_json"]

KINDS = ("relation", "frobenius", "hstar", "groupoid", "semigroupoid", "weak-monoid",
         "star-monoid", "cyclic-monoid", "symp-space", "subspace", "linrel", "relgpd",
         "relgpd-morphism", "bivector", "lie-constants")


class DocumentError(ValueError):
    """Syntax or schema error; ``where`` is a field path or ``line:col``."""

    def __init__(self, where, msg):
        super().__init__(f"{where}: {msg}")
        self.where = where


@dataclass(frozen=True)
class Document:
    kind: str
    value: object
    extra: dict = field(default_factory=dict, compare=True, hash=False)


# ---------------------------------------------------------------- readers

def _atom(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int, list)):
        raise DocumentError(where, f"atom must be a string, integer or array, got {x!r}")
    if isinstance(x, list):
        return tuple(_atom(y, where) for y in x)
    return x


def _atoms(x, where):
    if not isinstance(x, list):
        raise DocumentError(where, "expected an array of atoms")
    out = [_atom(a, f"{where}[{i}]") for i, a in enumerate(x)]
    seen = set()
    for i, a in enumerate(out):
        if a in seen:
            raise DocumentError(f"{where}[{i}]", f"duplicate atom {a!r}")
        seen.add(a)
    return out


def _carrier(x, where):
    return Carrier(_atoms(x, where))


def _tuples(x, k, where, C=None):
    if not isinstance(x, list):
        raise DocumentError(where, f"expected an array of {k}-tuples")
    out = []
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, list) or len(t) != k:
            raise DocumentError(w, f"expected an array of length {k}")
        t = tuple(_atom(a, w) for a in t)
        if C is not None:
            for j, (a, Cj) in enumerate(zip(t, C)):
                if a not in Cj:
                    raise DocumentError(f"{w}[{j}]", f"atom {a!r} is not in the declared carrier")
        out.append(t)
    return out


def _map(x, where, src, dst):
    pairs = _tuples(x, 2, where, (src, dst))
    out = {}
    for i, (a, b) in enumerate(pairs):
        if a in out:
            raise DocumentError(f"{where}[{i}]", f"two values for {a!r}")
        out[a] = b
    missing = [a for a in src.sorted() if a not in out]
    if missing:
        raise DocumentError(where, f"no value for {missing[0]!r}")
    return out


def _q(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(where, f"rational must be a string or integer, got {x!r}")
    try:
        return la.parse_rational(x) if isinstance(x, str) else la.Q(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(where, f"bad rational {x!r}: {exc}") from None


def _vector(x, n, where):
    if not isinstance(x, list) or (n is not None and len(x) != n):
        raise DocumentError(where, f"expected a vector of length {n}")
    return tuple(_q(v, f"{where}[{i}]") for i, v in enumerate(x))


def _matrix(x, where, rows=None, cols=None):
    if not isinstance(x, list) or (rows is not None and len(x) != rows):
        raise DocumentError(where, f"expected a matrix with {rows} rows")
    out = []
    for i, r in enumerate(x):
        out.append(_vector(r, cols if cols is not None else (len(x[0]) if x else 0), f"{where}[{i}]"))
    return tuple(out)


def _space(x, where):
    if isinstance(x, dict) and "standard" in x:
        n = x["standard"]
        if not isinstance(n, int) or n < 0:
            raise DocumentError(f"{where}.standard", "expected a non-negative integer")
        return sl.standard(n)
    if isinstance(x, dict) and "omega" in x:
        x = x["omega"]
    M = _matrix(x, where, len(x) if isinstance(x, list) else None, len(x) if isinstance(x, list) else None)
    try:
        return sl.SympSpace(M)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _ambient(x, where):
    if not isinstance(x, dict):
        raise DocumentError(where, "expected {omega|standard|dirac|dim: ...}")
    if "dirac" in x:
        if not isinstance(x["dirac"], int) or x["dirac"] < 0:
            raise DocumentError(f"{where}.dirac", "expected a non-negative integer")
        return sl.DiracCarrier(x["dirac"])
    if "dim" in x:
        if not isinstance(x["dim"], int) or x["dim"] < 0:
            raise DocumentError(f"{where}.dim", "expected a non-negative integer")
        return x["dim"]
    return _space(x, where)


def _basis(x, n, where):
    if not isinstance(x, list):
        raise DocumentError(where, "expected an array of vectors")
    return [_vector(v, n, f"{where}[{i}]") for i, v in enumerate(x)]


def _need(body, key, where=""):
    if key not in body:
        raise DocumentError(f"{where}{key}", "missing field")
    return body[key]


def _rel(body, X, key, src, dst, shape):
    try:
        if shape == 3:
            return ternary(X, _tuples(_need(body, key), 3, key, (X, X, X)))
        return Rel(src, dst, _tuples(_need(body, key), 2, key, (src, dst)))
    except fr.CarrierMismatch as exc:
        raise DocumentError(key, str(exc)) from None


def _relgpd(body, p=""):
    mode = body.get("mode", "set")
    if mode == "set":
        G = _carrier(_need(body, "G", p), p + "G")
        L = _tuples(_need(body, "L", p), 3, p + "L", (G, G, G))
        I = _map(_need(body, "I", p), p + "I", G, G)
        return RelGroupoidCandidate("set", G, L, I, body.get("name", ""))
    if mode == "linear":
        G = _space(_need(body, "omega", p), p + "omega")
        L = _basis(_need(body, "L", p), 3 * G.dim, p + "L")
        I = _matrix(_need(body, "I", p), p + "I", G.dim, G.dim)
        return RelGroupoidCandidate("linear", G, L, I, body.get("name", ""))
    raise DocumentError(p + "mode", f"unknown mode {mode!r}")


def _from_body(kind, body):
    extra = {}
    if kind == "relation":
        A = _carrier(_need(body, "src"), "src")
        B = _carrier(_need(body, "dst"), "dst")
        return Rel(A, B, _tuples(_need(body, "pairs"), 2, "pairs", (A, B))), extra
    if kind in ("frobenius", "hstar"):
        X = _carrier(_need(body, "X"), "X")
        m = _rel(body, X, "m", None, None, 3)
        return (FrobCandidate if kind == "frobenius" else HStarCandidate)(X, m), extra
    if kind in ("groupoid", "semigroupoid"):
        G0 = _carrier(_need(body, "objects"), "objects")
        G1 = _carrier(_need(body, "arrows"), "arrows")
        s = _map(_need(body, "s"), "s", G1, G0)
        t = _map(_need(body, "t"), "t", G1, G0)
        mu = {}
        for i, (g, f, h) in enumerate(_tuples(_need(body, "mu"), 3, "mu", (G1, G1, G1))):
            if (g, f) in mu:
                raise DocumentError(f"mu[{i}]", f"two products for {(g, f)!r}")
            mu[(g, f)] = h
        if kind == "semigroupoid":
            return Semigroupoid(G0, G1, s, t, mu), extra
        e = _map(_need(body, "e"), "e", G0, G1)
        inv = _map(_need(body, "inv"), "inv", G1, G1)
        return Groupoid(G0, G1, s, t, e, inv, mu), extra
    if kind == "weak-monoid":
        X = _carrier(_need(body, "X"), "X")
        L1 = _atoms(_need(body, "L1"), "L1")
        bad = [a for a in L1 if a not in X]
        if bad:
            raise DocumentError("L1", f"atom {bad[0]!r} is not in the declared carrier")
        L1 = fr.subset_rel(X, L1)
        return WeakMonoidCandidate(X, L1, _rel(body, X, "L3", None, None, 3)), extra
    if kind == "star-monoid":
        X = _carrier(_need(body, "X"), "X")
        return StarMonoidCandidate(X, _rel(body, X, "L3", None, None, 3),
                                   _map(_need(body, "psi"), "psi", X, X)), extra
    if kind == "cyclic-monoid":
        X = _carrier(_need(body, "X"), "X")
        extra["twist_pairing"] = bool(body.get("twist_pairing", False))
        return CyclicCandidate(X, _map(_need(body, "psi"), "psi", X, X),
                               _rel(body, X, "L", None, None, 3)), extra
    if kind == "symp-space":
        return _space(body.get("omega", body), "omega"), extra
    if kind == "subspace":
        amb = _ambient(_need(body, "ambient"), "ambient")
        n = amb if isinstance(amb, int) else amb.dim
        return sl.span(amb, _basis(_need(body, "basis"), n, "basis")), extra
    if kind == "linrel":
        A = _space(_need(body, "src"), "src")
        B = _space(_need(body, "dst"), "dst")
        return sl.LinRelation.from_vectors(A, B, _basis(_need(body, "basis"), A.dim + B.dim, "basis")), extra
    if kind == "relgpd":
        try:
            return _relgpd(body), extra
        except (ValueError, TypeError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError("relgpd", str(exc)) from None
    if kind == "relgpd-morphism":
        A = _relgpd(_need(body, "src"), "src.")
        B = _relgpd(_need(body, "dst"), "dst.")
        extra["mode"] = body.get("mode", "morphism")
        if extra["mode"] not in ("morphism", "equivalence"):
            raise DocumentError("mode", f"unknown mode {extra['mode']!r}")
        if A.mode == "set":
            F = Rel(A.G, B.G, _tuples(_need(body, "F"), 2, "F", (A.G, B.G)))
        else:
            F = sl.LinRelation.from_vectors(A.G, B.G, _basis(_need(body, "F"), A.G.dim + B.G.dim, "F"))
        return (A, B, F), extra
    if kind == "bivector":
        n = _need(body, "n")
        if not isinstance(n, int) or n < 0:
            raise DocumentError("n", "expected a non-negative integer")
        entries = {}
        for idx, item in enumerate(_need(body, "entries")):
            w = f"entries[{idx}]"
            if not isinstance(item, list) or len(item) != 3:
                raise DocumentError(w, "expected [i, j, polynomial]")
            i, j, ptxt = item
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
                raise DocumentError(w, f"indices must satisfy 1 <= i < j <= {n}")
            if (i - 1, j - 1) in entries:
                raise DocumentError(w, "duplicate entry")
            entries[(i - 1, j - 1)] = _poly(ptxt, n, w)
        try:
            P = po.PolyBivector.from_entries(n, entries)
        except ValueError as exc:
            raise DocumentError("entries", str(exc)) from None
        for key in ("f", "g"):
            if key in body:
                extra[key] = _poly(body[key], n, key)
        return P, extra
    if kind == "lie-constants":
        n = _need(body, "n")
        if not isinstance(n, int) or n < 0:
            raise DocumentError("n", "expected a non-negative integer")
        c = [[[la.Q(0)] * n for _ in range(n)] for _ in range(n)]
        seen = set()
        for idx, item in enumerate(_need(body, "c")):
            w = f"c[{idx}]"
            if not isinstance(item, list) or len(item) != 4:
                raise DocumentError(w, "expected [i, j, k, coefficient]")
            i, j, k, x = item
            if not all(isinstance(v, int) and 1 <= v <= n for v in (i, j, k)):
                raise DocumentError(w, f"indices must lie in 1..{n}")
            if i >= j:
                raise DocumentError(w, "give each constant once with i < j; c_ji^k = -c_ij^k is implied")
            if (i, j, k) in seen:
                raise DocumentError(w, "duplicate constant")
            seen.add((i, j, k))
            v = _q(x, w)
            c[i - 1][j - 1][k - 1] = v
            c[j - 1][i - 1][k - 1] = -v
        return po.from_structure_constants(c).lin, extra
    raise DocumentError("kind", f"unknown kind {kind!r}")


def _poly(x, n, where):
    if not isinstance(x, str):
        raise DocumentError(where, "polynomial must be a string")
    try:
        return po.parse_poly(x, n)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(where, str(exc)) from None


def parse_document(source):
    """Parse a document from a path, JSON text, or an already decoded dict."""
    if isinstance(source, dict):
        body = source
    else:
        text = source
        if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(("{", "["))):
            try:
                text = Path(source).read_text(encoding="utf-8")
            except OSError as exc:
                raise DocumentError(str(source), f"cannot read: {exc.strerror}") from None
        try:
            body = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{exc.lineno}:{exc.colno}", f"syntax error: {exc.msg}") from None
    if not isinstance(body, dict):
        raise DocumentError("1:1", "top level must be an object")
    kind = _need(body, "kind")
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        value, extra = _from_body(kind, body)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(kind, str(exc)) from None
    return Document(kind, value, extra)


# ---------------------------------------------------------------- writers

def _j_atom(a):
    if isinstance(a, tuple):
        return [_j_atom(x) for x in a]
    if isinstance(a, frozenset):
        return [_j_atom(x) for x in sorted(a, key=atom_key)]
    return a


def _j_atoms(xs):
    return [_j_atom(a) for a in sorted(xs, key=atom_key)]


def _j_q(x):
    x = la.Q(x)
    return str(int(x)) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _j_vec(v):
    return [_j_q(x) for x in v]


def _j_mat(M):
    return [_j_vec(r) for r in M]


def _j_map(d):
    return [[_j_atom(a), _j_atom(d[a])] for a in sorted(d, key=atom_key)]


def _j_triples(ts):
    return [[_j_atom(x) for x in t] for t in sorted(ts, key=atom_key)]


def _j_ternary(R):
    return _j_triples((a, b, c) for (a, b), c in R.pairs)


def _j_relgpd(c):
    if c.mode == "set":
        out = {"mode": "set", "G": _j_atoms(c.G), "L": _j_triples(c.L), "I": _j_map(c.I)}
    else:
        out = {"mode": "linear", "omega": _j_mat(c.G.omega), "L": _j_mat(c.L.basis), "I": _j_mat(c.I)}
    if c.name:
        out["name"] = c.name
    return out


def to_json(doc):
    """The document as a JSON-ready dict in canonical order."""
    k, v = doc.kind, doc.value
    out = {"kind": k}
    if k == "relation":
        out.update(src=_j_atoms(v.src), dst=_j_atoms(v.dst), pairs=[[_j_atom(a), _j_atom(b)] for a, b in v.sorted_pairs()])
    elif k in ("frobenius", "hstar"):
        out.update(X=_j_atoms(v.X), m=_j_ternary(v.m))
    elif k in ("groupoid", "semigroupoid"):
        out.update(objects=_j_atoms(v.G0), arrows=_j_atoms(v.G1), s=_j_map(v.s), t=_j_map(v.t))
        if k == "groupoid":
            out.update(e=_j_map(v.e), inv=_j_map(v.inv))
        out["mu"] = _j_triples((g, f, h) for (g, f), h in v.mu.items())
    elif k == "weak-monoid":
        out.update(X=_j_atoms(v.X), L1=_j_atoms(fr.points_of(v.L1)), L3=_j_ternary(v.L3))
    elif k == "star-monoid":
        out.update(X=_j_atoms(v.X), L3=_j_ternary(v.L3), psi=_j_map(v.psi))
    elif k == "cyclic-monoid":
        out.update(X=_j_atoms(v.X), psi=_j_map(v.psi), L=_j_ternary(v.L))
        if doc.extra.get("twist_pairing"):
            out["twist_pairing"] = True
    elif k == "symp-space":
        out["omega"] = _j_mat(v.omega)
    elif k == "subspace":
        a = v.ambient
        if isinstance(a, int):
            amb = {"dim": a}
        elif isinstance(a, sl.DiracCarrier):
            amb = {"dirac": a.n}
        else:
            amb = {"omega": _j_mat(a.omega)}
        out.update(ambient=amb, basis=_j_mat(v.basis))
    elif k == "linrel":
        out.update(src=_j_mat(v.src.omega), dst=_j_mat(v.dst.omega), basis=_j_mat(v.space.basis))
    elif k == "relgpd":
        out.update(_j_relgpd(v))
    elif k == "relgpd-morphism":
        A, B, F = v
        out.update(mode=doc.extra.get("mode", "morphism"), src=_j_relgpd(A), dst=_j_relgpd(B))
        out["F"] = ([[_j_atom(a), _j_atom(b)] for a, b in F.sorted_pairs()] if A.mode == "set"
                    else _j_mat(F.space.basis))
    elif k == "bivector":
        out["n"] = v.n
        out["entries"] = [[i + 1, j + 1, po.format_poly(p)] for (i, j), p in sorted(v.entries().items()) if p]
        for key in ("f", "g"):
            if key in doc.extra:
                out[key] = po.format_poly(doc.extra[key])
    elif k == "lie-constants":
        n = len(v)
        out["n"] = n
        out["c"] = [[i + 1, j + 1, kk + 1, _j_q(v[i][j][kk])]
                    for i in range(n) for j in range(i + 1, n) for kk in range(n) if v[i][j][kk]]
    else:
        raise ValueError(f"unknown kind {k!r}")
    return out


def _dump(obj, pad=""):
    """Objects one key per line, arrays one entry per line, entries compact."""
    inner = pad + "  "
    if isinstance(obj, dict) and obj:
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_dump(v, inner)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list) and obj and isinstance(obj[0], (list, dict)):
        body = ",\n".join(inner + json.dumps(x, ensure_ascii=False, separators=(", ", ": ")) for x in obj)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def print_document(doc):
    return _dump(to_json(doc)) + "\n"
