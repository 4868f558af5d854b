"""Command-line front end.

Exit codes: 0 when every requested law holds, 1 on any failure (witnesses
are printed), 2 on usage, parse or schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from gmpy2 import mpq

from . import finrel as fr
from . import frobenius as fb
from . import hstar as hs
from . import linalg as la
from . import monoids as mo
from . import poisson as po
from . import relgpd as rg
from . import symplin as sl
from .document import Document, DocumentError, parse_document, print_document
from .finrel import Report, atom_key

SCHEMA = 1
MAX_SHOWN = 12


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- rendering

def fmt(x):
    """Deterministic compact text for atoms, tuples, classes and rationals."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if type(x) is type(mpq(0)):
        return str(int(x)) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, tuple):
        return "(" + ",".join(fmt(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "[" + ",".join(fmt(y) for y in sorted(x, key=atom_key)) + "]"
    return str(x)


def fmt_set(items, limit=MAX_SHOWN):
    items = list(items)
    body = ",".join(fmt(x) for x in items[:limit])
    if limit is not None and len(items) > limit:
        body += f",… ({len(items)} entries)"
    return "{" + body + "}"


def _summary_text(s, limit=MAX_SHOWN):
    return f"({s})" if isinstance(s, str) else "=" + fmt_set(s, limit)


def fmt_witness(law, w, limit=MAX_SHOWN):
    if (isinstance(w, tuple) and len(w) == 5 and isinstance(w[0], str) and " = " in w[0]
            and w[2] in ("lhs", "rhs")):
        label, diff, side, ls, rs = w
        lhs, rhs = label.split(" = ", 1)
        ctx = ""
        if " at " in rhs:
            rhs, ctx = rhs.split(" at ", 1)
            ctx = f" (at {ctx})"
        return f"{law}: {lhs}{_summary_text(ls, limit)} != {rhs}{_summary_text(rs, limit)}{ctx}"
    if isinstance(w, tuple):
        return f"{law}: " + " ".join(fmt(x) for x in w)
    return f"{law}: {fmt(w)}"


def rel_text(R):
    """A finite relation as text; relations out of the point print as subsets."""
    if isinstance(R, fr.Rel):
        if R.src == fr.POINT:
            return fmt_set(sorted(fr.points_of(R), key=atom_key), None)
        return fmt_set(R.sorted_pairs(), None)
    if isinstance(R, sl.LinRelation):
        return f"linear relation {R.src.dim}->{R.dst.dim}, dim {R.space.dim}, basis {_mat_text(R.space.basis)}"
    if isinstance(R, sl.Subspace):
        return f"subspace dim {R.dim} of {R.n}, basis {_mat_text(R.basis)}"
    return fmt(R)


def _mat_text(M):
    return "[" + ", ".join("(" + " ".join(fmt(x) for x in r) + ")" for r in M) + "]"


class Outcome:
    """What a command found: laws, witnesses, derived values and notes."""

    def __init__(self, command):
        self.command = command
        self.checks = {}
        self.witnesses = []
        self.derived = {}
        self.notes = []
        self.output = None

    def add(self, rep, prefix=""):
        for k, v in rep.checks.items():
            self.checks[prefix + k] = self.checks.get(prefix + k, True) and v
        self.witnesses.extend(fmt_witness(prefix + law, w) for law, w in rep.witnesses)
        self.notes.extend(rep.notes)

    def law(self, name, ok, *witness):
        self.checks[name] = self.checks.get(name, True) and bool(ok)
        if not ok:
            self.witnesses.append(f"{name}: " + " ".join(fmt(x) for x in witness) if witness else f"{name}: fails")

    @property
    def verdict(self):
        return all(self.checks.values()) and not self.witnesses

    def report(self):
        return {
            "schema": SCHEMA,
            "command": self.command,
            "verdict": "pass" if self.verdict else "fail",
            "checks": dict(self.checks),
            "witnesses": list(self.witnesses),
            "derived": self.derived,
            "notes": list(self.notes),
        }

    def human(self):
        lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in self.checks.items()]
        lines += self.witnesses
        for k, v in self.derived.items():
            lines.append(f"{k} = {v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)}")
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"verdict: {'pass' if self.verdict else 'FAIL'}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- loading

def load(path, *kinds):
    doc = parse_document(Path(path))
    if kinds and doc.kind not in kinds:
        raise DocumentError("kind", f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc


def _write(out, doc, path):
    text = print_document(doc)
    if path:
        Path(path).write_text(text, encoding="utf-8")
        out.derived["written"] = str(path)
    else:
        out.output = text


# ---------------------------------------------------------------- commands

CHECKS = {
    "frobenius": ("frobenius", fb.check_frobenius_axioms),
    "hstar": ("hstar", hs.check_hstar_axioms),
    "groupoid": ("groupoid", fb.check_groupoid_axioms),
    "semigroupoid": ("semigroupoid", hs.check_semigroupoid_properties),
    "weak-monoid": ("weak-monoid", mo.check_weak_monoid),
    "star-monoid": ("star-monoid", mo.check_weak_star_monoid),
    "cyclic-monoid": ("cyclic-monoid", None),
}


def cmd_check(args, out):
    kind, fn = CHECKS[args.kind]
    doc = load(args.file, kind)
    if kind == "cyclic-monoid":
        rep = mo.check_cyclic_weak_star_monoid(doc.value, doc.extra.get("twist_pairing", False))
    else:
        rep = fn(doc.value)
    out.add(rep)
    d = rep.derived
    if kind == "frobenius":
        U = d.get("U")
        out.derived["U"] = fmt_set(sorted(U, key=atom_key), None) if U is not None else None
    elif kind == "hstar":
        out.derived["A_subset_A**"] = d["A_subset_A**"]
        out.derived["literal_star_set_satisfies_H"] = d["literal_star_set_satisfies_H"]
    elif kind in ("weak-monoid", "star-monoid", "cyclic-monoid"):
        for key in ("L1", "L2", "L3"):
            if key in d:
                out.derived[key] = rel_text(d[key])


def cmd_convert(args, out):
    if args.direction == "frob-to-gpd":
        doc = load(args.file, "frobenius")
        rep = fb.check_frobenius_axioms(doc.value)
        out.add(rep)
        if rep.verdict:
            _write(out, Document("groupoid", fb.to_groupoid(doc.value, check=False)), args.output)
    elif args.direction == "gpd-to-frob":
        doc = load(args.file, "groupoid")
        rep = fb.check_groupoid_axioms(doc.value)
        out.add(rep)
        if rep.verdict:
            _write(out, Document("frobenius", fb.from_groupoid(doc.value, check=False)), args.output)
    elif args.direction == "hstar-to-sgpd":
        doc = load(args.file, "hstar")
        rep = hs.check_hstar_axioms(doc.value)
        out.add(rep)
        if rep.verdict:
            try:
                S = hs.to_semigroupoid(doc.value, check=False)
            except ValueError as exc:
                out.law("construction", False, str(exc))
            else:
                _write(out, Document("semigroupoid", S), args.output)
    else:
        doc = load(args.file, "semigroupoid")
        rep = hs.check_semigroupoid_properties(doc.value)
        out.add(rep)
        if rep.verdict:
            _write(out, Document("hstar", hs.from_semigroupoid(doc.value, check=False)), args.output)


def _derived_text(c, d):
    out = {k: rel_text(v) for k, v in d.as_dict().items()}
    if c.mode == "linear":
        out["lagrangian"] = dict(d.flags)
    return out


def cmd_rsg(args, out):
    if args.action == "morphism":
        doc = load(args.file, "relgpd-morphism")
        A, B, F = doc.value
        mode = args.mode or doc.extra.get("mode", "morphism")
        for tag, c in (("src.", A), ("dst.", B)):
            core = rg.check_core_axioms(c)
            if not core.verdict:
                out.add(core, tag)
                return
        out.add(rg.check_morphism(F, A, B, mode))
        return
    doc = load(args.file, "relgpd")
    c = doc.value
    if args.action == "derive":
        try:
            d = rg.derive(c)
        except rg.NotInvolutive as exc:
            out.law("A.2", False, str(exc))
            return
        out.derived.update(_derived_text(c, d))
        return
    core = rg.check_core_axioms(c)
    out.add(core)
    if "data" in core.derived:
        out.derived.update(_derived_text(c, core.derived["data"]))
    if args.action == "check" or not core.verdict:
        return
    reg = rg.check_regularity(c, core)
    out.add(reg)
    info = reg.derived.get("regularity")
    if info is not None:
        if c.mode == "set":
            out.derived["M"] = fmt_set(info.M, None)
            out.derived["C/L2"] = fmt_set(info.classes, None)
        else:
            out.derived["dim M"] = info.M
            out.derived["dim C/L2"] = info.classes
    if args.action == "regularity" or not reg.verdict:
        return
    try:
        G = rg.reduce_to_groupoid(c)
    except ValueError as exc:
        out.law("reduction", False, str(exc))
        return
    gr = fb.check_groupoid_axioms(G)
    out.add(gr, "reduced.")
    out.derived["reduced"] = {"objects": len(G.G0), "arrows": len(G.G1)}
    if args.output:
        _write(out, Document("groupoid", G), args.output)


def _read_matrix(text):
    p = Path(text)
    raw = p.read_text(encoding="utf-8") if p.exists() else text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{exc.lineno}:{exc.colno}", f"syntax error in matrix: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise DocumentError("phi", "expected a row-major matrix")
    try:
        return la.to_matrix(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError("phi", str(exc)) from None


def _one(paths, what):
    if not paths or len(paths) != 1:
        raise UsageError(f"give exactly one --{what}")
    return paths[0]


def cmd_symp(args, out):
    a = args.action
    if a == "orthogonal":
        W = load(_one(args.subspace, "subspace"), "subspace").value
        if not isinstance(W.ambient, sl.SympSpace):
            raise DocumentError("ambient", "orthogonal needs a symplectic ambient")
        P = sl.orthogonal(W)
        out.law("dimension", P.dim == W.n - W.dim, "dim W⊥ + dim W != dim V")
        out.derived["orthogonal"] = rel_text(P)
        _write(out, Document("subspace", P), args.output)
    elif a == "classify":
        if args.linrel:
            flags = load(_one(args.linrel, "linrel"), "linrel").value.classify()
        else:
            W = load(_one(args.subspace, "subspace"), "subspace").value
            if isinstance(W.ambient, sl.DiracCarrier):
                flags = {"dirac": sl.dirac_check(W)}
            elif isinstance(W.ambient, int):
                raise DocumentError("ambient", "classify needs a symplectic or Dirac ambient")
            else:
                flags = sl.classify_subspace(W)
        out.derived["classification"] = dict(flags)
        names = [k for k in ("lagrangian", "isotropic", "coisotropic", "symplectic", "dirac") if flags.get(k)]
        out.derived["class"] = names[0] if names else "none"
        if args.expect:
            out.law(args.expect, flags.get(args.expect, False), f"subspace is not {args.expect}")
    elif a == "reduce":
        W = load(_one(args.subspace, "subspace"), "subspace").value
        if not sl.classify_subspace(W)["coisotropic"]:
            out.law("coisotropic", False, "subspace is not coisotropic")
            return
        R = sl.reduce(W, darboux=args.darboux)
        out.law("coisotropic", True)
        out.derived["reduced dim"] = R.space.dim
        out.derived["form"] = _mat_text(R.space.omega)
        out.derived["kernel"] = rel_text(R.kernel)
        _write(out, Document("symp-space", R.space), args.output)
    elif a == "compose":
        if not args.linrel or len(args.linrel) < 2:
            raise UsageError("compose needs at least two --linrel (applied in order)")
        rels = [load(p, "linrel").value for p in args.linrel]
        R = rels[0]
        for S in rels[1:]:
            if R.dst != S.src:
                raise DocumentError("linrel", "consecutive relations do not match")
            R = sl.compose_linrel(R, S)
        if all(x.is_lagrangian() for x in rels):
            out.law("lagrangian", R.is_lagrangian(), "composite of Lagrangian relations is not Lagrangian")
        out.derived["composite"] = rel_text(R)
        _write(out, Document("linrel", R), args.output)
    elif a in ("lift", "project"):
        L = load(_one(args.linrel, "linrel"), "linrel").value
        C = load(_one(args.subspace, "subspace"), "subspace").value
        try:
            R = sl.transport_through_reduction(a, L, C, darboux=args.darboux)
        except sl.NotCoisotropic:
            out.law("coisotropic", False, "subspace is not coisotropic")
            return
        except ValueError as exc:
            raise DocumentError("linrel", str(exc)) from None
        if L.is_lagrangian():
            out.law("lagrangian", R.is_lagrangian(), f"{a}ed relation is not Lagrangian")
        out.derived[a] = rel_text(R)
        _write(out, Document("linrel", R), args.output)
    elif a == "dirac":
        D = load(_one(args.subspace, "subspace"), "subspace").value
        if not isinstance(D.ambient, sl.DiracCarrier):
            raise DocumentError("ambient", "dirac needs a Dirac ambient {\"dirac\": n}")
        if not args.phi:
            raise UsageError("dirac needs --phi")
        phi = _read_matrix(args.phi)
        try:
            R = sl.dirac_image(args.direction, D, phi)
        except ValueError as exc:
            raise DocumentError("phi", str(exc)) from None
        out.law("input_dirac", sl.dirac_check(D), "input is not a Dirac structure")
        out.law("dirac", sl.dirac_check(R), f"{args.direction} image is not a Dirac structure")
        out.derived[f"{args.direction} image"] = rel_text(R)
        _write(out, Document("subspace", R), args.output)


def cmd_poisson(args, out):
    if args.action == "from-lie":
        doc = load(args.file, "lie-constants")
        c = doc.value
        P = po.from_structure_constants(c)
        bad = po.lie_jacobi_violations(c)
        out.law("lie_jacobi", not bad, *(("c", tuple(i + 1 for i in bad[0])) if bad else ()))
        _sn(P, out)
        _write(out, Document("bivector", P), args.output)
        return
    if args.action == "check":
        doc = load(args.file, "bivector", "lie-constants")
        _sn(doc.value if doc.kind == "bivector" else po.from_structure_constants(doc.value), out)
        return
    doc = load(args.file, "bivector")
    P = doc.value
    if "f" not in doc.extra or "g" not in doc.extra:
        raise DocumentError("f", "bracket needs fields f and g")
    try:
        b = po.poisson_bracket(P, doc.extra["f"], doc.extra["g"])
    except po.DegreeOverflow as exc:
        raise DocumentError("f", str(exc)) from None
    out.derived["bracket"] = po.format_poly(b)


def _sn(P, out):
    res = po.jacobi_residual(P)
    bad = [(k, v) for k, v in sorted(res.items()) if v]
    out.checks["SN"] = not bad
    for (s, l, k), v in bad:
        out.witnesses.append(f"SN: J^{{{s + 1}{l + 1}{k + 1}}} = {po.format_poly(v)}")


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", default=argparse.SUPPRESS,
                        help="write a machine-readable JSON report")
    common.add_argument("--budget", metavar="N", type=int, default=argparse.SUPPRESS,
                        help="cap on exhaustive enumeration sizes")

    p = argparse.ArgumentParser(prog="relkit", parents=[common],
                                description="Check relational algebraic structures and report witnesses.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check the axioms of a structure")
    c.add_argument("kind", choices=list(CHECKS))
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("convert", parents=[common], help="translate between equivalent structures")
    v.add_argument("direction", choices=["frob-to-gpd", "gpd-to-frob", "hstar-to-sgpd", "sgpd-to-hstar"])
    v.add_argument("file")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_convert)

    r = sub.add_parser("rsg", parents=[common], help="relational symplectic groupoids")
    r.add_argument("action", choices=["derive", "check", "regularity", "reduce", "morphism"])
    r.add_argument("file")
    r.add_argument("file2", nargs="?", help="unused except for clearer errors")
    r.add_argument("--mode", choices=["morphism", "equivalence"], help="override the morphism document mode")
    r.add_argument("-o", "--output", help="write the reduced groupoid here")
    r.set_defaults(func=cmd_rsg)

    s = sub.add_parser("symp", parents=[common], help="linear symplectic and Dirac computations")
    s.add_argument("action", choices=["orthogonal", "classify", "reduce", "compose", "lift", "project", "dirac"])
    s.add_argument("--subspace", action="append")
    s.add_argument("--linrel", action="append")
    s.add_argument("--phi", help="matrix dim W x dim V as JSON text or a file")
    s.add_argument("--direction", choices=["backward", "forward"], default="backward")
    s.add_argument("--darboux", action="store_true", help="standard induced form on reductions")
    s.add_argument("--expect", choices=["lagrangian", "isotropic", "coisotropic", "symplectic", "dirac"])
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_symp)

    q = sub.add_parser("poisson", parents=[common], help="polynomial bivectors")
    q.add_argument("action", choices=["check", "from-lie", "bracket"])
    q.add_argument("file")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_poisson)
    return p


def _command_words(argv):
    words, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--report", "--budget"):
            skip = True
            continue
        if a.startswith("--report=") or a.startswith("--budget="):
            continue
        words.append(a)
    return words


def run_command(argv, stdout=None, stderr=None):
    """Run one command; returns ``(exit code, outcome or None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    out = Outcome(_command_words(argv))
    limit = getattr(args, "budget", None)
    try:
        with fr.budget(limit if limit is not None else fr.current_budget()):
            args.func(args, out)
    except (DocumentError, UsageError) as exc:
        print(f"relkit: error: {exc}", file=stderr)
        return 2, None
    except fr.BudgetExceeded as exc:
        print(f"relkit: budget exceeded: {exc}", file=stderr)
        return 2, None
    code = 0 if out.verdict else 1
    if out.output is not None:
        stdout.write(out.output)
        stderr.write(out.human())
    else:
        stdout.write(out.human())
    report = getattr(args, "report", None)
    if report:
        Path(report).write_text(json.dumps(out.report(), indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    return code, out


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else list(argv))
    return code


if __name__ == "__main__":
    sys.exit(main())
