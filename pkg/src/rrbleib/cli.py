"""Command-line driver.

    rrbleib <command> [options] -i scenario.json [-o report.json]

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable or incomplete input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .io import _emit_nested, _need, _nested
from .cohomology import CochainSpace, cohomology
from .deformation import (TruncatedDeformation, check_inf_deformation, check_truncated,
                          classify_inf_deformations, deformation_of_cocycle)
from .errors import MissingInput, ParseError, RRBError
from .extension import (Section, build_extension, canonical_section, check_ext_iso,
                        check_extension, extract_cocycle, find_ext_iso, induced_rep_of_extension)
from .leibniz import CheckResult, check_leibniz, check_rep
from .linfty import UNWEIGHTED, WEIGHTED, mc_candidate, mc_defect
from .multimap import balavoine, bidegree_of
from .rrb import (RRBLeibniz, check_all, check_rrb_rep, dual_rrb_rep, induced_bracket, semidirect)

OK, FAIL, INPUT_ERROR = 0, 1, 2


def _checks(named) -> tuple[bool, dict]:
    out = {name: res.as_dict() for name, res in named}
    return all(res.ok for _, res in named), out


def _base_checks(t: RRBLeibniz):
    return list(check_all(t).items())


def _valid_or_report(t: RRBLeibniz, command: str):
    ok, results = _checks(_base_checks(t))
    if ok:
        return None
    return FAIL, {"command": command, "ok": False, "error": "input is not an rRB Leibniz algebra",
                  "results": results}


def _rep_checks(rep):
    return [("h_representation", check_rep(rep.h)), ("W_representation", check_rep(rep.W)),
            ("rrb_representation", check_rrb_rep(rep))]


def cmd_check(doc, args):
    t = io.parse_rrb(doc)
    named = _base_checks(t)
    if doc.get("rrb_rep") is not None:
        named += _rep_checks(io.parse_rrb_rep(doc["rrb_rep"], t))
    ok, results = _checks(named)
    return (OK if ok else FAIL), {"command": "check", "ok": ok, "results": results}


def cmd_mc_check(doc, args):
    t = io.parse_rrb(doc)
    ok_direct, results = _checks(_base_checks(t))
    defect = mc_defect(mc_candidate(t.pi(), t.R_map()))
    ok_mc = defect.is_zero()
    report = {
        "command": "mc-check",
        "ok": ok_direct and ok_mc,
        "agree": ok_direct == ok_mc,
        "direct": {"ok": ok_direct, "results": results},
        "maurer_cartan": {
            "ok": ok_mc,
            "defect_q": io.emit_multimap(defect.q) if defect.q is not None else None,
            "defect_a": io.emit_multimap(defect.a) if defect.a is not None else None,
        },
    }
    return (OK if report["ok"] else FAIL), report


def cmd_cohomology(doc, args):
    t = io.parse_rrb(doc)
    bad = _valid_or_report(t, "cohomology")
    if bad:
        return bad
    rep = None
    if args.coefficients == "rep":
        rep = io.parse_rrb_rep(_need(doc, "rrb_rep"), t)
        ok, results = _checks(_rep_checks(rep))
        if not ok:
            return FAIL, {"command": "cohomology", "ok": False, "error": "coefficients are not a representation",
                          "results": results}
    res = cohomology(t, args.degree, rep, convention=args.convention)
    return OK, {"command": "cohomology", "ok": True, "coefficients": args.coefficients,
                "convention": args.convention, "table": res.as_dict(),
                "representatives": [io.emit_cochain(c) for c in res.representatives]}


def cmd_balavoine(doc, args):
    maps = _need(doc, "maps")
    if not isinstance(maps, dict) or "f" not in maps or "g" not in maps:
        raise MissingInput("maps.f / maps.g")
    f = io.parse_multimap(maps["f"], "maps.f")
    g = io.parse_multimap(maps["g"], "maps.g")
    if f.space != g.space:
        raise ParseError("f and g live over different spaces", "maps")
    b = balavoine(f, g)
    return OK, {"command": "balavoine", "ok": True, "bracket": io.emit_multimap(b),
                "bidegrees": {name: _bideg(m) for name, m in (("f", f), ("g", g), ("bracket", b))}}


def _bideg(m):
    bd = bidegree_of(m)
    if not bd:
        return None if m.is_zero() else "inhomogeneous"
    return [bd.k, bd.l]


def cmd_semidirect(doc, args):
    t = io.parse_rrb(doc)
    rep = io.parse_rrb_rep(_need(doc, "rrb_rep"), t)
    T = semidirect(t, rep)
    ok, results = _checks(_base_checks(T))
    return (OK if ok else FAIL), {"command": "semidirect", "ok": ok, "results": results,
                                  "output": {"field": io.FIELD, **io.emit_rrb(T)}}


def cmd_dual(doc, args):
    t = io.parse_rrb(doc)
    rep = io.parse_rrb_rep(_need(doc, "rrb_rep"), t)
    dual = dual_rrb_rep(rep)
    ok, results = _checks(_rep_checks(dual))
    return (OK if ok else FAIL), {"command": "dual", "ok": ok, "results": results,
                                  "output": io.scenario_document(t, dual)}


def cmd_induced(doc, args):
    t = io.parse_rrb(doc)
    alg = induced_bracket(t)
    res = check_leibniz(alg)
    return (OK if res else FAIL), {"command": "induced", "ok": res.ok, "results": {"leibniz": res.as_dict()},
                                   "output": {"g": io.emit_algebra(alg)}}


def _deformation_entry(D):
    return {"mu1": _emit_nested(_nested3(D.mu1, D.base.d, D.base.d, D.base.d)),
            "l1": _emit_nested(_nested3(D.l1, D.base.d, D.base.e, D.base.e)),
            "r1": _emit_nested(_nested3(D.r1, D.base.e, D.base.d, D.base.e)),
            "R1": io.emit_matrix(D.R1)}


def _nested3(table, a, b, c):
    return [[[table.get((i, j), {}).get(k, 0) for k in range(c)] for j in range(b)] for i in range(a)]


def cmd_deform(doc, args):
    t = io.parse_rrb(doc)
    bad = _valid_or_report(t, f"deform {args.action}")
    if bad:
        return bad
    if args.action == "classify":
        rep, defs = classify_inf_deformations(t)
        return OK, {"command": "deform classify", "ok": True, "table": rep.as_dict(),
                    "classes": rep.dim_H,
                    "representatives": [io.emit_cochain(c) for c in rep.representatives],
                    "deformations": [_deformation_entry(D) for D in defs]}
    # verify
    if doc.get("deformation") is not None:
        D = _parse_deformation(doc["deformation"], t)
        res = check_truncated(D)
        return (OK if res else FAIL), {"command": "deform verify", "ok": res.ok, "order": D.order,
                                       "result": res.as_dict()}
    c = io.parse_cochain(_need(doc, "cochain"), lambda n: CochainSpace.adjoint(t, n))
    if c.n != 2:
        raise ParseError("deformation cochains have degree 2", "cochain.degree")
    res = check_inf_deformation(deformation_of_cocycle(t, c, check=False))
    return (OK if res else FAIL), {"command": "deform verify", "ok": res.ok, "order": 1,
                                   "result": res.as_dict()}


def _parse_deformation(sec, t):
    terms = sec.get("terms") if isinstance(sec, dict) else None
    if not isinstance(terms, list) or not terms:
        raise ParseError("expected a non-empty list of order terms", "deformation.terms")
    d, e = t.d, t.e
    mus, ls, rs, Rs = [], [], [], []
    for i, term in enumerate(terms):
        p = f"deformation.terms[{i}]"
        if not isinstance(term, dict):
            raise ParseError("expected an object", p)
        mus.append(_tab(_nested(term.get("mu", _zeros(d, d, d)), (d, d, d), f"{p}.mu")))
        ls.append(_tab(_nested(term.get("l", _zeros(d, e, e)), (d, e, e), f"{p}.l")))
        rs.append(_tab(_nested(term.get("r", _zeros(e, d, e)), (e, d, e), f"{p}.r")))
        Rs.append(io.parse_matrix(term.get("R", [[0] * e] * d), d, e, f"{p}.R"))
    return TruncatedDeformation(t, mus, ls, rs, Rs)


def _zeros(a, b, c):
    return [[[0] * c for _ in range(b)] for _ in range(a)]


def _tab(nested):
    out = {}
    for i, row in enumerate(nested):
        for j, col in enumerate(row):
            vals = {k: v for k, v in enumerate(col) if v}
            if vals:
                out[(i, j)] = vals
    return out


def cmd_extend(doc, args):
    t = io.parse_rrb(doc)
    bad = _valid_or_report(t, f"extend {args.action}")
    if bad:
        return bad
    if args.action == "build":
        rep = io.parse_rrb_rep(_need(doc, "rrb_rep"), t)
        c = io.parse_cochain(_need(doc, "cochain"), lambda n: CochainSpace.coefficients(rep, n))
        E = build_extension(t, rep, c, check=False)
        res = check_extension(E)
        return (OK if res else FAIL), {"command": "extend build", "ok": res.ok, "result": res.as_dict(),
                                       "extension": io.emit_extension(E)}
    E = io.parse_extension(_need(doc, "extension"), t, "extension")
    res = check_extension(E)
    if not res:
        return FAIL, {"command": f"extend {args.action}", "ok": False, "result": res.as_dict()}
    if args.action == "extract":
        sec = canonical_section(E)
        if doc.get("section") is not None:
            s = doc["section"]
            d, e, p, q = E.dims
            sec = Section(io.parse_matrix(_need(s, "s"), d + p, d, "section.s"),
                          io.parse_matrix(_need(s, "sbar"), e + q, e, "section.sbar"))
        c = extract_cocycle(E, sec)
        rep = induced_rep_of_extension(E, sec)
        return OK, {"command": "extend extract", "ok": True, "cochain": io.emit_cochain(c),
                    "rrb_rep": io.emit_rrb_rep(rep)}
    E2 = io.parse_extension(_need(doc, "extension2"), t, "extension2")
    res2 = check_extension(E2)
    if not res2:
        return FAIL, {"command": "extend iso", "ok": False, "result": res2.as_dict()}
    d, e, p, q = E.dims
    if doc.get("phi") is not None or doc.get("psi") is not None:
        phi = io.parse_matrix(_need(doc, "phi"), d + p, d + p, "phi")
        psi = io.parse_matrix(_need(doc, "psi"), e + q, e + q, "psi")
        res = check_ext_iso(E, E2, phi, psi)
        return (OK if res else FAIL), {"command": "extend iso", "ok": res.ok, "result": res.as_dict()}
    if induced_rep_of_extension(E) != induced_rep_of_extension(E2):
        return FAIL, {"command": "extend iso", "ok": False,
                      "result": CheckResult(False, (), "the induced representations differ").as_dict()}
    found = find_ext_iso(E, E2)
    if found is None:
        return FAIL, {"command": "extend iso", "ok": False, "isomorphic": False}
    return OK, {"command": "extend iso", "ok": True, "isomorphic": True,
                "phi": io.emit_matrix(found[0]), "psi": io.emit_matrix(found[1])}


COMMANDS = {
    "check": cmd_check,
    "mc-check": cmd_mc_check,
    "cohomology": cmd_cohomology,
    "balavoine": cmd_balavoine,
    "semidirect": cmd_semidirect,
    "dual": cmd_dual,
    "induced": cmd_induced,
    "deform": cmd_deform,
    "extend": cmd_extend,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rrbleib", description="Exact computations for rRB Leibniz algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-i", "--input", default="-", help="input document (default: stdin)")
        sp.add_argument("-o", "--output", default="-", help="report file (default: stdout)")
        sp.add_argument("--convention", choices=(WEIGHTED, UNWEIGHTED), default=WEIGHTED)
        return sp

    add("check", "validate every axiom present in the document")
    add("mc-check", "compare the direct axioms with the Maurer-Cartan equation")
    sp = add("cohomology", "dimensions of Z^n, B^n, H^n and representatives")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--coefficients", choices=("adjoint", "rep"), default="adjoint")
    add("balavoine", "bracket of maps.f and maps.g")
    add("semidirect", "semidirect product with rrb_rep")
    add("dual", "dual of rrb_rep")
    add("induced", "induced Leibniz bracket on V")
    sp = add("deform", "classify or verify infinitesimal deformations")
    sp.add_argument("action", choices=("classify", "verify"))
    sp = add("extend", "abelian extensions")
    sp.add_argument("action", choices=("build", "extract", "iso"))
    return ap


def run(argv=None) -> tuple[int, str]:
    """Run a command and return (exit status, output text); nothing is written."""
    return _execute(build_parser().parse_args(argv))


def _execute(args) -> tuple[int, str]:
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        doc = io.loads(text)
        status, report = COMMANDS[args.command](doc, args)
    except (OSError, RRBError, ValueError) as exc:
        return INPUT_ERROR, f"error: {exc}\n"
    return status, io.dumps(report)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    status, text = _execute(args)
    if status == INPUT_ERROR:
        sys.stderr.write(text)
    elif args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
