"""JSON documents for algebras, representations, operators, cochains and extensions.

Scalars are strings ``"p/q"`` (or ``"p"``); plain JSON integers are accepted on
input, binary floats are not.  :func:`dumps` is canonical (sorted keys, two
space indent, trailing newline), so ``dumps(emit(parse(doc)))`` is stable.

A scenario document looks like::

    {"field": "Q",
     "g": {"dim": 2, "bracket": [[["0", "1"], ...], ...]},     # c[i][j][k]
     "rep": {"dim": 2, "left": ..., "right": ...},             # L[i][a][b], Rt[a][i][b]
     "R": [["0", "0"], ["1", "0"]],                           # d x e, column a = R(f_a)
     "rrb_rep": {"h": {...}, "W": {...}, "S": ..., "pairing_l": ..., "pairing_r": ...},
     "cochain": {"degree": 2, "alpha": [[[0, 0], 1, "1"]], "beta": [], "gamma": []}}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cohomology import Cochain, CochainSpace
from .errors import MissingInput, ParseError, ShapeError
from .exact import Matrix
from .extension import AbelianExtension
from .leibniz import LeibnizAlgebra, LeibnizRep
from .multimap import MultiMap, SpaceSpec
from .rrb import RRBLeibniz, RRBRep

FIELD = "Q"


# -- scalars --------------------------------------------------------------------


def fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar(x, path: str = ""):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected a rational string, got {x!r}", path)
    if isinstance(x, int):
        return x
    if not isinstance(x, str):
        raise ParseError(f"expected a rational string, got {type(x).__name__}", path)
    try:
        f = Fraction(x.strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {x!r}", path) from None
    except ValueError:
        raise ParseError(f"not a rational number: {x!r}", path) from None
    return f.numerator if f.denominator == 1 else f


def _nested(arr, dims: tuple, path: str):
    """Parse a nested array of scalars of the given shape."""
    if not dims:
        return scalar(arr, path)
    n = dims[0]
    if not isinstance(arr, list) or len(arr) != n:
        got = len(arr) if isinstance(arr, list) else type(arr).__name__
        raise ShapeError(path, n, got)
    return [_nested(a, dims[1:], f"{path}[{i}]") for i, a in enumerate(arr)]


def _emit_nested(arr):
    if isinstance(arr, list):
        return [_emit_nested(a) for a in arr]
    return fmt(arr)


def _dim(sec: dict, path: str, minimum: int = 0) -> int:
    if not isinstance(sec, dict):
        raise ParseError("expected an object", path)
    if "dim" not in sec:
        raise ParseError("missing field", f"{path}.dim")
    d = sec["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < minimum:
        raise ParseError(f"dimension must be an integer >= {minimum}", f"{path}.dim")
    return d


def _need(doc: dict, key: str):
    if key not in doc or doc[key] is None:
        raise MissingInput(key)
    return doc[key]


# -- algebras and representations --------------------------------------------------


def parse_algebra(sec: dict, path: str = "g") -> LeibnizAlgebra:
    d = _dim(sec, path, 1)
    consts = _nested(sec.get("bracket", [[[0] * d] * d] * d), (d, d, d), f"{path}.bracket")
    return LeibnizAlgebra(d, consts, check=False)


def emit_algebra(alg: LeibnizAlgebra) -> dict:
    return {"dim": alg.dim, "bracket": _emit_nested(alg.constants())}


def parse_rep(sec: dict, alg: LeibnizAlgebra, path: str = "rep") -> LeibnizRep:
    e = _dim(sec, path)
    d = alg.dim
    left = _nested(sec.get("left", [[[0] * e] * e] * d), (d, e, e), f"{path}.left")
    right = _nested(sec.get("right", [[[0] * e] * d] * e), (e, d, e), f"{path}.right")
    return LeibnizRep(alg, e, left, right, check=False)


def emit_rep(rep: LeibnizRep) -> dict:
    return {"dim": rep.dim, "left": _emit_nested(rep.left_constants()),
            "right": _emit_nested(rep.right_constants())}


def parse_matrix(arr, rows: int, cols: int, path: str) -> Matrix:
    m = _nested(arr, (rows, cols), path)
    return Matrix(rows, cols, [x for r in m for x in r])


def emit_matrix(m: Matrix) -> list:
    return _emit_nested(m.tolist())


def parse_rrb(doc: dict) -> RRBLeibniz:
    """g, rep (default: zero-dimensional) and R (default: zero)."""
    alg = parse_algebra(_need(doc, "g"))
    rep = parse_rep(doc["rep"], alg) if doc.get("rep") is not None else LeibnizRep(alg, 0, check=False)
    if doc.get("R") is not None:
        R = parse_matrix(doc["R"], alg.dim, rep.dim, "R")
    else:
        R = Matrix.zeros(alg.dim, rep.dim)
    return RRBLeibniz(alg, rep, R, check=False)


def emit_rrb(t: RRBLeibniz) -> dict:
    return {"g": emit_algebra(t.alg), "rep": emit_rep(t.rep), "R": emit_matrix(t.R)}


def parse_rrb_rep(sec: dict, t: RRBLeibniz, path: str = "rrb_rep") -> RRBRep:
    if not isinstance(sec, dict):
        raise ParseError("expected an object", path)
    h = parse_rep(_field(sec, "h", path), t.alg, f"{path}.h")
    W = parse_rep(_field(sec, "W", path), t.alg, f"{path}.W")
    e, p, q = t.e, h.dim, W.dim
    S = parse_matrix(sec.get("S", [[0] * q] * p), p, q, f"{path}.S")
    pl = _nested(sec.get("pairing_l", [[[0] * q] * p] * e), (e, p, q), f"{path}.pairing_l")
    pr = _nested(sec.get("pairing_r", [[[0] * q] * e] * p), (p, e, q), f"{path}.pairing_r")
    return RRBRep(t, h, W, S, pl, pr, check=False)


def _field(sec, key, path):
    if key not in sec:
        raise ParseError("missing field", f"{path}.{key}")
    return sec[key]


def emit_rrb_rep(rep: RRBRep) -> dict:
    return {"h": emit_rep(rep.h), "W": emit_rep(rep.W), "S": emit_matrix(rep.S),
            "pairing_l": _emit_nested(rep.pairing_l_constants()),
            "pairing_r": _emit_nested(rep.pairing_r_constants())}


# -- sparse term lists: multilinear maps and cochains --------------------------------


def _terms(entries, path: str, arity: int, n_in: int, n_out: int) -> dict:
    if not isinstance(entries, list):
        raise ParseError("expected a list of [inputs, output, value] terms", path)
    out = {}
    for k, ent in enumerate(entries):
        p = f"{path}[{k}]"
        if not isinstance(ent, list) or len(ent) != 3 or not isinstance(ent[0], list):
            raise ParseError("expected [inputs, output, value]", p)
        inp, o, val = ent
        if len(inp) != arity:
            raise ShapeError(f"{p}.inputs", arity, len(inp))
        if any(isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n_in for i in inp):
            raise ParseError(f"input indices must lie in 0..{n_in - 1}", p)
        if isinstance(o, bool) or not isinstance(o, int) or not 0 <= o < n_out:
            raise ParseError(f"output index must lie in 0..{n_out - 1}", p)
        key = (tuple(inp), o)
        if key in out:
            raise ParseError("duplicate term", p)
        c = scalar(val, f"{p}.value")
        if c:
            out[key] = c
    return out


def _emit_terms(items) -> list:
    return [[list(inp), o, fmt(c)] for (inp, o), c in sorted(items)]


def parse_multimap(sec: dict, path: str = "map") -> MultiMap:
    if not isinstance(sec, dict):
        raise ParseError("expected an object", path)
    dg, dv = _dim({"dim": sec.get("dim_g")}, f"{path}.dim_g"), _dim({"dim": sec.get("dim_v")}, f"{path}.dim_v")
    arity = _dim({"dim": sec.get("arity")}, f"{path}.arity", 1)
    space = SpaceSpec(dg, dv)
    terms = _terms(sec.get("terms", []), f"{path}.terms", arity, dg + dv, dg + dv)
    return MultiMap(space, arity, terms)


def emit_multimap(f: MultiMap) -> dict:
    return {"dim_g": f.space.dim_g, "dim_v": f.space.dim_v, "arity": f.arity,
            "terms": _emit_terms(f.items())}


def parse_cochain(sec: dict, space_of, path: str = "cochain") -> Cochain:
    """``space_of(n)`` gives the cochain space for the declared degree."""
    if not isinstance(sec, dict):
        raise ParseError("expected an object", path)
    n = _dim({"dim": sec.get("degree")}, f"{path}.degree", 1)
    sp: CochainSpace = space_of(n)
    d, e = sp.d, sp.e
    vals = {}
    for block, arity, width in (("alpha", n, sp.p), ("beta", n, sp.q), ("gamma", n - 1, sp.p)):
        if block == "gamma" and n < 2:
            if sec.get(block):
                raise ParseError("degree-1 cochains have no gamma block", f"{path}.gamma")
            continue
        for (inp, o), c in _terms(sec.get(block, []), f"{path}.{block}", arity, d + e, width).items():
            key = (block, inp, o)
            if key not in sp.index:
                raise ParseError(f"inputs {list(inp)} are not valid for the {block} block", f"{path}.{block}")
            vals[key] = c
    return Cochain(sp, vals)


def emit_cochain(c: Cochain) -> dict:
    out = {"degree": c.n}
    for block in ("alpha", "beta", "gamma"):
        if block == "gamma" and c.n < 2:
            continue
        out[block] = _emit_terms(c.block(block).items())
    return out


# -- documents ------------------------------------------------------------------


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("field", FIELD) != FIELD:
        raise ParseError("only the rationals are supported", "field")
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def scenario_document(t: RRBLeibniz, rep: RRBRep | None = None, **extra) -> dict:
    doc = {"field": FIELD, **emit_rrb(t)}
    if rep is not None:
        doc["rrb_rep"] = emit_rrb_rep(rep)
    doc.update(extra)
    return doc


def parse_extension(sec, t: RRBLeibniz, path: str = "extension") -> AbelianExtension:
    """{"h_dim", "W_dim", "S", "total": {g, rep, R}} in the split basis g + h, V + W."""
    if not isinstance(sec, dict):
        raise MissingInput(path)
    p = _dim({"dim": sec.get("h_dim")}, f"{path}.h_dim")
    q = _dim({"dim": sec.get("W_dim")}, f"{path}.W_dim")
    total = parse_rrb(_need(sec, "total"))
    if total.d != t.d + p or total.e != t.e + q:
        raise ShapeError(f"{path}.total", (t.d + p, t.e + q), (total.d, total.e))
    S = parse_matrix(sec.get("S", [[0] * q] * p), p, q, f"{path}.S")
    return AbelianExtension(t, total, p, q, S)


def emit_extension(E: AbelianExtension) -> dict:
    d, e, p, q = E.dims
    return {"h_dim": p, "W_dim": q, "S": emit_matrix(E.S), "total": emit_rrb(E.total)}


# sections handled by roundtrip; anything else is copied through unchanged
_PARSED = ("field", "g", "rep", "R", "rrb_rep", "cochain", "extension", "extension2", "maps")


def roundtrip(text: str) -> str:
    """Parse a document and emit every recognised section canonically."""
    doc = loads(text)
    out = {k: v for k, v in doc.items() if k not in _PARSED}
    out["field"] = FIELD
    if "maps" in doc:
        maps = _need(doc, "maps")
        if not isinstance(maps, dict):
            raise ParseError("expected an object of maps", "maps")
        out["maps"] = {k: emit_multimap(parse_multimap(v, f"maps.{k}")) for k, v in maps.items()}
    if "g" not in doc:
        return dumps(out)
    t = parse_rrb(doc)
    out.update(emit_rrb(t))
    rep = None
    if doc.get("rrb_rep") is not None:
        rep = parse_rrb_rep(doc["rrb_rep"], t)
        out["rrb_rep"] = emit_rrb_rep(rep)
    if doc.get("cochain") is not None:
        out["cochain"] = emit_cochain(parse_cochain(doc["cochain"], _space_of(t, rep)))
    for key in ("extension", "extension2"):
        if doc.get(key) is not None:
            out[key] = emit_extension(parse_extension(doc[key], t, key))
    return dumps(out)


def _space_of(t, rep):
    if rep is None:
        return lambda n: CochainSpace.adjoint(t, n)
    return lambda n: CochainSpace.coefficients(rep, n)


__all__ = [
    "fmt", "scalar", "parse_algebra", "emit_algebra", "parse_rep", "emit_rep", "parse_matrix",
    "emit_matrix", "parse_rrb", "emit_rrb", "parse_rrb_rep", "emit_rrb_rep", "parse_multimap",
    "emit_multimap", "parse_cochain", "emit_cochain", "parse_extension", "emit_extension", "loads", "dumps", "scenario_document", "roundtrip",
]
