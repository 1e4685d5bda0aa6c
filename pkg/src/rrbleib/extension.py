"""Abelian extensions of an rRB Leibniz algebra by a 2-term complex W -S-> h.

Extensions are stored in the split basis: g-hat = g + h (g first) and
V-hat = V + W (V first), with i, p, i-bar, p-bar the canonical inclusions and
projections.  A section is any pair (s, s-bar) of right inverses of p, p-bar.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ._sparse import add_into, bil, lin, matrix_table, vsub
from .cohomology import Cochain, CochainSpace, differential_matrix, from_blocks
from .errors import NotACocycle, NotASection
from .exact import Matrix, rank, solve
from .leibniz import CheckResult, LeibnizAlgebra, LeibnizRep, _fail, check_leibniz, check_rep
from .rrb import RRBLeibniz, RRBMorphism, RRBRep, _as_matrix, check_morphism, check_rrb


def _inclusion(n: int, offset: int, total: int) -> Matrix:
    return Matrix.from_columns(total, [{offset + k: 1} for k in range(n)]) if n else Matrix.zeros(total, 0)


def _projection(n: int, total: int) -> Matrix:
    return Matrix.from_rows([[1 if j == i else 0 for j in range(total)] for i in range(n)]) if n \
        else Matrix.zeros(0, total)


class AbelianExtension:
    """0 -> (W -S-> h) -> (V-hat -R-hat-> g-hat) -> (V -R-> g) -> 0 in the split basis."""

    def __init__(self, base: RRBLeibniz, total: RRBLeibniz, p: int, q: int, S):
        d, e = base.d, base.e
        if total.d != d + p or total.e != e + q:
            raise ValueError("total spaces must be g + h and V + W")
        self.base = base
        self.total = total
        self.dims = (d, e, p, q)
        self.S = _as_matrix(S, p, q, "S")

    @property
    def i(self) -> Matrix:
        d, _, p, _ = self.dims
        return _inclusion(p, d, d + p)

    @property
    def p(self) -> Matrix:
        d, _, p, _ = self.dims
        return _projection(d, d + p)

    @property
    def ibar(self) -> Matrix:
        _, e, _, q = self.dims
        return _inclusion(q, e, e + q)

    @property
    def pbar(self) -> Matrix:
        _, e, _, q = self.dims
        return _projection(e, e + q)

    def __repr__(self):
        return "AbelianExtension(d={}, e={}, p={}, q={})".format(*self.dims)


def check_extension(ext: AbelianExtension) -> CheckResult:
    """Total space is an rRB Leibniz algebra, p and p-bar form a morphism onto the base,
    i and i-bar a morphism from the abelian complex, h is abelian and acts trivially on W."""
    T, t = ext.total, ext.base
    d, e, p, q = ext.dims
    for name, res in (("total bracket", check_leibniz(T.alg)), ("total representation", check_rep(T.rep)),
                      ("total operator", check_rrb(T))):
        if not res:
            return _fail(f"{name}: {res.detail}", res.witness or (), res.lhs, res.rhs)
    res = check_morphism(RRBMorphism(T, t, ext.p, ext.pbar))
    if not res:
        return _fail(f"projection: {res.detail}", res.witness or (), res.lhs, res.rhs)
    for k, m in product(range(p), repeat=2):
        val = T.alg.bracket({d + k: 1}, {d + m: 1})
        if val:
            return _fail("h is not abelian in g-hat", (f"h{k + 1}", f"h{m + 1}"), val, {})
    for k, j in product(range(p), range(q)):
        H, w = {d + k: 1}, {e + j: 1}
        for detail, val in (("l(h,w) = 0", T.rep.l(H, w)), ("r(w,h) = 0", T.rep.r(w, H))):
            if val:
                return _fail(f"W is not a trivial h-representation: {detail}", (f"h{k + 1}", f"w{j + 1}"), val, {})
    for j in range(q):
        lhs = T.Rv({e + j: 1})
        rhs = {d + k: c for k, c in lin(matrix_table(ext.S), {j: 1}).items()}
        if vsub(lhs, rhs):
            return _fail("R-hat restricted to W is S", (f"w{j + 1}",), lhs, rhs)
    return CheckResult.passed()


@dataclass(frozen=True)
class Section:
    s: Matrix
    sbar: Matrix


def canonical_section(ext: AbelianExtension) -> Section:
    d, e, p, q = ext.dims
    return Section(_inclusion(d, 0, d + p), _inclusion(e, 0, e + q))


def check_section(ext: AbelianExtension, sec: Section) -> None:
    d, e, p, q = ext.dims
    if sec.s.shape != (d + p, d) or sec.sbar.shape != (e + q, e):
        raise NotASection("section matrices have the wrong shape")
    if ext.p @ sec.s != Matrix.identity(d) or (e and ext.pbar @ sec.sbar != Matrix.identity(e)):
        raise NotASection("p s = id and p-bar s-bar = id must hold")


def section_from_shift(ext: AbelianExtension, kappa, eta) -> Section:
    """s(x) = (x, kappa x), s-bar(v) = (v, eta v) for kappa: g -> h, eta: V -> W."""
    d, e, p, q = ext.dims
    K = _as_matrix(kappa, p, d, "kappa")
    E = _as_matrix(eta, q, e, "eta")
    s = Matrix.from_rows([[1 if i == j else 0 for j in range(d)] for i in range(d)] + K.tolist()) if d + p \
        else Matrix.zeros(0, d)
    sbar = Matrix.from_rows([[1 if i == j else 0 for j in range(e)] for i in range(e)] + E.tolist()) if e + q \
        else Matrix.zeros(0, e)
    return Section(s, sbar)


def build_extension(t: RRBLeibniz, rep: RRBRep, c: Cochain, *, check: bool = True) -> AbelianExtension:
    """g-hat = g + h, V-hat = V + W with the brackets and actions corrected by (alpha, beta, gamma)."""
    d, e, p, q = t.d, t.e, rep.p, rep.q
    if c.space != CochainSpace.coefficients(rep, 2):
        raise NotACocycle("expected a 2-cochain with values in the given representation")
    if check and any(differential_matrix(t, 2, rep) @ c.vector()):
        raise NotACocycle("the cochain is not closed")
    mu = {key: dict(col) for key, col in t.alg.table.items()}
    for (i, k), col in rep.h.left.items():
        add_into(mu.setdefault((i, d + k), {}), {d + m: v for m, v in col.items()})
    for (k, i), col in rep.h.right.items():
        add_into(mu.setdefault((d + k, i), {}), {d + m: v for m, v in col.items()})
    for ((x, y), k), v in c.alpha.items():
        add_into(mu.setdefault((x, y), {}), {d + k: v})
    left = {key: dict(col) for key, col in t.rep.left.items()}
    right = {key: dict(col) for key, col in t.rep.right.items()}
    for (i, j), col in rep.W.left.items():
        add_into(left.setdefault((i, e + j), {}), {e + m: v for m, v in col.items()})
    for (k, a), col in rep.pr.items():
        add_into(left.setdefault((d + k, a), {}), {e + m: v for m, v in col.items()})
    for (a, k), col in rep.pl.items():
        add_into(right.setdefault((a, d + k), {}), {e + m: v for m, v in col.items()})
    for (j, i), col in rep.W.right.items():
        add_into(right.setdefault((e + j, i), {}), {e + m: v for m, v in col.items()})
    for ((x, y), j), v in c.beta.items():
        if x < d:
            add_into(left.setdefault((x, y - d), {}), {e + j: v})
        else:
            add_into(right.setdefault((x - d, y), {}), {e + j: v})
    mu = {k: col for k, col in mu.items() if col}
    left = {k: col for k, col in left.items() if col}
    right = {k: col for k, col in right.items() if col}
    alg = LeibnizAlgebra(d + p, mu, check=False)
    V = LeibnizRep(alg, e + q, left, right, check=False)
    rows = [[0] * (e + q) for _ in range(d + p)]
    for i, a in product(range(d), range(e)):
        rows[i][a] = t.R[i, a]
    for k, j in product(range(p), range(q)):
        rows[d + k][e + j] = rep.S[k, j]
    for ((v,), k), val in c.gamma.items():
        rows[d + k][v - d] += val
    Rhat = Matrix.from_rows(rows) if d + p else Matrix.zeros(0, e + q)
    return AbelianExtension(t, RRBLeibniz(alg, V, Rhat, check=False), p, q, rep.S)


def _sect_vectors(sec: Section):
    return matrix_table(sec.s), matrix_table(sec.sbar)


def _h_part(vec: dict, d: int) -> dict:
    return {k - d: c for k, c in vec.items() if k >= d}


def extract_cocycle(ext: AbelianExtension, sec: Section | None = None) -> Cochain:
    """(alpha, beta, gamma) measured by a section: the failure of s, s-bar to be a morphism."""
    sec = sec or canonical_section(ext)
    check_section(ext, sec)
    T, t = ext.total, ext.base
    d, e, p, q = ext.dims
    s, sb = _sect_vectors(sec)
    sp = CochainSpace(d, e, p, q, 2)

    def S(x):
        return s.get(x, {})

    def SB(a):
        return sb.get(a, {})

    alpha, beta, gamma = {}, {}, {}
    for x, y in product(range(d), repeat=2):
        val = vsub(T.alg.bracket(S(x), S(y)), lin(s, t.alg.bracket({x: 1}, {y: 1})))
        for k, v in _h_part(val, d).items():
            alpha[((x, y), k)] = v
    for x, a in product(range(d), range(e)):
        val = vsub(T.rep.l(S(x), SB(a)), lin(sb, t.rep.l({x: 1}, {a: 1})))
        for j, v in _h_part(val, e).items():
            beta[((x, d + a), j)] = v
        val = vsub(T.rep.r(SB(a), S(x)), lin(sb, t.rep.r({a: 1}, {x: 1})))
        for j, v in _h_part(val, e).items():
            beta[((d + a, x), j)] = v
    for a in range(e):
        val = vsub(T.Rv(SB(a)), lin(s, t.Rv({a: 1})))
        for k, v in _h_part(val, d).items():
            gamma[((d + a,), k)] = v
    return from_blocks(sp, alpha, beta, gamma)


def induced_rep_of_extension(ext: AbelianExtension, sec: Section | None = None, *,
                             check: bool = False) -> RRBRep:
    """The representation on (W -S-> h) read off through a section."""
    sec = sec or canonical_section(ext)
    check_section(ext, sec)
    T, t = ext.total, ext.base
    d, e, p, q = ext.dims
    s, sb = _sect_vectors(sec)
    lh, rh, lW, rW, pl, pr = {}, {}, {}, {}, {}, {}
    for x, k in product(range(d), range(p)):
        H = {d + k: 1}
        _put(lh, (x, k), _h_part(T.alg.bracket(s.get(x, {}), H), d))
        _put(rh, (k, x), _h_part(T.alg.bracket(H, s.get(x, {})), d))
    for x, j in product(range(d), range(q)):
        w = {e + j: 1}
        _put(lW, (x, j), _h_part(T.rep.l(s.get(x, {}), w), e))
        _put(rW, (j, x), _h_part(T.rep.r(w, s.get(x, {})), e))
    for a, k in product(range(e), range(p)):
        H = {d + k: 1}
        _put(pl, (a, k), _h_part(T.rep.r(sb.get(a, {}), H), e))
        _put(pr, (k, a), _h_part(T.rep.l(H, sb.get(a, {})), e))
    h_rep = LeibnizRep(t.alg, p, lh, rh, check=False)
    W_rep = LeibnizRep(t.alg, q, lW, rW, check=False)
    return RRBRep(t, h_rep, W_rep, ext.S, pl, pr, check=check)


def _put(table, key, val):
    if val:
        table[key] = val


def check_ext_iso(E1: AbelianExtension, E2: AbelianExtension, phi, psi) -> CheckResult:
    """(phi, psi) is an rRB isomorphism E1 -> E2 that is the identity on h, W and over g, V."""
    if E1.dims != E2.dims or E1.base != E2.base:
        return _fail("extensions of different data", ())
    d, e, p, q = E1.dims
    phi = _as_matrix(phi, d + p, d + p, "phi")
    psi = _as_matrix(psi, e + q, e + q, "psi")
    if rank(phi) != d + p or rank(psi) != e + q:
        return _fail("phi, psi must be invertible", ())
    if phi @ E1.i != E2.i or E2.p @ phi != E1.p:
        return _fail("phi does not commute with i and p", ())
    if psi @ E1.ibar != E2.ibar or E2.pbar @ psi != E1.pbar:
        return _fail("psi does not commute with i-bar and p-bar", ())
    res = check_morphism(RRBMorphism(E1.total, E2.total, phi, psi))
    if not res:
        return res
    return CheckResult.passed()


def iso_from_shift(ext: AbelianExtension, kappa, eta) -> tuple[Matrix, Matrix]:
    """phi(x, h) = (x, h + kappa x), psi(v, w) = (v, w + eta v)."""
    d, e, p, q = ext.dims
    K = _as_matrix(kappa, p, d, "kappa").tolist()
    E = _as_matrix(eta, q, e, "eta").tolist()
    phi = [[1 if i == j else 0 for j in range(d + p)] for i in range(d + p)]
    psi = [[1 if i == j else 0 for j in range(e + q)] for i in range(e + q)]
    for k, x in product(range(p), range(d)):
        phi[d + k][x] = K[k][x]
    for j, a in product(range(q), range(e)):
        psi[e + j][a] = E[j][a]
    return (Matrix.from_rows(phi) if phi else Matrix.zeros(0, 0),
            Matrix.from_rows(psi) if psi else Matrix.zeros(0, 0))


def shift_of_vector(ext: AbelianExtension, vec) -> tuple[Matrix, Matrix]:
    """Split a degree-1 coefficient cochain vector into (kappa, eta) matrices."""
    d, e, p, q = ext.dims
    c = Cochain.from_vector(CochainSpace(d, e, p, q, 1), vec)
    K = [[0] * d for _ in range(p)]
    E = [[0] * e for _ in range(q)]
    for ((x,), k), v in c.alpha.items():
        K[k][x] = v
    for ((a,), j), v in c.beta.items():
        E[j][a - d] = v
    return (Matrix.from_rows(K) if p else Matrix.zeros(0, d), Matrix.from_rows(E) if q else Matrix.zeros(0, e))


def find_ext_iso(E1: AbelianExtension, E2: AbelianExtension, rep: RRBRep | None = None):
    """An isomorphism E1 -> E2 of the form (x,h) -> (x, h + kappa x), (v,w) -> (v, w + eta v), or None.

    Solves (alpha, beta, gamma) - (alpha', beta', gamma') = delta'(kappa, eta) over the
    canonical sections.
    """
    rep = rep or induced_rep_of_extension(E1)
    diff = extract_cocycle(E1) - extract_cocycle(E2)
    x = solve(differential_matrix(E1.base, 1, rep), diff.vector())
    if x is None:
        return None
    kappa, eta = shift_of_vector(E1, x)
    return iso_from_shift(E1, kappa, eta)


__all__ = [
    "AbelianExtension", "Section", "check_extension", "canonical_section", "check_section",
    "section_from_shift", "build_extension", "extract_cocycle", "induced_rep_of_extension",
    "check_ext_iso", "iso_from_shift", "shift_of_vector", "find_ext_iso",
]
