"""Relative Rota-Baxter operators, rRB Leibniz algebras and their representations.

An rRB Leibniz algebra is a triple (g, V, R) with R: V -> g satisfying
``[Rv, Rv'] = R(l_V(Rv, v') + r_V(v, Rv'))``.  R is stored as a ``d x e``
matrix whose column a is R(f_a).

A representation (W -S-> h, l, r) carries two g-representations h (dim p)
and W (dim q), a map S: W -> h (``p x q`` matrix) and pairings
``l(f_a, h_k) = sum_j pl[(a, k)][j] w_j`` and ``r(h_k, f_a) = sum_j pr[(k, a)][j] w_j``.
"""

from __future__ import annotations

from itertools import product

from ._sparse import add_into, bil, clean_table, lin, matrix_table, nested_from_tensor, vsub
from .errors import AxiomError
from .exact import Matrix, as_rational
from .leibniz import (
    CheckResult, LeibnizAlgebra, LeibnizRep, _fail, adjoint_rep, check_leibniz, check_rep,
    dual_rep, pi_map,
)
from .multimap import MultiMap, SpaceSpec


def _as_matrix(m, rows, cols, name) -> Matrix:
    from .errors import ShapeError

    if not isinstance(m, Matrix):
        m = Matrix.from_rows(m) if rows else Matrix.zeros(rows, cols)
    if m.shape != (rows, cols):
        raise ShapeError(name, (rows, cols), m.shape)
    return m


def _g(i):
    return f"e{i + 1}"


def _v(a):
    return f"f{a + 1}"


class RRBLeibniz:
    """The triple V -R-> g.  ``check=True`` validates every axiom on construction."""

    def __init__(self, alg: LeibnizAlgebra, rep: LeibnizRep, R, *, check: bool = True):
        if rep.alg != alg:
            raise ValueError("representation is over a different algebra")
        self.alg = alg
        self.rep = rep
        self.R = _as_matrix(R, alg.dim, rep.dim, "R")
        self._Rt = matrix_table(self.R)
        if check:
            for res in (check_leibniz(alg), check_rep(rep), check_rrb(self)):
                if not res:
                    raise AxiomError(res.detail, res.witness)

    @property
    def d(self) -> int:
        return self.alg.dim

    @property
    def e(self) -> int:
        return self.rep.dim

    @property
    def space(self) -> SpaceSpec:
        return SpaceSpec(self.d, self.e)

    def Rv(self, v: dict) -> dict:
        return lin(self._Rt, v)

    def pi(self) -> MultiMap:
        return pi_map(self.alg, self.rep)

    def R_map(self) -> MultiMap:
        """R as a map of bidegree -1|1 on g + V."""
        d = self.d
        terms = {((d + a,), i): c for a, col in self._Rt.items() for i, c in col.items()}
        return MultiMap(self.space, 1, terms)

    def __eq__(self, other):
        return (isinstance(other, RRBLeibniz) and self.alg == other.alg
                and self.rep == other.rep and self.R == other.R)

    def __repr__(self):
        return f"RRBLeibniz(d={self.d}, e={self.e})"


def check_rrb(t: RRBLeibniz) -> CheckResult:
    """[Rv, Rv'] = R(l_V(Rv, v') + r_V(v, Rv')) on all basis pairs."""
    br, l, r, R = t.alg.bracket, t.rep.l, t.rep.r, t.Rv
    for a, b in product(range(t.e), repeat=2):
        v, w = {a: 1}, {b: 1}
        Ra, Rb = R(v), R(w)
        lhs = br(Ra, Rb)
        rhs = R(add_into(l(Ra, w), r(v, Rb)))
        if vsub(lhs, rhs):
            return _fail("[Rv,Rv'] != R(l(Rv,v') + r(v,Rv'))", (_v(a), _v(b)), lhs, rhs)
    return CheckResult.passed()


def check_all(t: RRBLeibniz) -> dict:
    return {
        "leibniz": check_leibniz(t.alg),
        "representation": check_rep(t.rep),
        "relative_rota_baxter": check_rrb(t),
    }


def induced_bracket(t: RRBLeibniz, *, check: bool = False) -> LeibnizAlgebra:
    """The Leibniz algebra V_R with [v, v']_R = l_V(Rv, v') + r_V(v, Rv')."""
    table = {}
    for a, b in product(range(t.e), repeat=2):
        v, w = {a: 1}, {b: 1}
        val = add_into(t.rep.l(t.Rv(v), w), t.rep.r(v, t.Rv(w)))
        if val:
            table[(a, b)] = val
    if t.e == 0:
        raise ValueError("V_R needs dim V >= 1")
    return LeibnizAlgebra(t.e, table, check=check)


class RRBMorphism:
    def __init__(self, source: RRBLeibniz, target: RRBLeibniz, phi, psi):
        self.source = source
        self.target = target
        self.phi = _as_matrix(phi, target.d, source.d, "phi")
        self.psi = _as_matrix(psi, target.e, source.e, "psi")


def check_morphism(m: RRBMorphism) -> CheckResult:
    s, t = m.source, m.target
    phi, psi = matrix_table(m.phi), matrix_table(m.psi)
    for x, y in product(range(s.d), repeat=2):
        X, Y = {x: 1}, {y: 1}
        lhs = lin(phi, s.alg.bracket(X, Y))
        rhs = t.alg.bracket(lin(phi, X), lin(phi, Y))
        if vsub(lhs, rhs):
            return _fail("phi[x,y] != [phi x, phi y]", (_g(x), _g(y)), lhs, rhs)
    for x, a in product(range(s.d), range(s.e)):
        X, v = {x: 1}, {a: 1}
        lhs = lin(psi, s.rep.l(X, v))
        rhs = t.rep.l(lin(phi, X), lin(psi, v))
        if vsub(lhs, rhs):
            return _fail("psi l(x,v) != l'(phi x, psi v)", (_g(x), _v(a)), lhs, rhs)
        lhs = lin(psi, s.rep.r(v, X))
        rhs = t.rep.r(lin(psi, v), lin(phi, X))
        if vsub(lhs, rhs):
            return _fail("psi r(v,x) != r'(psi v, phi x)", (_v(a), _g(x)), lhs, rhs)
    for a in range(s.e):
        v = {a: 1}
        lhs = lin(phi, s.Rv(v))
        rhs = t.Rv(lin(psi, v))
        if vsub(lhs, rhs):
            return _fail("phi R != R' psi", (_v(a),), lhs, rhs)
    return CheckResult.passed()


def _pairing(arr, dims, name):
    from ._sparse import tensor_from_nested

    if arr is None:
        return {}
    if isinstance(arr, dict):
        return clean_table(arr)
    return tensor_from_nested(arr, dims, name)


class RRBRep:
    """A representation (W -S-> h, l, r) of an rRB Leibniz algebra ``over``."""

    def __init__(self, over: RRBLeibniz, h_rep: LeibnizRep, W_rep: LeibnizRep, S,
                 pairing_l=None, pairing_r=None, *, check: bool = True):
        if h_rep.alg != over.alg or W_rep.alg != over.alg:
            raise ValueError("h and W must be representations of the base algebra")
        self.over = over
        self.h = h_rep
        self.W = W_rep
        self.S = _as_matrix(S, h_rep.dim, W_rep.dim, "S")
        self._St = matrix_table(self.S)
        e, p, q = over.e, h_rep.dim, W_rep.dim
        self.pl = _pairing(pairing_l, (e, p, q), "pairing_l")
        self.pr = _pairing(pairing_r, (p, e, q), "pairing_r")
        if check:
            for res in (check_rep(h_rep), check_rep(W_rep), check_rrb_rep(self)):
                if not res:
                    raise AxiomError(res.detail, res.witness)

    @property
    def p(self) -> int:
        return self.h.dim

    @property
    def q(self) -> int:
        return self.W.dim

    def Sw(self, w: dict) -> dict:
        return lin(self._St, w)

    def l(self, v: dict, h: dict) -> dict:
        return bil(self.pl, v, h)

    def r(self, h: dict, v: dict) -> dict:
        return bil(self.pr, h, v)

    def pairing_l_constants(self):
        return nested_from_tensor(self.pl, (self.over.e, self.p, self.q))

    def pairing_r_constants(self):
        return nested_from_tensor(self.pr, (self.p, self.over.e, self.q))

    def __eq__(self, other):
        return (isinstance(other, RRBRep) and self.over == other.over and self.h == other.h
                and self.W == other.W and self.S == other.S and self.pl == other.pl
                and self.pr == other.pr)

    def __repr__(self):
        return f"RRBRep(p={self.p}, q={self.q})"


def check_rrb_rep(rep: RRBRep) -> CheckResult:
    """Six pairing identities on basis triples and two Rota-Baxter identities on pairs."""
    t = rep.over
    lV, rV = t.rep.l, t.rep.r
    lh, rh = rep.h.l, rep.h.r
    lW, rW = rep.W.l, rep.W.r
    l, r, S, R = rep.l, rep.r, rep.Sw, t.Rv
    for x, a, k in product(range(t.d), range(t.e), range(rep.p)):
        X, v, h = {x: 1}, {a: 1}, {k: 1}
        w = (_g(x), _v(a), f"h{k + 1}")
        checks = (
            ("l_W(x,l(v,h)) = l(l_V(x,v),h) + l(v,l_h(x,h))",
             lW(X, l(v, h)), add_into(l(lV(X, v), h), l(v, lh(X, h)))),
            ("l(v,l_h(x,h)) = l(r_V(v,x),h) + l_W(x,l(v,h))",
             l(v, lh(X, h)), add_into(l(rV(v, X), h), lW(X, l(v, h)))),
            ("l(v,r_h(h,x)) = r_W(l(v,h),x) + r(h,r_V(v,x))",
             l(v, rh(h, X)), add_into(rW(l(v, h), X), r(h, rV(v, X)))),
            ("l_W(x,r(h,v)) = r(l_h(x,h),v) + r(h,l_V(x,v))",
             lW(X, r(h, v)), add_into(r(lh(X, h), v), r(h, lV(X, v)))),
            ("r(h,l_V(x,v)) = r(r_h(h,x),v) + l_W(x,r(h,v))",
             r(h, lV(X, v)), add_into(r(rh(h, X), v), lW(X, r(h, v)))),
            ("r(h,r_V(v,x)) = r_W(r(h,v),x) + l(v,r_h(h,x))",
             r(h, rV(v, X)), add_into(rW(r(h, v), X), l(v, rh(h, X)))),
        )
        for detail, lhs, rhs in checks:
            if vsub(lhs, rhs):
                return _fail(detail, w, lhs, rhs)
    for a, j in product(range(t.e), range(rep.q)):
        v, wv = {a: 1}, {j: 1}
        w = (_v(a), f"w{j + 1}")
        Rv, Sw = R(v), S(wv)
        lhs = lh(Rv, Sw)
        rhs = S(add_into(lW(Rv, wv), l(v, Sw)))
        if vsub(lhs, rhs):
            return _fail("l_h(Rv,Sw) = S(l_W(Rv,w) + l(v,Sw))", w, lhs, rhs)
        lhs = rh(Sw, Rv)
        rhs = S(add_into(r(Sw, v), rW(wv, Rv)))
        if vsub(lhs, rhs):
            return _fail("r_h(Sw,Rv) = S(r(Sw,v) + r_W(w,Rv))", w, lhs, rhs)
    return CheckResult.passed()


def adjoint_rrb_rep(t: RRBLeibniz, *, check: bool = False) -> RRBRep:
    """(V -R-> g, l_ad = r_V, r_ad = l_V) with h = g adjoint and W = V."""
    return RRBRep(t, adjoint_rep(t.alg), t.rep, t.R,
                  dict(t.rep.right), dict(t.rep.left), check=check)


def trivial_rrb_rep(t: RRBLeibniz, p: int, q: int, S=None) -> RRBRep:
    from .leibniz import trivial_rep

    if S is None:
        S = Matrix.zeros(p, q)
    return RRBRep(t, trivial_rep(t.alg, p), trivial_rep(t.alg, q), S, {}, {}, check=False)


def dual_rrb_rep(rep: RRBRep, *, check: bool = False) -> RRBRep:
    """(h* -(-S*)-> W*, l*, r*) with l*(v,f)(h) = -f(l(v,h)) and r*(f,v)(h) = f(l(v,h) + r(h,v))."""
    pl: dict = {}
    pr: dict = {}
    for (a, k), col in rep.pl.items():
        for j, c in col.items():
            add_into(pl.setdefault((a, j), {}), {k: -c})
            add_into(pr.setdefault((j, a), {}), {k: c})
    for (k, a), col in rep.pr.items():
        for j, c in col.items():
            add_into(pr.setdefault((j, a), {}), {k: c})
    S = rep.S.T.scale(-1)
    return RRBRep(rep.over, dual_rep(rep.W), dual_rep(rep.h), S, pl, pr, check=check)


def rb_rep_check(t: RRBLeibniz, V: LeibnizRep, R_V) -> CheckResult:
    """The two identities making (V, R_V) a representation of the RB Leibniz algebra (g, R).

    ``t`` must have the adjoint representation (so R is a Rota-Baxter operator on g).
    """
    RV = matrix_table(_as_matrix(R_V, V.dim, V.dim, "R_V"))
    for x, a in product(range(t.d), range(V.dim)):
        X, v = {x: 1}, {a: 1}
        Rx, Rv = t.Rv(X), lin(RV, v)
        lhs = V.l(Rx, Rv)
        rhs = lin(RV, add_into(V.l(Rx, v), V.l(X, Rv)))
        if vsub(lhs, rhs):
            return _fail("l_V(Rx,R_V v) = R_V(l_V(Rx,v) + l_V(x,R_V v))", (_g(x), _v(a)), lhs, rhs)
        lhs = V.r(Rv, Rx)
        rhs = lin(RV, add_into(V.r(Rv, X), V.r(v, Rx)))
        if vsub(lhs, rhs):
            return _fail("r_V(R_V v,Rx) = R_V(r_V(R_V v,x) + r_V(v,Rx))", (_g(x), _v(a)), lhs, rhs)
    return CheckResult.passed()


def rb_rep(t: RRBLeibniz, V: LeibnizRep, R_V, *, check: bool = False) -> RRBRep:
    """The representation (V -R_V-> V, l_V, r_V) of g -R-> g built from an RB-representation."""
    return RRBRep(t, V, V, R_V, dict(V.left), dict(V.right), check=check)


def induced_vr_rep_on_h(rep: RRBRep, *, check: bool = False) -> LeibnizRep:
    """h as a V_R-representation: l(v,h) = l_h(Rv,h) - S l(v,h), r(h,v) = r_h(h,Rv) - S r(h,v)."""
    t = rep.over
    VR = induced_bracket(t)
    left, right = {}, {}
    for a, k in product(range(t.e), range(rep.p)):
        v, h = {a: 1}, {k: 1}
        Rv = t.Rv(v)
        val = vsub(rep.h.l(Rv, h), rep.Sw(rep.l(v, h)))
        if val:
            left[(a, k)] = val
        val = vsub(rep.h.r(h, Rv), rep.Sw(rep.r(h, v)))
        if val:
            right[(k, a)] = val
    return LeibnizRep(VR, rep.p, left, right, check=check)


def induced_vr_rep_on_g(t: RRBLeibniz, *, check: bool = False) -> LeibnizRep:
    """g as a V_R-representation: l(v,x) = [Rv,x] - R r_V(v,x), r(x,v) = [x,Rv] - R l_V(x,v)."""
    VR = induced_bracket(t)
    left, right = {}, {}
    for a, x in product(range(t.e), range(t.d)):
        v, X = {a: 1}, {x: 1}
        Rv = t.Rv(v)
        val = vsub(t.alg.bracket(Rv, X), t.Rv(t.rep.r(v, X)))
        if val:
            left[(a, x)] = val
        val = vsub(t.alg.bracket(X, Rv), t.Rv(t.rep.l(X, v)))
        if val:
            right[(x, a)] = val
    return LeibnizRep(VR, t.d, left, right, check=check)


def semidirect(t: RRBLeibniz, rep: RRBRep, *, check: bool = False) -> RRBLeibniz:
    """V + W -(R + S)-> g + h with the semidirect bracket and actions.

    Basis order: g then h, V then W.
    """
    d, e, p, q = t.d, t.e, rep.p, rep.q
    mu = {key: dict(col) for key, col in t.alg.table.items()}
    for (i, k), col in rep.h.left.items():
        add_into(mu.setdefault((i, d + k), {}), {d + m: c for m, c in col.items()})
    for (k, i), col in rep.h.right.items():
        add_into(mu.setdefault((d + k, i), {}), {d + m: c for m, c in col.items()})
    alg = LeibnizAlgebra(d + p, mu, check=False)
    left = {key: dict(col) for key, col in t.rep.left.items()}
    right = {key: dict(col) for key, col in t.rep.right.items()}
    for (i, j), col in rep.W.left.items():
        add_into(left.setdefault((i, e + j), {}), {e + m: c for m, c in col.items()})
    for (k, a), col in rep.pr.items():
        add_into(left.setdefault((d + k, a), {}), {e + m: c for m, c in col.items()})
    for (a, k), col in rep.pl.items():
        add_into(right.setdefault((a, d + k), {}), {e + m: c for m, c in col.items()})
    for (j, i), col in rep.W.right.items():
        add_into(right.setdefault((e + j, i), {}), {e + m: c for m, c in col.items()})
    V = LeibnizRep(alg, e + q, left, right, check=False)
    rows = [[0] * (e + q) for _ in range(d + p)]
    for i in range(d):
        for a in range(e):
            rows[i][a] = t.R[i, a]
    for k in range(p):
        for j in range(q):
            rows[d + k][e + j] = rep.S[k, j]
    Rhat = Matrix.from_rows(rows)
    return RRBLeibniz(alg, V, Rhat, check=check)


def inclusion_morphism(t: RRBLeibniz, rep: RRBRep) -> RRBMorphism:
    """(i_g, i_V) from t into the semidirect product."""
    T = semidirect(t, rep)
    phi = Matrix.from_columns(T.d, [{i: 1} for i in range(t.d)])
    psi = Matrix.from_columns(T.e, [{a: 1} for a in range(t.e)]) if t.e else Matrix.zeros(T.e, 0)
    return RRBMorphism(t, T, phi, psi)


def transport(t: RRBLeibniz, phi: Matrix, psi: Matrix, *, check: bool = False) -> RRBLeibniz:
    """Push the structure through invertible basis changes phi of g and psi of V."""
    d, e = t.d, t.e
    phi_inv = _inverse(phi)
    psi_inv = _inverse(psi) if e else Matrix.zeros(0, 0)
    P, Pi, Q, Qi = matrix_table(phi), matrix_table(phi_inv), matrix_table(psi), matrix_table(psi_inv)
    mu = {}
    for i, j in product(range(d), repeat=2):
        val = lin(P, t.alg.bracket(lin(Pi, {i: 1}), lin(Pi, {j: 1})))
        if val:
            mu[(i, j)] = val
    alg = LeibnizAlgebra(d, mu, check=False)
    left, right = {}, {}
    for i, a in product(range(d), range(e)):
        X, v = lin(Pi, {i: 1}), lin(Qi, {a: 1})
        val = lin(Q, t.rep.l(X, v))
        if val:
            left[(i, a)] = val
        val = lin(Q, t.rep.r(v, X))
        if val:
            right[(a, i)] = val
    rep = LeibnizRep(alg, e, left, right, check=False)
    R = phi @ t.R @ psi_inv if e else Matrix.zeros(d, 0)
    return RRBLeibniz(alg, rep, R, check=check)


def _inverse(m: Matrix) -> Matrix:
    from .exact import solve

    n = m.rows
    cols = []
    for j in range(n):
        x = solve(m, [1 if i == j else 0 for i in range(n)])
        if x is None:
            raise ValueError("matrix is not invertible")
        cols.append(x)
    return Matrix.from_columns(n, cols)


def inverse(m: Matrix) -> Matrix:
    return _inverse(m)


def direct_sum_rrb_reps(r1: RRBRep, r2: RRBRep) -> RRBRep:
    from .leibniz import direct_sum_rep

    if r1.over != r2.over:
        raise ValueError("representations of different rRB algebras")
    p1, q1 = r1.p, r1.q
    pl = {key: dict(c) for key, c in r1.pl.items()}
    pr = {key: dict(c) for key, c in r1.pr.items()}
    for (a, k), col in r2.pl.items():
        pl[(a, p1 + k)] = {q1 + j: c for j, c in col.items()}
    for (k, a), col in r2.pr.items():
        pr[(p1 + k, a)] = {q1 + j: c for j, c in col.items()}
    p, q = p1 + r2.p, q1 + r2.q
    rows = [[0] * q for _ in range(p)]
    for k in range(p1):
        for j in range(q1):
            rows[k][j] = r1.S[k, j]
    for k in range(r2.p):
        for j in range(r2.q):
            rows[p1 + k][q1 + j] = r2.S[k, j]
    S = Matrix.from_rows(rows) if p else Matrix.zeros(0, q)
    return RRBRep(r1.over, direct_sum_rep(r1.h, r2.h), direct_sum_rep(r1.W, r2.W), S, pl, pr, check=False)


__all__ = [
    "RRBLeibniz", "RRBMorphism", "RRBRep", "check_rrb", "check_all", "induced_bracket",
    "check_morphism", "check_rrb_rep", "adjoint_rrb_rep", "trivial_rrb_rep", "dual_rrb_rep",
    "rb_rep_check", "rb_rep", "induced_vr_rep_on_h", "induced_vr_rep_on_g", "semidirect",
    "inclusion_morphism", "transport", "inverse", "direct_sum_rrb_reps", "as_rational",
]
