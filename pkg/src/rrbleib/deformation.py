"""Infinitesimal and truncated formal deformations, and their classification by H^2.

A deformation of order N is a list of correction terms (mu_i, l_i, r_i, R_i),
i = 1..N, over a base rRB Leibniz algebra (the i = 0 terms).  Bilinear terms
are sparse tables in the local bases of g and V, exactly as in
:class:`~rrbleib.leibniz.LeibnizAlgebra`; R_i are d x e matrices.
"""

from __future__ import annotations

from itertools import product

from ._sparse import add_into, bil, clean_table, lin, matrix_table, vsub
from .cohomology import (Cochain, CochainSpace, CohomologyReport, cohomology,
                         differential_matrix, from_blocks)
from .errors import NotACocycle, NotADeformation
from .exact import Matrix, solve
from .leibniz import CheckResult, _fail, _gname, _vname
from .rrb import RRBLeibniz, _as_matrix


def pack_beta1(l1: dict, r1: dict, d: int) -> dict:
    """beta_1(x, v) = l_1(x, v), beta_1(v, x) = r_1(v, x) as a beta-block in global indices."""
    out = {}
    for (i, a), col in l1.items():
        for b, c in col.items():
            if c:
                out[((i, d + a), b)] = c
    for (a, i), col in r1.items():
        for b, c in col.items():
            if c:
                out[((d + a, i), b)] = c
    return out


def unpack_beta1(beta: dict, d: int) -> tuple[dict, dict]:
    l1: dict = {}
    r1: dict = {}
    for ((x, y), b), c in beta.items():
        if x < d:
            l1.setdefault((x, y - d), {})[b] = c
        else:
            r1.setdefault((x - d, y), {})[b] = c
    return l1, r1


class TruncatedDeformation:
    """(mu_t, l_t, r_t, R_t) = base + sum_{i=1}^N t^i (mu_i, l_i, r_i, R_i) modulo t^{N+1}."""

    def __init__(self, base: RRBLeibniz, mus, ls, rs, Rs):
        if not (len(mus) == len(ls) == len(rs) == len(Rs)):
            raise ValueError("all term lists must have the same length")
        self.base = base
        self.mus = [clean_table(m or {}) for m in mus]
        self.ls = [clean_table(x or {}) for x in ls]
        self.rs = [clean_table(x or {}) for x in rs]
        self.Rs = [_as_matrix(R if R is not None else Matrix.zeros(base.d, base.e), base.d, base.e, f"R{i + 1}")
                   for i, R in enumerate(Rs)]

    @property
    def order(self) -> int:
        return len(self.mus)

    def terms(self):
        """Full term lists including the base at index 0."""
        b = self.base
        mus = [b.alg.table] + self.mus
        ls = [b.rep.left] + self.ls
        rs = [b.rep.right] + self.rs
        Rs = [b._Rt] + [matrix_table(R) for R in self.Rs]
        return mus, ls, rs, Rs


class InfDeformation(TruncatedDeformation):
    """First-order deformation over the dual numbers k[t]/(t^2)."""

    def __init__(self, base: RRBLeibniz, mu1=None, l1=None, r1=None, R1=None):
        super().__init__(base, [mu1], [l1], [r1], [R1])

    @property
    def mu1(self):
        return self.mus[0]

    @property
    def l1(self):
        return self.ls[0]

    @property
    def r1(self):
        return self.rs[0]

    @property
    def R1(self):
        return self.Rs[0]


def _vadd(u, v):
    return add_into(dict(u), v)


def _conv2(f_list, g_list, n, inner):
    """sum_{i+j=n} f_i(g_j(...)) with ``inner(f, g)`` evaluating one term."""
    acc: dict = {}
    for i in range(n + 1):
        add_into(acc, inner(f_list[i], g_list[n - i]))
    return acc


def check_truncated(D: TruncatedDeformation) -> CheckResult:
    """Check the five identity families at every order n <= N on basis elements.

    On failure the detail names the order and the family.
    """
    t = D.base
    d, e = t.d, t.e
    mus, ls, rs, Rs = D.terms()
    N = D.order
    for n in range(N + 1):
        for x, y, z in product(range(d), repeat=3):
            X, Y, Z = {x: 1}, {y: 1}, {z: 1}
            lhs = _conv2(mus, mus, n, lambda a, b: bil(a, X, bil(b, Y, Z)))
            rhs = _conv2(mus, mus, n, lambda a, b: add_into(bil(a, bil(b, X, Y), Z), bil(a, Y, bil(b, X, Z))))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: Leibniz identity of mu_t", (_gname(x), _gname(y), _gname(z)), lhs, rhs)
        for x, y, a in product(range(d), range(d), range(e)):
            X, Y, v = {x: 1}, {y: 1}, {a: 1}
            w = (_gname(x), _gname(y), _vname(a))
            checks = (
                ("l_t(x,l_t(y,v)) = l_t(mu_t(x,y),v) + l_t(y,l_t(x,v))",
                 _conv2(ls, ls, n, lambda p, q: bil(p, X, bil(q, Y, v))),
                 _vadd(_conv2(ls, mus, n, lambda p, q: bil(p, bil(q, X, Y), v)),
                       _conv2(ls, ls, n, lambda p, q: bil(p, Y, bil(q, X, v))))),
                ("l_t(x,r_t(v,y)) = r_t(l_t(x,v),y) + r_t(v,mu_t(x,y))",
                 _conv2(ls, rs, n, lambda p, q: bil(p, X, bil(q, v, Y))),
                 _vadd(_conv2(rs, ls, n, lambda p, q: bil(p, bil(q, X, v), Y)),
                       _conv2(rs, mus, n, lambda p, q: bil(p, v, bil(q, X, Y))))),
                ("r_t(v,mu_t(x,y)) = r_t(r_t(v,x),y) + l_t(x,r_t(v,y))",
                 _conv2(rs, mus, n, lambda p, q: bil(p, v, bil(q, X, Y))),
                 _vadd(_conv2(rs, rs, n, lambda p, q: bil(p, bil(q, v, X), Y)),
                       _conv2(ls, rs, n, lambda p, q: bil(p, X, bil(q, v, Y))))),
            )
            for detail, lhs, rhs in checks:
                if vsub(lhs, rhs):
                    return _fail(f"order {n}: {detail}", w, lhs, rhs)
        for a, b in product(range(e), repeat=2):
            v, v2 = {a: 1}, {b: 1}
            lhs: dict = {}
            rhs: dict = {}
            for i in range(n + 1):
                for j in range(n + 1 - i):
                    k = n - i - j
                    add_into(lhs, bil(mus[i], lin(Rs[j], v), lin(Rs[k], v2)))
                    add_into(rhs, lin(Rs[i], add_into(bil(ls[j], lin(Rs[k], v), v2),
                                                      bil(rs[j], v, lin(Rs[k], v2)))))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: mu_t(R_t v,R_t v') = R_t(l_t(R_t v,v') + r_t(v,R_t v'))",
                             (_vname(a), _vname(b)), lhs, rhs)
    return CheckResult.passed()


def check_inf_deformation(D: InfDeformation) -> CheckResult:
    """The identity families at orders t^0 and t^1 (order-t^2 terms discarded)."""
    return check_truncated(D)


def _space(t: RRBLeibniz, n: int) -> CochainSpace:
    return CochainSpace.adjoint(t, n)


def cocycle_of_deformation(D: InfDeformation) -> Cochain:
    """(mu_1, beta_1, R_1) as an adjoint 2-cochain; it is a cocycle."""
    res = check_inf_deformation(D)
    if not res:
        raise NotADeformation(f"{res.detail} at {res.witness}")
    t = D.base
    d = t.d
    alpha = {}
    for (i, j), col in D.mu1.items():
        for k, c in col.items():
            alpha[((i, j), k)] = c
    gamma = {}
    for a, col in matrix_table(D.R1).items():
        for i, c in col.items():
            gamma[((d + a,), i)] = c
    c = from_blocks(_space(t, 2), alpha, pack_beta1(D.l1, D.r1, d), gamma)
    m = differential_matrix(t, 2)
    if any(m @ c.vector()):
        raise NotACocycle("first-order terms of a valid deformation must form a 2-cocycle")
    return c


def deformation_of_cocycle(t: RRBLeibniz, c: Cochain, *, check: bool = True) -> InfDeformation:
    """Unpack a 2-cocycle (mu_1, beta_1, R_1) into (mu_1, l_1, r_1, R_1)."""
    if c.space != _space(t, 2):
        raise NotACocycle("expected an adjoint 2-cochain of this algebra")
    if check and any(differential_matrix(t, 2) @ c.vector()):
        raise NotACocycle("the cochain is not closed")
    d = t.d
    mu1: dict = {}
    for ((i, j), k), val in c.alpha.items():
        mu1.setdefault((i, j), {})[k] = val
    l1, r1 = unpack_beta1(c.beta, d)
    rows = [[0] * t.e for _ in range(d)]
    for ((v,), i), val in c.gamma.items():
        rows[i][v - d] = val
    return InfDeformation(t, mu1, l1, r1, Matrix.from_rows(rows) if d else Matrix.zeros(0, t.e))


def check_equivalence(D: TruncatedDeformation, D2: TruncatedDeformation, phi1, psi1) -> CheckResult:
    """(id + t phi_1, id + t psi_1) is a morphism D -> D2 at orders 0 and 1."""
    t = D.base
    d, e = t.d, t.e
    phis = [matrix_table(Matrix.identity(d)), matrix_table(_as_matrix(phi1, d, d, "phi1"))]
    psis = [matrix_table(Matrix.identity(e)), matrix_table(_as_matrix(psi1, e, e, "psi1"))]
    mus, ls, rs, Rs = (x[:2] for x in D.terms())
    mus2, ls2, rs2, Rs2 = (x[:2] for x in D2.terms())
    for n in (0, 1):
        for x, y in product(range(d), repeat=2):
            X, Y = {x: 1}, {y: 1}
            lhs = _conv2(phis, mus, n, lambda p, m: lin(p, bil(m, X, Y)))
            rhs = _conv3(mus2, phis, phis, n, lambda m, p, q: bil(m, lin(p, X), lin(q, Y)))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: phi_t(mu_t(x,y)) = mu'_t(phi_t x, phi_t y)",
                             (_gname(x), _gname(y)), lhs, rhs)
        for x, a in product(range(d), range(e)):
            X, v = {x: 1}, {a: 1}
            lhs = _conv2(psis, ls, n, lambda p, m: lin(p, bil(m, X, v)))
            rhs = _conv3(ls2, phis, psis, n, lambda m, p, q: bil(m, lin(p, X), lin(q, v)))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: psi_t(l_t(x,v)) = l'_t(phi_t x, psi_t v)",
                             (_gname(x), _vname(a)), lhs, rhs)
            lhs = _conv2(psis, rs, n, lambda p, m: lin(p, bil(m, v, X)))
            rhs = _conv3(rs2, psis, phis, n, lambda m, p, q: bil(m, lin(p, v), lin(q, X)))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: psi_t(r_t(v,x)) = r'_t(psi_t v, phi_t x)",
                             (_vname(a), _gname(x)), lhs, rhs)
        for a in range(e):
            v = {a: 1}
            lhs = _conv2(phis, Rs, n, lambda p, R: lin(p, lin(R, v)))
            rhs = _conv2(Rs2, psis, n, lambda R, p: lin(R, lin(p, v)))
            if vsub(lhs, rhs):
                return _fail(f"order {n}: phi_t R_t = R'_t psi_t", (_vname(a),), lhs, rhs)
    return CheckResult.passed()


def _conv3(f_list, g_list, h_list, n, inner):
    acc: dict = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            add_into(acc, inner(f_list[i], g_list[j], h_list[n - i - j]))
    return acc


def _maps_of_degree1(t: RRBLeibniz, vec) -> tuple[Matrix, Matrix]:
    """Split a degree-1 adjoint cochain vector into (phi_1, psi_1) matrices."""
    d, e = t.d, t.e
    c = Cochain.from_vector(_space(t, 1), vec)
    phi = [[0] * d for _ in range(d)]
    psi = [[0] * e for _ in range(e)]
    for ((i,), k), val in c.alpha.items():
        phi[k][i] = val
    for ((a,), b), val in c.beta.items():
        psi[b][a - d] = val
    return (Matrix.from_rows(phi) if d else Matrix.zeros(0, 0),
            Matrix.from_rows(psi) if e else Matrix.zeros(0, 0))


def find_equivalence(D: InfDeformation, D2: InfDeformation):
    """(phi_1, psi_1) with (mu_1, beta_1, R_1) - (mu'_1, beta'_1, R'_1) = delta(phi_1, psi_1), or None."""
    t = D.base
    diff = cocycle_of_deformation(D) - cocycle_of_deformation(D2)
    x = solve(differential_matrix(t, 1), diff.vector())
    if x is None:
        return None
    return _maps_of_degree1(t, x)


def classify_inf_deformations(t: RRBLeibniz) -> tuple[CohomologyReport, list]:
    """H^2 of the adjoint complex with one deformation per basis representative."""
    rep = cohomology(t, 2)
    defs = [deformation_of_cocycle(t, c, check=False) for c in rep.representatives]
    return rep, defs


__all__ = [
    "pack_beta1", "unpack_beta1", "TruncatedDeformation", "InfDeformation", "check_truncated",
    "check_inf_deformation", "cocycle_of_deformation", "deformation_of_cocycle", "check_equivalence",
    "find_equivalence", "classify_inf_deformations",
]
