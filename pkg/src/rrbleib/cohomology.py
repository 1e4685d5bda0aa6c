"""Cochain complexes of an rRB Leibniz algebra and their cohomology.

For coefficients (W -S-> h) the degree-n cochains (n >= 2) are triples

    alpha: g^n -> h,   beta: g^{n-1,1} -> W,   gamma: V^{n-1} -> h

and for n = 1 pairs (kappa: g -> h, eta: V -> W).  Uniformly, kappa is the
alpha block and eta the beta block of degree 1, with no gamma block.  The
adjoint case is h = g, W = V.

Inputs are written with the global indices of g + V (g first); outputs with
local indices of h or W.  Vectorization order: alpha block, beta block, gamma
block; inside a block, input tuples in odometer order (major) and output index
(minor).

Three differentials are provided: :func:`delta_adj` through the twisted
L-infinity structure, :func:`delta_coeff_lifted` by lifting into the
semidirect product, and :func:`delta_coeff_explicit` from the closed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ._sparse import add_into, bil
from .errors import DegreeMismatch, DegreeOutOfRange, NotMaurerCartan
from .exact import Matrix, complement_basis, image_basis, kernel_basis
from .linfty import WEIGHTED, LinfElem, mc_candidate, mc_defect, twisted_l_k
from .multimap import MultiMap, SpaceSpec
from .rrb import RRBLeibniz, RRBRep, adjoint_rrb_rep, semidirect

ALPHA, BETA, GAMMA = "alpha", "beta", "gamma"


@dataclass(frozen=True)
class CochainSpace:
    """Degree-n cochains of (g, V) with values in (h, W): dims d, e, p, q."""

    d: int
    e: int
    p: int
    q: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DegreeOutOfRange("cochains exist in degrees >= 1")

    @classmethod
    def adjoint(cls, t: RRBLeibniz, n: int) -> "CochainSpace":
        return cls(t.d, t.e, t.d, t.e, n)

    @classmethod
    def coefficients(cls, rep: RRBRep, n: int) -> "CochainSpace":
        return cls(rep.over.d, rep.over.e, rep.p, rep.q, n)

    @property
    def keys(self) -> tuple:
        return _keys(self)

    @property
    def index(self) -> dict:
        return _index(self)

    @property
    def dim(self) -> int:
        return len(self.keys)

    def block_words(self, block):
        d, e, n = self.d, self.e, self.n
        if block == ALPHA:
            return product(range(d), repeat=n)
        if block == BETA:
            return (t for t in product(range(d + e), repeat=n) if sum(i >= d for i in t) == 1)
        if n < 2:
            return iter(())
        return product(range(d, d + e), repeat=n - 1)

    def expected_dim(self) -> int:
        d, e, p, q, n = self.d, self.e, self.p, self.q, self.n
        gamma = p * e ** (n - 1) if n >= 2 else 0
        return p * d ** n + n * d ** (n - 1) * e * q + gamma


@lru_cache(maxsize=None)
def _keys(sp: CochainSpace) -> tuple:
    keys = []
    for block, width in ((ALPHA, sp.p), (BETA, sp.q), (GAMMA, sp.p)):
        for inp in sp.block_words(block):
            for out in range(width):
                keys.append((block, inp, out))
    return tuple(keys)


@lru_cache(maxsize=None)
def _index(sp: CochainSpace) -> dict:
    return {k: i for i, k in enumerate(_keys(sp))}


class Cochain:
    """An element of C^n with sparse values keyed by ``(block, inputs, out)``."""

    __slots__ = ("space", "values")

    def __init__(self, space: CochainSpace, values: dict | None = None):
        self.space = space
        idx = space.index
        clean = {}
        for key, val in (values or {}).items():
            if key not in idx:
                raise DegreeMismatch(f"{key} is not a basis key of this cochain space")
            if val:
                clean[key] = val
        self.values = clean

    @property
    def n(self) -> int:
        return self.space.n

    @classmethod
    def from_vector(cls, space: CochainSpace, vec) -> "Cochain":
        keys = space.keys
        if len(vec) != len(keys):
            raise DegreeMismatch("vector length does not match the cochain space")
        return cls(space, {keys[i]: x for i, x in enumerate(vec) if x})

    @classmethod
    def basis(cls, space: CochainSpace, i: int) -> "Cochain":
        return cls(space, {space.keys[i]: 1})

    def vector(self) -> list:
        v = [0] * self.space.dim
        idx = self.space.index
        for key, val in self.values.items():
            v[idx[key]] = val
        return v

    def block(self, name: str) -> dict:
        return {(inp, out): c for (b, inp, out), c in self.values.items() if b == name}

    @property
    def alpha(self) -> dict:
        return self.block(ALPHA)

    @property
    def beta(self) -> dict:
        return self.block(BETA)

    @property
    def gamma(self) -> dict:
        return self.block(GAMMA)

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.space != self.space:
            raise DegreeMismatch("cochains of different spaces")
        out = dict(self.values)
        add_into(out, other.values)
        return Cochain(self.space, out)

    def scale(self, s) -> "Cochain":
        return Cochain(self.space, {k: v * s for k, v in self.values.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.space == other.space and self.values == other.values

    def __repr__(self):
        return f"Cochain(n={self.n}, nnz={len(self.values)})"


def from_blocks(space: CochainSpace, alpha=None, beta=None, gamma=None) -> Cochain:
    vals = {}
    for name, comp in ((ALPHA, alpha), (BETA, beta), (GAMMA, gamma)):
        for (inp, out), c in (comp or {}).items():
            vals[(name, tuple(inp), out)] = c
    return Cochain(space, vals)


# -- adjoint differential through the twisted L-infinity structure -----------------


def cochain_to_linf(c: Cochain) -> LinfElem:
    """(alpha, beta, gamma) -> ((alpha + beta)[1], gamma) for adjoint cochains."""
    sp = c.space
    if (sp.p, sp.q) != (sp.d, sp.e):
        raise DegreeMismatch("only adjoint cochains embed in L'[1] + a")
    space = SpaceSpec(sp.d, sp.e)
    qterms, aterms = {}, {}
    for (block, inp, out), val in c.values.items():
        if block == ALPHA:
            qterms[(inp, out)] = val
        elif block == BETA:
            qterms[(inp, sp.d + out)] = val
        else:
            aterms[(inp, out)] = val
    q = MultiMap(space, sp.n, qterms)
    a = MultiMap(space, sp.n - 1, aterms) if sp.n >= 2 else None
    return LinfElem(space, sp.n - 2, q, a)


def linf_to_cochain(x: LinfElem, e: int) -> Cochain:
    d = x.space.dim_g
    n = x.degree + 2
    sp = CochainSpace(d, e, d, e, n)
    vals = {}
    if x.q is not None:
        for (inp, out), val in x.q.items():
            if out < d:
                vals[(ALPHA, inp, out)] = val
            else:
                vals[(BETA, inp, out - d)] = val
    if x.a is not None:
        for (inp, out), val in x.a.items():
            vals[(GAMMA, inp, out)] = val
    return Cochain(sp, vals)


def theta_of(t: RRBLeibniz) -> LinfElem:
    return mc_candidate(t.pi(), t.R_map())


def delta_adj(t: RRBLeibniz, c: Cochain, *, convention: str = WEIGHTED, theta=None,
              check: bool = True) -> Cochain:
    """(-1)^{n-2} l_1^theta((alpha + beta)[1], gamma) with theta = (pi[1], R)."""
    if theta is None:
        theta = theta_of(t)
    if check and not mc_defect(theta).is_zero():
        raise NotMaurerCartan("the structure is not an rRB Leibniz algebra")
    n = c.n
    y = twisted_l_k(theta, [cochain_to_linf(c)], convention=convention, check=False)
    if n % 2:
        y = y.scale(-1)
    return linf_to_cochain(y, t.e)


# -- coefficients through the semidirect product ------------------------------------


def lift(c: Cochain) -> Cochain:
    """Horizontal lift of a coefficient cochain to an adjoint cochain of the semidirect product."""
    sp = c.space
    d, e, p, q = sp.d, sp.e, sp.p, sp.q
    big = CochainSpace(d + p, e + q, d + p, e + q, sp.n)

    def gi(i):
        return i if i < d else d + p + (i - d)

    vals = {}
    for (block, inp, out), val in c.values.items():
        inp2 = tuple(gi(i) for i in inp)
        if block == ALPHA:
            vals[(ALPHA, inp2, d + out)] = val
        elif block == BETA:
            vals[(BETA, inp2, e + out)] = val
        else:
            vals[(GAMMA, inp2, d + out)] = val
    return Cochain(big, vals)


def restrict(big: Cochain, d: int, e: int, p: int, q: int) -> Cochain:
    """Keep the components with inputs in g + V and values in h + W."""
    sp = CochainSpace(d, e, p, q, big.n)
    Vstart = d + p

    def back(i):
        if i < d:
            return i
        if Vstart <= i < Vstart + e:
            return d + (i - Vstart)
        return None

    vals = {}
    for (block, inp, out), val in big.values.items():
        inp2 = tuple(back(i) for i in inp)
        if any(i is None for i in inp2):
            continue
        if block in (ALPHA, GAMMA) and out >= d:
            vals[(block, inp2, out - d)] = val
        elif block == BETA and out >= e:
            vals[(BETA, inp2, out - e)] = val
    return Cochain(sp, vals)


class _Lifted:
    def __init__(self, t: RRBLeibniz, rep: RRBRep, convention: str):
        self.T = semidirect(t, rep)
        self.theta = theta_of(self.T)
        self.dims = (t.d, t.e, rep.p, rep.q)
        self.convention = convention


def delta_coeff_lifted(t: RRBLeibniz, rep: RRBRep, c: Cochain, *, convention: str = WEIGHTED,
                       strict: bool = False, _ctx: _Lifted | None = None) -> Cochain:
    """delta'(c) = delta_adj(lift c) restricted; ``strict`` also checks delta(lift c) = lift(delta' c)."""
    ctx = _ctx or _Lifted(t, rep, convention)
    big = delta_adj(ctx.T, lift(c), convention=ctx.convention, theta=ctx.theta, check=False)
    out = restrict(big, *ctx.dims)
    if strict and lift(out) != big:
        raise DegreeMismatch("the differential of a lifted cochain leaves the lifted subspace")
    return out


# -- explicit formulas ------------------------------------------------------------


class _Explicit:
    """Structure tables in the global indexing used by the explicit differential."""

    def __init__(self, t: RRBLeibniz, rep: RRBRep):
        d, e = t.d, t.e
        self.t, self.rep = t, rep
        self.d, self.e = d, e
        # pi = mu + l_V + r_V on global indices of g + V
        pi = {}
        for (i, j), col in t.alg.table.items():
            pi[(i, j)] = dict(col)
        for (i, a), col in t.rep.left.items():
            pi[(i, d + a)] = {d + b: c for b, c in col.items()}
        for (a, i), col in t.rep.right.items():
            pi[(d + a, i)] = {d + b: c for b, c in col.items()}
        self.pi = pi
        # R in global V indices -> g
        self.R = {d + a: col for a, col in t._Rt.items()}
        self.VR = {}
        for a, b in product(range(e), repeat=2):
            # l_V(Rv_a, v_b) + r_V(v_a, Rv_b), in global V indices
            val = add_into(t.rep.l(t.Rv({a: 1}), {b: 1}), t.rep.r({a: 1}, t.Rv({b: 1})))
            if val:
                self.VR[(d + a, d + b)] = {d + k: c for k, c in val.items()}


def _eval(comp: dict, inp: tuple) -> dict:
    return comp.get(inp, {})


def _group(block: dict) -> dict:
    out: dict = {}
    for (inp, o), c in block.items():
        out.setdefault(inp, {})[o] = c
    return out


def _multi_eval(comp: dict, args: list) -> dict:
    """Evaluate a multilinear component on sparse vector arguments."""
    acc: dict = {}
    for combo in product(*(a.items() for a in args)):
        coeff = 1
        inp = []
        for idx, c in combo:
            coeff *= c
            inp.append(idx)
        val = comp.get(tuple(inp))
        if val:
            add_into(acc, val, coeff)
    return acc


def delta_coeff_explicit(t: RRBLeibniz, rep: RRBRep, c: Cochain, *, _ctx: _Explicit | None = None) -> Cochain:
    """(delta_{g,h} alpha, delta^alpha_{g,W} beta, delta_{V,h} gamma + h_R(alpha, beta))."""
    ctx = _ctx or _Explicit(t, rep)
    sp = c.space
    d, e, n = sp.d, sp.e, sp.n
    out_sp = CochainSpace(d, e, sp.p, sp.q, n + 1)
    A = _group(c.alpha)
    B = _group(c.beta)
    G = _group(c.gamma)
    lh, rh = rep.h.left, rep.h.right
    lW, rW = rep.W.left, rep.W.right
    vals: dict = {}

    def put(block, X, vec):
        for o, val in vec.items():
            key = (block, X, o)
            y = vals.get(key, 0) + val
            if y:
                vals[key] = y
            else:
                vals.pop(key, None)

    def loc(i):
        return i - d

    # alpha-part: Loday-Pirashvili differential of g with values in h
    if A:
        for X in out_sp.block_words(ALPHA):
            acc: dict = {}
            for i in range(1, n + 1):
                s = 1 if i % 2 else -1
                f = _eval(A, X[: i - 1] + X[i:])
                if f:
                    add_into(acc, bil(lh, {X[i - 1]: 1}, f), s)
            f = _eval(A, X[:n])
            if f:
                add_into(acc, bil(rh, f, {X[n]: 1}), -1 if n % 2 == 0 else 1)
            for i in range(1, n + 2):
                s = -1 if i % 2 else 1
                for j in range(i + 1, n + 2):
                    br = ctx.pi.get((X[i - 1], X[j - 1]))
                    if br:
                        for k, cc in br.items():
                            f = _eval(A, X[: i - 1] + X[i: j - 1] + (k,) + X[j:])
                            if f:
                                add_into(acc, f, s * cc)
            put(ALPHA, X, acc)

    # beta-part: delta^alpha_{g,W}
    if A or B:
        for X in out_sp.block_words(BETA):
            acc = {}
            for i in range(1, n + 1):
                s = 1 if i % 2 else -1
                xi = X[i - 1]
                rest = X[: i - 1] + X[i:]
                if xi >= d:
                    f = _eval(A, rest)
                    if f:
                        add_into(acc, bil(rep.pl, {loc(xi): 1}, f), s)
                else:
                    f = _eval(B, rest)
                    if f:
                        add_into(acc, bil(lW, {xi: 1}, f), s)
            last = X[n]
            s = -1 if n % 2 == 0 else 1
            if last >= d:
                f = _eval(A, X[:n])
                if f:
                    add_into(acc, bil(rep.pr, f, {loc(last): 1}), s)
            else:
                f = _eval(B, X[:n])
                if f:
                    add_into(acc, bil(rW, f, {last: 1}), s)
            for i in range(1, n + 2):
                s = -1 if i % 2 else 1
                for j in range(i + 1, n + 2):
                    br = ctx.pi.get((X[i - 1], X[j - 1]))
                    if br:
                        for k, cc in br.items():
                            f = _eval(B, X[: i - 1] + X[i: j - 1] + (k,) + X[j:])
                            if f:
                                add_into(acc, f, s * cc)
            put(BETA, X, acc)

    # gamma-part: delta_{V,h} gamma + h_R(alpha, beta)
    Rg = ctx.R
    hsign = -1 if (n % 2) else 1
    for X in out_sp.block_words(GAMMA):
        acc = {}
        if G:
            m = n  # gamma has arity n-1, its differential arity n
            for i in range(1, m):
                s = 1 if i % 2 else -1
                f = _eval(G, X[: i - 1] + X[i:])
                if f:
                    vi = {loc(X[i - 1]): 1}
                    add_into(acc, bil(lh, rep.over.Rv(vi), f), s)
                    add_into(acc, rep.Sw(bil(rep.pl, vi, f)), -s)
            f = _eval(G, X[: m - 1])
            if f:
                s = 1 if m % 2 == 0 else -1
                vm = {loc(X[m - 1]): 1}
                add_into(acc, bil(rh, f, rep.over.Rv(vm)), s)
                add_into(acc, rep.Sw(bil(rep.pr, f, vm)), -s)
            for i in range(1, m + 1):
                s = -1 if i % 2 else 1
                for j in range(i + 1, m + 1):
                    br = ctx.VR.get((X[i - 1], X[j - 1]))
                    if br:
                        for k, cc in br.items():
                            f = _eval(G, X[: i - 1] + X[i: j - 1] + (k,) + X[j:])
                            if f:
                                add_into(acc, f, s * cc)
        if A or B:
            hr: dict = {}
            if A:
                add_into(hr, _multi_eval(A, [Rg.get(v, {}) for v in X]))
            if B:
                for i in range(len(X)):
                    args = [Rg.get(v, {}) if k != i else {v: 1} for k, v in enumerate(X)]
                    add_into(hr, rep.Sw(_multi_eval(B, args)), -1)
            add_into(acc, hr, hsign)
        put(GAMMA, X, acc)
    return Cochain(out_sp, vals)


# -- matrices and cohomology --------------------------------------------------------

ADJOINT, LIFTED, EXPLICIT = "adjoint", "lifted", "explicit"


def _cochain_space(t, rep, n):
    return CochainSpace.adjoint(t, n) if rep is None else CochainSpace.coefficients(rep, n)


def differential_matrix(t: RRBLeibniz, n: int, rep: RRBRep | None = None, *,
                        method: str | None = None, convention: str = WEIGHTED) -> Matrix:
    """Matrix of C^n -> C^{n+1}, built column by column on basis cochains.

    With ``rep=None`` the adjoint complex is used; ``method`` defaults to the
    twisted L-infinity route there and to the explicit formulas otherwise.
    """
    if n < 1:
        raise DegreeOutOfRange("the complex starts in degree 1")
    if method is None:
        method = ADJOINT if rep is None else EXPLICIT
    if method == ADJOINT:
        if rep is not None:
            raise ValueError("the twisted route computes the adjoint complex only")
        theta = theta_of(t)
        if not mc_defect(theta).is_zero():
            raise NotMaurerCartan("the structure is not an rRB Leibniz algebra")

        def apply(c):
            return delta_adj(t, c, convention=convention, theta=theta, check=False)
    elif method == LIFTED:
        coeff = rep if rep is not None else adjoint_rrb_rep(t)
        ctx = _Lifted(t, coeff, convention)

        def apply(c):
            return delta_coeff_lifted(t, coeff, c, _ctx=ctx)
    elif method == EXPLICIT:
        coeff = rep if rep is not None else adjoint_rrb_rep(t)
        ectx = _Explicit(t, coeff)

        def apply(c):
            return delta_coeff_explicit(t, coeff, c, _ctx=ectx)
    else:
        raise ValueError(f"unknown method {method!r}")
    src = _cochain_space(t, rep, n)
    tgt = _cochain_space(t, rep, n + 1)
    tidx = tgt.index
    cols = []
    for i in range(src.dim):
        img = apply(Cochain.basis(src, i))
        if img.space != tgt:
            raise DegreeMismatch("differential landed in the wrong cochain space")
        cols.append({tidx[k]: v for k, v in img.values.items()})
    return Matrix.from_columns(tgt.dim, cols)


@dataclass(frozen=True)
class CohomologyReport:
    n: int
    dim_C: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: tuple = ()

    def as_dict(self) -> dict:
        return {"n": self.n, "dim_C": self.dim_C, "dim_Z": self.dim_Z,
                "dim_B": self.dim_B, "dim_H": self.dim_H}


def cohomology(t: RRBLeibniz, n: int, rep: RRBRep | None = None, *, method: str | None = None,
               convention: str = WEIGHTED) -> CohomologyReport:
    """dim Z^n, dim B^n, dim H^n and cocycles representing a basis of H^n.

    Degree 0 returns the zero report (C^0 = 0); negative degrees raise.
    """
    if n < 0:
        raise DegreeOutOfRange("cohomology degree must be >= 0")
    if n == 0:
        return CohomologyReport(0, 0, 0, 0, 0, ())
    src = _cochain_space(t, rep, n)
    dn = differential_matrix(t, n, rep, method=method, convention=convention)
    Z = kernel_basis(dn)
    B = image_basis(differential_matrix(t, n - 1, rep, method=method, convention=convention)) if n >= 2 else []
    keep = complement_basis(B, Z, src.dim) if Z else []
    reps = tuple(Cochain.from_vector(src, Z[k]) for k in keep)
    return CohomologyReport(n, src.dim, len(Z), len(B), len(Z) - len(B), reps)


def coboundaries(t: RRBLeibniz, n: int, rep: RRBRep | None = None, **kw) -> list:
    """Basis vectors of B^n (empty for n = 1)."""
    if n < 2:
        return []
    return image_basis(differential_matrix(t, n - 1, rep, **kw))


def is_cocycle(t: RRBLeibniz, c: Cochain, rep: RRBRep | None = None, **kw) -> bool:
    m = differential_matrix(t, c.n, rep, **kw)
    return not any(m @ c.vector())


__all__ = [
    "CochainSpace", "Cochain", "from_blocks", "cochain_to_linf", "linf_to_cochain", "theta_of",
    "delta_adj", "lift", "restrict", "delta_coeff_lifted", "delta_coeff_explicit",
    "differential_matrix", "cohomology", "CohomologyReport", "coboundaries", "is_cocycle",
    "ADJOINT", "LIFTED", "EXPLICIT",
]
