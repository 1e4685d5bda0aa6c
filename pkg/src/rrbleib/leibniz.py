"""Leibniz algebras, their representations and the Loday-Pirashvili complex.

Everything is given by structure constants.  For an algebra of dimension d,
``[e_i, e_j] = sum_k c[i][j][k] e_k``.  A representation on V (dimension e)
has ``l_V(e_i, f_a) = sum_b L[i][a][b] f_b`` and
``r_V(f_a, e_i) = sum_b Rt[a][i][b] f_b``.  The left Leibniz identity is
``[x, [y, z]] = [[x, y], z] + [y, [x, z]]``.

>>> from rrbleib.fixtures import L2
>>> bool(check_leibniz(L2()))
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ._sparse import add_into, bil, clean_table, nested_from_tensor, tensor_from_nested, vsub
from .errors import AxiomError, DegreeOutOfRange
from .exact import Matrix, complement_basis, image_basis, kernel_basis, rank
from .multimap import MultiMap, SpaceSpec


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an axiom check; falsy on failure, with a basis witness."""

    ok: bool
    witness: tuple | None = None
    detail: str = ""
    lhs: dict | None = field(default=None, compare=False)
    rhs: dict | None = field(default=None, compare=False)

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls):
        return cls(True)

    def as_dict(self) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out["detail"] = self.detail
            out["witness"] = list(self.witness) if self.witness else None
            for side in ("lhs", "rhs"):
                vec = getattr(self, side)
                if vec is not None:
                    out[side] = {str(k): str(v) for k, v in sorted(vec.items())}
        return out


def _fail(detail, witness, lhs=None, rhs=None):
    return CheckResult(False, tuple(witness), detail, lhs, rhs)


def _gname(i):
    return f"e{i + 1}"


def _vname(a):
    return f"f{a + 1}"


class LeibnizAlgebra:
    """A finite-dimensional left Leibniz algebra given by structure constants.

    ``constants`` is either a nested ``d x d x d`` array or a sparse table
    ``{(i, j): {k: c}}``.  With ``check=True`` (default) the Leibniz identity is
    verified and :class:`AxiomError` raised on failure.
    """

    def __init__(self, dim: int, constants=None, *, check: bool = True, name: str | None = None):
        if dim < 1:
            raise ValueError("a Leibniz algebra needs dimension >= 1")
        self.dim = dim
        self.name = name
        if constants is None:
            table = {}
        elif isinstance(constants, dict):
            table = clean_table(constants)
        else:
            table = tensor_from_nested(constants, (dim, dim, dim), "bracket")
        for (i, j), col in table.items():
            if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k in col):
                raise ValueError("bracket table index out of range")
        self.table = table
        if check:
            res = check_leibniz(self)
            if not res:
                raise AxiomError(f"not a Leibniz algebra: {res.detail}", res.witness)

    def bracket(self, x: dict, y: dict) -> dict:
        return bil(self.table, x, y)

    def constants(self) -> list:
        return nested_from_tensor(self.table, (self.dim, self.dim, self.dim))

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, frozenset((k, frozenset(v.items())) for k, v in self.table.items())))

    def __repr__(self):
        return f"LeibnizAlgebra(dim={self.dim}, nnz={sum(len(c) for c in self.table.values())})"


class LeibnizRep:
    """A representation (V, l_V, r_V) of a Leibniz algebra.

    ``left`` is ``L[i][a][b]`` and ``right`` is ``Rt[a][i][b]`` (nested arrays or
    sparse tables keyed ``(i, a)`` and ``(a, i)`` respectively).
    """

    def __init__(self, alg: LeibnizAlgebra, dim: int, left=None, right=None, *, check: bool = True):
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        self.alg = alg
        self.dim = dim
        d = alg.dim
        self.left = _table(left, (d, dim, dim), "left")
        self.right = _table(right, (dim, d, dim), "right")
        if check:
            res = check_rep(self)
            if not res:
                raise AxiomError(f"not a representation: {res.detail}", res.witness)

    def l(self, x: dict, v: dict) -> dict:
        return bil(self.left, x, v)

    def r(self, v: dict, x: dict) -> dict:
        return bil(self.right, v, x)

    def left_constants(self) -> list:
        return nested_from_tensor(self.left, (self.alg.dim, self.dim, self.dim))

    def right_constants(self) -> list:
        return nested_from_tensor(self.right, (self.dim, self.alg.dim, self.dim))

    def __eq__(self, other):
        return (isinstance(other, LeibnizRep) and self.alg == other.alg and self.dim == other.dim
                and self.left == other.left and self.right == other.right)

    def __repr__(self):
        return f"LeibnizRep(alg_dim={self.alg.dim}, dim={self.dim})"


def _table(arr, dims, name):
    if arr is None:
        return {}
    if isinstance(arr, dict):
        return clean_table(arr)
    return tensor_from_nested(arr, dims, name)


def check_leibniz(alg: LeibnizAlgebra) -> CheckResult:
    d = alg.dim
    br = alg.bracket
    for x, y, z in product(range(d), repeat=3):
        X, Y, Z = {x: 1}, {y: 1}, {z: 1}
        lhs = br(X, br(Y, Z))
        rhs = add_into(br(br(X, Y), Z), br(Y, br(X, Z)))
        if vsub(lhs, rhs):
            return _fail("[x,[y,z]] != [[x,y],z] + [y,[x,z]]",
                         (_gname(x), _gname(y), _gname(z)), lhs, rhs)
    return CheckResult.passed()


def check_rep(rep: LeibnizRep) -> CheckResult:
    """The three representation axioms on all basis elements."""
    alg = rep.alg
    br, l, r = alg.bracket, rep.l, rep.r
    for x, y in product(range(alg.dim), repeat=2):
        X, Y = {x: 1}, {y: 1}
        XY = br(X, Y)
        for a in range(rep.dim):
            v = {a: 1}
            w = (_gname(x), _gname(y), _vname(a))
            lhs = l(X, l(Y, v))
            rhs = add_into(l(XY, v), l(Y, l(X, v)))
            if vsub(lhs, rhs):
                return _fail("l(x,l(y,v)) != l([x,y],v) + l(y,l(x,v))", w, lhs, rhs)
            lhs = l(X, r(v, Y))
            rhs = add_into(r(l(X, v), Y), r(v, XY))
            if vsub(lhs, rhs):
                return _fail("l(x,r(v,y)) != r(l(x,v),y) + r(v,[x,y])", w, lhs, rhs)
            lhs = r(v, XY)
            rhs = add_into(r(r(v, X), Y), l(X, r(v, Y)))
            if vsub(lhs, rhs):
                return _fail("r(v,[x,y]) != r(r(v,x),y) + l(x,r(v,y))", w, lhs, rhs)
    return CheckResult.passed()


def adjoint_rep(alg: LeibnizAlgebra, *, check: bool = False) -> LeibnizRep:
    return LeibnizRep(alg, alg.dim, dict(alg.table), dict(alg.table), check=check)


def trivial_rep(alg: LeibnizAlgebra, dim: int) -> LeibnizRep:
    return LeibnizRep(alg, dim, {}, {}, check=False)


def dual_rep(rep: LeibnizRep, *, check: bool = False) -> LeibnizRep:
    """Dual representation on V*: l(x,f)(v) = -f(l(x,v)), r(f,x)(v) = f(l(x,v) + r(v,x))."""
    left: dict = {}
    right: dict = {}
    for (i, b), col in rep.left.items():
        for a, c in col.items():
            # l*(e_i, f*_a) picks up -L[i][b][a] on f*_b
            add_into(left.setdefault((i, a), {}), {b: -c})
            add_into(right.setdefault((a, i), {}), {b: c})
    for (b, i), col in rep.right.items():
        for a, c in col.items():
            add_into(right.setdefault((a, i), {}), {b: c})
    return LeibnizRep(rep.alg, rep.dim, left, right, check=check)


def direct_sum_rep(r1: LeibnizRep, r2: LeibnizRep) -> LeibnizRep:
    if r1.alg != r2.alg:
        raise ValueError("representations of different algebras")
    off = r1.dim
    left = dict(r1.left)
    right = dict(r1.right)
    for (i, a), col in r2.left.items():
        left[(i, a + off)] = {b + off: c for b, c in col.items()}
    for (a, i), col in r2.right.items():
        right[(a + off, i)] = {b + off: c for b, c in col.items()}
    return LeibnizRep(r1.alg, r1.dim + r2.dim, left, right, check=False)


def pi_map(alg: LeibnizAlgebra, rep: LeibnizRep | None = None) -> MultiMap:
    """The arity-2 map mu_g + l_V + r_V on g + V (V = 0 when ``rep`` is None)."""
    d = alg.dim
    e = rep.dim if rep is not None else 0
    sp = SpaceSpec(d, e)
    terms = {}
    for (i, j), col in alg.table.items():
        for k, c in col.items():
            terms[((i, j), k)] = c
    if rep is not None:
        for (i, a), col in rep.left.items():
            for b, c in col.items():
                terms[((i, d + a), d + b)] = c
        for (a, i), col in rep.right.items():
            for b, c in col.items():
                terms[((d + a, i), d + b)] = c
    return MultiMap(sp, 2, terms)


def leibniz_from_map(mu: MultiMap) -> LeibnizAlgebra:
    """Read an arity-2 map on g (V = 0) as bracket constants, without checking."""
    table: dict = {}
    for ((i, j), k), c in mu.items():
        table.setdefault((i, j), {})[k] = c
    return LeibnizAlgebra(mu.space.dim_g, table, check=False)


# -- Loday-Pirashvili complex ---------------------------------------------------


def _tuple_index(t, base):
    idx = 0
    for x in t:
        idx = idx * base + x
    return idx


def lp_differential_tables(dg: int, dm: int, mu: dict, left: dict, right: dict, n: int) -> Matrix:
    """Matrix of the coboundary Hom(g^n, M) -> Hom(g^(n+1), M).

    Basis of Hom(g^n, M): input multi-index in odometer order (major), output
    index (minor).  ``left[(i, a)]`` and ``right[(a, i)]`` are the actions on M.
    """
    if n < 0:
        raise DegreeOutOfRange("Loday-Pirashvili degree must be >= 0")
    rows = []
    for X in product(range(dg), repeat=n + 1):
        block = [dict() for _ in range(dm)]
        # sum_{i=1}^n (-1)^{i+1} l(x_i, f(x_1..^x_i..x_{n+1}))
        for i in range(1, n + 1):
            s = 1 if i % 2 else -1
            xi = X[i - 1]
            col_t = _tuple_index(X[: i - 1] + X[i:], dg) * dm
            for b in range(dm):
                act = left.get((xi, b))
                if act:
                    for c, val in act.items():
                        add_into(block[c], {col_t + b: s * val})
        # (-1)^{n+1} r(f(x_1..x_n), x_{n+1})
        s = -1 if n % 2 == 0 else 1
        col_t = _tuple_index(X[:n], dg) * dm
        for b in range(dm):
            act = right.get((b, X[n]))
            if act:
                for c, val in act.items():
                    add_into(block[c], {col_t + b: s * val})
        # sum_{i<j} (-1)^i f(x_1..^x_i..x_{j-1}, [x_i,x_j], x_{j+1}..)
        for i in range(1, n + 2):
            s = -1 if i % 2 else 1
            for j in range(i + 1, n + 2):
                br = mu.get((X[i - 1], X[j - 1]))
                if not br:
                    continue
                for k, val in br.items():
                    Y = X[: i - 1] + X[i: j - 1] + (k,) + X[j:]
                    col_t = _tuple_index(Y, dg) * dm
                    for c in range(dm):
                        add_into(block[c], {col_t + c: s * val})
        rows.extend(block)
    return Matrix._from_row_dicts(dg ** (n + 1) * dm, dg ** n * dm, rows)


def lp_differential(rep: LeibnizRep, n: int) -> Matrix:
    """Matrix of delta_{g,V}: Hom(g^n, V) -> Hom(g^(n+1), V)."""
    return lp_differential_tables(rep.alg.dim, rep.dim, rep.alg.table, rep.left, rep.right, n)


@dataclass(frozen=True)
class LPCohomology:
    n: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: tuple

    def as_dict(self):
        return {"n": self.n, "dim_Z": self.dim_Z, "dim_B": self.dim_B, "dim_H": self.dim_H}


def lp_cohomology(rep: LeibnizRep, n: int) -> LPCohomology:
    if n < 0:
        raise DegreeOutOfRange("Loday-Pirashvili degree must be >= 0")
    dn = lp_differential(rep, n)
    Z = kernel_basis(dn)
    if n == 0:
        B = []
    else:
        B = image_basis(lp_differential(rep, n - 1))
    dim_c = rep.alg.dim ** n * rep.dim
    keep = complement_basis(B, Z, dim_c) if Z else []
    reps = tuple(tuple(Z[k]) for k in keep)
    return LPCohomology(n, len(Z), len(B), len(Z) - len(B), reps)


def lp_rank(rep: LeibnizRep, n: int) -> int:
    return rank(lp_differential(rep, n))
