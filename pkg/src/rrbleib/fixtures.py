"""Named fixtures and seeded generators of valid (and invalid) instances.

``L2`` is the two-dimensional Leibniz algebra with ``[e1, e1] = e2`` and all
other brackets zero; ``AdL2`` its adjoint representation.  ``L2_RRB`` adds
the operator ``R: e1 -> e2, e2 -> 0`` on the adjoint representation.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import Matrix
from .leibniz import LeibnizAlgebra, LeibnizRep, adjoint_rep, direct_sum_rep, dual_rep, trivial_rep
from .rrb import RRBLeibniz, check_rrb, transport


def L2() -> LeibnizAlgebra:
    return LeibnizAlgebra(2, {(0, 0): {1: 1}}, name="L2")


def AdL2() -> LeibnizRep:
    return adjoint_rep(L2(), check=True)


def L2_R() -> Matrix:
    return Matrix.from_rows([[0, 0], [1, 0]])


def L2_RRB() -> RRBLeibniz:
    alg = L2()
    return RRBLeibniz(alg, adjoint_rep(alg), L2_R())


SEED_ALGEBRAS = {
    "L2": (2, {(0, 0): {1: 1}}),
    "L2+k": (3, {(0, 0): {1: 1}}),
    "cyclic3": (3, {(0, 0): {1: 1}, (0, 1): {2: 1}}),
    "heisenberg": (3, {(0, 1): {2: 1}, (1, 0): {2: -1}}),
    "sl2": (3, {(0, 1): {1: 2}, (1, 0): {1: -2}, (0, 2): {2: -2}, (2, 0): {2: 2},
                (1, 2): {0: 1}, (2, 1): {0: -1}}),
    "aff2": (2, {(0, 1): {1: 1}, (1, 0): {1: -1}}),
    "left2": (2, {(0, 1): {1: 1}}),
    "abelian1": (1, {}),
    "abelian2": (2, {}),
}

# invertible derivations D; R = D^{-1} is then a Rota-Baxter operator on g
_GRADINGS = {
    "L2": (1, 2),
    "L2+k": (1, 2, 1),
    "cyclic3": (1, 2, 3),
    "heisenberg": (1, 1, 2),
}


def seed_algebra(name: str) -> LeibnizAlgebra:
    dim, table = SEED_ALGEBRAS[name]
    return LeibnizAlgebra(dim, {k: dict(v) for k, v in table.items()}, name=name)


def _random_invertible(n: int, rng: random.Random) -> Matrix:
    """Unit lower-triangular times a signed permutation; entries stay small."""
    if n == 0:
        return Matrix.zeros(0, 0)
    low = [[1 if i == j else (rng.choice((-1, 0, 0, 1)) if j < i else 0) for j in range(n)]
           for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((-1, 1)) for _ in range(n)]
    P = [[signs[i] if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    return Matrix.from_rows(low) @ Matrix.from_rows(P)


def _random_rep(alg: LeibnizAlgebra, rng: random.Random, max_dim: int = 3) -> LeibnizRep:
    choices = ["adjoint", "trivial", "dual"]
    if alg.dim + 1 <= max_dim:
        choices.append("adjoint+trivial")
    kind = rng.choice(choices)
    if kind == "adjoint":
        return adjoint_rep(alg)
    if kind == "dual":
        return dual_rep(adjoint_rep(alg))
    if kind == "trivial":
        return trivial_rep(alg, rng.randint(1, max(1, min(2, max_dim))))
    return direct_sum_rep(adjoint_rep(alg), trivial_rep(alg, 1))


def _candidate_R(alg_name, alg, rep, rng):
    d, e = alg.dim, rep.dim
    mode = rng.random()
    if mode < 0.3 and alg_name in _GRADINGS and rep.dim == d and rep.left == alg.table \
            and rep.right == alg.table:
        return Matrix.from_rows([[Fraction(1, _GRADINGS[alg_name][i]) if i == j else 0
                                  for j in range(d)] for i in range(d)]).scale(rng.choice((1, -1, 2)))
    vals = (-1, 0, 0, 0, 1, 2)
    return Matrix.from_rows([[rng.choice(vals) for _ in range(e)] for _ in range(d)])


def random_rrb(rng: random.Random, max_dim: int = 3, algebras=None, tries: int = 200,
               basis_change: bool = True) -> RRBLeibniz:
    """A seeded random valid rRB Leibniz algebra with dim g, dim V <= ``max_dim``."""
    names = [n for n in (algebras or SEED_ALGEBRAS) if SEED_ALGEBRAS[n][0] <= max_dim]
    name = rng.choice(names)
    alg = seed_algebra(name)
    rep = _random_rep(alg, rng, max_dim)
    R = None
    for _ in range(tries):
        cand = _candidate_R(name, alg, rep, rng)
        t = RRBLeibniz(alg, rep, cand, check=False)
        if check_rrb(t) and not cand.is_zero():
            R = cand
            break
    if R is None:
        R = Matrix.zeros(alg.dim, rep.dim)
    t = RRBLeibniz(alg, rep, R, check=False)
    if basis_change:
        t = transport(t, _random_invertible(alg.dim, rng), _random_invertible(rep.dim, rng))
    return RRBLeibniz(t.alg, t.rep, t.R, check=True)


def random_structure(rng: random.Random, d: int, e: int, density: float = 0.3, vals=(-1, 1)):
    """Random (unchecked) bracket, actions and operator; usually not valid."""

    def tab(n1, n2, n3):
        out = {}
        for i in range(n1):
            for j in range(n2):
                col = {k: rng.choice(vals) for k in range(n3) if rng.random() < density}
                if col:
                    out[(i, j)] = col
        return out

    alg = LeibnizAlgebra(d, tab(d, d, d), check=False)
    rep = LeibnizRep(alg, e, tab(d, e, e), tab(e, d, e), check=False)
    R = Matrix.from_rows([[rng.choice((0, 0) + tuple(vals)) for _ in range(e)] for _ in range(d)])
    return RRBLeibniz(alg, rep, R, check=False)


def perturb(t: RRBLeibniz, rng: random.Random) -> RRBLeibniz:
    """Change one structure constant or operator entry by +-1 (result is unchecked)."""
    d, e = t.d, t.e
    which = rng.choice(("bracket", "left", "right", "R"))
    mu = {k: dict(v) for k, v in t.alg.table.items()}
    left = {k: dict(v) for k, v in t.rep.left.items()}
    right = {k: dict(v) for k, v in t.rep.right.items()}
    R = t.R.tolist()
    s = rng.choice((-1, 1))
    if which == "bracket":
        key, k = (rng.randrange(d), rng.randrange(d)), rng.randrange(d)
        mu.setdefault(key, {})[k] = mu.get(key, {}).get(k, 0) + s
    elif which == "left":
        key, k = (rng.randrange(d), rng.randrange(e)), rng.randrange(e)
        left.setdefault(key, {})[k] = left.get(key, {}).get(k, 0) + s
    elif which == "right":
        key, k = (rng.randrange(e), rng.randrange(d)), rng.randrange(e)
        right.setdefault(key, {})[k] = right.get(key, {}).get(k, 0) + s
    else:
        i, a = rng.randrange(d), rng.randrange(e)
        R[i][a] += s
    alg = LeibnizAlgebra(d, mu, check=False)
    rep = LeibnizRep(alg, e, left, right, check=False)
    return RRBLeibniz(alg, rep, Matrix.from_rows(R), check=False)


__all__ = [
    "L2", "AdL2", "L2_R", "L2_RRB", "SEED_ALGEBRAS", "seed_algebra", "random_rrb",
    "random_structure", "perturb",
]
