import random
from itertools import product

import pytest

from conftest import random_instances
from rrbleib.cohomology import differential_matrix, theta_of
from rrbleib.errors import DegreeMismatch, NotMaurerCartan
from rrbleib.exact import Matrix
from rrbleib.fixtures import L2, L2_RRB, random_structure
from rrbleib.leibniz import adjoint_rep, check_leibniz, check_rep
from rrbleib.linfty import (UNWEIGHTED, LinfElem, higher_jacobi_defect, l_k, mc_defect, projection,
                            twisted_l_k, twisted_mc_check)
from rrbleib.multimap import MultiMap, SpaceSpec, arity_limit, random_homogeneous
from rrbleib.rrb import RRBLeibniz, check_rrb


def _elem(sp, deg, rng, density=0.4):
    q = random_homogeneous(sp, deg + 1, 0, rng, density=density)
    a = random_homogeneous(sp, -1, deg + 1, rng, density=density) if deg >= 0 else None
    return LinfElem(sp, deg, q, a)


def _rrb_defect(t):
    """[Rv,Rw] - R(l(Rv,w) + r(v,Rw)) as a dict keyed like the a-part of the MC defect."""
    out = {}
    d = t.d
    for a, b in product(range(t.e), repeat=2):
        v, w = {a: 1}, {b: 1}
        lhs = t.alg.bracket(t.Rv(v), t.Rv(w))
        inner = t.rep.l(t.Rv(v), w)
        for k, c in t.rep.r(v, t.Rv(w)).items():
            inner[k] = inner.get(k, 0) + c
        rhs = t.Rv(inner)
        for k in set(lhs) | set(rhs):
            val = lhs.get(k, 0) - rhs.get(k, 0)
            if val:
                out[((d + a, d + b), k)] = val
    return out


def test_l2_is_maurer_cartan():
    assert mc_defect(theta_of(L2_RRB())).is_zero()


def test_identity_operator_defect():
    alg = L2()
    t = RRBLeibniz(alg, adjoint_rep(alg), Matrix.identity(2), check=False)
    D = mc_defect(theta_of(t))
    assert D.q is None
    assert D.a.terms == {((2, 2), 1): -1}


def test_defect_a_part_is_operator_identity_defect():
    rng = random.Random(7)
    for _ in range(30):
        t = random_structure(rng, rng.randint(1, 3), rng.randint(1, 2))
        D = mc_defect(theta_of(t))
        got = D.a.terms if D.a is not None else {}
        assert got == _rrb_defect(t)
        assert (D.q is None) == bool(check_leibniz(t.alg) and check_rep(t.rep))


def test_projection_keeps_v_to_g_part():
    sp = SpaceSpec(1, 1)
    f = MultiMap(sp, 2, {((1, 1), 0): 2, ((0, 1), 0): 1, ((1, 1), 1): 1})
    assert projection(f).terms == {((1, 1), 0): 2}


def test_degree_checks():
    sp = SpaceSpec(1, 1)
    with pytest.raises(DegreeMismatch):
        LinfElem(sp, 0, MultiMap(sp, 1, {((0,), 0): 1}))
    x = LinfElem(sp, 0)
    with pytest.raises(DegreeMismatch):
        x + LinfElem(sp, 1)


@pytest.mark.parametrize("k", [2, 3])
def test_higher_jacobi_relations(k):
    rng = random.Random(k)
    sp = SpaceSpec(2, 1)
    for _ in range(8):
        xs = [_elem(sp, rng.choice((-1, 0, 1)), rng) for _ in range(k)]
        with arity_limit(8):
            assert higher_jacobi_defect(xs).is_zero()


def test_l2_graded_symmetry():
    rng = random.Random(12)
    sp = SpaceSpec(2, 1)
    for _ in range(10):
        x, y = _elem(sp, rng.choice((-1, 0)), rng), _elem(sp, rng.choice((-1, 0, 1)), rng)
        sign = -1 if (x.degree * y.degree) % 2 else 1
        assert l_k([x, y]) == l_k([y, x]).scale(sign)


def test_twisted_differential_squares_to_zero(instances):
    rng = random.Random(13)
    for t in instances[:5]:
        theta = theta_of(t)
        for deg in (-1, 0, 1):
            x = _elem(t.space, deg, rng)
            y = twisted_l_k(theta, [x])
            assert twisted_l_k(theta, [y], check=False).is_zero()


def test_twisting_requires_maurer_cartan():
    alg = L2()
    t = RRBLeibniz(alg, adjoint_rep(alg), Matrix.identity(2), check=False)
    with pytest.raises(NotMaurerCartan):
        twisted_l_k(theta_of(t), [LinfElem(t.space, 0)])


def test_twisted_mc_equation_matches_sum(l2):
    theta = theta_of(l2)
    assert twisted_mc_check(theta, LinfElem(l2.space, 0))
    alg = L2()
    bad = RRBLeibniz(alg, adjoint_rep(alg), Matrix.identity(2), check=False)
    assert not twisted_mc_check(theta, theta_of(bad) - theta)


def test_unweighted_twisting_breaks_square_zero():
    # recorded so a convention change is noticed: the unweighted sum fails in degree 2
    fails = 0
    for t in random_instances():
        A = differential_matrix(t, 2, convention=UNWEIGHTED)
        B = differential_matrix(t, 3, convention=UNWEIGHTED)
        fails += not (B @ A).is_zero()
        assert (differential_matrix(t, 3) @ differential_matrix(t, 2)).is_zero()
    assert fails == 8
