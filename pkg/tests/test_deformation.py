import random
from fractions import Fraction

import pytest

from conftest import random_instances
from rrbleib.cohomology import Cochain, CochainSpace, cohomology, differential_matrix, theta_of
from rrbleib.deformation import (InfDeformation, TruncatedDeformation, check_equivalence, check_inf_deformation,
                                 check_truncated, classify_inf_deformations, cocycle_of_deformation,
                                 deformation_of_cocycle, find_equivalence, pack_beta1, unpack_beta1)
from rrbleib.errors import NotACocycle, NotADeformation
from rrbleib.exact import Matrix, kernel_basis
from rrbleib.fixtures import L2_RRB
from rrbleib.leibniz import LeibnizAlgebra, LeibnizRep
from rrbleib.linfty import mc_defect
from rrbleib.rrb import RRBLeibniz


def _shifted(t, D, s):
    """The structure base + s * (first-order terms), unchecked."""
    def add(base, corr):
        out = {k: dict(v) for k, v in base.items()}
        for k, col in corr.items():
            for j, c in col.items():
                out.setdefault(k, {})[j] = out.get(k, {}).get(j, 0) + s * c
        return out

    alg = LeibnizAlgebra(t.d, add(t.alg.table, D.mu1), check=False)
    rep = LeibnizRep(alg, t.e, add(t.rep.left, D.l1), add(t.rep.right, D.r1), check=False)
    return RRBLeibniz(alg, rep, t.R + D.R1.scale(s), check=False)


def _first_order_defect(t, D):
    """Coefficient of s in the axiom defect of base + s*c, by interpolation at s = 0..3."""
    pts = [0, 1, 2, 3]
    vals = []
    for s in pts:
        dft = mc_defect(theta_of(_shifted(t, D, s)))
        terms = {}
        for part in (dft.q, dft.a):
            if part is not None:
                terms.update({(part.arity, k): v for k, v in part.items()})
        vals.append(terms)
    keys = set().union(*vals)
    out = {}
    for k in keys:
        # derivative at 0 of the cubic through (s, f(s))
        ys = [v.get(k, 0) for v in vals]
        coeff = Fraction(-11, 6) * ys[0] + 3 * ys[1] - Fraction(3, 2) * ys[2] + Fraction(1, 3) * ys[3]
        if coeff:
            out[k] = coeff
    return out


def test_first_order_condition_is_the_cocycle_condition():
    rng = random.Random(21)
    for t in (L2_RRB(),) + random_instances()[:3]:
        sp = CochainSpace.adjoint(t, 2)
        Z = kernel_basis(differential_matrix(t, 2))
        for _ in range(6):
            if rng.random() < 0.5 and Z:
                vec = [0] * sp.dim
                for z in Z:
                    s = rng.choice((0, 1, -1))
                    vec = [a + s * b for a, b in zip(vec, z)]
            else:
                vec = [rng.choice((0, 0, 1, -1)) for _ in range(sp.dim)]
            c = Cochain.from_vector(sp, vec)
            D = deformation_of_cocycle(t, c, check=False)
            closed = not any(differential_matrix(t, 2) @ vec)
            assert (not _first_order_defect(t, D)) == closed
            assert bool(check_inf_deformation(D)) == closed


def test_pack_unpack_roundtrip():
    l1 = {(0, 1): {0: 2}, (1, 0): {1: -1}}
    r1 = {(1, 1): {0: 3}}
    beta = pack_beta1(l1, r1, 2)
    assert beta == {((0, 3), 0): 2, ((1, 2), 1): -1, ((3, 1), 0): 3}
    assert unpack_beta1(beta, 2) == (l1, r1)


def test_cocycle_roundtrip_on_l2():
    t = L2_RRB()
    rep = cohomology(t, 2)
    for c in rep.representatives:
        D = deformation_of_cocycle(t, c)
        assert check_inf_deformation(D)
        assert cocycle_of_deformation(D) == c


def test_l2_classification_count():
    rep, defs = classify_inf_deformations(L2_RRB())
    assert rep.dim_H == len(defs) == 7
    for i, D in enumerate(defs):
        for D2 in defs[i + 1:]:
            assert find_equivalence(D, D2) is None


def test_cohomologous_deformations_are_equivalent():
    rng = random.Random(8)
    for t in (L2_RRB(),) + random_instances()[:4]:
        rep = cohomology(t, 2)
        d1 = differential_matrix(t, 1)
        for c in rep.representatives[:3]:
            b = [rng.choice((0, 1, -1, 2)) for _ in range(d1.cols)]
            c2 = c + Cochain.from_vector(c.space, d1 @ b)
            D, D2 = deformation_of_cocycle(t, c), deformation_of_cocycle(t, c2)
            found = find_equivalence(D, D2)
            assert found is not None
            assert check_equivalence(D, D2, *found)


def test_equivalence_failure_is_reported():
    t = L2_RRB()
    rep = cohomology(t, 2)
    D = deformation_of_cocycle(t, rep.representatives[0])
    D0 = InfDeformation(t)
    res = check_equivalence(D, D0, Matrix.zeros(2, 2), Matrix.zeros(2, 2))
    assert not res and res.detail.startswith("order 1")


def test_non_cocycle_is_rejected():
    t = L2_RRB()
    sp = CochainSpace.adjoint(t, 2)
    bad = None
    for i in range(sp.dim):
        c = Cochain.basis(sp, i)
        if any(differential_matrix(t, 2) @ c.vector()):
            bad = c
            break
    with pytest.raises(NotACocycle):
        deformation_of_cocycle(t, bad)
    with pytest.raises(NotADeformation):
        cocycle_of_deformation(deformation_of_cocycle(t, bad, check=False))


def test_scaling_family_is_a_formal_deformation():
    # (1+s) mu with the matching adjoint actions and fixed R is valid for every s
    t = L2_RRB()
    mu = t.alg.table
    for N in (1, 2, 3):
        D = TruncatedDeformation(t, [mu] + [{}] * (N - 1), [mu] + [{}] * (N - 1),
                                 [mu] + [{}] * (N - 1), [None] * N)
        assert check_truncated(D)


def test_second_order_obstruction_is_located():
    t = L2_RRB()
    found_obstructed = False
    for c in cohomology(t, 2).representatives:
        D1 = deformation_of_cocycle(t, c)
        assert bool(check_truncated(D1)) == bool(check_inf_deformation(D1))
        D2 = TruncatedDeformation(t, [D1.mu1, {}], [D1.l1, {}], [D1.r1, {}], [D1.R1, None])
        res = check_truncated(D2)
        if not res:
            found_obstructed = True
            assert res.detail.startswith("order 2")
    assert found_obstructed
