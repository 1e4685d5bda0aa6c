"""Acceptance suite: one test per criterion, summarised at the end of the run."""

import json
import random
from functools import lru_cache
from pathlib import Path

from conftest import bareiss_rank, random_instances
from rrbleib import io
from rrbleib.cli import OK, run
from rrbleib.cohomology import (EXPLICIT, LIFTED, Cochain, CochainSpace, cochain_to_linf, cohomology,
                                differential_matrix, theta_of)
from rrbleib.deformation import (check_equivalence, check_inf_deformation, classify_inf_deformations,
                                 cocycle_of_deformation, deformation_of_cocycle, find_equivalence)
from rrbleib.exact import Matrix, kernel_basis
from rrbleib.extension import (build_extension, check_ext_iso, check_extension, extract_cocycle,
                               find_ext_iso, induced_rep_of_extension, section_from_shift)
from rrbleib.fixtures import L2_RRB, perturb, random_rrb, random_structure, seed_algebra, SEED_ALGEBRAS
from rrbleib.leibniz import LeibnizAlgebra, check_leibniz, check_rep, pi_map
from rrbleib.linfty import mc_defect, twisted_l_k, twisted_mc_check
from rrbleib.multimap import SpaceSpec, arity_limit, balavoine, bidegree_of, random_homogeneous
from rrbleib.rrb import (RRBLeibniz, adjoint_rrb_rep, check_all, check_rrb_rep, dual_rrb_rep,
                         induced_bracket, induced_vr_rep_on_g, induced_vr_rep_on_h, semidirect, transport,
                         trivial_rrb_rep)

DATA = Path(__file__).resolve().parent / "data"


def _instances():
    return (L2_RRB(),) + random_instances()


def _coeffs(t):
    ad = adjoint_rrb_rep(t)
    return {"adjoint": ad, "dual": dual_rrb_rep(ad)}


def _rank(m: Matrix) -> int:
    return bareiss_rank(m.tolist()) if m.rows and m.cols else 0


def _in_image(m: Matrix, vec) -> bool:
    """vec in the column space of m, decided with the independent elimination."""
    if not any(vec):
        return True
    aug = [row + [v] for row, v in zip(m.tolist(), vec)]
    return bareiss_rank(aug) == _rank(m)


# -- 1 ---------------------------------------------------------------------------


def _sign(a, b):
    return -1 if (a * b) % 2 else 1


def test_criterion_1_graded_lie_suite():
    rng = random.Random(101)
    bidegrees = [(0, 0), (1, 0), (-1, 1), (0, 1), (2, 0), (-1, 2), (1, 1)]
    maps = 0
    with arity_limit(8):
        for dims in ((1, 1), (2, 1), (2, 2)):
            sp = SpaceSpec(*dims)
            for _ in range(12):
                kl = [rng.choice(bidegrees) for _ in range(3)]
                f, g, h = (random_homogeneous(sp, k, l, rng, density=0.4) for k, l in kl)
                maps += 3
                a, b, c = (x.arity - 1 for x in (f, g, h))
                fg = balavoine(f, g)
                # graded skew-symmetry
                assert fg == balavoine(g, f).scale(-_sign(a, b))
                # bidegree additivity
                if not fg.is_zero():
                    bd = bidegree_of(fg)
                    assert (bd.k, bd.l) == (kl[0][0] + kl[1][0], kl[0][1] + kl[1][1])
                # graded Jacobi in cyclic form
                total = balavoine(fg, h).scale(_sign(a, c))
                total = total + balavoine(balavoine(g, h), f).scale(_sign(b, a))
                total = total + balavoine(balavoine(h, f), g).scale(_sign(c, b))
                assert total.is_zero()
    assert maps >= 100


# -- 2 ---------------------------------------------------------------------------


def _random_bracket(rng, d):
    table = {}
    for i in range(d):
        for j in range(d):
            col = {k: rng.choice((-1, 1, 2)) for k in range(d) if rng.random() < 0.25}
            if col:
                table[(i, j)] = col
    return LeibnizAlgebra(d, table, check=False)


def test_criterion_2_leibniz_iff_square_zero():
    rng = random.Random(202)
    names = list(SEED_ALGEBRAS)
    valid = invalid = 0
    for k in range(60):
        if k % 2:
            alg = random_rrb(rng).alg
        elif k % 6 == 0:
            alg = seed_algebra(rng.choice(names))
        else:
            alg = _random_bracket(rng, rng.randint(1, 3))
        lhs = bool(check_leibniz(alg))
        mu = pi_map(alg)
        rhs = balavoine(mu, mu).is_zero()
        assert lhs == rhs
        valid += lhs
        invalid += not lhs
    assert valid >= 5 and invalid >= 5


# -- 3 ---------------------------------------------------------------------------


def test_criterion_3_maurer_cartan_iff_axioms():
    rng = random.Random(303)
    valid = invalid = 0
    for k in range(60):
        kind = k % 3
        if kind == 0:
            t = random_rrb(rng)
        elif kind == 1:
            t = perturb(random_rrb(rng), rng)
        else:
            t = random_structure(rng, rng.randint(1, 3), rng.randint(1, 3), density=0.2)
        direct = all(check_all(t).values())
        assert mc_defect(theta_of(t)).is_zero() == direct
        valid += direct
        invalid += not direct
    assert valid >= 5 and invalid >= 5


# -- 4 and 5 ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _matrix(idx, kind, n, method):
    t = _instances()[idx]
    rep = None if kind is None else _coeffs(t)[kind]
    return differential_matrix(t, n, rep, method=method)


def test_criterion_4_square_zero_differentials():
    insts = _instances()
    assert len(insts) >= 11
    for idx in range(len(insts)):
        for kind in (None, "adjoint", "dual"):
            method = None if kind is None else EXPLICIT
            for n in (1, 2):
                prod = _matrix(idx, kind, n + 1, method) @ _matrix(idx, kind, n, method)
                assert prod.is_zero(), (idx, kind, n)


def test_criterion_5_explicit_equals_lifted():
    for idx in range(len(_instances())):
        for kind in ("adjoint", "dual"):
            for n in (1, 2, 3):
                assert _matrix(idx, kind, n, EXPLICIT) == _matrix(idx, kind, n, LIFTED), (idx, kind, n)
        # the adjoint coefficient complex is the twisted one
        for n in (1, 2, 3):
            assert _matrix(idx, None, n, None) == _matrix(idx, "adjoint", n, EXPLICIT)


# -- 6 ---------------------------------------------------------------------------


def test_criterion_6_deformation_roundtrip():
    t = L2_RRB()
    rng = random.Random(606)
    d1, d2 = differential_matrix(t, 1), differential_matrix(t, 2)
    sp = CochainSpace.adjoint(t, 2)
    Z = kernel_basis(d2)
    assert len(Z) == sp.dim - _rank(d2)
    combos = [list(z) for z in Z]
    for _ in range(10):
        coeffs = [rng.choice((0, 1, -1, 2)) for _ in Z]
        combos.append([sum(c * z[i] for c, z in zip(coeffs, Z)) for i in range(sp.dim)])
    for vec in combos:
        c = Cochain.from_vector(sp, vec)
        D = deformation_of_cocycle(t, c)
        assert check_inf_deformation(D)
        assert cocycle_of_deformation(D) == c
        # a cohomologous cocycle gives an equivalent deformation
        b = [rng.choice((0, 1, -1)) for _ in range(d1.cols)]
        D2 = deformation_of_cocycle(t, c + Cochain.from_vector(sp, d1 @ b))
        found = find_equivalence(D, D2)
        assert found is not None and check_equivalence(D, D2, *found)

    report, defs = classify_inf_deformations(t)
    assert report.dim_H == len(defs) == len(Z) - _rank(d1) == 7
    cocycles = [cocycle_of_deformation(D) for D in defs]
    for i in range(len(defs)):
        for j in range(len(defs)):
            if i == j:
                continue
            diff = (cocycles[i] - cocycles[j]).vector()
            assert not _in_image(d1, diff)
            assert find_equivalence(defs[i], defs[j]) is None


# -- 7 ---------------------------------------------------------------------------


def test_criterion_7_extension_roundtrip():
    rng = random.Random(707)
    for t in _instances():
        for kind, rep in _coeffs(t).items():
            d2, d1 = differential_matrix(t, 2, rep), differential_matrix(t, 1, rep)
            sp = CochainSpace.coefficients(rep, 2)
            Z = kernel_basis(d2)
            vec = [0] * sp.dim
            for z in Z:
                s = rng.choice((0, 1, -1))
                vec = [a + s * b for a, b in zip(vec, z)]
            c = Cochain.from_vector(sp, vec)
            E = build_extension(t, rep, c)
            assert check_extension(E)
            assert extract_cocycle(E) == c
            assert induced_rep_of_extension(E) == rep
            d, e, p, q = E.dims
            for _ in range(2):
                K = Matrix.from_rows([[rng.choice((0, 1, -1)) for _ in range(d)] for _ in range(p)])
                H = Matrix.from_rows([[rng.choice((0, 1, -1)) for _ in range(e)] for _ in range(q)])
                c2 = extract_cocycle(E, section_from_shift(E, K, H))
                assert _in_image(d1, (c - c2).vector())
            # cohomologous cocycles: an isomorphism exists, and any isomorphism forces cohomology
            b = [rng.choice((0, 1, -1)) for _ in range(d1.cols)]
            E2 = build_extension(t, rep, c + Cochain.from_vector(sp, d1 @ b))
            found = find_ext_iso(E, E2, rep)
            assert found is not None and check_ext_iso(E, E2, *found)
            assert _in_image(d1, (extract_cocycle(E) - extract_cocycle(E2)).vector())
            # non-cohomologous cocycles: no isomorphism
            for r in cohomology(t, 2, rep).representatives[:2]:
                E3 = build_extension(t, rep, c + r)
                assert not _in_image(d1, (c - (c + r)).vector())
                assert find_ext_iso(E, E3, rep) is None


# -- 8 ---------------------------------------------------------------------------


def test_criterion_8_structural_constructions():
    for t in _instances():
        assert check_leibniz(induced_bracket(t))
        assert check_rep(induced_vr_rep_on_g(t))
        ad = adjoint_rrb_rep(t)
        for rep in (ad, dual_rrb_rep(ad), trivial_rrb_rep(t, 1, 2), dual_rrb_rep(dual_rrb_rep(ad))):
            assert check_rrb_rep(rep)
            assert check_rrb_rep(dual_rrb_rep(rep))
            assert all(check_all(semidirect(t, rep)).values())
            assert check_rep(induced_vr_rep_on_h(rep))


# -- 9 ---------------------------------------------------------------------------


def _thetas():
    out = [t for t in _instances() if not t.R.is_zero()]
    return out[:6]


def test_criterion_9_twisted_coherence():
    rng = random.Random(909)
    thetas = _thetas()
    assert len(thetas) >= 5
    checked = 0
    for t in thetas:
        theta = theta_of(t)
        for _ in range(20):
            n = rng.choice((1, 2, 3))
            sp = CochainSpace.adjoint(t, n)
            vec = [rng.choice((0, 0, 0, 1, -1, 2)) for _ in range(sp.dim)]
            x = cochain_to_linf(Cochain.from_vector(sp, vec))
            y = twisted_l_k(theta, [x], check=False)
            assert twisted_l_k(theta, [y], check=False).is_zero()
            checked += 1
    assert checked >= 100

    cases = valid = 0
    for t in thetas:
        theta = theta_of(t)
        d, e = t.d, t.e
        candidates = [t, RRBLeibniz(t.alg, t.rep, Matrix.zeros(d, e), check=False),
                      transport(t, Matrix.identity(d).scale(2), Matrix.identity(e))]
        candidates += [perturb(t, rng) for _ in range(4)]
        candidates += [random_structure(rng, d, e, density=0.2) for _ in range(3)]
        for s in candidates:
            theta_p = theta_of(s) - theta
            assert twisted_mc_check(theta, theta_p) == all(check_all(s).values())
            cases += 1
            valid += all(check_all(s).values())
    assert cases >= 50 and valid >= 5


# -- 10 --------------------------------------------------------------------------


def test_criterion_10_cli_roundtrip_and_consistency():
    fixtures = sorted(DATA.glob("*.json"))
    assert len(fixtures) >= 10
    for path in fixtures:
        text = path.read_text(encoding="utf-8")
        once = io.roundtrip(text)
        assert io.roundtrip(once) == once, path.name
        if path.name != "l2_loose.json":
            assert once == text, path.name
    # documents emitted by the CLI parse back to the same bytes
    for cmd in (["dual"], ["semidirect"]):
        status, text = run(cmd + ["-i", str(DATA / "l2_dual_rep.json")])
        assert status == OK
        out = io.dumps(json.loads(text)["output"])
        assert io.roundtrip(out) == out
        assert run(cmd + ["-i", str(DATA / "l2_dual_rep.json")])[1] == text

    l2 = str(DATA / "l2.json")
    status, text = run(["mc-check", "-i", l2])
    mc = json.loads(text)
    assert status == OK and mc["ok"] and mc["agree"]
    assert mc["maurer_cartan"]["defect_q"] is None and mc["maurer_cartan"]["defect_a"] is None
    status, text = run(["cohomology", "--degree", "2", "-i", l2])
    coh = json.loads(text)
    status2, text2 = run(["deform", "classify", "-i", l2])
    cls = json.loads(text2)
    assert status == status2 == OK
    assert coh["table"] == cls["table"] and cls["classes"] == coh["table"]["dim_H"] == 7
    assert coh["representatives"] == cls["representatives"]
    t = io.parse_rrb(io.loads((DATA / "l2.json").read_text()))
    for rep in cls["representatives"]:
        doc = io.scenario_document(t, cochain=rep)
        c = io.parse_cochain(doc["cochain"], lambda n: CochainSpace.adjoint(t, n))
        assert check_inf_deformation(deformation_of_cocycle(t, c))
    bad = json.loads(run(["mc-check", "-i", str(DATA / "l2_identity.json")])[1])
    assert bad["agree"] and not bad["ok"]
