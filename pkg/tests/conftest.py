import random
from fractions import Fraction
from functools import lru_cache

import pytest

from rrbleib.fixtures import L2_RRB, random_rrb


def bareiss_rank(rows) -> int:
    """Fraction-free elimination; an oracle independent of rrbleib.exact."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    # clear denominators row by row so the elimination runs over the integers
    mat = []
    for r in rows:
        den = 1
        for x in r:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        mat.append([int(Fraction(x) * den) for x in r])
    m, n = len(mat), len(mat[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                mat[i][j] = (mat[i][j] * mat[rank][col] - mat[i][col] * mat[rank][j]) // prev
            mat[i][col] = 0
        prev = mat[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def random_instances(count: int = 10, seed: int = 20240611):
    rng = random.Random(seed)
    return tuple(random_rrb(rng) for _ in range(count))


@pytest.fixture(scope="session")
def l2():
    return L2_RRB()


@pytest.fixture(scope="session")
def instances():
    return random_instances()


# -- acceptance summary -----------------------------------------------------------

CRITERIA = {
    1: "graded Lie suite for the Balavoine bracket",
    2: "Leibniz identity iff [mu,mu] = 0",
    3: "MC equation iff rRB axioms",
    4: "square-zero differentials in degrees 1-4",
    5: "explicit = lifted coefficient differential",
    6: "deformations <-> H^2 roundtrip",
    7: "abelian extensions <-> H^2 roundtrip",
    8: "structural constructions validate",
    9: "twisted L-infinity coherence",
    10: "CLI round-trip and cross-command consistency",
}

_outcomes: dict = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    num = int(report.nodeid.split(marker)[1].split("_")[0])
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(num, "PASS")
        _outcomes[num] = "PASS" if (prev == "PASS" and report.outcome == "passed") else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        if num in _outcomes:
            terminalreporter.write_line(f"criterion {num:2d} [{_outcomes[num]}] {CRITERIA[num]}")
