"""The derived-bracket L-infinity algebra on L'[1] + a and its twisting.

L' consists of maps of bidegree k|0 and a of maps of bidegree -1|l.  An
element of degree n of L'[1] + a is a pair ``(q, a)`` with q of arity n+2 and
a of arity n+1.  The structure maps (with zero differential) are

    l_2(q[1], q'[1]) = (-1)^{|q|} [q, q']_B [1]
    l_k(q[1], a_1, ..., a_{k-1}) = P[...[q, a_1]_B ..., a_{k-1}]_B

where P keeps the -1|* part; up to graded symmetry all other maps vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from fractions import Fraction
from itertools import combinations

from .errors import DegreeMismatch, NotMaurerCartan
from .multimap import MultiMap, SpaceSpec, balavoine, is_homogeneous_of

WEIGHTED = "weighted"
UNWEIGHTED = "unweighted"


def projection(f: MultiMap) -> MultiMap:
    """P: keep the components of bidegree -1|* (maps V^n -> g)."""
    dg = f.space.dim_g
    return f.filter(lambda inp, out: out < dg and all(i >= dg for i in inp))


@dataclass(frozen=True)
class LinfElem:
    """A homogeneous element (q[1], a) of L'[1] + a.

    ``q`` (arity degree+2, bidegree *|0) and ``a`` (arity degree+1, bidegree
    -1|*) may be ``None`` for zero.  Degrees below -1 have no a-part.
    """

    space: SpaceSpec
    degree: int
    q: MultiMap | None = None
    a: MultiMap | None = None

    def __post_init__(self):
        if self.q is not None:
            if self.q.space != self.space or self.q.arity != self.degree + 2:
                raise DegreeMismatch("L' component has the wrong arity for this degree")
            if not is_homogeneous_of(self.q, self.degree + 1, 0):
                raise DegreeMismatch("L' component is not of bidegree *|0")
            if self.q.is_zero():
                object.__setattr__(self, "q", None)
        if self.a is not None:
            if self.a.space != self.space or self.a.arity != self.degree + 1:
                raise DegreeMismatch("a component has the wrong arity for this degree")
            if not is_homogeneous_of(self.a, -1, self.degree + 1):
                raise DegreeMismatch("a component is not of bidegree -1|*")
            if self.a.is_zero():
                object.__setattr__(self, "a", None)

    @classmethod
    def zero(cls, space, degree):
        return cls(space, degree)

    def is_zero(self) -> bool:
        return self.q is None and self.a is None

    def __add__(self, other: "LinfElem") -> "LinfElem":
        if other.space != self.space or other.degree != self.degree:
            raise DegreeMismatch("cannot add elements of different degree")
        return LinfElem(self.space, self.degree, _madd(self.q, other.q), _madd(self.a, other.a))

    def scale(self, s) -> "LinfElem":
        return LinfElem(self.space, self.degree,
                        self.q.scale(s) if self.q is not None else None,
                        self.a.scale(s) if self.a is not None else None)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, LinfElem):
            return NotImplemented
        return (self.space == other.space and self.degree == other.degree
                and self.q == other.q and self.a == other.a)

    def __hash__(self):
        return hash((self.space, self.degree, self.q, self.a))


def _madd(f, g):
    if f is None:
        return g
    if g is None:
        return f
    return f + g


def mc_candidate(pi: MultiMap, R: MultiMap) -> LinfElem:
    """theta = (pi[1], R) in degree 0."""
    return LinfElem(pi.space, 0, pi, R)


# -- structure maps -------------------------------------------------------------


def _iterated(q: MultiMap, avs) -> MultiMap | None:
    f = q
    for a in avs:
        f = balavoine(f, a)
        if f.is_zero():
            return None
    return f


def _l_one_q(j: int, args, degs) -> LinfElem | None:
    """l_k with the L' slot j and a-slots elsewhere, Koszul sign included."""
    q = args[j].q
    avs = [args[i].a for i in range(len(args)) if i != j]
    if q is None or any(a is None for a in avs):
        return None
    # P[...] is nonzero only when the a's exhaust the g-slots of q
    if len(avs) != q.arity:
        return None
    f = _iterated(q, avs)
    if f is None:
        return None
    f = projection(f)
    if f.is_zero():
        return None
    moved = sum(degs[:j])
    if (degs[j] * moved) % 2:
        f = f.scale(-1)
    return LinfElem(q.space, sum(degs) + 1, None, f)


def l_k(args) -> LinfElem:
    """The structure map l_k evaluated on homogeneous arguments (k = len(args))."""
    args = list(args)
    if not args:
        raise ValueError("l_k needs at least one argument")
    space = args[0].space
    if any(x.space != space for x in args):
        raise DegreeMismatch("arguments live over different spaces")
    degs = [x.degree for x in args]
    out_deg = sum(degs) + 1
    k = len(args)
    result = LinfElem.zero(space, out_deg)
    if k == 1:
        return result
    if k == 2:
        x, y = args
        if x.q is not None and y.q is not None:
            sign = -1 if (x.q.arity - 1) % 2 else 1
            result = result + LinfElem(space, out_deg, balavoine(x.q, y.q).scale(sign), None)
    for j in range(k):
        term = _l_one_q(j, args, degs)
        if term is not None:
            result = result + term
    return result


def _theta_l_k(thetas, args) -> LinfElem:
    return l_k(list(thetas) + list(args))


def mc_bound(theta: LinfElem) -> int:
    """Largest k with l_k(theta, ..., theta) possibly nonzero."""
    return max(2, theta.q.arity + 1 if theta.q is not None else 2)


def mc_defect(theta: LinfElem) -> LinfElem:
    """sum_k 1/k! l_k(theta, ..., theta); zero iff theta is Maurer-Cartan."""
    if theta.degree != 0:
        raise DegreeMismatch("Maurer-Cartan candidates have degree 0")
    total = LinfElem.zero(theta.space, 1)
    for k in range(1, mc_bound(theta) + 1):
        term = l_k([theta] * k)
        if not term.is_zero():
            total = total + term.scale(Fraction(1, factorial(k)))
    return total


def _weight(i: int, convention: str):
    if convention == WEIGHTED:
        return Fraction(1, factorial(i))
    if convention == UNWEIGHTED:
        return 1
    raise ValueError(f"unknown convention {convention!r}")


def twisted_l_k(theta: LinfElem, args, *, convention: str = WEIGHTED, check: bool = True) -> LinfElem:
    """l_k^theta(x_1..x_k) = sum_i w_i l_{k+i}(theta^i, x_1..x_k).

    ``w_i = 1/i!`` for the weighted convention, ``1`` for the unweighted one.
    """
    if check and not mc_defect(theta).is_zero():
        raise NotMaurerCartan("theta is not a Maurer-Cartan element")
    args = list(args)
    out_deg = sum(x.degree for x in args) + 1
    space = theta.space
    total = LinfElem.zero(space, out_deg)
    qmax = max([x.q.arity for x in args if x.q is not None]
               + ([theta.q.arity] if theta.q is not None else []) + [1])
    for i in range(0, qmax + 2):
        term = l_k([theta] * i + args)
        if not term.is_zero():
            total = total + term.scale(_weight(i, convention))
    return total


def twisted_mc_sum(theta: LinfElem, theta_p: LinfElem, *, convention: str = WEIGHTED) -> LinfElem:
    """sum_k 1/k! l_k^theta(theta', ..., theta')."""
    if theta_p.degree != 0:
        raise DegreeMismatch("Maurer-Cartan candidates have degree 0")
    if not mc_defect(theta).is_zero():
        raise NotMaurerCartan("theta is not a Maurer-Cartan element")
    total = LinfElem.zero(theta.space, 1)
    kmax = max(mc_bound(theta), mc_bound(theta_p))
    for k in range(1, kmax + 1):
        term = twisted_l_k(theta, [theta_p] * k, convention=convention, check=False)
        if not term.is_zero():
            total = total + term.scale(Fraction(1, factorial(k)))
    return total


def twisted_mc_check(theta: LinfElem, theta_p: LinfElem, *, convention: str = WEIGHTED) -> bool:
    return twisted_mc_sum(theta, theta_p, convention=convention).is_zero()


def higher_jacobi_defect(args) -> LinfElem:
    """sum_{i+j=n+1} sum_{sigma in Sh(i,n-i)} eps(sigma) l_j(l_i(x_sigma...), x_sigma...)."""
    args = list(args)
    n = len(args)
    degs = [x.degree for x in args]
    total = LinfElem.zero(args[0].space, sum(degs) + 2)
    for i in range(1, n + 1):
        for head in combinations(range(n), i):
            tail = [m for m in range(n) if m not in head]
            eps = _koszul(list(head) + tail, degs)
            inner = l_k([args[m] for m in head])
            if inner.is_zero():
                continue
            outer = l_k([inner] + [args[m] for m in tail])
            if not outer.is_zero():
                total = total + outer.scale(eps)
    return total


def _koszul(order, degs) -> int:
    """Koszul sign of reordering elements of the given degrees into ``order``."""
    sign = 1
    order = list(order)
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            if order[x] > order[y] and (degs[order[x]] * degs[order[y]]) % 2:
                sign = -sign
    return sign


__all__ = [
    "LinfElem", "projection", "mc_candidate", "l_k", "mc_defect", "mc_bound", "twisted_l_k",
    "twisted_mc_sum", "twisted_mc_check", "higher_jacobi_defect", "WEIGHTED", "UNWEIGHTED",
]
