"""Multilinear maps on the two-sorted space g + V and the Balavoine bracket.

A basis of g + V is indexed globally: ``0 .. dim_g-1`` are e_1..e_d of g and
``dim_g .. dim_g+dim_v-1`` are f_1..f_e of V.  A :class:`MultiMap` of arity n
stores its nonzero coefficients keyed by ``(input index tuple, output index)``.
"""

from __future__ import annotations

import os
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Mapping

from .errors import ArityLimitError
from .exact import as_rational

G = "G"
V = "V"

ARITY_ENV = "RRBLEIB_MAX_ARITY"
_DEFAULT_MAX_ARITY = 6
_max_arity_override: int | None = None


class Inhomogeneous:
    """Sentinel returned by :func:`bidegree_of` for maps with no single bidegree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Inhomogeneous"

    def __bool__(self):
        return False


INHOMOGENEOUS = Inhomogeneous()


def max_arity() -> int:
    if _max_arity_override is not None:
        return _max_arity_override
    raw = os.environ.get(ARITY_ENV)
    if raw:
        return int(raw)
    return _DEFAULT_MAX_ARITY


@contextmanager
def arity_limit(n: int):
    """Temporarily change the arity cap."""
    global _max_arity_override
    old = _max_arity_override
    _max_arity_override = n
    try:
        yield
    finally:
        _max_arity_override = old


@dataclass(frozen=True)
class SpaceSpec:
    dim_g: int
    dim_v: int

    def __post_init__(self):
        if self.dim_g < 1 or self.dim_v < 0:
            raise ValueError("need dim_g >= 1 and dim_v >= 0")

    @property
    def dim(self) -> int:
        return self.dim_g + self.dim_v

    def sort(self, idx: int) -> str:
        return G if idx < self.dim_g else V

    def indices(self, sort: str) -> range:
        return range(self.dim_g) if sort == G else range(self.dim_g, self.dim)

    def local(self, idx: int) -> int:
        return idx if idx < self.dim_g else idx - self.dim_g

    def global_index(self, sort: str, local: int) -> int:
        return local if sort == G else self.dim_g + local

    def name(self, idx: int) -> str:
        return f"e{idx + 1}" if idx < self.dim_g else f"f{idx - self.dim_g + 1}"

    def sort_words(self, n: int) -> list[str]:
        return ["".join(w) for w in product((G, V), repeat=n)]


@dataclass(frozen=True)
class Bidegree:
    k: int
    l: int

    def __str__(self):
        return f"{self.k}|{self.l}"


def _clean(terms: Mapping) -> dict:
    return {key: val for key, val in terms.items() if val}


class MultiMap:
    """An element of Hom((g + V)^{(x) n}, g + V), sparse in the standard basis."""

    __slots__ = ("space", "arity", "_terms")

    def __init__(self, space: SpaceSpec, arity: int, terms: Mapping | None = None, *, _trusted=False):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        if arity > max_arity():
            raise ArityLimitError(f"arity {arity} exceeds the cap {max_arity()}")
        self.space = space
        self.arity = arity
        if _trusted:
            self._terms = terms
            return
        clean = {}
        n = space.dim
        for (inp, out), val in (terms or {}).items():
            inp = tuple(inp)
            if len(inp) != arity:
                raise ValueError(f"input tuple {inp} has wrong length for arity {arity}")
            if not all(0 <= i < n for i in inp) or not 0 <= out < n:
                raise ValueError(f"basis index out of range in {(inp, out)}")
            val = as_rational(val)
            if val:
                clean[(inp, out)] = val
        self._terms = clean

    @classmethod
    def zero(cls, space: SpaceSpec, arity: int) -> "MultiMap":
        return cls(space, arity, {}, _trusted=True)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def coefficient(self, inputs, out) -> object:
        return self._terms.get((tuple(inputs), out), 0)

    def __call__(self, *inputs: int) -> list:
        """Value on a tuple of basis elements, as a dense vector of g + V."""
        vec = [0] * self.space.dim
        inputs = tuple(inputs)
        for (inp, out), val in self._terms.items():
            if inp == inputs:
                vec[out] += val
        return vec

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Degree in the graded Lie algebra of multilinear maps (arity - 1)."""
        return self.arity - 1

    def _check_compatible(self, other: "MultiMap"):
        if self.space != other.space or self.arity != other.arity:
            raise ValueError("maps live in different spaces or have different arities")

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._check_compatible(other)
        out = dict(self._terms)
        for key, val in other._terms.items():
            out[key] = out.get(key, 0) + val
        return MultiMap(self.space, self.arity, _clean(out), _trusted=True)

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        return self + other.scale(-1)

    def __neg__(self) -> "MultiMap":
        return self.scale(-1)

    def scale(self, s) -> "MultiMap":
        s = as_rational(s)
        if not s:
            return MultiMap.zero(self.space, self.arity)
        return MultiMap(self.space, self.arity, {k: v * s for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        return self.space == other.space and self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, self.arity, frozenset(self._terms.items())))

    def __repr__(self):
        return f"MultiMap({self.space.dim_g}|{self.space.dim_v}, arity={self.arity}, nnz={len(self._terms)})"

    def filter(self, keep) -> "MultiMap":
        """Keep only the terms ``(inputs, out)`` for which ``keep(inputs, out)`` is true."""
        return MultiMap(
            self.space, self.arity,
            {key: val for key, val in self._terms.items() if keep(*key)}, _trusted=True,
        )

    def word_of(self, inputs) -> str:
        return "".join(self.space.sort(i) for i in inputs)

    def restrict(self, word: str, out_sort: str) -> dict:
        """Component on one sort word, with local (per-sort) indices."""
        sp = self.space
        res = {}
        for (inp, out), val in self._terms.items():
            if self.word_of(inp) == word and sp.sort(out) == out_sort:
                res[(tuple(sp.local(i) for i in inp), sp.local(out))] = val
        return res

    def blocks(self) -> dict:
        """Nonzero blocks keyed by ``(sort word, output sort)``."""
        res: dict = defaultdict(dict)
        sp = self.space
        for (inp, out), val in self._terms.items():
            res[(self.word_of(inp), sp.sort(out))][(inp, out)] = val
        return dict(res)


def horizontal_lift(space: SpaceSpec, word: str, out_sort: str, component: Mapping) -> MultiMap:
    """Extend a map defined on one sort word by zero on every other word.

    ``component`` maps ``(local input tuple, local output index)`` to a coefficient.
    """
    if not word or any(s not in (G, V) for s in word) or out_sort not in (G, V):
        raise ValueError(f"bad sort word {word!r} -> {out_sort!r}")
    terms = {}
    for (inp, out), val in component.items():
        if len(inp) != len(word):
            raise ValueError("component input length does not match the sort word")
        key = (tuple(space.global_index(s, i) for s, i in zip(word, inp)),
               space.global_index(out_sort, out))
        terms[key] = val
    return MultiMap(space, len(word), terms)


def bidegree_of(f: MultiMap):
    """Return the bidegree ``k|l`` of ``f``, or ``INHOMOGENEOUS``.

    The zero map is reported as inhomogeneous.
    """
    if f.is_zero():
        return INHOMOGENEOUS
    sp = f.space
    ls = set()
    for inp, out in f._terms:
        nv = sum(1 for i in inp if i >= sp.dim_g)
        ls.add(nv - (1 if out >= sp.dim_g else 0))
        if len(ls) > 1:
            return INHOMOGENEOUS
    (l,) = ls
    return Bidegree(f.arity - 1 - l, l)


def is_homogeneous_of(f: MultiMap, k: int, l: int) -> bool:
    """True when every term of ``f`` is compatible with bidegree ``k|l`` (zero included)."""
    if k + l != f.arity - 1:
        return False
    dg = f.space.dim_g
    for inp, out in f._terms:
        nv = sum(1 for i in inp if i >= dg)
        if nv - (1 if out >= dg else 0) != l:
            return False
    return True


# -- shuffles -----------------------------------------------------------------


def shuffles(i: int, j: int) -> list[tuple[tuple[int, ...], int]]:
    """All (i, j)-shuffles as (image word of sigma, signature), lexicographically."""
    if i < 0 or j < 0:
        raise ValueError("shuffle sizes must be nonnegative")
    n = i + j
    out = []
    for head in combinations(range(1, n + 1), i):
        hs = set(head)
        tail = tuple(x for x in range(1, n + 1) if x not in hs)
        inv = sum(1 for a in head for b in tail if a > b)
        out.append((head + tail, -1 if inv % 2 else 1))
    return out


@lru_cache(maxsize=None)
def _shuffle_table(i: int, j: int) -> tuple:
    """0-based positions of the first i and last j shuffled entries, with signs."""
    return tuple(
        (tuple(x - 1 for x in perm[:i]), tuple(x - 1 for x in perm[i:]), sign)
        for perm, sign in shuffles(i, j)
    )


# -- the Balavoine bracket ----------------------------------------------------


def _insertion_sum(f: MultiMap, g: MultiMap, acc: dict, scale: int):
    """Add ``scale`` times the first double sum of the bracket formula to ``acc``.

    With f of arity m+1 and g of arity n+1, this is
    sum_i (-1)^{(i-1)n} sum_{sigma in Sh(i-1,n)} (-1)^sigma
    f(x_s(1),..,x_s(i-1), g(x_s(i),..,x_s(i+n-1), x_{i+n}), x_{i+n+1},..).
    """
    m = f.arity - 1
    n = g.arity - 1
    by_out: dict = defaultdict(list)
    for (b, go), cg in g._terms.items():
        by_out[go].append((b[:n], b[n], cg))
    if not by_out:
        return
    for (a, fo), cf in f._terms.items():
        for i in range(1, m + 2):
            gs = by_out.get(a[i - 1])
            if not gs:
                continue
            c0 = scale * cf * (-1 if ((i - 1) * n) % 2 else 1)
            pre = a[: i - 1]
            post = a[i:]
            table = _shuffle_table(i - 1, n)
            width = i - 1 + n
            for head, last, cg in gs:
                c = c0 * cg
                tail = (last,) + post
                for fpos, gpos, sign in table:
                    word = [0] * width
                    for p, x in zip(fpos, pre):
                        word[p] = x
                    for p, x in zip(gpos, head):
                        word[p] = x
                    key = (tuple(word) + tail, fo)
                    acc[key] = acc.get(key, 0) + sign * c


def balavoine(f: MultiMap, g: MultiMap) -> MultiMap:
    """The Balavoine bracket [f, g]_B of maps of arities m+1 and n+1 (result arity m+n+1)."""
    if f.space != g.space:
        raise ValueError("maps live over different spaces")
    m = f.arity - 1
    n = g.arity - 1
    arity = m + n + 1
    if arity > max_arity():
        raise ArityLimitError(f"bracket arity {arity} exceeds the cap {max_arity()}")
    acc: dict = {}
    _insertion_sum(f, g, acc, 1)
    _insertion_sum(g, f, acc, -1 if (m * n) % 2 == 0 else 1)
    return MultiMap(f.space, arity, _clean(acc), _trusted=True)


def graded_jacobi_defect(f: MultiMap, g: MultiMap, h: MultiMap) -> MultiMap:
    """(-1)^{|f||h|}[[f,g],h] + (-1)^{|g||f|}[[g,h],f] + (-1)^{|h||g|}[[h,f],g]."""
    df, dg, dh = f.degree, g.degree, h.degree

    def sgn(e):
        return -1 if e % 2 else 1

    return (
        balavoine(balavoine(f, g), h).scale(sgn(df * dh))
        + balavoine(balavoine(g, h), f).scale(sgn(dg * df))
        + balavoine(balavoine(h, f), g).scale(sgn(dh * dg))
    )


def random_homogeneous(space: SpaceSpec, k: int, l: int, rng, density: float = 0.5,
                       values=(-2, -1, 1, 2)) -> MultiMap:
    """Seeded random map of bidegree k|l with small integer coefficients."""
    arity = k + l + 1
    if k < -1 or l < -1 or arity < 1:
        raise ValueError(f"no maps of bidegree {k}|{l}")
    terms = {}
    dg = space.dim_g
    for inp in product(range(space.dim), repeat=arity):
        nv = sum(1 for i in inp if i >= dg)
        if nv == l:
            outs = space.indices(G)
        elif nv == l + 1:
            outs = space.indices(V)
        else:
            continue
        for out in outs:
            if rng.random() < density:
                terms[(inp, out)] = rng.choice(values)
    return MultiMap(space, arity, terms)


def iter_basis_tuples(space: SpaceSpec, word: str) -> Iterator[tuple]:
    """Global index tuples of one sort word, in odometer order."""
    return product(*(space.indices(s) for s in word))
