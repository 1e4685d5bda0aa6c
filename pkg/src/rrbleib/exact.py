"""Exact rational matrices and the linear algebra every cohomology computation reduces to.

Scalars are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
rational is expected).  Matrices keep their nonzero entries row by row, but
behave as dense ``rows x cols`` arrays: indexing, ``entries`` and ``tolist``
all expose the full row-major layout.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "Matrix",
    "NotASubspace",
    "as_rational",
    "rref",
    "rank",
    "kernel_basis",
    "image_basis",
    "in_span",
    "solve",
    "quotient_dim",
    "complement_basis",
]


class NotASubspace(ValueError):
    """Raised when a vector of the claimed subspace lies outside the ambient span."""


def as_rational(x) -> Fraction | int:
    """Coerce ``x`` to an exact scalar; ints stay ints, floats are rejected."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, _RationalABC):
        return as_rational(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"not an exact rational: {x!r}")


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Immutable ``rows x cols`` matrix over the rationals."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Sequence | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        data: list[dict[int, object]] = [dict() for _ in range(rows)]
        if entries is not None:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
            for idx, x in enumerate(entries):
                x = as_rational(x)
                if x:
                    data[idx // cols][idx % cols] = x
        self._rows = tuple(data)

    @classmethod
    def _from_row_dicts(cls, rows: int, cols: int, row_dicts: Iterable[dict]) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._rows = tuple({c: _norm(v) for c, v in r.items() if v} for r in row_dicts)
        if len(m._rows) != rows:
            raise ValueError("row count mismatch")
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence) -> "Matrix":
        """Build from column vectors, each a dense sequence or a sparse ``{row: value}`` dict."""
        row_dicts: list[dict] = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, v in items:
                if v:
                    if not 0 <= i < nrows:
                        raise ValueError(f"row index {i} out of range")
                    row_dicts[i][j] = as_rational(v)
        return cls._from_row_dicts(nrows, len(columns), row_dicts)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._from_row_dicts(n, n, ({i: 1} for i in range(n)))

    # -- access ---------------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._rows[i].get(j, 0)

    def row(self, i: int) -> list:
        r = self._rows[i]
        return [r.get(j, 0) for j in range(self.cols)]

    def column(self, j: int) -> list:
        return [r.get(j, 0) for r in self._rows]

    def sparse_row(self, i: int) -> dict:
        return dict(self._rows[i])

    @property
    def entries(self) -> tuple:
        """Dense row-major entries."""
        return tuple(r.get(j, 0) for r in self._rows for j in range(self.cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {self.tolist()!r})"

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for c, v in b.items():
                r[c] = r.get(c, 0) + sign * v
            out.append(r)
        return Matrix._from_row_dicts(self.rows, self.cols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        s = as_rational(s)
        return Matrix._from_row_dicts(
            self.rows, self.cols, ({c: s * v for c, v in r.items()} for r in self._rows)
        )

    def transpose(self) -> "Matrix":
        out: list[dict] = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out[j][i] = v
        return Matrix._from_row_dicts(self.cols, self.rows, out)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            for r in self._rows:
                acc: dict[int, object] = {}
                for k, a in r.items():
                    for j, b in other._rows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(acc)
            return Matrix._from_row_dicts(self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols}")
        return [_norm(sum((v * vec[c] for c, v in r.items()), 0)) for r in self._rows]

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        out = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            r.update({self.cols + c: v for c, v in b.items()})
            out.append(r)
        return Matrix._from_row_dicts(self.rows, self.cols + other.cols, out)

    def rank(self) -> int:
        return rank(self)


# -- elimination --------------------------------------------------------------


def _rref_rows(row_dicts: list[dict], ncols: int, reduce_above: bool = True):
    """Gauss-Jordan on sparse rows; pivots chosen as the first nonzero row in column order."""
    rows = [dict(r) for r in row_dicts]
    pivots: list[int] = []
    top = 0
    nrows = len(rows)
    for c in range(ncols):
        if top == nrows:
            break
        piv = None
        for i in range(top, nrows):
            if c in rows[i]:
                piv = i
                break
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        inv = Fraction(1) / prow[c]
        if inv != 1:
            prow = {k: _norm(v * inv) for k, v in prow.items()}
            rows[top] = prow
        start = 0 if reduce_above else top + 1
        for i in range(start, nrows):
            if i == top:
                continue
            r = rows[i]
            f = r.get(c)
            if not f:
                continue
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = _norm(nv)
                else:
                    r.pop(k, None)
        pivots.append(c)
        top += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; rank is ``len(pivots)``."""
    rows, pivots = _rref_rows(list(m._rows), m.cols)
    return Matrix._from_row_dicts(m.rows, m.cols, rows), pivots


def rank(m: Matrix) -> int:
    _, pivots = _rref_rows(list(m._rows), m.cols, reduce_above=False)
    return len(pivots)


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of ``{v : m v = 0}`` as dense vectors, one per free column."""
    rows, pivots = _rref_rows(list(m._rows), m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = 1
        for r, pc in zip(rows, pivots):
            x = r.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def image_basis(m: Matrix) -> list[list]:
    """Columns of ``m`` at the pivot positions: a basis of the column space."""
    _, pivots = _rref_rows(list(m._rows), m.cols, reduce_above=False)
    return [m.column(j) for j in pivots]


def _columns_matrix(vectors: Sequence[Sequence], dim: int | None = None) -> Matrix:
    vectors = [list(v) for v in vectors]
    if dim is None:
        if not vectors:
            raise ValueError("cannot infer dimension of an empty vector list")
        dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("vectors have inconsistent lengths")
    return Matrix.from_columns(dim, vectors)


def solve(m: Matrix, b: Sequence) -> list | None:
    """One exact solution of ``m x = b`` (free variables set to zero), or ``None``."""
    b = [as_rational(x) for x in b]
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = [dict(r) for r in m._rows]
    for i, x in enumerate(b):
        if x:
            aug[i][m.cols] = x
    rows, pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for r, pc in zip(rows, pivots):
        x[pc] = r.get(m.cols, 0)
    return x


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    v = list(v)
    if not vectors:
        return not any(v)
    return solve(_columns_matrix(vectors, len(v)), v) is not None


def quotient_dim(sub_small: Sequence[Sequence], sub_big: Sequence[Sequence]) -> int:
    """``dim span(sub_big) - dim span(sub_small)``; the first span must sit inside the second."""
    if not sub_big:
        if any(any(x for x in v) for v in sub_small):
            raise NotASubspace("nonzero vector outside the zero subspace")
        return 0
    dim = len(list(sub_big[0]))
    big = _columns_matrix(sub_big, dim)
    for idx, v in enumerate(sub_small):
        if solve(big, v) is None:
            raise NotASubspace(f"vector {idx} of the subspace is outside the ambient span")
    small_rank = rank(_columns_matrix(sub_small, dim)) if sub_small else 0
    return rank(big) - small_rank


def complement_basis(sub: Sequence[Sequence], vectors: Sequence[Sequence], dim: int) -> list[int]:
    """Indices of ``vectors`` that extend a basis of ``span(sub)`` to ``span(sub + vectors)``.

    Deterministic: a vector is kept iff it is independent of ``sub`` and of the
    vectors kept before it.
    """
    cols = [list(v) for v in sub] + [list(v) for v in vectors]
    if not cols:
        return []
    m = _columns_matrix(cols, dim)
    _, pivots = _rref_rows(list(m._rows), m.cols, reduce_above=False)
    k = len(sub)
    return [p - k for p in pivots if p >= k]
