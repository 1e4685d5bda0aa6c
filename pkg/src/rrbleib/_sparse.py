"""Sparse vectors and structure-constant tables.

A vector is a dict ``{index: coeff}``.  A bilinear table is a dict
``{(i, j): {k: c}}`` meaning ``B(b_i, b_j) = sum_k c b_k``.  A linear table is
``{j: {i: c}}`` (column j of the matrix).
"""

from __future__ import annotations

from itertools import product

from .exact import Matrix, as_rational


def add_into(acc: dict, v: dict, s=1):
    if not s:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + s * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vsum(*vs) -> dict:
    acc: dict = {}
    for v in vs:
        add_into(acc, v)
    return acc


def vsub(u: dict, v: dict) -> dict:
    return add_into(dict(u), v, -1)


def vscale(v: dict, s) -> dict:
    if not s:
        return {}
    return {k: s * x for k, x in v.items()}


def bil(table: dict, x: dict, y: dict) -> dict:
    acc: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            col = table.get((i, j))
            if col:
                add_into(acc, col, a * b)
    return acc


def lin(table: dict, x: dict) -> dict:
    acc: dict = {}
    for j, a in x.items():
        col = table.get(j)
        if col:
            add_into(acc, col, a)
    return acc


def basis(i: int) -> dict:
    return {i: 1}


def dense(v: dict, dim: int) -> list:
    out = [0] * dim
    for k, x in v.items():
        out[k] = x
    return out


def sparse(v) -> dict:
    return {k: as_rational(x) for k, x in enumerate(v) if x}


def matrix_table(m: Matrix) -> dict:
    """Column table of a matrix."""
    table: dict = {}
    for i in range(m.rows):
        for j, x in m.sparse_row(i).items():
            table.setdefault(j, {})[i] = x
    return table


def table_matrix(table: dict, rows: int, cols: int) -> Matrix:
    return Matrix.from_columns(rows, [table.get(j, {}) for j in range(cols)])


def tensor_from_nested(arr, dims: tuple, field: str) -> dict:
    """Nested ``arr[i][j][k]`` to a bilinear table; shape errors name ``field``."""
    from .errors import ShapeError

    n1, n2, n3 = dims

    def _len(x, n, path):
        if not isinstance(x, (list, tuple)) or len(x) != n:
            got = len(x) if isinstance(x, (list, tuple)) else type(x).__name__
            raise ShapeError(path, n, got)

    _len(arr, n1, field)
    table: dict = {}
    for i in range(n1):
        _len(arr[i], n2, f"{field}[{i}]")
        for j in range(n2):
            _len(arr[i][j], n3, f"{field}[{i}][{j}]")
            col = {k: as_rational(arr[i][j][k]) for k in range(n3) if arr[i][j][k]}
            col = {k: x for k, x in col.items() if x}
            if col:
                table[(i, j)] = col
    return table


def nested_from_tensor(table: dict, dims: tuple) -> list:
    n1, n2, n3 = dims
    return [[[table.get((i, j), {}).get(k, 0) for k in range(n3)] for j in range(n2)] for i in range(n1)]


def clean_table(table: dict) -> dict:
    out = {}
    for key, col in table.items():
        col = {k: as_rational(x) for k, x in col.items() if x}
        col = {k: x for k, x in col.items() if x}
        if col:
            out[key] = col
    return out


def tuples(dim: int, n: int):
    return product(range(dim), repeat=n)
