"""Constant s-by-s matrices over a field, stored as tuples of row tuples.

These helpers back everything that multiplies step weights together: walk
enumeration, the block reduction, matrix series coefficients.  Scalars are
raw field values (see :mod:`bandedgf.fields`), so entries combine with plain
``+``/``*`` and are reduced per result entry.
"""

from __future__ import annotations

from .errors import NonUnitError, ShapeError
from .fields import Field


def freeze(rows):
    return tuple(tuple(row) for row in rows)


def identity(field: Field, s: int):
    one, zero = field.one, field.zero
    return tuple(
        tuple(one if i == j else zero for j in range(s)) for i in range(s)
    )


def zeros(field: Field, s: int):
    zero = field.zero
    return tuple((zero,) * s for _ in range(s))


def check_square(m, s: int):
    if len(m) != s or any(len(row) != s for row in m):
        raise ShapeError(f"expected a {s}x{s} matrix")


def add(field: Field, x, y):
    red = field.reduce
    return tuple(
        tuple(red(a + b) for a, b in zip(rx, ry)) for rx, ry in zip(x, y)
    )


def sub(field: Field, x, y):
    red = field.reduce
    return tuple(
        tuple(red(a - b) for a, b in zip(rx, ry)) for rx, ry in zip(x, y)
    )


def neg(field: Field, x):
    red = field.reduce
    return tuple(tuple(red(-a) for a in row) for row in x)


def mul(field: Field, x, y):
    if len(y) != len(x):
        raise ShapeError("matrix product dimension mismatch")
    red = field.reduce
    yT = tuple(zip(*y))
    return tuple(
        tuple(red(sum(a * b for a, b in zip(row, col))) for col in yT) for row in x
    )


def scale(field: Field, x, scalar):
    red = field.reduce
    return tuple(tuple(red(a * scalar) for a in row) for row in x)


def mat_vec(field: Field, x, v):
    red = field.reduce
    return tuple(red(sum(a * b for a, b in zip(row, v))) for row in x)


def is_zero(field: Field, x) -> bool:
    zero = field.zero
    return all(a == zero for row in x for a in row)


def inverse(field: Field, m):
    """Gauss-Jordan inverse; raises NonUnitError on a singular matrix."""
    s = len(m)
    check_square(m, s)
    red = field.reduce
    aug = [list(row) + list(idrow) for row, idrow in zip(m, identity(field, s))]
    for col in range(s):
        pivot = next(
            (r for r in range(col, s) if aug[r][col] != field.zero), None
        )
        if pivot is None:
            raise NonUnitError("matrix is singular over the coefficient field")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = field.inv(aug[col][col])
        aug[col] = [red(a * inv_p) for a in aug[col]]
        for r in range(s):
            if r != col and aug[r][col] != field.zero:
                f = aug[r][col]
                aug[r] = [red(a - f * b) for a, b in zip(aug[r], aug[col])]
    return freeze(row[s:] for row in aug)
