"""Square matrices whose entries are truncated power series.

Stored as a sequence of constant-matrix coefficients: ``coeffs[n]`` is the
s-by-s matrix multiplying z^n.  This makes products against constant step
matrices cheap, which is what the generating-function routes do most.
"""

from __future__ import annotations

from . import matrices as cm
from .errors import ShapeError
from .fields import Field, require_same_field
from .series import Series


class MatrixSeries:
    __slots__ = ("field", "s", "coeffs")

    def __init__(self, field: Field, s: int, coeffs):
        coeffs = tuple(cm.freeze(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a matrix series needs at least the z^0 coefficient")
        for c in coeffs:
            cm.check_square(c, s)
        self.field = field
        self.s = s
        self.coeffs = coeffs

    # -- construction ----------------------------------------------------------

    @classmethod
    def identity(cls, field: Field, s: int, order: int) -> "MatrixSeries":
        return cls(
            field, s, [cm.identity(field, s)] + [cm.zeros(field, s)] * order
        )

    @classmethod
    def zero(cls, field: Field, s: int, order: int) -> "MatrixSeries":
        return cls(field, s, [cm.zeros(field, s)] * (order + 1))

    @classmethod
    def from_const(cls, field: Field, m, order: int) -> "MatrixSeries":
        s = len(m)
        return cls(field, s, [cm.freeze(m)] + [cm.zeros(field, s)] * order)

    @classmethod
    def from_entries(cls, grid) -> "MatrixSeries":
        """Build from an s-by-s grid of equal-order scalar Series."""
        s = len(grid)
        if any(len(row) != s for row in grid):
            raise ShapeError("entry grid is not square")
        field = grid[0][0].field
        order = min(e.order for row in grid for e in row)
        for row in grid:
            for e in row:
                require_same_field(field, e.field)
        coeffs = [
            tuple(tuple(grid[i][j].coeffs[n] for j in range(s)) for i in range(s))
            for n in range(order + 1)
        ]
        return cls(field, s, coeffs)

    # -- queries ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def entry(self, i: int, j: int) -> Series:
        """Scalar series at 0-based position (i, j)."""
        return Series(self.field, [c[i][j] for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, MatrixSeries)
            and self.field == other.field
            and self.s == other.s
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"MatrixSeries(s={self.s}, order={self.order})"

    def is_zero(self) -> bool:
        return all(cm.is_zero(self.field, c) for c in self.coeffs)

    def truncate(self, order: int) -> "MatrixSeries":
        if order >= self.order:
            return self
        return MatrixSeries(self.field, self.s, self.coeffs[: order + 1])

    def _common(self, other: "MatrixSeries") -> int:
        require_same_field(self.field, other.field)
        if self.s != other.s:
            raise ShapeError(f"matrix sizes differ: {self.s} vs {other.s}")
        return min(self.order, other.order)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        n = self._common(other)
        f = self.field
        return MatrixSeries(
            f, self.s,
            [cm.add(f, self.coeffs[k], other.coeffs[k]) for k in range(n + 1)],
        )

    def __sub__(self, other: "MatrixSeries") -> "MatrixSeries":
        n = self._common(other)
        f = self.field
        return MatrixSeries(
            f, self.s,
            [cm.sub(f, self.coeffs[k], other.coeffs[k]) for k in range(n + 1)],
        )

    def __neg__(self) -> "MatrixSeries":
        f = self.field
        return MatrixSeries(f, self.s, [cm.neg(f, c) for c in self.coeffs])

    def __mul__(self, other: "MatrixSeries") -> "MatrixSeries":
        n = self._common(other)
        f, s = self.field, self.s
        a, b = self.coeffs, other.coeffs
        red = f.reduce
        rng = range(s)
        out = []
        for m in range(n + 1):
            acc = [[0] * s for _ in rng]
            for k in range(m + 1):
                ak, bk = a[k], b[m - k]
                for i in rng:
                    arow = ak[i]
                    acci = acc[i]
                    for t in rng:
                        av = arow[t]
                        if av:
                            brow = bk[t]
                            for j in rng:
                                acci[j] += av * brow[j]
            out.append(tuple(tuple(red(x) for x in row) for row in acc))
        return MatrixSeries(f, s, out)

    def lmul_const(self, m) -> "MatrixSeries":
        """Left-multiply by a constant matrix."""
        f = self.field
        return MatrixSeries(f, self.s, [cm.mul(f, m, c) for c in self.coeffs])

    def rmul_const(self, m) -> "MatrixSeries":
        """Right-multiply by a constant matrix."""
        f = self.field
        return MatrixSeries(f, self.s, [cm.mul(f, c, m) for c in self.coeffs])

    def scale(self, scalar) -> "MatrixSeries":
        f = self.field
        return MatrixSeries(f, self.s, [cm.scale(f, c, scalar) for c in self.coeffs])

    def mul_z_pow(self, k: int) -> "MatrixSeries":
        if k < 0:
            raise ValueError("negative shift")
        pad = (cm.zeros(self.field, self.s),) * k
        return MatrixSeries(self.field, self.s, pad + self.coeffs)

    def inverse(self) -> "MatrixSeries":
        """Order-by-order inverse; the constant term must be invertible over F."""
        f, s = self.field, self.s
        a = self.coeffs
        c0 = cm.inverse(f, a[0])
        out = [c0]
        for n in range(1, self.order + 1):
            acc = cm.zeros(f, s)
            for k in range(1, n + 1):
                acc = cm.add(f, acc, cm.mul(f, a[k], out[n - k]))
            out.append(cm.neg(f, cm.mul(f, c0, acc)))
        return MatrixSeries(f, s, out)
