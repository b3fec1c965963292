"""Truncated formal power series in z over an exact coefficient field.

A :class:`Series` stores the coefficients of z^0 .. z^N for an explicit
truncation order N.  Binary operations between series of different orders
truncate to the smaller order; inversion, square root and scalar operations
preserve the input order.  All arithmetic is exact.
"""

from __future__ import annotations

from .errors import (
    InsufficientPrecisionError,
    NonUnitError,
    UnsupportedCharacteristicError,
    UnsupportedSqrtError,
)
from .fields import Field, require_same_field


class Series:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(field.reduce(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the z^0 coefficient")
        self.field = field
        self.coeffs = coeffs

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_ints(cls, field: Field, ints, order: int | None = None) -> "Series":
        coeffs = [field.from_int(n) for n in ints]
        if order is not None:
            if order + 1 < len(coeffs):
                coeffs = coeffs[: order + 1]
            coeffs.extend(field.zero for _ in range(order + 1 - len(coeffs)))
        return cls(field, coeffs)

    @classmethod
    def constant(cls, field: Field, value, order: int) -> "Series":
        return cls(field, [value] + [field.zero] * order)

    @classmethod
    def zero(cls, field: Field, order: int) -> "Series":
        return cls.constant(field, field.zero, order)

    @classmethod
    def one(cls, field: Field, order: int) -> "Series":
        return cls.constant(field, field.one, order)

    # -- basic queries ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient of z^{n} not stored (order {self.order})")
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(c == zero for c in self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all stored are 0."""
        zero = self.field.zero
        for n, c in enumerate(self.coeffs):
            if c != zero:
                return n
        return None

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.field, self.coeffs[: order + 1])

    def __repr__(self):
        fmt = self.field.format
        terms = ", ".join(fmt(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"Series(order={self.order}; {terms}{tail})"

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        field = require_same_field(self.field, other.field)
        n = min(self.order, other.order)
        return Series(field, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other: "Series") -> "Series":
        field = require_same_field(self.field, other.field)
        n = min(self.order, other.order)
        return Series(field, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __neg__(self) -> "Series":
        return Series(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "Series") -> "Series":
        field = require_same_field(self.field, other.field)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [
            sum(a[k] * b[m - k] for k in range(m + 1)) for m in range(n + 1)
        ]
        return Series(field, out)

    def scale(self, scalar) -> "Series":
        return Series(self.field, [c * scalar for c in self.coeffs])

    def invert(self) -> "Series":
        """Multiplicative inverse; requires an invertible constant term."""
        field = self.field
        a = self.coeffs
        if a[0] == field.zero:
            raise NonUnitError("series has zero constant term")
        c0 = field.inv(a[0])
        out = [c0]
        for n in range(1, self.order + 1):
            acc = sum(a[k] * out[n - k] for k in range(1, n + 1))
            out.append(field.reduce(-c0 * acc))
        return Series(field, out)

    def sqrt(self) -> "Series":
        """Square root with constant term 1, by coefficient recursion."""
        field = self.field
        if field.characteristic == 2:
            raise UnsupportedCharacteristicError("square root needs characteristic != 2")
        if self.coeffs[0] != field.one:
            raise UnsupportedSqrtError("square root requires constant term exactly 1")
        a = self.coeffs
        half = field.inv(field.from_int(2))
        out = [field.one]
        for n in range(1, self.order + 1):
            acc = sum(out[k] * out[n - k] for k in range(1, n))
            out.append(field.reduce((a[n] - acc) * half))
        return Series(field, out)

    # -- shifts ----------------------------------------------------------------

    def mul_z_pow(self, k: int) -> "Series":
        """Multiply by z^k; the result is known to order ``order + k``."""
        if k < 0:
            raise ValueError("use div_z_pow for negative shifts")
        return Series(self.field, (self.field.zero,) * k + self.coeffs)

    def div_z_pow(self, k: int) -> "Series":
        """Divide by z^k; the low k coefficients must vanish exactly.

        The result is only known to order ``order - k``.
        """
        if k == 0:
            return self
        if k > self.order:
            raise InsufficientPrecisionError(
                f"cannot divide a series of order {self.order} by z^{k}"
            )
        zero = self.field.zero
        for n in range(k):
            if self.coeffs[n] != zero:
                raise NonUnitError(
                    f"coefficient of z^{n} is nonzero; division by z^{k} is inexact"
                )
        return Series(self.field, self.coeffs[k:])
