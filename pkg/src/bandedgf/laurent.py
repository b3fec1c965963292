"""Matrix-valued Laurent polynomials in x, graded by powers of z.

The object of interest is the accumulation sum_{n<=N} (A x + B + C x^-1)^n z^n
for constant s-by-s matrices A, B, C.  The z^n term is a Laurent polynomial in
x whose support provably lies in x-degrees [-n, n], so each term is stored
densely as the 2n+1 matrices for x^-n .. x^n.
"""

from __future__ import annotations

from . import matrices as cm
from .errors import ShapeError
from .fields import Field
from .matseries import MatrixSeries


class LaurentSeries:
    """Terms ``terms[n][d + n]`` = matrix coefficient of x^d z^n, |d| <= n."""

    __slots__ = ("field", "s", "terms")

    def __init__(self, field: Field, s: int, terms):
        terms = tuple(tuple(cm.freeze(m) for m in term) for term in terms)
        for n, term in enumerate(terms):
            if len(term) != 2 * n + 1:
                raise ShapeError(
                    f"z^{n} term must cover x-degrees [-{n}, {n}] densely"
                )
            for m in term:
                cm.check_square(m, s)
        self.field = field
        self.s = s
        self.terms = terms

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def term(self, n: int):
        return self.terms[n]

    def x_coeff(self, n: int, d: int):
        """Matrix coefficient of x^d in the z^n term (zero outside [-n, n])."""
        if abs(d) > n:
            return cm.zeros(self.field, self.s)
        return self.terms[n][d + n]


def step_multiply(field: Field, a, b, c, term):
    """One grading step: multiply a dense [-n, n] term by (A x + B + C x^-1).

    Returns the dense [-(n+1), n+1] term of the product, multiplying the step
    polynomial on the left.
    """
    s = len(a)
    n = (len(term) - 1) // 2
    width = 2 * (n + 1) + 1
    zero = cm.zeros(field, s)
    out = []
    for idx in range(width):
        d = idx - (n + 1)
        # x^d picks up A*(x^(d-1) part), B*(x^d part), C*(x^(d+1) part).
        acc = zero
        if abs(d - 1) <= n:
            acc = cm.add(field, acc, cm.mul(field, a, term[d - 1 + n]))
        if abs(d) <= n:
            acc = cm.add(field, acc, cm.mul(field, b, term[d + n]))
        if abs(d + 1) <= n:
            acc = cm.add(field, acc, cm.mul(field, c, term[d + 1 + n]))
        out.append(acc)
    return tuple(out)


def accumulate(field: Field, a, b, c, order: int) -> LaurentSeries:
    """Sum of (A x + B + C x^-1)^n z^n over n <= order."""
    s = len(a)
    for m in (a, b, c):
        cm.check_square(m, s)
    if order < 0:
        raise ValueError("order must be nonnegative")
    terms = [(cm.identity(field, s),)]
    for _ in range(order):
        terms.append(step_multiply(field, a, b, c, terms[-1]))
    return LaurentSeries(field, s, terms)


def extract(lau: LaurentSeries, i: int) -> MatrixSeries:
    """Matrix series of x^i coefficients across the z-grading, i in {-1, 0, 1}."""
    if i not in (-1, 0, 1):
        raise ValueError(f"x-degree {i} out of range; only -1, 0, 1 are extracted")
    return MatrixSeries(
        lau.field, lau.s, [lau.x_coeff(n, i) for n in range(lau.order + 1)]
    )
