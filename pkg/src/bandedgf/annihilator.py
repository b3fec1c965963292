"""Reconstruction and verification of annihilating polynomials.

Given a series g known to high order, search for a nonzero bivariate
polynomial P(z, x) with P(z, g(z)) = 0 through every known order.  The
search is linear algebra: coefficients c_{i,j} of z^j x^i are unknowns and
each z-order of sum c_{i,j} z^j g^i contributes one homogeneous equation.
The returned polynomial is made canonical (degree-minimal within the given
bounds, integer content 1 over the rationals, deterministic sign/scaling) so
reruns and golden-file comparisons are stable.  Verification re-evaluates
the residual against a series recomputed to a higher order, which is the
actual certificate; closed forms built from one square root are checked by
exact expansion.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    InsufficientPrecisionError,
    NonUnitError,
    SpecFormatError,
)
from .fields import Field, require_same_field
from .series import Series

DEFAULT_GUARD = 20


class AnnihilatorPoly:
    """Bivariate polynomial with coefficient grid coeffs[i][j] of z^j x^i.

    Construction canonicalizes: trailing zero rows/columns are trimmed, and
    the grid is scaled so that over the rationals all entries are integers
    with content 1 and the lexicographically leading entry (largest i, then
    largest j) is positive, while over a prime field that entry is 1.
    Identically zero grids are rejected.
    """

    def __init__(self, field: Field, coeffs):
        grid = [[field.reduce(c) for c in row] for row in coeffs]
        zero = field.zero
        while grid and all(c == zero for c in grid[-1]):
            grid.pop()
        if not grid:
            raise ValueError("annihilating polynomial must be nonzero")
        width = max(len(row) for row in grid)
        for row in grid:
            row.extend(zero for _ in range(width - len(row)))
        while width > 1 and all(row[width - 1] == zero for row in grid):
            width -= 1
            for row in grid:
                row.pop()
        self.field = field
        self.coeffs = tuple(tuple(row) for row in _canonical_scale(field, grid))

    @property
    def dx(self) -> int:
        return len(self.coeffs) - 1

    @property
    def dz(self) -> int:
        return len(self.coeffs[0]) - 1

    def __eq__(self, other):
        return (
            isinstance(other, AnnihilatorPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"AnnihilatorPoly(dx={self.dx}, dz={self.dz})"

    def evaluate(self, g: Series) -> Series:
        """Residual series P(z, g(z)) truncated at g's order."""
        require_same_field(self.field, g.field)
        order = g.order
        acc = Series(self.field, _pad(self.coeffs[self.dx], order, self.field))
        for i in range(self.dx - 1, -1, -1):
            row = Series(self.field, _pad(self.coeffs[i], order, self.field))
            acc = acc * g + row
        return acc

    def pretty(self) -> str:
        """Human-readable form, highest x-degree first."""
        chunks = []
        for i in range(self.dx, -1, -1):
            poly = _pretty_z_poly(self.field, self.coeffs[i])
            if poly is None:
                continue
            if i == 0:
                chunks.append(poly if "+" not in poly and "-" not in poly[1:] else f"({poly})")
            else:
                xpart = "x" if i == 1 else f"x^{i}"
                chunks.append(f"({poly})*{xpart}")
        return " + ".join(chunks)

    def to_json_doc(self) -> dict:
        return {
            "dx": self.dx,
            "dz": self.dz,
            "coeffs": [
                [_scalar_json(self.field, c) for c in row] for row in self.coeffs
            ],
            "pretty": self.pretty(),
        }

    @classmethod
    def from_json_doc(cls, doc, field: Field) -> "AnnihilatorPoly":
        if not isinstance(doc, dict) or "coeffs" not in doc:
            raise SpecFormatError('polynomial document needs a "coeffs" grid')
        try:
            grid = [[field.parse(c) for c in row] for row in doc["coeffs"]]
        except TypeError as exc:
            raise SpecFormatError(f"bad coefficient grid: {exc}") from exc
        if not grid:
            raise SpecFormatError("empty coefficient grid")
        return cls(field, grid)

    @classmethod
    def from_json(cls, text: str, field: Field) -> "AnnihilatorPoly":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_json_doc(doc, field)


def _pad(row, order, field):
    out = list(row[: order + 1])
    out.extend(field.zero for _ in range(order + 1 - len(out)))
    return out


def _scalar_json(field, v):
    if field.kind == "prime_field":
        return int(v)
    return int(v) if v.denominator == 1 else str(v)


def _pretty_z_poly(field, row):
    zero = field.zero
    terms = []
    for j in range(len(row) - 1, -1, -1):
        c = row[j]
        if c == zero:
            continue
        mag = c if field.kind == "prime_field" else abs(c)
        neg = field.kind != "prime_field" and c < 0
        if j == 0:
            body = field.format(mag)
        else:
            zpart = "z" if j == 1 else f"z^{j}"
            body = zpart if mag == field.one else f"{field.format(mag)}*{zpart}"
        if not terms:
            terms.append(f"-{body}" if neg else body)
        else:
            terms.append(f" - {body}" if neg else f" + {body}")
    if not terms:
        return None
    return "".join(terms)


def _canonical_scale(field: Field, grid):
    lead = None
    zero = field.zero
    for i in range(len(grid) - 1, -1, -1):
        for j in range(len(grid[i]) - 1, -1, -1):
            if grid[i][j] != zero:
                lead = (i, j)
                break
        if lead:
            break
    if field.kind == "prime_field":
        scale = field.inv(grid[lead[0]][lead[1]])
        return [[c * scale % field.p for c in row] for row in grid]
    den_lcm = lcm(*(c.denominator for row in grid for c in row))
    ints = [[c.numerator * (den_lcm // c.denominator) for c in row] for row in grid]
    content = gcd(*(abs(c) for row in ints for c in row))
    if ints[lead[0]][lead[1]] < 0:
        content = -content
    return [[c // content for c in row] for row in ints]


# -- reconstruction ---------------------------------------------------------------


def reconstruct(
    g: Series, dx: int, dz: int, guard: int = DEFAULT_GUARD
) -> AnnihilatorPoly | None:
    """Degree-minimal annihilating polynomial within the bounds, or None.

    Requires g.order >= (dx+1)(dz+1) + guard so that the homogeneous system
    is comfortably overdetermined; spurious solutions that merely match a
    truncation are then ruled out by re-verification at higher order.  The
    minimization is lexicographic: smallest x-degree admitting a solution,
    then smallest z-degree at that x-degree.
    """
    if dx < 1 or dz < 0:
        raise ValueError("need dx >= 1 and dz >= 0")
    needed = (dx + 1) * (dz + 1) + guard
    if g.order < needed:
        raise InsufficientPrecisionError(
            f"series order {g.order} is too small for bounds ({dx},{dz}); "
            f"need at least {needed}"
        )
    powers = [Series.one(g.field, g.order)]
    for _ in range(dx):
        powers.append(powers[-1] * g)
    found_dx = None
    for dxp in range(1, dx + 1):
        if _solve(g, powers, dxp, dz) is not None:
            found_dx = dxp
            break
    if found_dx is None:
        return None
    for dzp in range(dz + 1):
        sol = _solve(g, powers, found_dx, dzp)
        if sol is not None:
            grid = [
                [sol[i * (dzp + 1) + j] for j in range(dzp + 1)]
                for i in range(found_dx + 1)
            ]
            return AnnihilatorPoly(g.field, grid)
    raise AssertionError("solution vanished between scans")  # pragma: no cover


def _solve(g: Series, powers, dx: int, dz: int):
    """One nullspace vector of the annihilation system at these bounds, or None."""
    ncols = (dx + 1) * (dz + 1)
    nrows = g.order + 1
    field = g.field
    zero = field.zero
    rows = []
    for n in range(nrows):
        row = []
        for i in range(dx + 1):
            gi = powers[i].coeffs
            for j in range(dz + 1):
                row.append(gi[n - j] if n >= j else zero)
        rows.append(row)
    if field.kind == "prime_field":
        return _nullspace_mod_p(rows, ncols, field.p)
    return _nullspace_rational(rows, ncols)


def _nullspace_mod_p(rows, ncols, p):
    m = [list(r) for r in rows]
    nrows = len(m)
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    x = [0] * ncols
    x[fc] = 1
    for row_idx, pc in enumerate(piv_cols):
        x[pc] = (-m[row_idx][fc]) % p
    return x


def _nullspace_rational(rows, ncols):
    """Fraction-free (Bareiss) elimination, then back-substitution."""
    m = []
    for row in rows:
        den = lcm(*(c.denominator for c in row)) if row else 1
        m.append([int(c * den) for c in row])
    nrows = len(m)
    piv_cols = []
    r = 0
    prev = 1
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            mi, mr = m[i], m[r]
            # The scaling by pivot/prev applies to every row, zero multiplier
            # or not; it is what keeps later exact divisions exact.
            for j in range(c + 1, ncols):
                mi[j] = (mi[j] * pivot - mic * mr[j]) // prev
            mi[c] = 0
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    x = [Fraction(0)] * ncols
    x[fc] = Fraction(1)
    for row_idx in range(len(piv_cols) - 1, -1, -1):
        pc = piv_cols[row_idx]
        row = m[row_idx]
        acc = sum((Fraction(row[j]) * x[j] for j in range(pc + 1, ncols)), Fraction(0))
        x[pc] = -acc / row[pc]
    return x


# -- verification -----------------------------------------------------------------


class VerifyResult:
    """Outcome of a residual check; falsy with the first bad order on failure."""

    def __init__(self, ok: bool, first_bad_order=None, checked_order=None):
        self.ok = ok
        self.first_bad_order = first_bad_order
        self.checked_order = checked_order

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"VerifyResult(ok through z^{self.checked_order})"
        return f"VerifyResult(first nonzero residual at z^{self.first_bad_order})"


def verify(poly: AnnihilatorPoly, g: Series, extra: int = 0) -> VerifyResult:
    """Check P(z, g) = 0 through g's full order.

    ``extra`` asserts headroom: the caller promises g extends at least that
    far beyond the order a reconstruction at these degree bounds would need.
    """
    needed = (poly.dx + 1) * (poly.dz + 1) + DEFAULT_GUARD + extra
    if extra and g.order < needed:
        raise InsufficientPrecisionError(
            f"series order {g.order} gives no headroom; need {needed}"
        )
    residual = poly.evaluate(g)
    bad = residual.valuation()
    if bad is None:
        return VerifyResult(True, checked_order=g.order)
    return VerifyResult(False, first_bad_order=bad, checked_order=g.order)


# -- closed forms with one square root --------------------------------------------


class ClosedForm:
    """(p1 + p2 sqrt(rho)) / (q1 + q2 sqrt(rho)) with polynomial parts.

    ``radicand`` rho must have constant term 1.  The denominator may vanish
    to finite order v at z = 0 provided the numerator vanishes at least as
    fast; the quotient is then the exact shifted division.
    """

    def __init__(self, field: Field, radicand, num_plain, num_radical=(),
                 den_plain=(1,), den_radical=()):
        self.field = field
        self.radicand = tuple(field.parse(c) if isinstance(c, (int, str)) else field.reduce(c) for c in radicand)
        self.num_plain = self._poly(num_plain)
        self.num_radical = self._poly(num_radical)
        self.den_plain = self._poly(den_plain)
        self.den_radical = self._poly(den_radical)

    def _poly(self, coeffs):
        return tuple(
            self.field.parse(c) if isinstance(c, (int, str)) else self.field.reduce(c)
            for c in coeffs
        )

    def _side(self, plain, radical, root: Series, order: int) -> Series:
        out = Series(self.field, _pad(plain, order, self.field))
        if radical:
            out = out + Series(self.field, _pad(radical, order, self.field)) * root
        return out

    def expand(self, order: int) -> Series:
        field = self.field
        probe_root = Series(field, _pad(self.radicand, order, field)).sqrt()
        den = self._side(self.den_plain, self.den_radical, probe_root, order)
        v = den.valuation()
        if v is None:
            raise NonUnitError("denominator vanishes through the requested order")
        if v == 0:
            num = self._side(self.num_plain, self.num_radical, probe_root, order)
            return num * den.invert()
        deep = order + v
        root = Series(field, _pad(self.radicand, deep, field)).sqrt()
        num = self._side(self.num_plain, self.num_radical, root, deep)
        den = self._side(self.den_plain, self.den_radical, root, deep)
        return num.div_z_pow(v) * den.div_z_pow(v).invert()


def check_closed_form_sqrt(g: Series, form: ClosedForm) -> VerifyResult:
    """Compare g against the exact expansion of the closed form, coefficientwise."""
    require_same_field(g.field, form.field)
    expansion = form.expand(g.order)
    diff = g - expansion
    bad = diff.valuation()
    if bad is None:
        return VerifyResult(True, checked_order=diff.order)
    return VerifyResult(False, first_bad_order=bad, checked_order=diff.order)
