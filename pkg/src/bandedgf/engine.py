"""Three independent routes to the corner generating function.

For an infinite matrix V described by a :class:`~bandedgf.banded.BandedSpec`,
the target is the series whose z^n coefficient is the (1,1) entry of V^n.

* the direct route powers a finite corner of V itself;
* the fixed-point route solves the quadratic equation
  G = I + z B G + z^2 C G A G for the standard-walk sum G over the block
  weights, then converts to the starred sum via the floor-weight shift
  G*^-1 = G^-1 + (B - D) z;
* the Laurent route reads the transition sums M_0, M_1, M_-1 off the powers
  of the step symbol A x + B + C x^-1 and combines them as
  G = M_0 - M_1 M_0^-1 M_-1.

The reported scalar is always the (1,1) entry of the starred matrix G*,
which is what the corner of V generates.  ``cross_check`` runs every route
(plus the walk-enumeration oracle at small length) and insists on exact
agreement.
"""

from __future__ import annotations

from itertools import permutations

from . import matrices as cm
from .banded import BandedSpec, BlockWeights, block_reduce
from .errors import RouteMismatchError
from .fields import Field
from .laurent import accumulate, extract
from .matseries import MatrixSeries
from .series import Series
from .walks import class_sums


class GenFunBundle:
    """Everything one route produces: the matrix sums and the scalar corner series."""

    __slots__ = ("route", "field", "s", "order", "gw", "gwstar", "m0", "m1", "mm1", "gv")

    def __init__(self, route, field, s, order, gw, gwstar, gv, m0=None, m1=None, mm1=None):
        self.route = route
        self.field = field
        self.s = s
        self.order = order
        self.gw = gw
        self.gwstar = gwstar
        self.gv = gv
        self.m0 = m0
        self.m1 = m1
        self.mm1 = mm1

    def __repr__(self):
        return f"GenFunBundle(route={self.route!r}, s={self.s}, order={self.order})"


def corner_first_columns(spec: BandedSpec, order: int, count: int = 1):
    """First ``count`` entries of the first column of V^n, for n = 0..order.

    Works on a finite corner of V sized to contain every index reachable from
    column 1 within ``order`` steps (order * bandwidth plus the exceptional
    square), so the truncation is exact; returns a list of ``count``-tuples.
    """
    field = spec.field
    if order < 0:
        raise ValueError("order must be nonnegative")
    k = max(order * spec.bandwidth + max(spec.exceptional_bound, 1), count)
    rows = []
    zero = field.zero
    for i in range(1, k + 1):
        cols = {i + r for r in spec.bands if 1 <= i + r <= k}
        cols.update(j for (ei, j) in spec.exceptional if ei == i and j <= k)
        row = [(j - 1, spec.entry(i, j)) for j in sorted(cols)]
        rows.append([(j, v) for j, v in row if v != zero])
    x = [zero] * k
    x[0] = field.one
    red = field.reduce
    out = [tuple(x[:count])]
    for _ in range(order):
        x = [red(sum(v * x[j] for j, v in row)) if row else zero for row in rows]
        out.append(tuple(x[:count]))
    return out


def direct_route(spec: BandedSpec, order: int) -> Series:
    """Power a finite corner of V and collect its (1,1) entries."""
    cols = corner_first_columns(spec, order, 1)
    return Series(spec.field, [c[0] for c in cols])


def _starred(w: BlockWeights, gw: MatrixSeries) -> MatrixSeries:
    """Starred sum from the plain one: G*^-1 = G^-1 + (B - D) z."""
    field, s, order = w.field, w.s, gw.order
    shift = [cm.zeros(field, s)] * (order + 1)
    if order >= 1:
        shift[1] = cm.sub(field, w.b, w.d)
    return (gw.inverse() + MatrixSeries(field, s, shift)).inverse()


def fixed_point_route(w: BlockWeights, order: int) -> GenFunBundle:
    """Iterate the contraction G -> I + z B G + z^2 C G A G from G = I.

    Each pass pins one further z-order, so the iterate is kept truncated to
    the number of orders already exact; after ``order`` passes the solution
    is exact through z^order.
    """
    field, s = w.field, w.s
    g = MatrixSeries.identity(field, s, 0)
    for k in range(1, order + 1):
        bg = g.lmul_const(w.b).mul_z_pow(1)
        gag = (g.rmul_const(w.a) * g).lmul_const(w.c).mul_z_pow(2).truncate(k)
        g = MatrixSeries.identity(field, s, k) + bg + gag
    gwstar = _starred(w, g)
    return GenFunBundle(
        "fixed_point", field, s, order, g, gwstar, gwstar.entry(0, 0)
    )


def laurent_route(w: BlockWeights, order: int) -> GenFunBundle:
    """Transition sums from powers of the step symbol, then G = M0 - M1 M0^-1 M-1."""
    field, s = w.field, w.s
    lau = accumulate(field, w.a, w.b, w.c, order)
    m0 = extract(lau, 0)
    m1 = extract(lau, 1)
    mm1 = extract(lau, -1)
    gw = m0 - (m1 * m0.inverse()) * mm1
    gwstar = _starred(w, gw)
    return GenFunBundle(
        "laurent", field, s, order, gw, gwstar, gwstar.entry(0, 0),
        m0=m0, m1=m1, mm1=mm1,
    )


def _first_series_mismatch(a: Series, b: Series):
    n = min(a.order, b.order)
    for i in range(n + 1):
        if a.coeffs[i] != b.coeffs[i]:
            return i
    return None


def _first_matrix_mismatch(a: MatrixSeries, b: MatrixSeries):
    n = min(a.order, b.order)
    for i in range(n + 1):
        if a.coeffs[i] != b.coeffs[i]:
            ca, cb = a.coeffs[i], b.coeffs[i]
            for r in range(a.s):
                for c in range(a.s):
                    if ca[r][c] != cb[r][c]:
                        return i, (r + 1, c + 1)
    return None


class CrossCheckReport:
    """Successful route-agreement summary (failures raise RouteMismatchError)."""

    def __init__(self, order, oracle_length, checks):
        self.order = order
        self.oracle_length = oracle_length
        self.checks = checks  # list of (name, compared_order)

    def to_json_doc(self):
        return {
            "order": self.order,
            "oracle_length": self.oracle_length,
            "checks": [
                {"name": name, "orders_compared": through} for name, through in self.checks
            ],
            "status": "pass",
        }


def cross_check(
    spec: BandedSpec,
    order: int,
    block_size: int | None = None,
    oracle_length: int | None = None,
    weights: BlockWeights | None = None,
) -> CrossCheckReport:
    """Run every route and raise RouteMismatchError on the first disagreement.

    The enumeration oracle grows like 3^length, so its depth defaults to
    min(order, 10) instead of following ``order``; pass ``oracle_length=0``
    to reduce it to the trivial constant-term check.
    """
    if weights is None:
        weights = block_reduce(spec, block_size)
    direct = direct_route(spec, order)
    fp = fixed_point_route(weights, order)
    lr = laurent_route(weights, order)
    if oracle_length is None:
        oracle_length = min(order, 10)
    checks = []

    def demand_scalar(name, a, b):
        bad = _first_series_mismatch(a, b)
        if bad is not None:
            raise RouteMismatchError(
                f"{name}: first disagreement at z^{bad}", order=bad
            )
        checks.append((name, min(a.order, b.order)))

    def demand_matrix(name, a, b):
        bad = _first_matrix_mismatch(a, b)
        if bad is not None:
            raise RouteMismatchError(
                f"{name}: first disagreement at z^{bad[0]}, entry {bad[1]}",
                order=bad[0],
                entry=bad[1],
            )
        checks.append((name, min(a.order, b.order)))

    demand_scalar("direct_vs_fixed_point", direct, fp.gv)
    demand_scalar("direct_vs_laurent", direct, lr.gv)
    demand_matrix("fixed_point_vs_laurent_gw", fp.gw, lr.gw)
    demand_matrix("fixed_point_vs_laurent_gwstar", fp.gwstar, lr.gwstar)
    sums = class_sums(weights, oracle_length)
    demand_matrix("oracle_vs_engine_gw", sums.gw, fp.gw.truncate(oracle_length))
    demand_matrix(
        "oracle_vs_engine_gwstar", sums.gwstar, fp.gwstar.truncate(oracle_length)
    )
    demand_matrix("oracle_vs_engine_m0", sums.m0, lr.m0.truncate(oracle_length))
    demand_matrix("oracle_vs_engine_m1", sums.m1, lr.m1.truncate(oracle_length))
    demand_matrix("oracle_vs_engine_mm1", sums.mm1, lr.mm1.truncate(oracle_length))
    return CrossCheckReport(order, oracle_length, checks)


def series_bundle(spec: BandedSpec, order: int, block_size: int | None = None):
    """Cross-checked corner series for a spec (the 'series' CLI payload)."""
    report = cross_check(spec, order, block_size)
    weights = block_reduce(spec, block_size)
    return fixed_point_route(weights, order).gv, report


# -- the step symbol's characteristic polynomial -------------------------------


def _poly_mul(field: Field, p, q):
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == field.zero:
            continue
        for j, b in enumerate(q):
            out[i + j] = field.reduce(out[i + j] + a * b)
    return out


def symbol_determinant(w: BlockWeights, z0):
    """Coefficients (by x-degree) of det(x I - z0 (A x^2 + B x + C)) at z = z0.

    Leibniz expansion over permutations; fine for the small block sizes this
    package targets.
    """
    field, s = w.field, w.s
    z0 = field.reduce(z0)
    entries = []
    for i in range(s):
        row = []
        for j in range(s):
            c0 = field.reduce(-z0 * w.c[i][j])
            c1 = field.reduce((field.one if i == j else field.zero) - z0 * w.b[i][j])
            c2 = field.reduce(-z0 * w.a[i][j])
            row.append([c0, c1, c2])
        entries.append(row)
    total = [field.zero] * (2 * s + 1)
    for perm in permutations(range(s)):
        inversions = sum(
            1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j]
        )
        term = [field.one]
        for i in range(s):
            term = _poly_mul(field, term, entries[i][perm[i]])
        sign = field.one if inversions % 2 == 0 else field.neg(field.one)
        for d, c in enumerate(term):
            total[d] = field.reduce(total[d] + sign * c)
    return tuple(total)
