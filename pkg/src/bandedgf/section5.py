"""Weighted sums over standard walks and the affine transfer pipeline.

Three layers build on the walk-sum table:

* binomially weighted sums G*_r = sum over standard walks finishing at 0 of
  C(start, r) * starred weight * z^length, computed directly as the finite
  per-order sum over starting heights;
* general weighted corner sums: given a scalar sequence a_1, a_2, ... that is
  eventually polynomial along every residue class mod s, the series
  sum_n (sum_k a_k (V^n)_{k,1}) z^n;
* the affine recursion y^(n+1) = T y^(n) + sum_k (V^n)_{k,1} y_k with a
  linear readout, which reduces the transfer-operator series
  sum_n l(T^n E_1) z^n to the previous layer.
"""

from __future__ import annotations

import json

from . import matrices as cm
from .banded import BandedSpec, BlockWeights, block_reduce
from .engine import fixed_point_route
from .errors import (
    InternalConsistencyError,
    ShapeError,
    SpecFormatError,
    UnsupportedCharacteristicError,
)
from .fields import Field
from .matseries import MatrixSeries
from .series import Series
from .walks import UTable, u_table


def field_binomial(field: Field, k: int, r: int):
    """C(k, r) as a field scalar, via the falling factorial over r factorial."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    p = field.characteristic
    if p and r >= p:
        raise UnsupportedCharacteristicError(
            f"binomial with r = {r} needs characteristic 0 or > {r}"
        )
    num = field.one
    fact = field.one
    for t in range(r):
        num = field.reduce(num * field.from_int(k - t))
        fact = field.reduce(fact * field.from_int(t + 1))
    return field.reduce(num * field.inv(fact))


def g_star_r(w: BlockWeights, r: int, order: int, table: UTable | None = None) -> MatrixSeries:
    """Binomially weighted standard-walk sum of index r, as a matrix series.

    The z^n coefficient is sum_{k >= r} C(k, r) u_{k+1}^{(n)}; walks of
    length n cannot start above n, so each sum is finite.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    field, s = w.field, w.s
    if table is None or table.order < order:
        table = u_table(w, order)
    coeffs = []
    for n in range(order + 1):
        acc = cm.zeros(field, s)
        for k in range(r, n + 1):
            acc = cm.add(
                field, acc, cm.scale(field, table.value(k + 1, n), field_binomial(field, k, r))
            )
        coeffs.append(acc)
    return MatrixSeries(field, s, coeffs)


def _az_shift(w: BlockWeights, g: MatrixSeries, order: int) -> MatrixSeries:
    """G * (A z) truncated to the given order."""
    return g.rmul_const(w.a).mul_z_pow(1).truncate(order)


def check_descent_identities(w: BlockWeights, rmax: int, order: int):
    """Verify the two ladder identities tying G*_r to the plain walk sums.

    Checks (I - G A z) G*_0 = G* and (I - G A z) G*_{r+1} = G A z G*_r for
    r = 0..rmax.  A violation means an implementation bug, so it raises
    InternalConsistencyError rather than returning a report.
    """
    field, s = w.field, w.s
    table = u_table(w, order)
    bundle = fixed_point_route(w, order)
    gaz = _az_shift(w, bundle.gw, order)
    ident = MatrixSeries.identity(field, s, order)
    ladder = [g_star_r(w, r, order, table) for r in range(rmax + 2)]
    lhs0 = (ident - gaz) * ladder[0]
    if lhs0 != bundle.gwstar.truncate(order):
        raise InternalConsistencyError(
            "(I - G A z) G*_0 differs from the starred walk sum"
        )
    for r in range(rmax + 1):
        lhs = (ident - gaz) * ladder[r + 1]
        rhs = gaz * ladder[r]
        if lhs != rhs:
            raise InternalConsistencyError(
                f"(I - G A z) G*_{r + 1} differs from G A z G*_{r}"
            )
    return True


class EventuallyPolySeq:
    """Scalar sequence a_1, a_2, ... eventually polynomial on each residue class.

    For residue i in 1..s the subsequence k -> a_{i+sk} is given by explicit
    initial values followed by a polynomial in k: the accessor returns
    ``initial[k]`` while k is in range and evaluates the polynomial after.
    """

    def __init__(self, field: Field, s: int, rules):
        if len(rules) != s:
            raise ShapeError(f"need one rule per residue 1..{s}, got {len(rules)}")
        self.field = field
        self.s = s
        self.rules = tuple(
            (
                tuple(field.reduce(v) for v in initial),
                tuple(field.reduce(c) for c in poly),
            )
            for initial, poly in rules
        )

    @classmethod
    def constant(cls, field: Field, s: int, value) -> "EventuallyPolySeq":
        return cls(field, s, [((), (value,))] * s)

    def value_by_residue(self, i: int, k: int):
        initial, poly = self.rules[i - 1]
        if k < len(initial):
            return initial[k]
        field = self.field
        acc = field.zero
        kval = field.from_int(k)
        power = field.one
        for c in poly:
            acc = field.reduce(acc + c * power)
            power = field.reduce(power * kval)
        return acc

    def value(self, index: int):
        """a_index for a 1-based index."""
        if index < 1:
            raise ValueError("sequence indices start at 1")
        i = (index - 1) % self.s + 1
        k = (index - i) // self.s
        return self.value_by_residue(i, k)


def weighted_series(
    spec: BandedSpec,
    a: EventuallyPolySeq,
    order: int,
    block_size: int | None = None,
    table: UTable | None = None,
) -> Series:
    """sum_n (sum_k a_k (V^n)_{k,1}) z^n, via the standard-walk table.

    The first column of the n-th power of the block pattern built from V's
    corner stacks the blocks u_1^(n), u_2^(n), ...; entry (i, 1) of
    u_{k+1}^(n) is (V^n)_{i+sk,1}, so each per-order sum is finite.
    """
    w = block_reduce(spec, block_size)
    if a.s != w.s:
        raise ShapeError(
            f"weight rules cover residues mod {a.s} but the block size is {w.s}"
        )
    field, s = w.field, w.s
    if table is None or table.order < order:
        table = u_table(w, order)
    coeffs = []
    for n in range(order + 1):
        acc = field.zero
        for k in range(n + 1):
            u = table.value(k + 1, n)
            for i in range(1, s + 1):
                v = u[i - 1][0]
                if v != field.zero:
                    acc = acc + a.value_by_residue(i, k) * v
        coeffs.append(field.reduce(acc))
    return Series(field, coeffs)


class AffineRecursion:
    """Data for the affine pipeline: matrix T, readout l, and forcing rules.

    ``y_rules`` holds one EventuallyPolySeq per coordinate of Y; stacking
    their values at index k gives the forcing vector y_k.
    """

    def __init__(self, field: Field, dim_y: int, t, l, y_rules):
        self.field = field
        self.dim_y = dim_y
        self.t = cm.freeze(t)
        cm.check_square(self.t, dim_y)
        self.l = tuple(field.reduce(v) for v in l)
        if len(self.l) != dim_y:
            raise ShapeError(f"readout has length {len(self.l)}, expected {dim_y}")
        self.y_rules = tuple(y_rules)
        if len(self.y_rules) != dim_y:
            raise ShapeError(
                f"need one forcing rule per coordinate, got {len(self.y_rules)}"
            )
        residues = {rule.s for rule in self.y_rules}
        if len(residues) > 1:
            raise ShapeError("forcing rules disagree on the residue count")

    @property
    def s(self) -> int:
        return self.y_rules[0].s

    def forcing_vector(self, index: int):
        return tuple(rule.value(index) for rule in self.y_rules)


def affine_pipeline(
    spec: BandedSpec,
    rec: AffineRecursion,
    order: int,
    block_size: int | None = None,
) -> Series:
    """Readout series of y^(n+1) = T y^(n) + sum_k (V^n)_{k,1} y_k from y^(0) = 0."""
    w = block_reduce(spec, block_size)
    if rec.s != w.s:
        raise ShapeError(
            f"forcing rules cover residues mod {rec.s} but the block size is {w.s}"
        )
    field, s, d = w.field, w.s, rec.dim_y
    table = u_table(w, order)
    y = [field.zero] * d
    coeffs = []
    for n in range(order + 1):
        coeffs.append(field.reduce(sum(a * b for a, b in zip(rec.l, y))))
        if n == order:
            break
        nxt = list(cm.mat_vec(field, rec.t, y))
        for k in range(n + 1):
            u = table.value(k + 1, n)
            for i in range(1, s + 1):
                v = u[i - 1][0]
                if v != field.zero:
                    yk = rec.forcing_vector(i + s * k)
                    for coord in range(d):
                        nxt[coord] = nxt[coord] + v * yk[coord]
        y = [field.reduce(x) for x in nxt]
    return Series(field, coeffs)


# -- JSON input formats ---------------------------------------------------------


def weight_rules_from_json_doc(doc, field: Field, s: int) -> EventuallyPolySeq:
    """Decode {"weights": [{"residue": i, "initial": [...], "poly": [...]}]}."""
    if not isinstance(doc, dict) or "weights" not in doc:
        raise SpecFormatError('weight rules document needs a "weights" list')
    by_residue = {}
    for rec in doc["weights"]:
        if not isinstance(rec, dict) or "residue" not in rec:
            raise SpecFormatError(f"bad weight rule record: {rec!r}")
        i = rec["residue"]
        if not isinstance(i, int) or not 1 <= i <= s:
            raise SpecFormatError(f"residue {i!r} out of range 1..{s}")
        if i in by_residue:
            raise SpecFormatError(f"duplicate weight rule for residue {i}")
        by_residue[i] = (
            [field.parse(v) for v in rec.get("initial", [])],
            [field.parse(v) for v in rec.get("poly", [])],
        )
    missing = set(range(1, s + 1)) - set(by_residue)
    if missing:
        raise SpecFormatError(f"weight rules missing residues {sorted(missing)}")
    return EventuallyPolySeq(field, s, [by_residue[i] for i in range(1, s + 1)])


def recursion_from_json_doc(doc, field: Field, s: int) -> AffineRecursion:
    """Decode {"dimY": d, "T": [[...]], "l": [...], "y_rule": [rule, ...]}."""
    if not isinstance(doc, dict):
        raise SpecFormatError("recursion document must be a JSON object")
    missing = {"dimY", "T", "l", "y_rule"} - set(doc)
    if missing:
        raise SpecFormatError(f"recursion document lacks keys: {sorted(missing)}")
    d = doc["dimY"]
    if not isinstance(d, int) or d < 1:
        raise SpecFormatError(f"dimY must be a positive integer, got {d!r}")
    t = [[field.parse(v) for v in row] for row in doc["T"]]
    if len(t) != d or any(len(row) != d for row in t):
        raise SpecFormatError(f"T must be a {d}x{d} matrix")
    l = [field.parse(v) for v in doc["l"]]
    rules_doc = doc["y_rule"]
    if not isinstance(rules_doc, list) or len(rules_doc) != d:
        raise SpecFormatError(f'"y_rule" must list one rule set per coordinate ({d})')
    y_rules = [weight_rules_from_json_doc(rd, field, s) for rd in rules_doc]
    return AffineRecursion(field, d, t, l, y_rules)


def weight_rules_from_json(text: str, field: Field, s: int) -> EventuallyPolySeq:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON: {exc}") from exc
    return weight_rules_from_json_doc(doc, field, s)


def recursion_from_json(text: str, field: Field, s: int) -> AffineRecursion:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON: {exc}") from exc
    return recursion_from_json_doc(doc, field, s)
