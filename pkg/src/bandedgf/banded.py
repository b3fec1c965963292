"""Finite descriptions of banded, eventually periodic infinite matrices.

A matrix V = |v_{i,j}| (rows and columns indexed from 1) is described by

* a period p and a set of bands: the band at offset r fixes
  v_{i,i+r} = values[(i-1) mod p], so each diagonal is periodic in i;
* a finite list of exceptional overrides v_{i,j} = value with i, j <= m,
  which may change or delete entries near the corner (overrides win);
* every entry not covered by a band or an override is 0.

Block reduction rewrites the corner of V in s-by-s blocks

    | D  C  .  .
    | A  B  C  .
    | .  A  B  C
    | .  .  A  B   ...

which is valid for a block size s exactly when

  (1) v_{i,j} = 0 whenever i <= s and j > 2s, or j <= s and i > 2s, and
  (2) v_{i+s,j+s} = v_{i,j} whenever i + j >= s + 2.

Both conditions quantify over all i, j, but checking a finite window
suffices: any nonzero entry either lies on a band (|i-j| <= bandwidth) or in
the exceptional square (i, j <= m), and band values repeat with period p in
i.  Therefore every violation of (1) shows up at j <= s + bandwidth or
j <= m, and every violation of (2) is witnessed with both indices at most
``4s + bandwidth + period + m``: beyond the exceptional square both sides of
(2) are band values, and those repeat after p rows, so p consecutive rows per
band inside the window already decide equality for all larger indices.
"""

from __future__ import annotations

import json

from . import matrices as cm
from .errors import InvalidBlockSizeError, SpecFormatError
from .fields import Field, field_from_json, field_to_json, require_same_field


class BandedSpec:
    """Finite description of an infinite banded matrix with periodic diagonals."""

    def __init__(self, field: Field, period: int, bands, exceptional=(), block_size=None):
        if period < 1:
            raise SpecFormatError(f"period must be positive, got {period}")
        self.field = field
        self.period = period
        band_map = {}
        for offset, values in dict(bands).items():
            values = tuple(field.reduce(v) for v in values)
            if len(values) != period:
                raise SpecFormatError(
                    f"band at offset {offset} has {len(values)} values, expected {period}"
                )
            band_map[int(offset)] = values
        self.bands = band_map
        exc = {}
        if isinstance(exceptional, dict):
            exceptional = [(i, j, v) for (i, j), v in exceptional.items()]
        for i, j, value in exceptional:
            if i < 1 or j < 1:
                raise SpecFormatError(f"exceptional index ({i},{j}) out of range")
            exc[(i, j)] = field.reduce(value)
        self.exceptional = exc
        if block_size is not None and block_size < 1:
            raise SpecFormatError(f"block_size must be positive, got {block_size}")
        self.block_size = block_size

    @property
    def bandwidth(self) -> int:
        return max((abs(r) for r in self.bands), default=0)

    @property
    def exceptional_bound(self) -> int:
        return max((max(i, j) for i, j in self.exceptional), default=0)

    def entry(self, i: int, j: int):
        """Value of v_{i,j} (1-based indices)."""
        if i < 1 or j < 1:
            raise ValueError(f"indices start at 1, got ({i},{j})")
        hit = self.exceptional.get((i, j))
        if hit is not None:
            return hit
        band = self.bands.get(j - i)
        if band is None:
            return self.field.zero
        return band[(i - 1) % self.period]

    def __repr__(self):
        return (
            f"BandedSpec(period={self.period}, offsets={sorted(self.bands)}, "
            f"exceptional={len(self.exceptional)})"
        )

    # -- JSON round trip ---------------------------------------------------

    @classmethod
    def from_json_doc(cls, doc) -> "BandedSpec":
        if not isinstance(doc, dict):
            raise SpecFormatError("spec document must be a JSON object")
        missing = {"field", "period", "bands"} - set(doc)
        if missing:
            raise SpecFormatError(f"spec document lacks keys: {sorted(missing)}")
        field = field_from_json(doc["field"])
        period = doc["period"]
        if not isinstance(period, int):
            raise SpecFormatError(f"period must be an integer, got {period!r}")
        bands = {}
        for rec in doc["bands"]:
            if not isinstance(rec, dict) or {"offset", "values"} - set(rec):
                raise SpecFormatError(f"bad band record: {rec!r}")
            offset = rec["offset"]
            if not isinstance(offset, int):
                raise SpecFormatError(f"band offset must be an integer: {offset!r}")
            if offset in bands:
                raise SpecFormatError(f"duplicate band offset {offset}")
            bands[offset] = [field.parse(v) for v in rec["values"]]
        exceptional = []
        for rec in doc.get("exceptional", []):
            if not isinstance(rec, dict) or {"i", "j", "value"} - set(rec):
                raise SpecFormatError(f"bad exceptional record: {rec!r}")
            if not isinstance(rec["i"], int) or not isinstance(rec["j"], int):
                raise SpecFormatError(f"exceptional indices must be integers: {rec!r}")
            exceptional.append((rec["i"], rec["j"], field.parse(rec["value"])))
        block_size = doc.get("block_size")
        if block_size is not None and not isinstance(block_size, int):
            raise SpecFormatError(f"block_size must be an integer: {block_size!r}")
        return cls(field, period, bands, exceptional, block_size)

    @classmethod
    def from_json(cls, text: str) -> "BandedSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_json_doc(doc)

    def to_json_doc(self) -> dict:
        scalar = _scalar_to_json
        doc = {
            "field": field_to_json(self.field),
            "period": self.period,
            "bands": [
                {"offset": r, "values": [scalar(self.field, v) for v in self.bands[r]]}
                for r in sorted(self.bands)
            ],
            "exceptional": [
                {"i": i, "j": j, "value": scalar(self.field, v)}
                for (i, j), v in sorted(self.exceptional.items())
            ],
        }
        if self.block_size is not None:
            doc["block_size"] = self.block_size
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_doc(), sort_keys=True)


def _scalar_to_json(field: Field, v):
    if field.kind == "prime_field":
        return int(v)
    if v.denominator == 1:
        return int(v.numerator)
    return field.format(v)


class BlockWeights:
    """The four s-by-s corner blocks A (down), B (level), C (up), D (corner)."""

    def __init__(self, field: Field, s: int, a, b, c, d):
        self.field = field
        self.s = s
        self.a = cm.freeze(a)
        self.b = cm.freeze(b)
        self.c = cm.freeze(c)
        self.d = cm.freeze(d)
        for m in (self.a, self.b, self.c, self.d):
            cm.check_square(m, s)

    def __eq__(self, other):
        return (
            isinstance(other, BlockWeights)
            and self.field == other.field
            and self.s == other.s
            and (self.a, self.b, self.c, self.d)
            == (other.a, other.b, other.c, other.d)
        )

    def __repr__(self):
        return f"BlockWeights(s={self.s})"

    def replace(self, which: str, i: int, j: int, value) -> "BlockWeights":
        """Copy with one entry of block 'a'/'b'/'c'/'d' set to value (0-based i, j)."""
        blocks = {"a": self.a, "b": self.b, "c": self.c, "d": self.d}
        rows = [list(row) for row in blocks[which]]
        rows[i][j] = self.field.reduce(value)
        blocks[which] = rows
        return BlockWeights(
            self.field, self.s, blocks["a"], blocks["b"], blocks["c"], blocks["d"]
        )


def _window(spec: BandedSpec, s: int) -> int:
    return 4 * s + spec.bandwidth + spec.period + spec.exceptional_bound


def verify_block_size(spec: BandedSpec, s: int) -> None:
    """Raise InvalidBlockSizeError unless s satisfies the two corner conditions."""
    if s < 1:
        raise InvalidBlockSizeError(f"block size must be positive, got {s}")
    zero = spec.field.zero
    reach = max(2 * s + 1, s + spec.bandwidth, spec.exceptional_bound)
    for i in range(1, s + 1):
        for j in range(2 * s + 1, reach + 1):
            if spec.entry(i, j) != zero:
                raise InvalidBlockSizeError(
                    f"corner condition fails: v_{{{i},{j}}} is nonzero with "
                    f"i <= {s} < 2*{s} < j",
                    position=(i, j),
                )
            if spec.entry(j, i) != zero:
                raise InvalidBlockSizeError(
                    f"corner condition fails: v_{{{j},{i}}} is nonzero with "
                    f"j <= {s} < 2*{s} < i",
                    position=(j, i),
                )
    w = _window(spec, s)
    for i in range(1, w + 1):
        lo = max(1, s + 2 - i)
        for j in range(lo, w + 1):
            if spec.entry(i + s, j + s) != spec.entry(i, j):
                raise InvalidBlockSizeError(
                    f"shift condition fails at ({i},{j}): "
                    f"v_{{{i + s},{j + s}}} != v_{{{i},{j}}}",
                    position=(i, j),
                )


def is_valid_block_size(spec: BandedSpec, s: int) -> bool:
    try:
        verify_block_size(spec, s)
    except InvalidBlockSizeError:
        return False
    return True


def choose_block_size(spec: BandedSpec) -> int:
    """Smallest verified multiple of the period covering band and corner widths."""
    p = spec.period
    floor = max(spec.bandwidth, spec.exceptional_bound, 1)
    s = ((floor + p - 1) // p) * p
    while not is_valid_block_size(spec, s):
        # The conservative bound is expected to verify on the first try; the
        # loop keeps the return value honest if a pathological spec slips by.
        s += p
        if s > 64 * floor + 64:
            raise InvalidBlockSizeError(
                "no verified block size found; spec violates its invariants"
            )
    return s


def block_reduce(spec: BandedSpec, s: int | None = None) -> BlockWeights:
    """Cut the verified 2s-by-2s corner into the D, C / A, B block weights."""
    if s is None:
        s = spec.block_size if spec.block_size is not None else choose_block_size(spec)
    verify_block_size(spec, s)
    d = [[spec.entry(i, j) for j in range(1, s + 1)] for i in range(1, s + 1)]
    c = [[spec.entry(i, j) for j in range(s + 1, 2 * s + 1)] for i in range(1, s + 1)]
    a = [[spec.entry(i, j) for j in range(1, s + 1)] for i in range(s + 1, 2 * s + 1)]
    b = [
        [spec.entry(i, j) for j in range(s + 1, 2 * s + 1)]
        for i in range(s + 1, 2 * s + 1)
    ]
    return BlockWeights(spec.field, s, a, b, c, d)


class ReductionReport:
    """Outcome of validate_reduction; falsy when a mismatch was found."""

    def __init__(self, ok: bool, mismatch=None):
        self.ok = ok
        self.mismatch = mismatch  # (i, j, rebuilt, expected) or None

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ReductionReport(ok)"
        i, j, got, want = self.mismatch
        return f"ReductionReport(mismatch at ({i},{j}): rebuilt {got!r} != {want!r})"


def _block_pattern_entry(w: BlockWeights, i: int, j: int):
    """Entry (i, j) of the infinite block matrix D,B on the diagonal, A below, C above."""
    s = w.s
    bi, bj = (i - 1) // s, (j - 1) // s
    r, c = (i - 1) % s, (j - 1) % s
    if bi == bj:
        return w.d[r][c] if bi == 0 else w.b[r][c]
    if bi == bj + 1:
        return w.a[r][c]
    if bj == bi + 1:
        return w.c[r][c]
    return w.field.zero


def validate_reduction(spec: BandedSpec, w: BlockWeights, k: int) -> ReductionReport:
    """Compare the rebuilt block pattern against the spec on the K-by-K corner."""
    require_same_field(spec.field, w.field)
    if k < 2 * w.s:
        raise ValueError(f"validation window {k} is smaller than 2s = {2 * w.s}")
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            got = _block_pattern_entry(w, i, j)
            want = spec.entry(i, j)
            if got != want:
                return ReductionReport(False, (i, j, got, want))
    return ReductionReport(True)


def from_block_weights(w: BlockWeights) -> BandedSpec:
    """Banded spec of the infinite block matrix generated by the weights.

    The result has period s, bands read off the A/B/C pattern, and exceptional
    overrides only where the corner block D differs from the repeating B band.
    """
    field, s = w.field, w.s
    bands = {}
    for r in range(-(2 * s - 1), 2 * s):
        values = []
        for a0 in range(s):  # a0 = (i - 1) mod s
            shift, c0 = divmod(a0 + r, s)
            if shift == 0:
                values.append(w.b[a0][c0])
            elif shift == 1:
                values.append(w.c[a0][c0])
            elif shift == -1:
                values.append(w.a[a0][c0])
            else:
                values.append(field.zero)
        if any(v != field.zero for v in values):
            bands[r] = values
    exceptional = []
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            if w.d[i - 1][j - 1] != w.b[i - 1][j - 1]:
                exceptional.append((i, j, w.d[i - 1][j - 1]))
    spec = BandedSpec(field, s, bands, exceptional)
    # Block size s itself verifies only when the corner block agrees with the
    # repeating band outside the i + j <= s + 1 anti-triangle; otherwise the
    # caller gets the conservative default (2s works in the worst case).
    if is_valid_block_size(spec, s):
        spec.block_size = s
    return spec
