import json
import random

import pytest

from bandedgf import fixtures
from bandedgf.banded import (
    BandedSpec,
    BlockWeights,
    block_reduce,
    choose_block_size,
    from_block_weights,
    is_valid_block_size,
    validate_reduction,
    verify_block_size,
)
from bandedgf.errors import InvalidBlockSizeError, SpecFormatError
from bandedgf.fields import PrimeField, QQ


def ones(s):
    return [[1] * s for _ in range(s)]


def test_entry_band_and_exceptions():
    spec = fixtures.ex41_spec()
    assert spec.entry(1, 4) == 1       # third superdiagonal, odd row
    assert spec.entry(2, 5) == 0       # even row: band value is 0
    assert spec.entry(10**6, 10**6 + 1) == 1
    assert spec.entry(3, 7) == 0


def test_entry_exceptional_override_wins():
    spec = BandedSpec(QQ, 1, {0: [1]}, [(1, 1, 0), (2, 3, 7)])
    assert spec.entry(1, 1) == 0       # band value deleted at the corner
    assert spec.entry(2, 2) == 1
    assert spec.entry(2, 3) == 7       # off-band override


def test_entry_zero_beyond_bandwidth_on_corpus():
    for name in fixtures.EXAMPLE_NAMES:
        spec = fixtures.example_spec(name)
        b = spec.bandwidth
        for i in range(1, 12):
            for j in range(1, 12):
                if abs(i - j) > b:
                    assert spec.entry(i, j) == 0


def test_choose_block_size_defaults():
    # The conservative default covers the bandwidth, rounded to the period.
    assert choose_block_size(fixtures.ex41_spec()) == 4
    assert choose_block_size(fixtures.ex42_spec()) == 4
    assert choose_block_size(fixtures.ex43_spec()) == 3
    assert choose_block_size(fixtures.ex512_spec()) == 1


def test_user_supplied_smaller_block_size_verifies():
    # Block size 2 is below the bandwidth yet satisfies both corner
    # conditions for this spec, so it must be accepted.
    verify_block_size(fixtures.ex41_spec(), 2)
    assert is_valid_block_size(fixtures.ex41_spec(), 2)


def test_bad_block_size_is_rejected_with_position():
    with pytest.raises(InvalidBlockSizeError) as info:
        block_reduce(fixtures.ex42_spec(), 2)
    assert info.value.position == (2, 5)


def test_block_reduce_corner_blocks():
    w = block_reduce(fixtures.ex41_spec(), 2)
    assert w.d == ((1, 1), (1, 1))
    assert w.b == ((1, 1), (1, 1))
    assert w.a == ((0, 1), (0, 0))
    assert w.c == ((0, 1), (1, 0))


def test_block_reduce_third_example():
    w = block_reduce(fixtures.ex43_spec(), 3)
    assert w.a == ((0, 0, 1), (0, 1, 0), (0, 0, 0))
    assert w.b == ((0, 1, 0), (1, 0, 1), (0, 1, 0))
    assert w.c == ((0, 0, 0), (0, 1, 0), (1, 0, 0))
    assert w.d == w.b


def test_block_reduce_corner_loop_example():
    w = block_reduce(fixtures.ex512_spec(), 1)
    assert (w.a, w.b, w.c, w.d) == (((1,),), ((0,),), ((1,),), ((1,),))


def test_validate_reduction_round_trip():
    for name in fixtures.EXAMPLE_NAMES:
        spec = fixtures.example_spec(name)
        w = block_reduce(spec)
        assert validate_reduction(spec, w, 6 * w.s)


def test_validate_reduction_window_floor():
    spec = fixtures.ex41_spec()
    w = block_reduce(spec, 2)
    assert validate_reduction(spec, w, 2 * w.s)
    with pytest.raises(ValueError):
        validate_reduction(spec, w, 2 * w.s - 1)


def test_validate_reduction_catches_wrong_cut():
    # Cutting blocks of size 2 out of the ex4.2 corner without verification
    # misses the band entry at (2, 5); the validator reports exactly there.
    spec = fixtures.ex42_spec()
    cut = lambda r0, c0: [
        [spec.entry(i, j) for j in range(c0, c0 + 2)] for i in range(r0, r0 + 2)
    ]
    w = BlockWeights(QQ, 2, cut(3, 1), cut(3, 3), cut(1, 3), cut(1, 1))
    report = validate_reduction(spec, w, 12)
    assert not report
    assert report.mismatch[:2] == (2, 5)


def test_shift_condition_on_window():
    for name in fixtures.EXAMPLE_NAMES:
        spec = fixtures.example_spec(name)
        s = spec.block_size
        for i in range(1, 4 * s + 1):
            for j in range(1, 4 * s + 1):
                if i + j >= s + 2:
                    assert spec.entry(i + s, j + s) == spec.entry(i, j)


def test_from_block_weights_round_trip():
    # The corner block may differ from the repeating band only inside the
    # i + j <= s + 1 anti-triangle; such weights round-trip at block size s.
    rng = random.Random(9)
    f = PrimeField(101)
    for s in (1, 2, 3):
        def mat():
            return [[rng.randrange(101) for _ in range(s)] for _ in range(s)]
        b = mat()
        d = [
            [rng.randrange(101) if i + j <= s - 1 else b[i][j] for j in range(s)]
            for i in range(s)
        ]
        w = BlockWeights(f, s, mat(), b, mat(), d)
        spec = from_block_weights(w)
        assert spec.block_size == s
        assert block_reduce(spec, s) == w
        assert validate_reduction(spec, w, 6 * s)


def test_from_block_weights_arbitrary_corner():
    # A corner block clashing with the band pattern cannot verify at block
    # size s, but the rebuilt entries still match and a doubled block works.
    rng = random.Random(10)
    f = PrimeField(101)
    for s in (2, 3):
        def mat():
            return [[rng.randrange(101) for _ in range(s)] for _ in range(s)]
        b = mat()
        d = [[(b[i][j] + 1) % 101 for j in range(s)] for i in range(s)]
        w = BlockWeights(f, s, mat(), b, mat(), d)
        spec = from_block_weights(w)
        assert spec.block_size is None
        assert validate_reduction(spec, w, 6 * s)
        assert not is_valid_block_size(spec, s)
        assert choose_block_size(spec) == 2 * s


def test_json_round_trip_bit_exact():
    spec = BandedSpec(
        QQ,
        2,
        {0: [QQ.parse("1/3"), 2], 3: [QQ.parse("-7/2"), 0]},
        [(1, 2, QQ.parse("22/7"))],
        block_size=4,
    )
    text = spec.to_json()
    again = BandedSpec.from_json(text)
    assert again.to_json() == text
    assert again.entry(1, 1) == QQ.parse("1/3")
    assert again.entry(1, 2) == QQ.parse("22/7")
    assert again.entry(3, 6) == QQ.parse("-7/2")


def test_json_rejects_malformed_documents():
    with pytest.raises(SpecFormatError):
        BandedSpec.from_json("{not json")
    with pytest.raises(SpecFormatError):
        BandedSpec.from_json(json.dumps({"field": "rational", "period": 1}))
    with pytest.raises(SpecFormatError):
        BandedSpec.from_json(
            json.dumps({"field": "rational", "period": 2,
                        "bands": [{"offset": 0, "values": [1]}]})
        )
    with pytest.raises(SpecFormatError):
        BandedSpec.from_json(
            json.dumps({"field": {"prime": 9}, "period": 1,
                        "bands": [{"offset": 0, "values": [1]}]})
        )


def test_prime_field_spec_round_trip():
    f = PrimeField(13)
    spec = BandedSpec(f, 1, {0: [5], 1: [12]}, [(1, 1, 3)])
    again = BandedSpec.from_json(spec.to_json())
    assert again.field == f
    assert again.entry(1, 1) == 3
    assert again.entry(4, 5) == 12
