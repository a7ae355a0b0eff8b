"""Truth tables and the two compression stages."""

import json
import random

import pytest

from shorcompile.modexp import (
    CompileLevel,
    GDescriptor,
    GKind,
    TruthTable,
    build_modexp_table,
    classical_compile,
    full_compile,
    period_of,
    uncompiled,
)

RNG = random.Random(40961)


def test_truth_table_validation():
    TruthTable(2, 4, (1, 2, 4, 8))
    with pytest.raises(ValueError):
        TruthTable(2, 4, (1, 2, 4))  # wrong row count
    with pytest.raises(ValueError):
        TruthTable(2, 2, (1, 2, 4, 0))  # 4 needs 3 bits
    with pytest.raises(ValueError):
        TruthTable(0, 1, ())


def test_truth_table_json_roundtrip():
    t = TruthTable(3, 5, (1, 4, 16, 1, 4, 16, 1, 4))
    again = TruthTable.from_json(t.to_json())
    assert again == t
    doc = json.loads(t.to_json())
    assert doc == {"n_in": 3, "n_out": 5, "rows": [1, 4, 16, 1, 4, 16, 1, 4]}


def test_truth_table_render_text():
    text = TruthTable(1, 2, (1, 2)).render_text()
    lines = [ln.replace(" ", "") for ln in text.splitlines()]
    # header, then one row per input, MSB first on both sides
    assert lines[0] == "x1|y2y1"
    assert lines[1] == "0|01"
    assert lines[2] == "1|10"


def test_build_modexp_table_matches_pow():
    for a, n in [(2, 15), (4, 15), (4, 21), (2, 21), (4, 33), (5, 33)]:
        for n_in in (1, 2, 3):
            t = build_modexp_table(a, n, n_in)
            assert t.n_out == (n - 1).bit_length()
            assert t.rows == tuple(pow(a, x, n) for x in range(1 << n_in))


def test_build_modexp_table_rejects_bad_base():
    with pytest.raises(ValueError):
        build_modexp_table(6, 15, 2)  # shares a factor
    with pytest.raises(ValueError):
        build_modexp_table(1, 15, 2)


def test_gdescriptor_roundtrips():
    log = GDescriptor(GKind.LOG, base=4)
    assert log.apply(16) == 2 and log.invert(2) == 16
    aff = GDescriptor(GKind.AFFINE, c=1, d=3)
    assert aff.apply(10) == 3 and aff.invert(3) == 10
    rank = GDescriptor(GKind.RANK, sorted_outputs=(1, 4, 16))
    assert rank.apply(16) == 2 and rank.invert(2) == 16
    assert rank.simple is False
    assert log.simple and aff.simple


def test_uncompiled_known_tables():
    assert uncompiled(2, 15, 2).table.rows == (1, 2, 4, 8)
    assert uncompiled(4, 15, 1).table.rows == (1, 4)
    assert uncompiled(4, 21, 3).table.rows == (1, 4, 16, 1, 4, 16, 1, 4)
    cf = uncompiled(2, 15, 2)
    assert cf.level is CompileLevel.UNCOMPILED
    assert cf.g.kind is GKind.NONE


def test_classical_compile_log():
    base = build_modexp_table(4, 21, 3)
    cf = classical_compile(base, 4, 21, GKind.LOG)
    assert cf.level is CompileLevel.PARTIAL
    assert cf.table.rows == (0, 1, 2, 0, 1, 2, 0, 1)
    assert cf.table.n_out == 2
    # g must invert losslessly back to the raw outputs
    assert tuple(cf.g.invert(v) for v in cf.table.rows) == base.rows


def test_classical_compile_log_rejected_when_not_powers():
    base = build_modexp_table(2, 21, 3)  # hits 11, not a power of 2
    with pytest.raises(ValueError):
        classical_compile(base, 2, 21, GKind.LOG)


def test_classical_compile_affine():
    base = build_modexp_table(2, 21, 3)
    cf = classical_compile(base, 2, 21, GKind.AFFINE)
    assert tuple(cf.g.invert(v) for v in cf.table.rows) == base.rows
    assert max(cf.table.rows).bit_length() == cf.table.n_out


def test_classical_compile_rank_always_works():
    for a, n in [(2, 15), (4, 21), (5, 33), (2, 33)]:
        base = build_modexp_table(a, n, 3)
        cf = classical_compile(base, a, n, GKind.RANK)
        assert tuple(cf.g.invert(v) for v in cf.table.rows) == base.rows
        assert not cf.g.simple


def test_full_compile_known_cases():
    cases = {
        (2, 15): ((0, 1, 2, 3), GKind.LOG, 4),
        (4, 15): ((0, 1), GKind.LOG, 2),
        (4, 21): ((0, 1, 2, 0), GKind.LOG, 3),
        (4, 33): ((0, 1, 5, 10, 8, 0, 1, 5), GKind.AFFINE, 5),
    }
    for (a, n), (rows, kind, period) in cases.items():
        cf = full_compile(a, n)
        assert cf.table.rows == rows, (a, n)
        assert cf.g.kind is kind
        assert cf.period == period
        assert cf.level is CompileLevel.FULL


def test_full_compile_wraps_mod_period():
    # inputs continue past one period by wrapping x mod r before mapping
    cf = full_compile(2, 33)  # r = 10, so n_in = 4 and rows wrap at 10
    assert cf.period == 10
    assert cf.table.n_in == 4
    for x in range(16):
        assert cf.table.rows[x] == cf.table.rows[x % 10]
    assert tuple(cf.g.invert(cf.table.rows[x]) for x in range(10)) == tuple(
        pow(2, x, 33) for x in range(10)
    )


def test_full_compile_input_width_is_minimal():
    assert full_compile(4, 15).table.n_in == 1  # r = 2
    assert full_compile(4, 21).table.n_in == 2  # r = 3
    assert full_compile(2, 15).table.n_in == 2  # r = 4
    assert full_compile(4, 33).table.n_in == 3  # r = 5


def test_full_compile_prefers_log_then_affine():
    assert full_compile(2, 15).g.kind is GKind.LOG
    assert full_compile(4, 33).g.kind is GKind.AFFINE


def test_period_of():
    assert period_of(TruthTable(3, 5, (1, 4, 16, 1, 4, 16, 1, 4))) == 3
    assert period_of(TruthTable(2, 4, (1, 2, 4, 8))) == 4
    assert period_of(TruthTable(2, 2, (0, 1, 0, 1))) == 2
    assert period_of(TruthTable(1, 1, (1, 1))) == 1


def test_period_of_random_tables():
    for _ in range(200):
        n_in = RNG.randint(1, 4)
        p = RNG.randint(1, 1 << n_in)
        vals = [RNG.randrange(16) for _ in range(p)]
        rows = tuple(vals[x % p] for x in range(1 << n_in))
        got = period_of(TruthTable(n_in, 4, rows))
        # got is the minimal period, which divides or equals the planted one
        assert got <= p
        assert all(rows[x] == rows[x % got] for x in range(1 << n_in))
