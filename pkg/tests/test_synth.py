"""Two-stage synthesis: linear fitting, greedy repair, fallback search."""

import random

import pytest

from shorcompile.circuit import cost, verify
from shorcompile.library import FIGURE_IDS, LIBRARY
from shorcompile.modexp import TruthTable
from shorcompile.synth import (
    SynthesisBudget,
    SynthesisError,
    fit_linear,
    plan_cascades,
    synthesize,
)

RNG = random.Random(90210)


def test_fit_linear_exact_on_linear_table():
    fit = fit_linear(LIBRARY["f2_15_full"].table)  # identity map, purely linear
    assert fit.total_mismatches() == 0
    assert all(not bf.mismatches for bf in fit.bits)


def test_fit_linear_uncompiled_f4_21():
    fit = fit_linear(LIBRARY["f4_21"].table)
    got = [(bf.form.mask, int(bf.form.const), sorted(bf.mismatches)) for bf in fit.bits]
    assert got == [
        (0b000, 0, [2, 5]),   # 16-valued bit: too sparse, constant-zero fit
        (0b000, 0, []),       # 8-valued bit never fires
        (0b111, 0, [2]),      # 4-valued bit is parity up to one row
        (0b000, 0, []),       # 2-valued bit never fires
        (0b111, 1, [5]),      # units bit is complemented parity up to one row
    ]
    assert fit.total_mismatches() == 4


def test_fit_linear_compiled_f4_21():
    fit = fit_linear(LIBRARY["f4_21_partial"].table)
    got = [(bf.form.mask, int(bf.form.const), sorted(bf.mismatches)) for bf in fit.bits]
    assert got == [(0b000, 0, [2, 5]), (0b111, 0, [2])]
    assert fit.rank == 1


def test_fit_linear_rejects_wide_tables():
    with pytest.raises(ValueError):
        fit_linear(TruthTable(9, 1, tuple([0] * 512)))


def test_plan_cascades_detects_chain():
    t = LIBRARY["f4_21_partial"].table
    plan = plan_cascades(fit_linear(t), t)
    assert plan.cascades == ((2, 5),)
    assert plan.steps  # greedy produced at least one repair gate


def test_synthesize_bundled_tables_verified_within_2x():
    for name in FIGURE_IDS:
        entry = LIBRARY[name]
        circ = synthesize(entry.table)
        assert verify(circ, entry.table) == [], name
        ref = cost(entry.circuit).quantum_cost
        got = cost(circ).quantum_cost
        assert got <= 2 * ref, (name, got, ref)


def test_synthesize_pure_linear_needs_no_toffoli():
    for name in ("f2_15_full", "f4_15", "f4_15_full"):
        circ = synthesize(LIBRARY[name].table)
        assert cost(circ).n_toffoli == 0, name


def test_synthesize_deterministic():
    t = LIBRARY["f4_33_full"].table
    assert synthesize(t).gates == synthesize(t).gates


def test_synthesize_random_periodic_tables():
    for _ in range(120):
        n_in = RNG.randint(1, 4)
        p = RNG.randint(1, 1 << n_in)
        n_out = RNG.randint(max(1, (p - 1).bit_length()), 4)
        vals = RNG.sample(range(1 << n_out), p)
        rows = tuple(vals[x % p] for x in range(1 << n_in))
        table = TruthTable(n_in, n_out, rows)
        circ = synthesize(table)
        assert verify(circ, table) == [], rows


def test_synthesize_without_negative_controls():
    for name in ("f4_21", "f4_21_partial", "f4_33_full"):
        table = LIBRARY[name].table
        circ = synthesize(table, SynthesisBudget(allow_negative_controls=False))
        assert verify(circ, table) == [], name
        assert all(not c.neg for g in circ.gates for c in g.controls), name


def test_budget_exhaustion_raises():
    table = LIBRARY["f4_21"].table
    with pytest.raises(SynthesisError) as exc:
        synthesize(table, SynthesisBudget(max_quantum_cost=3))
    assert "budget" in str(exc.value)
    with pytest.raises(SynthesisError):
        synthesize(table, SynthesisBudget(max_gates=2))


def test_fallback_finds_cheaper_circuit_than_greedy():
    # OR of two inputs without negative controls: the greedy route costs 10
    # (stage A constant plus a four-term polynomial), the optimum is 8
    table = TruthTable(2, 1, (0, 1, 1, 1))
    tight = SynthesisBudget(max_quantum_cost=8, allow_negative_controls=False)
    with pytest.raises(SynthesisError):
        synthesize(table, tight)
    found = synthesize(
        table,
        SynthesisBudget(
            max_quantum_cost=8, allow_negative_controls=False, exhaustive_fallback=True
        ),
    )
    assert verify(found, table) == []
    assert cost(found).quantum_cost <= 8


def test_fallback_honors_the_cap_and_fails_honestly():
    # AND needs a Toffoli; nothing under quantum cost 5 can realize it
    table = TruthTable(2, 1, (0, 0, 0, 1))
    with pytest.raises(SynthesisError):
        synthesize(
            table,
            SynthesisBudget(max_quantum_cost=5, exhaustive_fallback=True),
        )


def test_synthesize_rejects_wide_tables():
    with pytest.raises(ValueError):
        synthesize(TruthTable(7, 1, tuple([0] * 128)))


def test_degree_three_residual_uses_a_dirty_line():
    # the high output bit is the AND of all three inputs; flipping it needs
    # a borrowed line, and the unused low output line provides one
    rows = tuple(((x == 7) << 1) | 0 for x in range(8))
    table = TruthTable(3, 2, rows)
    circ = synthesize(table)
    assert verify(circ, table) == []


def test_impossible_without_spare_line():
    # AND of three inputs onto the only output line is an odd permutation
    # of the register; the gate set cannot express it
    table = TruthTable(3, 1, (0, 0, 0, 0, 0, 0, 0, 1))
    with pytest.raises(SynthesisError):
        synthesize(table)
