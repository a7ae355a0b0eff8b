"""Reversible-circuit IR: NOT/CNOT/Toffoli gates, bit-exact evaluation, costs.

Line 0 is the top line of a circuit diagram. Bit significance is carried by
the input_lines/output_lines orderings (first element = most significant),
never by the line index itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .modexp import TruthTable


class GateKind(Enum):
    NOT = "not"
    CNOT = "cnot"
    TOFFOLI = "toffoli"


_CONTROL_COUNT = {GateKind.NOT: 0, GateKind.CNOT: 1, GateKind.TOFFOLI: 2}


@dataclass(frozen=True)
class Control:
    line: int
    neg: bool = False


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    controls: tuple[Control, ...]
    target: int

    def __post_init__(self) -> None:
        if len(self.controls) != _CONTROL_COUNT[self.kind]:
            raise ValueError(f"{self.kind.value} takes {_CONTROL_COUNT[self.kind]} controls")
        lines = [c.line for c in self.controls]
        if self.target in lines or len(set(lines)) != len(lines):
            raise ValueError("control lines must be distinct from each other and the target")


def not_gate(target: int) -> Gate:
    return Gate(GateKind.NOT, (), target)


def cnot(control: int, target: int, neg: bool = False) -> Gate:
    return Gate(GateKind.CNOT, (Control(control, neg),), target)


def toffoli(c1: int, c2: int, target: int, neg1: bool = False, neg2: bool = False) -> Gate:
    return Gate(GateKind.TOFFOLI, (Control(c1, neg1), Control(c2, neg2)), target)


@dataclass(frozen=True)
class Circuit:
    width: int
    input_lines: tuple[int, ...]
    output_lines: tuple[int, ...]
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        lines = list(self.input_lines) + list(self.output_lines)
        if len(set(lines)) != len(lines):
            raise ValueError("input and output lines must be disjoint")
        if any(not 0 <= ln < self.width for ln in lines):
            raise ValueError("register line out of range")
        for g in self.gates:
            touched = [g.target] + [c.line for c in g.controls]
            if any(not 0 <= ln < self.width for ln in touched):
                raise ValueError(f"gate {g} uses a line outside width {self.width}")

    @property
    def n_in(self) -> int:
        return len(self.input_lines)

    @property
    def n_out(self) -> int:
        return len(self.output_lines)


@dataclass(frozen=True)
class CostReport:
    n_toffoli: int
    n_cnot: int
    n_not: int
    quantum_cost: int


@dataclass(frozen=True)
class Mismatch:
    x: int
    expected: int
    got: int
    input_after: int


def apply_gate(bits: list[int], gate: Gate) -> list[int]:
    """Flip the target bit iff every control matches its polarity."""
    out = list(bits)
    if all(bits[c.line] != c.neg for c in gate.controls):
        out[gate.target] ^= 1
    return out


def _run_gates(bits: list[int], gates: tuple[Gate, ...]) -> list[int]:
    for g in gates:
        if all(bits[c.line] != c.neg for c in g.controls):
            bits[g.target] ^= 1
    return bits


def evaluate(circuit: Circuit, x: int) -> tuple[int, int]:
    """Load x on the input lines, zero elsewhere, run the gates.

    Returns (output register value, input register value after the run);
    the second component detects circuits that fail to restore their input.
    """
    if not 0 <= x < 1 << circuit.n_in:
        raise ValueError(f"x={x} does not fit in {circuit.n_in} input bits")
    bits = [0] * circuit.width
    for i, line in enumerate(circuit.input_lines):
        bits[line] = (x >> (circuit.n_in - 1 - i)) & 1
    bits = _run_gates(bits, circuit.gates)
    y = 0
    for line in circuit.output_lines:
        y = (y << 1) | bits[line]
    x_after = 0
    for line in circuit.input_lines:
        x_after = (x_after << 1) | bits[line]
    return y, x_after


def verify(circuit: Circuit, table: TruthTable) -> list[Mismatch]:
    """All inputs where the circuit disagrees with the table or clobbers x."""
    if circuit.n_in != table.n_in or circuit.n_out != table.n_out:
        raise ValueError(
            f"register shape {circuit.n_in}/{circuit.n_out} does not match "
            f"table {table.n_in}/{table.n_out}"
        )
    bad = []
    for x, want in enumerate(table.rows):
        y, x_after = evaluate(circuit, x)
        if y != want or x_after != x:
            bad.append(Mismatch(x, want, y, x_after))
    return bad


def cost(circuit: Circuit) -> CostReport:
    """Gate counts with quantum cost 6 per Toffoli, 1 per CNOT or NOT."""
    n_t = sum(1 for g in circuit.gates if g.kind is GateKind.TOFFOLI)
    n_c = sum(1 for g in circuit.gates if g.kind is GateKind.CNOT)
    n_n = sum(1 for g in circuit.gates if g.kind is GateKind.NOT)
    return CostReport(n_t, n_c, n_n, 6 * n_t + n_c + n_n)


def to_permutation(circuit: Circuit) -> np.ndarray:
    """Basis-state permutation of the whole line register.

    State index convention: line i holds bit (width - 1 - i), so the top
    line is the most significant bit.
    """
    w = circuit.width
    if w > 20:
        raise ValueError("width above 20 not supported")
    idx = np.arange(1 << w, dtype=np.int64)
    for g in circuit.gates:
        active = np.ones(1 << w, dtype=bool)
        for c in g.controls:
            bit = (idx >> (w - 1 - c.line)) & 1
            active &= (bit == 0) if c.neg else (bit == 1)
        idx = np.where(active, idx ^ (1 << (w - 1 - g.target)), idx)
    return idx


def circuit_to_json(circuit: Circuit) -> str:
    gates = [
        {
            "kind": g.kind.value,
            "controls": [{"line": c.line, "neg": c.neg} for c in g.controls],
            "target": g.target,
        }
        for g in circuit.gates
    ]
    return json.dumps(
        {
            "width": circuit.width,
            "input_lines": list(circuit.input_lines),
            "output_lines": list(circuit.output_lines),
            "gates": gates,
        }
    )


def circuit_from_json(text: str) -> Circuit:
    obj = json.loads(text)
    try:
        gates = tuple(
            Gate(
                GateKind(g["kind"]),
                tuple(Control(int(c["line"]), bool(c["neg"])) for c in g["controls"]),
                int(g["target"]),
            )
            for g in obj["gates"]
        )
        return Circuit(
            int(obj["width"]),
            tuple(int(i) for i in obj["input_lines"]),
            tuple(int(i) for i in obj["output_lines"]),
            gates,
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit document: {exc}") from exc


def render_gates(circuit: Circuit) -> str:
    """One line per gate, controls with +/- polarity, for text diffs."""
    out = []
    for g in circuit.gates:
        ctrl = ", ".join(f"{'-' if c.neg else '+'}{c.line}" for c in g.controls)
        if ctrl:
            out.append(f"{g.kind.value}({ctrl} -> {g.target})")
        else:
            out.append(f"{g.kind.value}(-> {g.target})")
    return "\n".join(out)


def compare_cost(
    circuit: Circuit, reference: Circuit, table: TruthTable | None = None
) -> int:
    """quantum_cost(circuit) - quantum_cost(reference).

    When a table is supplied both circuits must verify against it.
    """
    if table is not None:
        for name, c in (("circuit", circuit), ("reference", reference)):
            bad = verify(c, table)
            if bad:
                raise ValueError(f"{name} fails verification at x={bad[0].x}")
    return cost(circuit).quantum_cost - cost(reference).quantum_cost
