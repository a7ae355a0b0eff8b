"""State-vector simulation of the order-finding pipeline.

Registers: m input qubits and k output qubits; basis index of |x>|y> is
x * 2**k + y. The QFT acts on the input register only. Probabilities,
reduced density matrices, depolarizing noise, the separability index, and
seeded sampling cover the whole validation loop, up to recovering
multiplicative orders from simulated measurements.

Sampling uses numpy's default PCG64 generator; all sampling entry points
take an explicit seed and are bit-reproducible.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, to_permutation
from .numtheory import continued_fraction_order, mod_pow

_MAX_QUBITS = 20


@dataclass(frozen=True)
class StateVector:
    m: int
    k: int
    amplitudes: np.ndarray  # complex128, length 2**(m+k)

    def __post_init__(self) -> None:
        if self.m < 0 or self.k < 0 or self.m + self.k > _MAX_QUBITS:
            raise ValueError(f"register sizes {self.m}+{self.k} out of range")
        if self.amplitudes.shape != (1 << (self.m + self.k),):
            raise ValueError("amplitude array length must be 2**(m+k)")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm} deviates from 1")

    def grid(self) -> np.ndarray:
        """Amplitudes reshaped to (input value, output value)."""
        return self.amplitudes.reshape(1 << self.m, 1 << self.k)


@dataclass(frozen=True)
class DensityMatrix:
    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError("entry matrix shape must be (dim, dim)")
        if not np.allclose(self.entries, self.entries.conj().T, atol=1e-12):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(self.entries).real - 1.0) > 1e-12:
            raise ValueError("density matrix trace must be 1")
        if np.min(np.linalg.eigvalsh(self.entries)) < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def to_json(self) -> str:
        rows = [[[z.real, z.imag] for z in row] for row in self.entries]
        return json.dumps({"dim": self.dim, "entries": rows})


@dataclass(frozen=True)
class ProbDist:
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = self.probabilities
        if p.ndim != 1:
            raise ValueError("probability array must be one dimensional")
        if np.min(p) < -1e-15 or np.max(p) > 1 + 1e-12:
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(float(np.sum(p)) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")

    def to_json(self) -> str:
        return json.dumps({"probabilities": [float(v) for v in self.probabilities]})

    def to_csv(self) -> str:
        lines = ["k,probability"]
        lines += [f"{i},{float(v):.12g}" for i, v in enumerate(self.probabilities)]
        return "\n".join(lines)


@dataclass(frozen=True)
class NoiseParams:
    """epsilon = 1 leaves the state untouched; 0 is maximally mixed."""

    epsilon: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")


def uniform_input_state(m: int, k: int) -> StateVector:
    """Every input value in equal superposition, output register at |0>."""
    amps = np.zeros(1 << (m + k), dtype=np.complex128)
    amps[np.arange(1 << m) << k] = 1.0 / math.sqrt(1 << m)
    return StateVector(m, k, amps)


def apply_period_map(state: StateVector, p: int) -> StateVector:
    """|j>|0>  ->  |j>|j mod p>."""
    if not 1 <= p <= 1 << state.m:
        raise ValueError(f"period {p} outside 1..2**m")
    if p - 1 >= 1 << state.k:
        raise ValueError(f"period {p} does not fit the {state.k}-bit output register")
    grid = state.grid()
    if state.k and np.max(np.abs(grid[:, 1:])) > 1e-12:
        raise ValueError("output register must start in |0>")
    xs = np.arange(1 << state.m)
    amps = np.zeros_like(state.amplitudes)
    amps[(xs << state.k) + (xs % p)] = grid[:, 0]
    return StateVector(state.m, state.k, amps)


def _to_circuit_index(state: StateVector, circuit: Circuit) -> np.ndarray:
    """Map each state index to the circuit's line-register basis index."""
    w = circuit.width
    n = 1 << (state.m + state.k)
    idx = np.arange(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for i, line in enumerate(circuit.input_lines):
        bit = (idx >> (state.k + state.m - 1 - i)) & 1
        out |= bit << (w - 1 - line)
    for i, line in enumerate(circuit.output_lines):
        bit = (idx >> (state.k - 1 - i)) & 1
        out |= bit << (w - 1 - line)
    return out


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Permute amplitudes by the circuit's basis-state action."""
    if circuit.width != state.m + state.k:
        raise ValueError(
            f"circuit width {circuit.width} does not match {state.m}+{state.k} qubits"
        )
    if circuit.n_in != state.m or circuit.n_out != state.k:
        raise ValueError("circuit register split does not match the state")
    perm = to_permutation(circuit)
    cidx = _to_circuit_index(state, circuit)
    # state index s maps to the state index whose circuit image is perm[cidx[s]]
    inv_c = np.zeros_like(cidx)
    inv_c[cidx] = np.arange(len(cidx))
    final = inv_c[perm[cidx]]
    amps = np.zeros_like(state.amplitudes)
    amps[final] = state.amplitudes
    return StateVector(state.m, state.k, amps)


def qft_input(state: StateVector, inverse: bool = False) -> StateVector:
    """QFT on the input register: |j> -> sum_k omega^(jk) |k> / sqrt(2**m).

    The forward direction uses omega = exp(+2 pi i / 2**m); pass inverse=True
    for the conjugate transform.
    """
    grid = state.grid()
    if inverse:
        out = np.fft.fft(grid, axis=0, norm="ortho")
    else:
        out = np.fft.ifft(grid, axis=0, norm="ortho")
    return StateVector(state.m, state.k, out.reshape(-1))


def reduce_to_input(state: StateVector) -> DensityMatrix:
    """Partial trace over the output register."""
    grid = state.grid()
    rho = grid @ grid.conj().T
    return DensityMatrix(1 << state.m, rho)


def input_probabilities(source: StateVector | DensityMatrix) -> ProbDist:
    """Measurement distribution of the input register."""
    if isinstance(source, StateVector):
        probs = np.sum(np.abs(source.grid()) ** 2, axis=1)
    else:
        probs = np.real(np.diag(source.entries)).copy()
    return ProbDist(np.clip(probs, 0.0, None))


def depolarize(dist: ProbDist, noise: NoiseParams) -> ProbDist:
    """Entrywise mix with the uniform distribution."""
    d = len(dist.probabilities)
    eps = noise.epsilon
    return ProbDist((1.0 - eps) / d + eps * dist.probabilities)


def separability_index(dist: ProbDist) -> float:
    """Sum of squared probabilities; 1 - S is a coarse entanglement proxy."""
    return float(np.sum(dist.probabilities**2))


def noisy_separability(s: float, noise: NoiseParams, m: int) -> float:
    """Closed form of separability_index(depolarize(dist)).

    Expanding sum((1-e)/d + e p_k)^2 with sum p_k = 1 and sum p_k^2 = S
    gives e^2 S + (1 - e^2) / d, d = 2**m. At e=0 this is 1/d, the fully
    mixed value.
    """
    d = 1 << m
    if not 1.0 / d - 1e-12 <= s <= 1.0 + 1e-12:
        raise ValueError(f"S={s} outside [1/2**m, 1]")
    eps = noise.epsilon
    return eps * eps * s + (1.0 - eps * eps) / d


def estimate_epsilon(s_theory: float, s_observed: float, m: int) -> float:
    """Invert noisy_separability for epsilon.

    A flat theoretical distribution carries no signal and is rejected.
    Observations outside [1/2**m, s_theory] are clamped, with a warning.
    """
    d = 1 << m
    floor = 1.0 / d
    if s_theory <= floor + 1e-12:
        raise ValueError("S_theory at the uniform floor gives no epsilon signal")
    ratio = (s_observed - floor) / (s_theory - floor)
    if ratio < 0.0 or ratio > 1.0:
        warnings.warn(
            f"observed S={s_observed} outside [{floor}, {s_theory}], clamping",
            stacklevel=2,
        )
        ratio = min(max(ratio, 0.0), 1.0)
    return math.sqrt(ratio)


def sample(dist: ProbDist, shots: int, seed: int) -> ProbDist:
    """Empirical distribution of a seeded multinomial draw."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, dist.probabilities)
    return ProbDist(counts / shots)


@dataclass(frozen=True)
class OrderFindingResult:
    samples: tuple[int, ...]
    recovered_order: int | None
    m: int  # input-register qubits; M = 2**m


def _register_sizes(n: int) -> tuple[int, int]:
    m = 1
    while (1 << m) < n * n:
        m += 1
    k = (n - 1).bit_length()
    return m, k


@lru_cache(maxsize=32)
def _order_finding_distribution(a: int, n: int) -> tuple[int, np.ndarray]:
    """Measurement distribution of the input register, cached per (a, n)."""
    m, k = _register_sizes(n)
    if m + k > _MAX_QUBITS:
        raise ValueError(f"registers {m}+{k} exceed the {_MAX_QUBITS}-qubit bound")
    state = uniform_input_state(m, k)
    grid = state.grid()
    xs = np.arange(1 << m)
    residues = np.array([mod_pow(a, int(x), n) for x in xs])
    amps = np.zeros_like(state.amplitudes)
    amps[(xs << k) + residues] = grid[:, 0]
    state = qft_input(StateVector(m, k, amps))
    probs = input_probabilities(state).probabilities
    probs.setflags(write=False)
    return m, probs


def _distinct_primes(x: int) -> list[int]:
    out = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out.append(x)
    return out


def _reduce_to_exact_order(a: int, n: int, multiple: int) -> int:
    """Shrink a verified multiple of the order to the order itself.

    One pass per distinct prime suffices: a prime's multiplicity can only
    drop during its own pass, and the pass only stops once it has reached
    the multiplicity the true order requires.
    """
    r = multiple
    for p in _distinct_primes(multiple):
        while r % p == 0 and mod_pow(a, r // p, n) == 1:
            r //= p
    return r


def order_finding_run(a: int, n: int, shots: int, seed: int) -> OrderFindingResult:
    """Simulated order finding: superpose, exponentiate, QFT, sample, recover.

    Each sampled k feeds the continued-fraction extractor; candidates are
    lcm-combined until a**L = 1 (mod n) verifies, then L is reduced to the
    exact order by dividing out primes while the congruence still holds.
    """
    if math.gcd(a, n) != 1:
        raise ValueError("a must be coprime to n")
    m, probs = _order_finding_distribution(a, n)
    rng = np.random.default_rng(seed)
    ks = rng.choice(1 << m, size=shots, p=probs)
    samples = tuple(int(k) for k in ks)
    big = 1
    recovered = None
    for k in samples:
        d = continued_fraction_order(k, 1 << m, n)
        if d is None:
            continue
        big = math.lcm(big, d)
        if big > n * n:
            big = d  # junk candidates blew the combination up; restart from d
        if mod_pow(a, big, n) == 1:
            recovered = _reduce_to_exact_order(a, n, big)
            break
    return OrderFindingResult(samples, recovered, m)
