"""Toolkit for compiled order-finding circuits on small semiprimes.

The package covers the classical side (orders, allowed periods, the
post-processing step that turns a period into factors), truth-table
construction and compression for modular exponentiation, a reversible
gate IR, a two-stage synthesizer, and a dense simulator for the
period-finding register pair.
"""

from .circuit import (
    Circuit,
    Control,
    CostReport,
    Gate,
    GateKind,
    Mismatch,
    circuit_from_json,
    circuit_to_json,
    cnot,
    compare_cost,
    cost,
    evaluate,
    not_gate,
    to_permutation,
    toffoli,
    verify,
)
from .library import (
    ERRATA,
    FIGURE_IDS,
    LIBRARY,
    PRINTED_F4_33_TABLE,
    LibraryEntry,
    find_entry,
    library_circuit,
    library_entry,
)
from .modexp import (
    CompiledFunction,
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
from .numtheory import (
    OrderRecord,
    PostProcessOutcome,
    PostProcessStatus,
    Semiprime,
    TrivialFactorError,
    allowed_periods,
    carmichael,
    continued_fraction_order,
    coprime_order_table,
    factor_semiprime,
    gcd,
    is_prime,
    is_prime_power,
    mod_pow,
    multiplicative_order,
    shor_postprocess,
)
from .qsim import (
    DensityMatrix,
    NoiseParams,
    OrderFindingResult,
    ProbDist,
    StateVector,
    apply_circuit,
    apply_period_map,
    depolarize,
    estimate_epsilon,
    input_probabilities,
    noisy_separability,
    order_finding_run,
    qft_input,
    reduce_to_input,
    sample,
    separability_index,
    uniform_input_state,
)
from .synth import (
    AffineForm,
    BitFit,
    CascadePlan,
    LinearFit,
    SynthesisBudget,
    SynthesisError,
    fit_linear,
    plan_cascades,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "BitFit",
    "CascadePlan",
    "Circuit",
    "CompileLevel",
    "CompiledFunction",
    "Control",
    "CostReport",
    "DensityMatrix",
    "ERRATA",
    "FIGURE_IDS",
    "GDescriptor",
    "GKind",
    "Gate",
    "GateKind",
    "LIBRARY",
    "LibraryEntry",
    "LinearFit",
    "Mismatch",
    "NoiseParams",
    "OrderFindingResult",
    "OrderRecord",
    "PRINTED_F4_33_TABLE",
    "PostProcessOutcome",
    "PostProcessStatus",
    "ProbDist",
    "Semiprime",
    "StateVector",
    "SynthesisBudget",
    "SynthesisError",
    "TrivialFactorError",
    "TruthTable",
    "allowed_periods",
    "apply_circuit",
    "apply_period_map",
    "build_modexp_table",
    "carmichael",
    "circuit_from_json",
    "circuit_to_json",
    "classical_compile",
    "cnot",
    "compare_cost",
    "continued_fraction_order",
    "coprime_order_table",
    "cost",
    "depolarize",
    "estimate_epsilon",
    "evaluate",
    "factor_semiprime",
    "find_entry",
    "fit_linear",
    "full_compile",
    "gcd",
    "input_probabilities",
    "is_prime",
    "is_prime_power",
    "library_circuit",
    "library_entry",
    "mod_pow",
    "multiplicative_order",
    "noisy_separability",
    "not_gate",
    "order_finding_run",
    "period_of",
    "plan_cascades",
    "qft_input",
    "reduce_to_input",
    "sample",
    "separability_index",
    "shor_postprocess",
    "synthesize",
    "to_permutation",
    "toffoli",
    "uncompiled",
    "uniform_input_state",
    "verify",
    "__version__",
]
