"""Equivalence-preserving quantum circuit unoptimization toolkit."""

from .basis import to_u3cx_basis
from .bench import BenchRecord, compute_metrics, merge_harness_results, run_benchmark
from .circuit import CX_MATRIX, Circuit, Gate, depth, embed, full_unitary, random_circuit
from .errors import (
    DecompositionError,
    DimensionError,
    PairSelectionError,
    QasmError,
    RecipeError,
    ResourceError,
    UnoptError,
    ValidationError,
)
from .kak import KakResult, kak_decompose, u3_matrix, u3_params, weyl_coordinates
from .linalg import equal_up_to_global_phase, haar_random_unitary
from .qasm import export_qasm, import_qasm
from .recipe import (
    ErStep,
    Pair,
    PairSelection,
    Recipe,
    apply_recipe,
    build_a_tilde,
    elementary_recipe_step,
    find_pairs,
    invert_recipe,
    select_pair,
    unoptimize,
    verify_recipe_witness,
)
from .shannon import ThreeQubitDecomposition, cosine_sine_decompose, decompose_three_qubit
from .simulate import (
    EquivalenceVerdict,
    Verdict,
    decide_equivalence,
    fidelity_exact,
    fidelity_sampled,
    simulate,
)
from .synthesis import greedy_synthesize, merged_depth3

__all__ = [
    "BenchRecord",
    "CX_MATRIX",
    "Circuit",
    "DecompositionError",
    "DimensionError",
    "EquivalenceVerdict",
    "ErStep",
    "Gate",
    "KakResult",
    "Pair",
    "PairSelection",
    "PairSelectionError",
    "QasmError",
    "Recipe",
    "RecipeError",
    "ResourceError",
    "ThreeQubitDecomposition",
    "UnoptError",
    "ValidationError",
    "Verdict",
    "apply_recipe",
    "build_a_tilde",
    "compute_metrics",
    "cosine_sine_decompose",
    "decide_equivalence",
    "decompose_three_qubit",
    "depth",
    "elementary_recipe_step",
    "embed",
    "equal_up_to_global_phase",
    "export_qasm",
    "fidelity_exact",
    "fidelity_sampled",
    "find_pairs",
    "full_unitary",
    "greedy_synthesize",
    "haar_random_unitary",
    "import_qasm",
    "invert_recipe",
    "kak_decompose",
    "merge_harness_results",
    "merged_depth3",
    "random_circuit",
    "run_benchmark",
    "select_pair",
    "simulate",
    "to_u3cx_basis",
    "u3_matrix",
    "u3_params",
    "unoptimize",
    "verify_recipe_witness",
    "weyl_coordinates",
]

__version__ = "0.1.0"
