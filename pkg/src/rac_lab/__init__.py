"""rac-lab: n->1 random access codes assisted by finite shared randomness.

The package reproduces the classical bounds for codes assisted by two shared
bits (by exhaustive strategy search with an exact linear program over the
bit distribution), and the quantum advantages of two shared qubits (by exact
Bloch-representation evaluation), including the separable-state optima, the
separable-versus-Werner crossover and the discord comparison tables.
"""

from .errors import DegenerateStateError, InvalidStateError, NullEventError, RacError
from .qstate import (
    BellDiagonalSpec,
    TwoQubitState,
    alice_outcome_prob,
    geometric_discord_bell_diagonal,
    is_separable,
    is_valid_state,
    measure_prob,
    post_measurement_bob,
    reconstruct_density_matrix,
    state_from_json_dict,
    state_to_json_dict,
    werner,
)
from .quantum_rac import (
    EvaluationResult,
    QuantumRacProtocol,
    canonical_protocol,
    concatenated_pmin_formula,
    concatenated_pmin_recursive,
    evaluate,
    pmin_formula,
    prepare_and_measure_pmin,
    protocol_from_json_dict,
    protocol_to_json_dict,
)
from .classical_rac import (
    ClassicalStrategy,
    ConcatenatedStrategy,
    SearchReport,
    SharedDistribution,
    biased_optimal_distribution,
    biased_optimal_strategy,
    concatenated_classical_search,
    evaluate_concatenated,
    evaluate_strategy,
    exhaustive_search,
    guess_point,
    has_duplicate_encoding,
    optimal_distribution,
    pruned_search,
    strategy_from_json_dict,
    strategy_to_json_dict,
)
from .optimize import (
    ComparisonRow,
    StateFamilyConstraint,
    best_separable_bell_diagonal,
    crossover_analysis,
    discord_efficiency_table,
    separable_beats_werner,
    werner_assisted_pmin,
)
from .reproduce import ReproductionReport, reproduce_paper

__version__ = "0.1.0"
