"""Exact mean-payoff game values on primitive graphs and sofic-shift covering radii."""

from .covering import (
    CoveringProblem,
    brute_covering_radius_n,
    build_hamming_game,
    code_words,
    covering_radius,
    hamming_distance,
)
from .engine import (
    AllInfiniteError,
    DaggerFamily,
    GameInstance,
    LimitExceededError,
    MissingPayoffError,
    NotPrimitiveError,
    SolveLimits,
    SolveReport,
    brute_value_n,
    edge_matrix,
    initial_family,
    iter_families,
    solve,
    step_family,
    validate,
    value_n,
    vn_table,
    walk_matrix,
)
from .graphs import (
    Digraph,
    EnumerationGuardError,
    LabeledDigraph,
    Walk,
    WalkError,
    concat,
    enumerate_walks,
    is_irreducible,
    is_primitive,
    period,
    primitivity_index,
)
from .strategies import (
    AcyclicError,
    EmptyAutomatonError,
    InfeasibleResponseError,
    MeanMismatchError,
    PeriodicPair,
    ProfileAutomaton,
    best_responses,
    build_dagger_automaton,
    languages_agree,
    min_cycle_mean,
    non_improvable_walks,
    periodic_optimal_pair,
    response_product,
)
from .tropical import MatrixSet, TropMatrix

__version__ = "0.1.0"
