"""Social-choice rank aggregation for multi-task leaderboards."""

from .cw import (
    DominanceMatrix,
    FeasibilityResult,
    build_dominance_matrix,
    find_cw_weights,
    is_prospective,
)
from .errors import (
    EmptySubset,
    InfeasibleBounds,
    MismatchedSystems,
    MissingGroups,
    MissingScore,
    NonPositiveScore,
    ParseError,
    RuleUnsupportedForMode,
    ScoreOutOfRange,
    TooFewSystems,
    TooManyOmissions,
    UnknownSystem,
    VectorLengthMismatch,
    VoteboardError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    iia_experiment,
    robustness_experiment,
    trial_rng,
)
from .iterative import (
    EliminationRound,
    EliminationTrace,
    baldwin_rule,
    black_rule,
    coombs_rule,
    hare_rule,
    nanson_rule,
    threshold_rule,
)
from .majority import (
    CounterSets,
    MajorityGraph,
    build_majority_graph,
    condorcet_winner,
    copeland,
    counter_sets,
    fishburn_set,
    minimal_dominant_set,
    minimal_undominated_set,
    minimal_weakly_stable_set,
    minimax,
    richelson_set,
    uncovered_set,
)
from .metrics import (
    agreement_rate,
    discriminative_power,
    end_set,
    gmean_agg,
    kendall_tau,
    mean_agg,
    optimality_gap,
    rho_from_rank_vectors,
    spearman_rho,
)
from .model import (
    Leaderboard,
    RankProfile,
    RuleOutcome,
    as_fraction,
    build_profile,
    fractional_ranks_of,
    group_by_score,
    position_counts,
)
from .modes import (
    BASIC,
    GroupWeighting,
    MODES,
    TWO_STEP,
    WEIGHTED,
    base_weights,
    group_weighting,
    run_rule,
)
from .registry import RULES, aggregate, get_rule, rule_ids
from .scoring import ScoringVector, apply_scoring_rule, score_with_vector

__version__ = "0.1.0"

__all__ = [
    "BASIC",
    "CounterSets",
    "DominanceMatrix",
    "EliminationRound",
    "EliminationTrace",
    "EmptySubset",
    "ExperimentConfig",
    "ExperimentReport",
    "FeasibilityResult",
    "GroupWeighting",
    "InfeasibleBounds",
    "Leaderboard",
    "MODES",
    "MajorityGraph",
    "MismatchedSystems",
    "MissingGroups",
    "MissingScore",
    "NonPositiveScore",
    "ParseError",
    "RULES",
    "RankProfile",
    "RuleOutcome",
    "RuleUnsupportedForMode",
    "ScoreOutOfRange",
    "ScoringVector",
    "TWO_STEP",
    "TooFewSystems",
    "TooManyOmissions",
    "UnknownSystem",
    "VectorLengthMismatch",
    "VoteboardError",
    "WEIGHTED",
    "aggregate",
    "agreement_rate",
    "apply_scoring_rule",
    "as_fraction",
    "baldwin_rule",
    "base_weights",
    "black_rule",
    "build_dominance_matrix",
    "build_majority_graph",
    "build_profile",
    "condorcet_winner",
    "coombs_rule",
    "copeland",
    "counter_sets",
    "discriminative_power",
    "end_set",
    "find_cw_weights",
    "fishburn_set",
    "fractional_ranks_of",
    "get_rule",
    "gmean_agg",
    "group_by_score",
    "group_weighting",
    "hare_rule",
    "iia_experiment",
    "is_prospective",
    "kendall_tau",
    "mean_agg",
    "minimal_dominant_set",
    "minimal_undominated_set",
    "minimal_weakly_stable_set",
    "minimax",
    "nanson_rule",
    "optimality_gap",
    "position_counts",
    "rho_from_rank_vectors",
    "richelson_set",
    "robustness_experiment",
    "rule_ids",
    "run_rule",
    "spearman_rho",
    "threshold_rule",
    "trial_rng",
    "uncovered_set",
]
