"""Selective recourse disclosure as a game: who gets an action, who imitates.

A system holding a fixed linear decision rule computes a cheapest accepted
feature change for every rejected agent, then decides which of those actions
to release publicly. Released actions and already-accepted rows each become
visible with a fixed probability; rejected agents then take their own action,
imitate something visible, or stay put, according to weighted l2 costs with
an optional recourse subsidy. The package provides the population/model/cost
primitives, the best-response layer, release-set optimizers with exact
companions, population metrics with confidence intervals, executable checks
for the monotonicity/diminishing-returns/hardness claims, and a seeded
experiment harness writing deterministic CSVs.
"""

from .costs import (
    CostModel,
    manipulation_cost,
    manipulation_cost_matrix,
    random_cost_weights,
    recourse_cost,
    recourse_cost_matrix,
)
from .errors import (
    ConfigError,
    DegenerateTrainingError,
    DimensionMismatchError,
    EmptyInputError,
    InfeasibleRecourseError,
    ParseError,
    SchemaError,
    UndefinedRateError,
    UnsupportedModeError,
)
from .harness import (
    ExperimentConfig,
    GameOutcome,
    SynthSpec,
    derive_seed,
    parse_config,
    run_experiment,
    simulate_point,
    splitmix64,
    synth_population,
)
from .metrics import (
    METRIC_COLUMNS,
    MetricsReport,
    RUN_COLUMNS,
    aggregate,
    disparity,
    realized_utility,
    social_cost,
    social_cost_at,
    social_cost_components,
)
from .model import (
    LinearClassifier,
    TrainConfig,
    load_classifier,
    majority_rate,
    predict,
    qualification,
    save_classifier,
    train_linear,
    training_accuracy,
)
from .optimizer import (
    GameInstance,
    brute_force_min_k_union,
    brute_force_select,
    build_geometric_instance,
    count_realized_actions,
    dump_instance,
    enumeration_utility,
    exact_ilp_p1,
    expected_manipulation_prob,
    expected_manipulators,
    expected_utility,
    greedy_select,
    load_instance,
    local_search_select,
    manipulation_sets,
    min_manipulation_select,
    mku_to_instance,
    monte_carlo_utility,
    random_k_select,
    realized_actions,
    recourse_count_p1,
    total_manipulation_exposure,
)
from .population import (
    Agent,
    ColumnSchema,
    Population,
    load_population,
    partition,
    standardize_columns,
)
from .response import (
    Action,
    ActionKind,
    DO_NOTHING_CUTOFF,
    ProvisionFlags,
    final_action,
    manipulation_rate,
    open_choice_masks,
    open_min_costs,
    optimal_manipulation,
    optimal_recourse,
    optimal_recourse_cost,
    rates_via_threshold_form,
    recourse_rate,
)
from .reveal import RevealState, draw_reveal
from .theory import (
    SweepConfig,
    SweepResult,
    TheoremCheck,
    check_thm_signs,
    format_report,
    last_local_max,
    run_theorem_suite,
    sample_submodularity,
    sweep_subsidy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
