"""Granular-ball optimization: derivative-free global search by recursive
ball splitting, with a benchmark suite, baseline optimizers, and an
experiment harness."""

from .core import (
    BallValue,
    GranularBall,
    OutOfBoundsPolicy,
    SearchDomain,
    ball_value,
    boundary_points,
    improved_ball_value,
    initial_ball,
    primes_below,
    sub_balls,
)
from .evaluation import (
    EvaluationCache,
    EvaluationError,
    NoiseSource,
    evaluate_cached,
    evaluate_points,
)
from .benchmarks import (
    FUNCTION_IDS,
    ObjectiveFunction,
    custom_function,
    function_table,
    make_function,
    oracle_minimum,
)
from .optimizer import (
    GboConfig,
    Mode,
    OptimizerState,
    RunRecord,
    gbo_optimize,
    new_state,
    round_step,
)
from .baselines import (
    DeConfig,
    GaConfig,
    PsoConfig,
    SaConfig,
    de_optimize,
    ga_optimize,
    pso_optimize,
    sa_optimize,
)
from .harness import (
    ALGORITHMS,
    STABILITY_FUNCTIONS,
    ExperimentSpec,
    ResultTable,
    RunRow,
    emit,
    run_experiment,
    stability_report,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BallValue",
    "DeConfig",
    "EvaluationCache",
    "EvaluationError",
    "ExperimentSpec",
    "FUNCTION_IDS",
    "GaConfig",
    "GboConfig",
    "GranularBall",
    "Mode",
    "NoiseSource",
    "ObjectiveFunction",
    "OptimizerState",
    "OutOfBoundsPolicy",
    "PsoConfig",
    "ResultTable",
    "RunRecord",
    "RunRow",
    "STABILITY_FUNCTIONS",
    "SaConfig",
    "SearchDomain",
    "emit",
    "run_experiment",
    "stability_report",
    "ball_value",
    "boundary_points",
    "custom_function",
    "de_optimize",
    "evaluate_cached",
    "evaluate_points",
    "function_table",
    "ga_optimize",
    "gbo_optimize",
    "improved_ball_value",
    "initial_ball",
    "make_function",
    "new_state",
    "oracle_minimum",
    "primes_below",
    "pso_optimize",
    "round_step",
    "sa_optimize",
    "sub_balls",
    "__version__",
]
