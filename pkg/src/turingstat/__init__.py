"""Exact statistics for imitation-game (Turing test) experiments."""

from ._kernels import BACKEND
from ._numbers import Interval
from .criteria import (
    THREE_PLAYER_OPTIMUM,
    TURING_HUMANNESS_THRESHOLD,
    HumannessScore,
    RequiredHumanRate,
    UndefinedRatioError,
    absolute_pass,
    humanness,
    humanness_bounds,
    required_human_rate,
)
from .exact import (
    BinomialObservation,
    CompatibleSet,
    Crossing,
    RateEstimate,
    SignificanceResult,
    binomial_pmf,
    compatible_set,
    estimate_rates,
    exact_significance,
    misid_bounds_from_correct,
    pmf_table,
    rejection_region,
    tail_masses,
)
from .model import (
    BernoulliModel,
    GameFormat,
    JointOutcome,
    OutcomeEvent,
    RespondentKind,
    Verdict,
    event_probability,
    is_equal_recognition_point,
    joint_probability,
    make_three_player_model,
    make_two_player_model,
)
from .report import PipelineError, TestVerdict, emit_curve, emit_report, verdict
from .simulate import PowerRow, SimulationConfig, power_sweep, simulate
from .trials import (
    ExperimentDataset,
    Response,
    TrialRecord,
    TrialValidationError,
    classify_format,
    dump_trials,
    dumps_trials,
    parse_trials,
)

__version__ = "0.1.0"
