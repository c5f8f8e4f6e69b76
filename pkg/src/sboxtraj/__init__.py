"""S-box side-channel resistance metrics, hill-climbing search, and
trajectory-correlation experiments under the Hamming-weight leakage model."""

from .metrics import (
    CcvKey,
    CrossCorrelationTable,
    KappaProfile,
    ccv,
    ccv_incremental,
    ccv_key,
    cross_correlation,
    cross_correlation_fast,
    cross_correlation_naive,
    kappa_profile,
    mto,
    mto_beta,
    mto_beta_zero,
    rto,
    rto_beta,
    rto_beta_zero,
    transparency_order,
)
from .rng import RngStream, derive_seed
from .sbox import (
    HwClasses,
    IndexOutOfRangeError,
    MalformedTokenError,
    SBox,
    SBoxError,
    ValueOutOfRangeError,
    WrongLengthError,
    constant_sbox,
    hamming_weight,
    hw_class_shuffle,
    hw_classes,
    identity_sbox,
    parse_sbox,
    random_bijective_sbox,
    serialize_sbox,
    swap_outputs,
)
from .search import ClimbEvent, SearchResult, ls_hwf
from .trajectory import (
    METRICS,
    DegenerateTrajectoryError,
    ExperimentSummary,
    InsufficientDataError,
    Trajectory,
    TrajectoryPoint,
    metric_value,
    pearson,
    run_experiment,
    sample_equal_ccv,
    summary_stats,
    trajectory_point,
)

__version__ = "0.1.0"

__all__ = [
    "CcvKey",
    "ClimbEvent",
    "CrossCorrelationTable",
    "DegenerateTrajectoryError",
    "ExperimentSummary",
    "HwClasses",
    "IndexOutOfRangeError",
    "InsufficientDataError",
    "KappaProfile",
    "METRICS",
    "MalformedTokenError",
    "RngStream",
    "SBox",
    "SBoxError",
    "SearchResult",
    "Trajectory",
    "TrajectoryPoint",
    "ValueOutOfRangeError",
    "WrongLengthError",
    "ccv",
    "ccv_incremental",
    "ccv_key",
    "constant_sbox",
    "cross_correlation",
    "cross_correlation_fast",
    "cross_correlation_naive",
    "derive_seed",
    "hamming_weight",
    "hw_class_shuffle",
    "hw_classes",
    "identity_sbox",
    "kappa_profile",
    "ls_hwf",
    "metric_value",
    "mto",
    "mto_beta",
    "mto_beta_zero",
    "parse_sbox",
    "pearson",
    "random_bijective_sbox",
    "rto",
    "rto_beta",
    "rto_beta_zero",
    "run_experiment",
    "sample_equal_ccv",
    "serialize_sbox",
    "summary_stats",
    "swap_outputs",
    "trajectory_point",
    "transparency_order",
]
