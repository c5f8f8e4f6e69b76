"""Trajectory-correlation experiment over hill-climber runs.

For each run: climb with LS-HWF; at every accepted swap draw a sample of
S-boxes sharing the incumbent's CCV (weight-class shuffles), and record the
pair (mean CCV, mean metric).  The per-run Pearson coefficient of those pairs
measures how linearly the metric tracks CCV along the climb; the experiment
summarizes the coefficients over all runs.

Seed discipline: run r climbs with stream (master_seed, (r,)) and samples at
climb k with stream (master_seed, (r, k)), sample s drawing from child
(r, k, s), so results are independent of evaluation order.
"""

import math
from dataclasses import dataclass

from .metrics import ccv_key, mto_beta_zero, rto_beta_zero, transparency_order
from .rng import SEED_MIXER_ID, RngStream
from .sbox import SBox, hw_class_shuffle
from .search import ls_hwf

METRICS = ("to", "mto0", "rto0")


class DegenerateTrajectoryError(ValueError):
    """Trajectory has fewer than two points or a constant coordinate."""


class InsufficientDataError(ValueError):
    """Fewer than two values available for mean/deviation statistics."""


@dataclass(frozen=True)
class TrajectoryPoint:
    """Sample means at one climb: x = mean CCV, y = mean metric."""

    climb_index: int
    mean_ccv: float
    mean_metric: float
    metric: str
    sample_size: int


@dataclass(frozen=True)
class Trajectory:
    """Ordered climb points of one run; pearson_r is None when degenerate."""

    run_id: int
    metric: str
    points: tuple[TrajectoryPoint, ...]
    pearson_r: float | None


@dataclass(frozen=True)
class ExperimentSummary:
    """Per-run Pearson coefficients and their descriptive statistics.

    mean/std are None when fewer than two runs were non-degenerate.  The
    metadata dict records estimator and sampling conventions so result files
    are self-describing.
    """

    n: int
    metric: str
    runs: int
    sample_size: int
    master_seed: int
    trajectories: tuple[Trajectory, ...]
    pearson_by_run: tuple[tuple[int, float], ...]
    mean: float | None
    std: float | None
    degenerate_runs: tuple[int, ...]
    metadata: dict


def _mean(values: list[float]) -> float:
    # A constant sequence's mean is the common value, computed exactly.
    if all(v == values[0] for v in values[1:]):
        return values[0]
    return sum(values) / len(values)


def metric_value(sbox: SBox, metric: str) -> float:
    """Evaluate one of the correlated metrics: to, mto0 or rto0."""
    if metric == "to":
        return transparency_order(sbox)
    if metric == "mto0":
        return mto_beta_zero(sbox)
    if metric == "rto0":
        return rto_beta_zero(sbox)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def sample_equal_ccv(fstar: SBox, size: int, rng: RngStream) -> list[SBox]:
    """A sample of `size` S-boxes with exactly the CCV of `fstar`.

    Members are independent weight-class shuffles (sample s draws from
    rng.child(s)); duplicates are permitted.  A size-1 sample is `fstar`
    itself, matching the revised-transparency-order protocol.
    """
    if size < 1:
        raise ValueError(f"sample size must be >= 1, got {size}")
    if size == 1:
        return [fstar]
    return [hw_class_shuffle(fstar, rng.child(s)) for s in range(size)]


def trajectory_point(sample: list[SBox], metric: str, climb_index: int) -> TrajectoryPoint:
    """Means of CCV and of the selected metric over a sample.

    When every member shares one exact CCV key (the equal-CCV samples always
    do), the CCV mean is taken as that common value, bit-exactly.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    keys = [ccv_key(s) for s in sample]
    if all(k == keys[0] for k in keys[1:]):
        mean_ccv = keys[0].value
    else:
        mean_ccv = sum(k.value for k in keys) / len(keys)
    values = [metric_value(s, metric) for s in sample]
    return TrajectoryPoint(climb_index, mean_ccv, _mean(values), metric, len(sample))


def pearson(points: list[TrajectoryPoint]) -> float:
    """Pearson product-moment coefficient of (mean_ccv, mean_metric) pairs."""
    if len(points) < 2:
        raise DegenerateTrajectoryError(
            f"need at least two points, got {len(points)}"
        )
    xs = [p.mean_ccv for p in points]
    ys = [p.mean_metric for p in points]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateTrajectoryError("a coordinate is constant")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def summary_stats(values: list[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (divisor count - 1)."""
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise InsufficientDataError(f"need at least two values, got {len(vals)}")
    mean = sum(vals) / len(vals)
    var = sum((v - mean) ** 2 for v in vals) / (len(vals) - 1)
    return mean, math.sqrt(var)


def _run_trajectory(
    n: int, metric: str, sample_size: int, master_seed: int, run_id: int
) -> Trajectory:
    result = ls_hwf(n, RngStream(master_seed, (run_id,)))
    points = []
    for event in result.events:
        sample = sample_equal_ccv(
            event.sbox_after,
            sample_size,
            RngStream(master_seed, (run_id, event.climb_index)),
        )
        values = [metric_value(s, metric) for s in sample]
        # The sample is CCV-constant by construction, so the mean CCV is the
        # incumbent's value exactly.
        points.append(
            TrajectoryPoint(
                event.climb_index, event.ccv_after, _mean(values), metric, sample_size
            )
        )
    try:
        r = pearson(points)
    except DegenerateTrajectoryError:
        r = None
    return Trajectory(run_id, metric, tuple(points), r)


def run_experiment(
    n: int,
    metric: str,
    runs: int = 30,
    sample_size: int | None = None,
    master_seed: int = 0,
) -> ExperimentSummary:
    """Run the full trajectory-correlation experiment.

    Defaults mirror the reference protocol: 30 runs, 30-member samples for
    to/mto0 and a single-member sample (the incumbent itself) for rto0.
    Runs are indexed 0..runs-1; a fixed master seed reproduces the summary
    byte-for-byte.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if runs < 2:
        raise ValueError(f"at least two runs are required, got {runs}")
    if sample_size is None:
        sample_size = 1 if metric == "rto0" else 30
    if sample_size < 1:
        raise ValueError(f"sample size must be >= 1, got {sample_size}")

    trajectories = tuple(
        _run_trajectory(n, metric, sample_size, master_seed, run_id)
        for run_id in range(runs)
    )
    usable = [t for t in trajectories if t.pearson_r is not None]
    degenerate = tuple(t.run_id for t in trajectories if t.pearson_r is None)
    values = [t.pearson_r for t in usable]
    if len(values) >= 2:
        mean, std = summary_stats(values)
    else:
        mean = std = None
    return ExperimentSummary(
        n=n,
        metric=metric,
        runs=runs,
        sample_size=sample_size,
        master_seed=master_seed,
        trajectories=trajectories,
        pearson_by_run=tuple((t.run_id, t.pearson_r) for t in usable),
        mean=mean,
        std=std,
        degenerate_runs=degenerate,
        metadata={
            "seed_mixer": SEED_MIXER_ID,
            "std_estimator": "sample (divisor runs-1)",
            "equal_ccv_sampling": "independent per-class shuffles; duplicates permitted",
        },
    )
