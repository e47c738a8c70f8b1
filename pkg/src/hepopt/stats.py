"""Repeat a measurement until its sample mean is statistically reliable.

A sampler is any callable returning one observation per call as a
sequence of channel readings (for example per-device times plus an
energy reading). Observations are collected until every channel's
Student-t confidence half-width is a small enough fraction of its mean,
or a repetition or elapsed-time budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats as _st

from .exceptions import ZeroMean

CONVERGED = "converged"
MAX_REPS = "max_reps"
MAX_ELAPSED = "max_elapsed"


@dataclass(frozen=True)
class TtestConfig:
    """Budgets and targets for :func:`mean_with_ttest`.

    ``time_channels`` selects the channels whose running sums count as
    elapsed time; ``None`` means all of them.
    """

    min_reps: int = 5
    max_reps: int = 1000
    max_elapsed: float = 3600.0
    confidence: float = 0.95
    precision: float = 0.1
    time_channels: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.min_reps < 1 or self.max_reps < self.min_reps:
            raise ValueError("need 1 <= min_reps <= max_reps")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie in (0, 1)")
        if self.precision <= 0:
            raise ValueError("precision must be positive")
        if self.max_elapsed <= 0:
            raise ValueError("max_elapsed must be positive")


@dataclass(frozen=True)
class TtestOutcome:
    reps_used: int
    elapsed: float
    means: tuple[float, ...]
    stop_reason: str


def t_quantile(confidence: float, dof: int) -> float:
    """Lower-tail inverse CDF of Student's t at ``confidence``."""
    return float(_st.t.ppf(confidence, dof))


def cal_accuracy(confidence: float, reps: int, samples: Sequence[float], precision: float) -> bool:
    """True iff the confidence half-width relative to the mean is below ``precision``."""
    if reps < 2:
        raise ValueError("need at least two samples")
    data = np.asarray(samples[:reps], dtype=float)
    if len(data) != reps:
        raise ValueError(f"expected {reps} samples, got {len(data)}")
    total = float(data.sum())
    if total == 0.0:
        raise ZeroMean("sample mean is zero")
    half_width = abs(t_quantile(confidence, reps - 1)) * float(data.std(ddof=1)) / math.sqrt(reps)
    return half_width * reps / abs(total) < precision


def mean_with_ttest(sampler: Callable[[], Sequence[float]], config: TtestConfig) -> TtestOutcome:
    """Call ``sampler`` until the means converge or a budget is exhausted.

    Accuracy is tested once more than ``min_reps`` observations exist, so a
    noiseless sampler stops after ``min_reps + 1`` calls. The elapsed-time
    budget is checked at the same points, against the largest running sum
    over the time channels.
    """
    columns: list[list[float]] | None = None
    reason = MAX_REPS
    reps = 0
    while reps < config.max_reps:
        obs = [float(v) for v in sampler()]
        if columns is None:
            if not obs:
                raise ValueError("sampler returned an empty observation")
            columns = [[] for _ in obs]
        elif len(obs) != len(columns):
            raise ValueError(f"sampler changed channel count from {len(columns)} to {len(obs)}")
        for col, v in zip(columns, obs):
            col.append(v)
        reps += 1
        if reps > config.min_reps:
            if all(cal_accuracy(config.confidence, reps, col, config.precision) for col in columns):
                reason = CONVERGED
                break
            if _elapsed(columns, config) > config.max_elapsed:
                reason = MAX_ELAPSED
                break
    if columns is None:
        return TtestOutcome(0, 0.0, (), reason)
    means = tuple(math.fsum(col) / reps for col in columns)
    return TtestOutcome(reps, _elapsed(columns, config), means, reason)


def _elapsed(columns, config):
    picked = range(len(columns)) if config.time_channels is None else config.time_channels
    return max(math.fsum(columns[i]) for i in picked)


# ---------------------------------------------------------------- samplers


def gaussian_sampler(mean=100.0, sd=5.0, seed=None, channels=1):
    rng = np.random.default_rng(seed)
    return lambda: rng.normal(mean, sd, size=channels).tolist()


def constant_sampler(value=100.0, channels=1):
    return lambda: [value] * channels


def bimodal_sampler(low=50.0, high=150.0, sd=5.0, seed=None, channels=1):
    """Equal mixture of two normals centred at ``low`` and ``high``."""
    rng = np.random.default_rng(seed)

    def draw():
        centres = np.where(rng.random(channels) < 0.5, low, high)
        return rng.normal(centres, sd).tolist()

    return draw


PRESETS = {
    "gaussian": lambda seed: gaussian_sampler(seed=seed),
    "constant": lambda seed: constant_sampler(),
    "bimodal": lambda seed: bimodal_sampler(seed=seed),
}


def make_sampler(preset: str, seed=None):
    try:
        return PRESETS[preset](seed)
    except KeyError:
        raise ValueError(f"unknown sampler preset {preset!r}; choose from {sorted(PRESETS)}") from None
