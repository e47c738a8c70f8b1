"""Comparison formulas for solver output.

Percent improvements against a baseline distribution, the trade-off
available when one objective is relaxed by a band, the total-energy
penalty of optimizing dynamic energy alone, and a check of the additive
hypothesis for co-located applications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import GridMismatch
from .profile import DiscreteProfile


def perf_improvement(t_balance: float, t_opt: float) -> float:
    """``(t_balance - t_opt) / t_opt * 100``."""
    if t_opt <= 0:
        raise ValueError("t_opt must be positive")
    return (t_balance - t_opt) / t_opt * 100.0


def energy_saving(e_balance: float, e_opt: float) -> float:
    """``(e_balance - e_opt) / e_opt * 100``."""
    if e_opt <= 0:
        raise ValueError("e_opt must be positive")
    return (e_balance - e_opt) / e_opt * 100.0


@dataclass(frozen=True)
class TradeoffBandResult:
    band: float
    perf_gain_percent: float
    energy_saving_percent: float


def tradeoff_within_band(front, band: float) -> TradeoffBandResult:
    """What relaxing one objective by ``band`` buys on the other.

    Performance side: starting at the energy-optimal solution, the fastest
    solution whose energy is at most ``(1 + band)`` times the minimum.
    Energy side: starting at the time-optimal solution, the cheapest one
    whose time is at most ``(1 + band)`` times the minimum. Both bounds
    are inclusive.
    """
    if len(front) == 0:
        raise ValueError("front is empty")
    if band < 0:
        raise ValueError("band must be non-negative")
    energies = [s.energy for s in front]
    times = [s.time for s in front]
    e_min, t_min = min(energies), min(times)
    t_at_emin = min(t for e, t in zip(energies, times) if e == e_min)
    e_at_tmin = min(e for e, t in zip(energies, times) if t == t_min)
    t_band = min(t for e, t in zip(energies, times) if e <= (1 + band) * e_min)
    e_band = min(e for e, t in zip(energies, times) if t <= (1 + band) * t_min)
    perf = (t_at_emin - t_band) / t_band * 100.0 if t_band > 0 else 0.0
    saving = (e_at_tmin - e_band) / e_band * 100.0 if e_band > 0 else 0.0
    return TradeoffBandResult(band, perf, saving)


def total_energy_saving_over_dynamic_optimal(ep_front, tp_front, base_power: float) -> float:
    """Extra total energy spent by the dynamic-energy-optimal solution, in percent.

    ``te_eopt`` is the total energy of the front's minimum dynamic energy
    solution (the fastest one if several share that energy); ``te_opt`` is
    the minimum of ``tp_front``.
    """
    if len(ep_front) == 0 or len(tp_front) == 0:
        raise ValueError("both fronts must be non-empty")
    e_opt = min(ep_front, key=lambda s: (s.energy, s.time))
    te_eopt = e_opt.energy + base_power * e_opt.time
    te_opt = min(s.total_energy for s in tp_front)
    if te_opt <= 0:
        return 0.0
    return (te_eopt - te_opt) / te_opt * 100.0


@dataclass(frozen=True)
class AdditiveReport:
    sizes: tuple[int, ...]
    combined: tuple[float, ...]
    parallel: tuple[float, ...]
    percent_diff: tuple[float, ...]
    minimum: float
    maximum: float
    average: float


def additive_check(component_profiles: Sequence[DiscreteProfile], parallel_profile: DiscreteProfile) -> AdditiveReport:
    """Compare a co-located run's energy with the sum of its components.

    At each size ``x`` the combined energy is the sum of the components'
    energies at ``x``; the difference is ``|parallel - combined| / combined``
    in percent.
    """
    if not component_profiles:
        raise ValueError("need at least one component profile")
    grid = parallel_profile.sizes
    for prof in component_profiles:
        if prof.sizes != grid:
            raise GridMismatch(f"{prof.processor_id!r} is not on the grid of {parallel_profile.processor_id!r}")
    combined = np.sum([[pt.energy for pt in prof.points] for prof in component_profiles], axis=0)
    parallel = np.array([pt.energy for pt in parallel_profile.points])
    diff = np.abs(parallel - combined) / combined * 100.0
    return AdditiveReport(
        tuple(grid), tuple(combined.tolist()), tuple(parallel.tolist()), tuple(diff.tolist()),
        float(diff.min()), float(diff.max()), float(diff.mean()),
    )
