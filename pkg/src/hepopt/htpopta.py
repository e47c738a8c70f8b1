"""Pareto front for (execution time, total energy).

Total energy is dynamic energy plus base power times makespan. Every
distribution on the total-energy front is already on the dynamic-energy
front, so the dynamic front is mapped to totals and filtered again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hepopta import ParetoFront, solve_hepopt
from .profile import ProfileSet, active_count


def total_energy(dynamic: float, time: float, base_power: float) -> float:
    return dynamic + base_power * time


@dataclass(frozen=True)
class TotalSolution:
    total_energy: float
    time: float
    distribution: tuple[int, ...]

    @property
    def energy(self):
        return self.total_energy


@dataclass(frozen=True)
class TotalFront:
    """Solutions ordered by increasing total energy (hence decreasing time)."""

    solutions: tuple[TotalSolution, ...]
    base_power: float = 0.0

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]

    @property
    def energies(self):
        return [s.total_energy for s in self.solutions]

    @property
    def times(self):
        return [s.time for s in self.solutions]

    @property
    def distributions(self):
        return [s.distribution for s in self.solutions]

    def points(self):
        return [(s.total_energy, s.time) for s in self.solutions]


def pareto_filter(items):
    """Keep the non-dominated ``(objective, time, distribution)`` triples.

    Equal objective: the faster one wins; equal objective and time: fewer
    active processors, then the lexicographically smaller distribution.
    """
    ordered = sorted(items, key=lambda it: (it[0], it[1], active_count(it[2]), it[2]))
    kept = []
    best_time = math.inf
    for obj, time, dist in ordered:
        if time < best_time:
            kept.append((obj, time, dist))
            best_time = time
    return kept


def to_total_front(front: ParetoFront, base_power: float) -> TotalFront:
    if base_power < 0:
        raise ValueError(f"base power must be non-negative, got {base_power}")
    mapped = [(total_energy(s.energy, s.time, base_power), s.time, s.distribution) for s in front]
    return TotalFront(tuple(TotalSolution(*it) for it in pareto_filter(mapped)), base_power)


def solve_htpopt(profiles: ProfileSet, n: int, base_power: float | None = None) -> TotalFront:
    """Globally Pareto-optimal (total energy, time) distributions of ``n``.

    ``base_power`` defaults to the profile set's own base power.
    """
    if base_power is None:
        base_power = profiles.base_power
    if base_power is None:
        raise ValueError("total-energy optimisation needs a base power")
    return to_total_front(solve_hepopt(profiles, n), base_power)
