"""Brute-force reference solvers and the load-balanced baseline.

Everything here enumerates the full solution space and is meant for
verification at small sizes only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .exceptions import Infeasible, LimitExceeded
from .hepopta import ParetoFront, Solution
from .htpopta import TotalFront, TotalSolution
from .profile import ProfileSet

DEFAULT_LIMIT = 10**7


@dataclass(frozen=True)
class EnumeratedSolution:
    distribution: tuple[int, ...]
    energy: float
    time: float
    total_energy: float | None = None

    @property
    def active(self):
        return sum(1 for x in self.distribution if x)


def search_space_size(profiles: ProfileSet) -> int:
    return math.prod(len(prof) + 1 for prof in profiles)


def enumerate_all(profiles: ProfileSet, n: int, base_power: float | None = None,
                  limit: int = DEFAULT_LIMIT) -> Iterator[EnumeratedSolution]:
    """Yield every distribution of ``n`` exactly once, in lexicographic order."""
    size = search_space_size(profiles)
    if size > limit:
        raise LimitExceeded(f"search space {size} exceeds enumeration limit {limit}")
    p = profiles.p
    # options[i]: (size, time, energy) with the idle choice first
    options = [[(0, 0.0, 0.0)] + [(pt.size, pt.time, pt.energy) for pt in prof.points] for prof in profiles]
    most = [0] * (p + 1)
    for i in range(p - 1, -1, -1):
        most[i] = most[i + 1] + profiles[i].max_size
    chosen = [None] * p

    def walk(i, rest):
        if i == p:
            if rest == 0:
                yield _evaluate(chosen, base_power)
            return
        if rest > most[i]:
            return
        for opt in options[i]:
            if opt[0] > rest:
                break
            chosen[i] = opt
            yield from walk(i + 1, rest - opt[0])

    yield from walk(0, n)


def _evaluate(chosen, base_power):
    energy = 0.0
    time = 0.0
    for size, t, e in reversed(chosen):
        if size:
            energy = e + energy
            time = max(time, t)
    total = None if base_power is None else energy + base_power * time
    return EnumeratedSolution(tuple(c[0] for c in chosen), energy, time, total)


def _nondominated(records):
    """Sweep ``(objective, time, active, distribution)`` sorted ascending.

    A record is kept iff it is strictly faster than everything with a
    smaller or equal objective that sorts before it.
    """
    front = []
    fastest = math.inf
    for rec in sorted(records):
        if rec[1] < fastest:
            front.append(rec)
            fastest = rec[1]
    return front


def brute_pareto(profiles: ProfileSet, n: int, limit: int = DEFAULT_LIMIT) -> ParetoFront:
    recs = [(s.energy, s.time, s.active, s.distribution) for s in enumerate_all(profiles, n, limit=limit)]
    return ParetoFront(tuple(Solution(e, t, d) for e, t, _, d in _nondominated(recs)))


def brute_total_pareto(profiles: ProfileSet, n: int, base_power: float, limit: int = DEFAULT_LIMIT) -> TotalFront:
    recs = [(s.total_energy, s.time, s.active, s.distribution)
            for s in enumerate_all(profiles, n, base_power=base_power, limit=limit)]
    return TotalFront(tuple(TotalSolution(e, t, d) for e, t, _, d in _nondominated(recs)), base_power)


def brute_min_energy(profiles: ProfileSet, n: int, limit: int = DEFAULT_LIMIT) -> EnumeratedSolution:
    """Energy-optimal distribution (ties: faster, fewer active, lexicographic)."""
    best = min(enumerate_all(profiles, n, limit=limit),
               key=lambda s: (s.energy, s.time, s.active, s.distribution), default=None)
    if best is None:
        raise Infeasible(n)
    return best


def spread(profiles: ProfileSet, distribution) -> float:
    """Max minus min execution time over processors with a nonzero share."""
    times = [profiles[i].get(x).time for i, x in enumerate(distribution) if x]
    return max(times) - min(times) if times else 0.0


def load_balanced(profiles: ProfileSet, n: int, limit: int = DEFAULT_LIMIT) -> EnumeratedSolution:
    """Distribution whose active processors have the closest execution times.

    Idle processors do not count toward the spread. Ties are broken by
    smaller makespan, then smaller energy, then lexicographic order.
    """
    best = None
    best_key = None
    for sol in enumerate_all(profiles, n, limit=limit):
        key = (spread(profiles, sol.distribution), sol.time, sol.energy, sol.distribution)
        if best_key is None or key < best_key:
            best, best_key = sol, key
    if best is None:
        raise Infeasible(n)
    return best
