"""Exact makespan-optimal workload distribution.

The optimal makespan is always one of the tabulated execution times (or 0
when ``n == 0``), so we binary-search the sorted distinct times. A
candidate makespan ``T`` is feasible iff ``n`` is a reachable sum when each
processor may take 0 or any size whose time is at most ``T``. Reachable
sums are kept as Python integers used as bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import Infeasible
from .profile import ProfileSet, evaluate


@dataclass(frozen=True)
class TimeOptResult:
    distribution: tuple[int, ...]
    makespan: float


def _allowed_sizes(profiles, cap):
    return [[pt.size for pt in prof.points if pt.time <= cap] for prof in profiles]


def _suffix_reach(allowed, n):
    """``reach[i]`` has bit ``w`` set iff processors ``i..p-1`` can sum to ``w``."""
    mask = (1 << (n + 1)) - 1
    reach = [0] * (len(allowed) + 1)
    reach[-1] = 1
    for i in range(len(allowed) - 1, -1, -1):
        prev = reach[i + 1]
        acc = prev
        for s in allowed[i]:
            if s > n:
                break
            acc |= prev << s
        reach[i] = acc & mask
    return reach


def _feasible(profiles, n, cap):
    return bool(_suffix_reach(_allowed_sizes(profiles, cap), n)[0] >> n & 1)


def reachable_sums(profiles: ProfileSet, n: int) -> list[bool]:
    """Which workloads ``0..n`` can be formed from tabulated sizes at all."""
    bits = _suffix_reach([list(prof.sizes) for prof in profiles], n)[0]
    return [bool(bits >> w & 1) for w in range(n + 1)]


def count_distributions(profiles: ProfileSet, n: int) -> int:
    """Number of share vectors summing to ``n`` (counting DP)."""
    counts = [0] * (n + 1)
    counts[0] = 1
    for prof in profiles:
        nxt = counts[:]
        for s in prof.sizes:
            for w in range(s, n + 1):
                nxt[w] += counts[w - s]
        counts = nxt
    return counts[n]


def solve_time_optimal(profiles: ProfileSet, n: int) -> TimeOptResult:
    """Minimum-makespan distribution of ``n`` work units.

    Among distributions with the optimal makespan the one with the least
    dynamic energy is returned, then the lexicographically smallest.
    Raises ``Infeasible`` if no distribution sums to ``n``.
    """
    if n < 0:
        raise ValueError(f"workload must be non-negative, got {n}")
    p = profiles.p
    if n == 0:
        return TimeOptResult((0,) * p, 0.0)
    candidates = sorted({pt.time for prof in profiles for pt in prof.points})
    if not _feasible(profiles, n, candidates[-1]):
        raise Infeasible(n)
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(profiles, n, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    cap = candidates[lo]
    shares = min_energy_among_time_optimal(profiles, n, cap)
    return TimeOptResult(shares, evaluate(profiles, shares)[1])


def min_energy_among_time_optimal(profiles: ProfileSet, n: int, makespan: float) -> tuple[int, ...]:
    """Energy-minimal distribution among those with makespan ``<= makespan``.

    Called with the optimal makespan this picks the cheapest time-optimal
    distribution. The table ``best[i][w]`` holds the minimum energy of
    processors ``i..p-1`` on ``w`` units, built from the last processor
    backwards so that sums match :func:`hepopt.profile.evaluate` exactly;
    ties go to the lexicographically smallest share vector.
    """
    p = profiles.p
    if n == 0:
        return (0,) * p
    inf = np.inf
    best = np.full((p + 1, n + 1), inf)
    best[p, 0] = 0.0
    options = []
    for i in range(p - 1, -1, -1):
        opts = [(0, 0.0)] + [(pt.size, pt.energy) for pt in profiles[i].points if pt.time <= makespan and pt.size <= n]
        options.append(opts)
        row = best[i + 1].copy()
        for s, e in opts[1:]:
            np.minimum(row[s:], e + best[i + 1][: n + 1 - s], out=row[s:])
        best[i] = row
    options.reverse()
    if not np.isfinite(best[0, n]):
        raise Infeasible(n, f"no distribution of {n} with makespan <= {makespan}")
    shares = []
    rest = n
    for i in range(p):
        target = best[i, rest]
        for x, e in options[i]:
            if x <= rest and e + best[i + 1, rest - x] == target:
                shares.append(x)
                rest -= x
                break
    return tuple(shares)
