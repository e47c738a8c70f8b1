"""Exact bi-objective (execution time, dynamic energy) partitioner.

The solution space is a tree: level ``c`` fixes the share of processor
``c`` and the remaining workload labels the child node. The solver walks
it depth first with three devices:

* an energy threshold ``epsilon``, the dynamic energy of a makespan-optimal
  distribution; any point costlier than that is skipped, since a solution
  containing it is beaten by the makespan-optimal one;
* size thresholds ``sigma[c]``, the largest workload processors ``c..p-1``
  can absorb using only points within ``epsilon``; bigger nodes are cut;
* a memo of partial Pareto sets for levels ``1..p-2`` indexed by remaining
  workload, merged bottom-up and reused across the tree.

Tie-breaking. Among distributions with equal (energy, time) the one with
fewer active processors wins, then the lexicographically smallest share
vector. To make that choice exact, a memo cell may also keep an entry
whose energy equals a faster entry's energy but whose tie key is smaller:
such a partial solution can still produce the preferred distribution once
a slower share above it fixes the makespan. With generic real-valued
profiles these extra entries never appear and every cell is a strict
Pareto set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BrokenChain, Infeasible
from .profile import ENERGY, ProfileSet, lookup
from .timeopt import TimeOptResult, min_energy_among_time_optimal, solve_time_optimal


@dataclass(frozen=True)
class Thresholds:
    epsilon: float
    sigma: tuple[int, ...]


@dataclass
class ParetoEntry:
    energy: float
    time: float
    part: int
    active_count: int
    child_ref: int | None = None
    # position of this entry when its cell is ordered by tie key
    rank: int = field(default=0, compare=False)

    def as_tuple(self):
        return (self.energy, self.time, self.part, self.active_count, self.child_ref)


_FIELDS = ("energy", "time", "part", "active", "child", "rank")
_DTYPES = (float, float, np.int64, np.int64, np.int64, np.int64)


class ParetoCell:
    """Memoized partial Pareto set for one (level, remaining workload) node.

    Entries are held column-wise in numpy arrays ordered by increasing
    energy; ``child`` is an index into the next level's cell, -1 for none.
    ``entries`` materializes them as :class:`ParetoEntry` objects.
    """

    def __init__(self, entries=()):
        self.finalized = False
        self.no_solution = False
        self.set_entries(list(entries))

    def set_entries(self, entries):
        self._assign(
            [e.energy for e in entries], [e.time for e in entries], [e.part for e in entries],
            [e.active_count for e in entries], [-1 if e.child_ref is None else e.child_ref for e in entries],
            [e.rank for e in entries],
        )

    def _assign(self, *columns):
        if self.finalized:
            raise RuntimeError("finalized cells are immutable")
        for name, dtype, col in zip(_FIELDS, _DTYPES, columns):
            setattr(self, name, np.asarray(col, dtype=dtype))
        self._index()

    def _index(self):
        e, t = self.energy, self.time
        self.group_end = np.searchsorted(e, e, side="right")
        self.strict = bool(np.all(np.diff(t) < 0)) if len(t) > 1 else True
        self._neg_time = -t
        # one row per entry: energy, time, active, rank, index; for merging
        self.packed = np.column_stack((e, t, self.active, self.rank, np.arange(len(e)))).astype(float)

    @property
    def entries(self) -> list[ParetoEntry]:
        return [
            ParetoEntry(float(e), float(t), int(x), int(a), None if c < 0 else int(c), int(r))
            for e, t, x, a, c, r in zip(self.energy, self.time, self.part, self.active, self.child, self.rank)
        ]

    def __len__(self):
        return len(self.energy)

    @property
    def empty(self):
        return len(self.energy) == 0

    def min_energy(self):
        return float(self.energy[0])

    def scan_end(self, time_cap):
        """Number of leading entries worth combining with a share of time ``time_cap``.

        Scanning stops after the first entry no slower than ``time_cap``
        (and any entries sharing its energy).
        """
        if self.strict:
            k = int(self._neg_time.searchsorted(-time_cap, side="left"))
        else:
            hits = np.flatnonzero(self.time <= time_cap)
            k = int(hits[0]) if len(hits) else len(self.time)
        return int(self.group_end[k]) if k < len(self.time) else k

    def __repr__(self):
        flags = "finalized" if self.finalized else "open"
        if self.no_solution:
            flags += ", no solution"
        return f"ParetoCell({[e.as_tuple() for e in self.entries]}, {flags})"


class MemoStatus(enum.Enum):
    DUMMY = "dummy"
    NOT_SOLUTION = "not_solution"
    SOLUTION = "solution"


class Memo:
    """Partial Pareto sets for levels ``1..p-2`` and workloads ``0..n``.

    Cells are created on first access; an unvisited cell is empty.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self._rows = [[None] * (n + 1) for _ in range(max(p - 2, 0))]

    def cell(self, level: int, workload: int) -> ParetoCell:
        if not 1 <= level <= self.p - 2:
            raise IndexError(f"memo level {level} outside 1..{self.p - 2}")
        row = self._rows[level - 1]
        cell = row[workload]
        if cell is None:
            cell = row[workload] = ParetoCell()
        return cell

    def peek(self, level: int, workload: int) -> ParetoCell | None:
        return self._rows[level - 1][workload]

    def populated(self):
        for level, row in enumerate(self._rows, 1):
            for w, cell in enumerate(row):
                if cell is not None and not cell.empty:
                    yield level, w, cell


@dataclass(frozen=True)
class Solution:
    energy: float
    time: float
    distribution: tuple[int, ...]


@dataclass(frozen=True)
class ParetoFront:
    """Solutions ordered by increasing energy (hence decreasing time)."""

    solutions: tuple[Solution, ...]

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]

    @property
    def energies(self):
        return [s.energy for s in self.solutions]

    @property
    def times(self):
        return [s.time for s in self.solutions]

    @property
    def distributions(self):
        return [s.distribution for s in self.solutions]

    def points(self):
        return [(s.energy, s.time) for s in self.solutions]


# ------------------------------------------------------------ helpers


def compute_energy_threshold(profiles: ProfileSet, time_opt) -> float:
    """Dynamic energy of a distribution, summed from the last processor."""
    eps = 0.0
    for prof, x in zip(reversed(profiles.profiles), reversed(tuple(time_opt))):
        e = lookup(prof, x, ENERGY)
        if e is None:
            raise ValueError(f"size {x} is not tabulated for {prof.processor_id!r}")
        eps = e + eps
    return eps


def compute_size_thresholds(profiles: ProfileSet, epsilon: float) -> tuple[int, ...]:
    sigma = [0] * profiles.p
    running = 0
    for i in range(profiles.p - 1, -1, -1):
        running += max((pt.size for pt in profiles[i].points if pt.energy <= epsilon), default=0)
        sigma[i] = running
    return tuple(sigma)


def cut(remaining: int, sigma_level: int) -> bool:
    return remaining > sigma_level


def read_pareto_mem(cell: ParetoCell | None, epsilon: float) -> MemoStatus:
    if cell is None or (cell.empty and not cell.no_solution):
        return MemoStatus.DUMMY
    if cell.no_solution or cell.min_energy() > epsilon:
        return MemoStatus.NOT_SOLUTION
    return MemoStatus.SOLUTION


def make_pareto_final(cell: ParetoCell) -> ParetoCell:
    if cell.empty:
        cell.no_solution = True
    cell.finalized = True
    return cell


def _filter_candidates(energy, time, active, part, rank, child, strict):
    """Reduce merged candidates to the entries a cell must keep.

    Sorted by (energy, time, tie key), an entry survives iff it is faster
    than every strictly cheaper candidate and its tie key beats every
    earlier surviving candidate of the same energy. ``strict`` keeps only
    the first survivor per energy (a plain Pareto set, used at the root).
    Returns the surviving positions in sorted order.
    """
    order = np.lexsort((rank, part, active, time, energy))
    e, t = energy[order], time[order]
    size = len(e)
    first = np.ones(size, dtype=bool)
    first[1:] = e[1:] != e[:-1]
    starts = np.flatnonzero(first)
    running = np.minimum.accumulate(t)
    before = np.full(len(starts), np.inf)
    before[1:] = running[starts[1:] - 1]
    ok = t < before[np.cumsum(first) - 1]
    keep = first & ok
    if not strict and len(starts) < size:
        a, x, r = active[order], part[order], rank[order]
        ends = np.append(starts[1:], size)
        for lo, hi in zip(starts[ends - starts > 1], ends[ends - starts > 1]):
            best = None
            for j in range(lo, hi):
                if not ok[j]:
                    break
                key = (a[j], x[j], r[j])
                if best is None or key < best:
                    keep[j] = True
                    best = key
    return order[keep]


def merge_partial_paretoes(level, remaining, parts, memo, profiles, cell=None):
    """Merge the partial sets reached through each share in ``parts``.

    For share ``x`` of processor ``level`` the children are the entries of
    the memo cell ``(level + 1, remaining - x)``, or the single point of the
    last processor when ``level == p - 2``. Scanning a child's entries stops
    once one is no slower than ``x`` itself: every later entry would only
    add energy at the same makespan.
    """
    p = profiles.p
    if cell is None:
        cell = memo.cell(level, remaining) if level > 0 else ParetoCell()
    if cell.finalized:
        raise RuntimeError(f"cell ({level}, {remaining}) is already finalized")
    parts = np.asarray(parts, dtype=np.int64)
    own_e, own_t = _dense(profiles[level])
    e_x, t_x = own_e[parts], own_t[parts]
    a_x = (parts > 0).astype(np.int64)
    if level == p - 2:
        rest = remaining - parts
        leaf_e, leaf_t = _dense(profiles[p - 1])
        energy = e_x + leaf_e[rest]
        time = np.maximum(t_x, leaf_t[rest])
        active = a_x + (rest > 0)
        part = parts
        rank = np.zeros(len(parts), dtype=np.int64)
        child = np.full(len(parts), -1, dtype=np.int64)
    else:
        blocks = []
        lengths = []
        for x, tx in zip(parts.tolist(), t_x.tolist()):
            sub = memo.peek(level + 1, remaining - x)
            k = sub.scan_end(tx)
            lengths.append(k)
            blocks.append(sub.packed[:k])
        merged = np.concatenate(blocks) if blocks else np.empty((0, 5))
        energy_c, time_c = merged[:, 0], merged[:, 1]
        active_c, rank, child = (merged[:, j].astype(np.int64) for j in (2, 3, 4))
        lengths = np.asarray(lengths, dtype=np.int64)
        energy = np.repeat(e_x, lengths) + energy_c
        time = np.maximum(np.repeat(t_x, lengths), time_c)
        active = np.repeat(a_x, lengths) + active_c
        part = np.repeat(parts, lengths)
    keep = _filter_candidates(energy, time, active, part, rank, child, strict=(level == 0))
    energy, time, active, part, rank, child = (c[keep] for c in (energy, time, active, part, rank, child))
    new_rank = np.empty(len(keep), dtype=np.int64)
    new_rank[np.lexsort((rank, part, active))] = np.arange(len(keep))
    cell._assign(energy, time, part, active, child, new_rank)
    return cell


_DENSE_CACHE: dict = {}


def _dense(profile):
    """Arrays indexed by size: energy and time, 0 at size 0, NaN if untabulated."""
    key = id(profile)
    hit = _DENSE_CACHE.get(key)
    if hit is not None and hit[0] is profile:
        return hit[1], hit[2]
    top = profile.max_size
    energy = np.full(top + 1, np.nan)
    time = np.full(top + 1, np.nan)
    energy[0] = time[0] = 0.0
    for pt in profile.points:
        energy[pt.size] = pt.energy
        time[pt.size] = pt.time
    if len(_DENSE_CACHE) > 256:
        _DENSE_CACHE.clear()
    _DENSE_CACHE[key] = (profile, energy, time)
    return energy, time


class HepoptSolver:
    """One run of the bi-objective solver on a fixed instance.

    After :meth:`solve` the attributes ``time_opt``, ``thresholds``,
    ``memo`` and ``root`` expose the intermediate state.
    """

    def __init__(self, profiles: ProfileSet, n: int, epsilon: float | None = None):
        if n < 0:
            raise ValueError(f"workload must be non-negative, got {n}")
        self.profiles = profiles
        self.n = n
        self._epsilon_override = epsilon
        self.time_opt: TimeOptResult | None = None
        self.thresholds: Thresholds | None = None
        self.memo: Memo | None = None
        self.root: ParetoCell | None = None
        self.front: ParetoFront | None = None

    def solve(self) -> ParetoFront:
        profiles, n, p = self.profiles, self.n, self.profiles.p
        self.time_opt = solve_time_optimal(profiles, n)
        cheapest = min_energy_among_time_optimal(profiles, n, self.time_opt.makespan)
        epsilon = compute_energy_threshold(profiles, cheapest)
        if self._epsilon_override is not None:
            if not self._epsilon_override >= epsilon:
                raise ValueError(f"epsilon {self._epsilon_override} is below the optimal threshold {epsilon}")
            epsilon = float(self._epsilon_override)
        self.thresholds = Thresholds(epsilon, compute_size_thresholds(profiles, epsilon))
        self.memo = Memo(p, n)
        self._prepare()
        if p == 1:
            e, t = lookup(profiles[0], n, ENERGY), lookup(profiles[0], n)
            self.root = ParetoCell([ParetoEntry(e, t, n, int(n > 0))])
            make_pareto_final(self.root)
        else:
            self.root = ParetoCell()
            self.kernel(n, 0)
        self.front = build_pareto_sols(self.memo, self.root, n, p)
        return self.front

    def kernel(self, remaining: int, level: int) -> bool:
        """Explore the node ``remaining`` at ``level``; True if it has solutions."""
        thr, memo = self.thresholds, self.memo
        p = self.profiles.p
        eps = thr.epsilon
        if cut(remaining, thr.sigma[level]):
            return False
        if level == p - 1:
            e = lookup(self.profiles[level], remaining, ENERGY)
            return e is not None and e <= eps
        if level == 0:
            cell = self.root
        else:
            cell = memo.cell(level, remaining)
            status = read_pareto_mem(cell, eps)
            if status is MemoStatus.NOT_SOLUTION:
                return False
            if status is MemoStatus.SOLUTION:
                return True
        # idle first, then tabulated sizes by increasing energy, all within eps
        shares = self._shares[level]
        shares = shares[shares <= remaining]
        if level == p - 2:
            parts = shares[self._leaf_ok[remaining - shares]]
        else:
            parts = [x for x in shares.tolist() if self.kernel(remaining - x, level + 1)]
        merge_partial_paretoes(level, remaining, parts, memo, self.profiles, cell)
        make_pareto_final(cell)
        return len(parts) > 0

    def _prepare(self):
        """Per-level share candidates and the last processor's feasibility table."""
        eps = self.thresholds.epsilon
        self._shares = []
        for prof in self.profiles:
            sizes = [prof.points[j].size for j in prof.by_energy if prof.points[j].energy <= eps]
            self._shares.append(np.array([0] + sizes, dtype=np.int64))
        last = self.profiles[-1]
        ok = np.zeros(self.n + 1, dtype=bool)
        ok[0] = True
        for pt in last.points:
            if pt.size <= self.n and pt.energy <= eps:
                ok[pt.size] = True
        self._leaf_ok = ok


def build_pareto_sols(memo: Memo, root_cell: ParetoCell, n: int, p: int | None = None) -> ParetoFront:
    """Follow child references from the root to full distributions."""
    p = memo.p if p is None else p
    sols = []
    for tup in root_cell.entries:
        shares = [tup.part]
        used = tup.part
        ref = tup.child_ref
        for level in range(1, p - 1):
            cell = memo.peek(level, n - used)
            if cell is None or ref is None or not 0 <= ref < len(cell):
                raise BrokenChain(f"dangling reference {ref!r} into cell ({level}, {n - used})")
            part = int(cell.part[ref])
            shares.append(part)
            used += part
            ref = None if cell.child[ref] < 0 else int(cell.child[ref])
        if p > 1:
            shares.append(n - used)
        sols.append(Solution(tup.energy, tup.time, tuple(shares)))
    return ParetoFront(tuple(sols))


def solve_hepopt(profiles: ProfileSet, n: int, epsilon: float | None = None) -> ParetoFront:
    """Globally Pareto-optimal (dynamic energy, time) distributions of ``n``.

    ``epsilon`` replaces the computed energy threshold; it must not be
    smaller than it. Raises ``Infeasible`` when ``n`` cannot be formed.
    """
    return HepoptSolver(profiles, n, epsilon).solve()


__all__ = [
    "HepoptSolver",
    "Infeasible",
    "Memo",
    "MemoStatus",
    "ParetoCell",
    "ParetoEntry",
    "ParetoFront",
    "Solution",
    "Thresholds",
    "build_pareto_sols",
    "compute_energy_threshold",
    "compute_size_thresholds",
    "cut",
    "make_pareto_final",
    "merge_partial_paretoes",
    "read_pareto_mem",
    "solve_hepopt",
]
