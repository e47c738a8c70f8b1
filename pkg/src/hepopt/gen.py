"""Synthetic profile generators and the linear-front check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DegenerateFront, ValidationError
from .profile import DiscreteProfile, ProfileSet

SHAPES = ("smooth", "jagged")


@dataclass(frozen=True)
class LinearSpec:
    """Per-processor slopes: ``time = a[i] * x`` and ``energy = b[i] * x``."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    grid: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise ValidationError("need one time slope and one energy slope per processor")
        if min(self.a) <= 0 or min(self.b) <= 0:
            raise ValidationError("slopes must be strictly positive")
        if not self.grid or any(g2 <= g1 for g1, g2 in zip(self.grid, self.grid[1:])) or self.grid[0] < 1:
            raise ValidationError("grid sizes must be positive and strictly increasing")


def gen_linear(spec: LinearSpec) -> ProfileSet:
    sizes = np.asarray(spec.grid, dtype=np.int64)
    return ProfileSet(tuple(
        DiscreteProfile.from_arrays(f"P{i}", sizes, a * sizes, b * sizes)
        for i, (a, b) in enumerate(zip(spec.a, spec.b))
    ))


def gen_synthetic(shape: str, p: int, m: int, seed: int, step: int = 1) -> ProfileSet:
    """Random profiles on the grid ``step, 2*step, ..., m*step``.

    Each processor gets a power-law base curve ``c * x**k`` for time and for
    energy, with exponents drawn around 1. ``smooth`` multiplies the curve by
    noise in [0.97, 1.03]; ``jagged`` by noise in [0.5, 1.5].
    """
    if shape not in SHAPES:
        raise ValueError(f"shape must be one of {SHAPES}, got {shape!r}")
    if p < 1 or m < 1:
        raise ValueError("p and m must be at least 1")
    rng = np.random.default_rng(seed)
    low, high = (0.97, 1.03) if shape == "smooth" else (0.5, 1.5)
    sizes = step * np.arange(1, m + 1)
    rel = sizes / sizes[-1]
    profiles = []
    for i in range(p):
        t_scale, e_scale = rng.uniform(1.0, 10.0, size=2)
        t_exp, e_exp = rng.uniform(0.8, 1.3, size=2)
        times = t_scale * rel**t_exp * rng.uniform(low, high, size=m)
        energies = e_scale * rel**e_exp * rng.uniform(low, high, size=m)
        profiles.append(DiscreteProfile.from_arrays(f"P{i}", sizes, times, energies))
    return ProfileSet(tuple(profiles))


@dataclass(frozen=True)
class CollinearityReport:
    slope: float
    intercept: float
    max_residual: float
    endpoints_match: bool

    def relative_residual(self, energy_range):
        return self.max_residual / energy_range if energy_range > 0 else 0.0


def verify_linear_front(front, time_opt, energy_opt) -> CollinearityReport:
    """Least-squares line through the front's (time, energy) points.

    ``energy_opt`` is ``(energy, distribution)`` of an energy-optimal
    solution. ``endpoints_match`` is true iff the fastest front solution is
    ``time_opt``'s distribution and the cheapest one is ``energy_opt``'s.
    """
    if len(front) < 2:
        raise DegenerateFront(f"front has {len(front)} point(s); a line needs two")
    times = np.array(front.times, dtype=float)
    energies = np.array(front.energies, dtype=float)
    slope, intercept = np.polyfit(times, energies, 1)
    residual = float(np.max(np.abs(energies - (slope * times + intercept))))
    cheapest, fastest = front[0], front[-1]
    match = fastest.distribution == tuple(time_opt.distribution) and cheapest.distribution == tuple(energy_opt[1])
    return CollinearityReport(float(slope), float(intercept), residual, match)


def balanced_linear_spec(split: Sequence[int], energy_slopes: Sequence[float], grid: Sequence[int],
                         scale: int = 1) -> LinearSpec:
    """Linear spec whose makespan-optimal split is exactly ``split``.

    Time slopes are the integers ``scale * lcm(split) / split[i]``, so
    ``a[i] * split[i]`` is one common value, exactly representable.
    """
    if min(split) < 1:
        raise ValidationError("every processor needs a positive share in the balanced split")
    common = int(np.lcm.reduce(np.asarray(split, dtype=np.int64)))
    a = tuple(float(scale * common // s) for s in split)
    return LinearSpec(a, tuple(float(b) for b in energy_slopes), tuple(int(g) for g in grid))
