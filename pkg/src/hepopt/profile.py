"""Discrete time/energy profiles of heterogeneous processors.

A profile is a table ``size -> (time, dynamic energy)`` for one processor.
Solvers only ever assign a processor one of its tabulated sizes or nothing
at all, so there is no interpolation anywhere in this package.

Two on-disk formats are supported:

* delimited table (``.csv``) with header ``processor,size,time,energy``;
  an optional ``# base_power=<watts>`` comment line may precede the header;
* structured text (``.json``)::

      {"base_power": 0.0,
       "profiles": [{"processor": "P0",
                     "points": [{"size": 1, "time": 5.0, "energy": 3.0}]}]}
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import ParseError, ValidationError

TIME = "time"
ENERGY = "energy"
CHANNELS = (TIME, ENERGY)

HEADER = ("processor", "size", "time", "energy")


@dataclass(frozen=True)
class ProfilePoint:
    size: int
    time: float
    energy: float

    def __post_init__(self):
        if isinstance(self.size, bool) or int(self.size) != self.size:
            raise ValidationError(f"size must be an integer, got {self.size!r}")
        if self.size < 1:
            raise ValidationError(f"size must be >= 1, got {self.size}")
        for name in CHANNELS:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"{name} must be positive and finite, got {value!r} at size {self.size}")


@dataclass(frozen=True)
class DiscreteProfile:
    """One processor's profile with views sorted by size, energy and time.

    ``by_energy`` and ``by_time`` are permutations of point indices, ordered
    by (value, size) so that ties are resolved deterministically.
    """

    processor_id: str
    points: tuple[ProfilePoint, ...]
    by_energy: tuple[int, ...] = field(init=False, repr=False)
    by_time: tuple[int, ...] = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = tuple(sorted(self.points, key=lambda pt: pt.size))
        if not points:
            raise ValidationError(f"profile {self.processor_id!r} has no points")
        index = {}
        for pt in points:
            if pt.size in index:
                raise ValidationError(f"profile {self.processor_id!r} has duplicate size {pt.size}")
            index[pt.size] = pt
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_index", index)
        order = range(len(points))
        object.__setattr__(self, "by_energy", tuple(sorted(order, key=lambda j: (points[j].energy, points[j].size))))
        object.__setattr__(self, "by_time", tuple(sorted(order, key=lambda j: (points[j].time, points[j].size))))

    @classmethod
    def from_arrays(cls, processor_id, sizes, times, energies):
        pts = [ProfilePoint(int(s), float(t), float(e)) for s, t, e in zip(sizes, times, energies)]
        return cls(str(processor_id), tuple(pts))

    def __len__(self):
        return len(self.points)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(pt.size for pt in self.points)

    @property
    def max_size(self) -> int:
        return self.points[-1].size

    def get(self, size):
        return self._index.get(size)

    def lookup(self, size, channel=TIME):
        return lookup(self, size, channel)

    def scaled(self, time_factor=1.0, energy_factor=1.0) -> "DiscreteProfile":
        pts = tuple(ProfilePoint(pt.size, pt.time * time_factor, pt.energy * energy_factor) for pt in self.points)
        return DiscreteProfile(self.processor_id, pts)


def lookup(profile: DiscreteProfile, size: int, channel: str = TIME):
    """Time or energy of ``size`` on ``profile``.

    Returns ``0.0`` for ``size == 0`` and ``None`` if the size is not
    tabulated.
    """
    if channel not in CHANNELS:
        raise ValueError(f"unknown channel {channel!r}")
    if size < 0:
        raise ValueError(f"size must be non-negative, got {size}")
    if size == 0:
        return 0.0
    pt = profile._index.get(size)
    if pt is None:
        return None
    return pt.time if channel == TIME else pt.energy


@dataclass(frozen=True)
class ProfileSet:
    profiles: tuple[DiscreteProfile, ...]
    base_power: float | None = None

    def __post_init__(self):
        profiles = tuple(self.profiles)
        if not profiles:
            raise ValidationError("a profile set needs at least one processor")
        ids = [prof.processor_id for prof in profiles]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"duplicate processor identifiers in {ids}")
        if self.base_power is not None:
            if not (math.isfinite(self.base_power) and self.base_power >= 0):
                raise ValidationError(f"base power must be non-negative, got {self.base_power!r}")
        object.__setattr__(self, "profiles", profiles)

    @property
    def p(self) -> int:
        return len(self.profiles)

    @property
    def m(self) -> int:
        """Maximum cardinality over all profiles."""
        return max(len(prof) for prof in self.profiles)

    @property
    def processor_ids(self) -> tuple[str, ...]:
        return tuple(prof.processor_id for prof in self.profiles)

    @property
    def max_total(self) -> int:
        return sum(prof.max_size for prof in self.profiles)

    def __len__(self):
        return len(self.profiles)

    def __iter__(self):
        return iter(self.profiles)

    def __getitem__(self, i):
        return self.profiles[i]

    def scaled(self, time_factor=1.0, energy_factor=1.0) -> "ProfileSet":
        return ProfileSet(tuple(prof.scaled(time_factor, energy_factor) for prof in self.profiles), self.base_power)

    def with_base_power(self, base_power) -> "ProfileSet":
        return ProfileSet(self.profiles, base_power)


def evaluate(profiles: ProfileSet, shares: Sequence[int]) -> tuple[float, float]:
    """Return ``(dynamic energy, makespan)`` of a distribution.

    Energies are accumulated from the last processor backwards. Every solver
    and the brute-force oracle use this order, so equal distributions give
    bit-identical sums regardless of which code path produced them.
    Raises ``ValidationError`` if a nonzero share is not tabulated.
    """
    if len(shares) != profiles.p:
        raise ValidationError(f"distribution has {len(shares)} shares for {profiles.p} processors")
    energy = 0.0
    time = 0.0
    for prof, x in zip(reversed(profiles.profiles), reversed(shares)):
        if x == 0:
            continue
        pt = prof.get(x)
        if pt is None:
            raise ValidationError(f"size {x} is not tabulated for processor {prof.processor_id!r}")
        energy = pt.energy + energy
        if pt.time > time:
            time = pt.time
    return energy, time


def active_count(shares: Iterable[int]) -> int:
    return sum(1 for x in shares if x)


# ---------------------------------------------------------------- file I/O


def _build(rows, base_power):
    grouped: dict[str, list[ProfilePoint]] = {}
    seen = set()
    for proc, size, time, energy in rows:
        key = (proc, size)
        if key in seen:
            raise ValidationError(f"duplicate row for processor {proc!r}, size {size}")
        seen.add(key)
        grouped.setdefault(proc, []).append(ProfilePoint(size, time, energy))
    if not grouped:
        raise ValidationError("profile file contains no data rows")
    return ProfileSet(tuple(DiscreteProfile(proc, tuple(pts)) for proc, pts in grouped.items()), base_power)


def _parse_number(text, kind, lineno):
    try:
        if kind is int:
            value = float(text)
            if not value.is_integer():
                raise ValueError
            return int(value)
        return float(text)
    except ValueError:
        raise ParseError(f"line {lineno}: cannot parse {text!r} as {kind.__name__}") from None


def parse_table(text: str) -> ProfileSet:
    base_power = None
    body = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith("#"):
            key, _, value = stripped[1:].partition("=")
            if key.strip() == "base_power":
                base_power = _parse_number(value.strip(), float, lineno)
            continue
        if stripped:
            body.append((lineno, line))
    if not body:
        raise ValidationError("profile file is empty")
    reader = csv.reader([line for _, line in body])
    header = tuple(col.strip() for col in next(reader))
    if header != HEADER:
        raise ParseError(f"expected header {','.join(HEADER)!r}, got {','.join(header)!r}")
    rows = []
    for (lineno, _), rec in zip(body[1:], reader):
        if len(rec) != 4:
            raise ParseError(f"line {lineno}: expected 4 fields, got {len(rec)}")
        proc = rec[0].strip()
        if not proc:
            raise ParseError(f"line {lineno}: empty processor identifier")
        rows.append((
            proc,
            _parse_number(rec[1].strip(), int, lineno),
            _parse_number(rec[2].strip(), float, lineno),
            _parse_number(rec[3].strip(), float, lineno),
        ))
    return _build(rows, base_power)


def parse_json(text: str) -> ProfileSet:
    if not text.strip():
        raise ValidationError("profile file is empty")
    try:
        doc = json.loads(text)
        rows = [
            (str(prof["processor"]), pt["size"], float(pt["time"]), float(pt["energy"]))
            for prof in doc["profiles"]
            for pt in prof["points"]
        ]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed structured profile: {exc}") from None
    for row in rows:
        if isinstance(row[1], bool) or not isinstance(row[1], (int, float)) or int(row[1]) != row[1]:
            raise ParseError(f"size {row[1]!r} is not an integer")
    rows = [(proc, int(size), t, e) for proc, size, t, e in rows]
    base_power = doc.get("base_power")
    return _build(rows, None if base_power is None else float(base_power))


def _format_for(path, fmt):
    if fmt is not None:
        return fmt
    return "structured-text" if str(path).endswith(".json") else "delimited-table"


def load_profiles(path, format: str | None = None) -> ProfileSet:
    """Read a profile file (format inferred from the extension by default)."""
    fmt = _format_for(path, format)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "delimited-table":
        return parse_table(text)
    if fmt == "structured-text":
        return parse_json(text)
    raise ValueError(f"unknown profile format {fmt!r}")


def format_table(profiles: ProfileSet) -> str:
    buf = io.StringIO()
    if profiles.base_power is not None:
        buf.write(f"# base_power={profiles.base_power!r}\n")
    buf.write(",".join(HEADER) + "\n")
    for prof in profiles:
        for pt in prof.points:
            buf.write(f"{prof.processor_id},{pt.size},{pt.time!r},{pt.energy!r}\n")
    return buf.getvalue()


def format_json(profiles: ProfileSet) -> str:
    doc = {
        "base_power": profiles.base_power,
        "profiles": [
            {
                "processor": prof.processor_id,
                "points": [{"size": pt.size, "time": pt.time, "energy": pt.energy} for pt in prof.points],
            }
            for prof in profiles
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def save_profiles(profiles: ProfileSet, path, format: str | None = None):
    fmt = _format_for(path, format)
    text = format_json(profiles) if fmt == "structured-text" else format_table(profiles)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def worked_example_path() -> str:
    return os.path.join(os.path.dirname(__file__), "data", "worked_example.csv")


def worked_example() -> ProfileSet:
    """The four-processor worked example (p = 4, m = 4, solved for n = 4)."""
    return load_profiles(worked_example_path())
