"""Reading and writing front tables.

A front table is comma separated with header ``energy,time,x_0,...`` (or
``total_energy,time,x_0,...`` for the total-energy objective). Reals are
written with 17 significant digits so they round-trip exactly.
"""

from __future__ import annotations

import csv
import io

from .exceptions import ParseError
from .hepopta import ParetoFront, Solution
from .htpopta import TotalFront, TotalSolution


def _g(x):
    return "%.17g" % x


def format_front(front) -> str:
    total = isinstance(front, TotalFront)
    p = len(front[0].distribution) if len(front) else 0
    buf = io.StringIO()
    buf.write(",".join(["total_energy" if total else "energy", "time"] + [f"x_{i}" for i in range(p)]) + "\n")
    for sol in front:
        energy = sol.total_energy if total else sol.energy
        buf.write(",".join([_g(energy), _g(sol.time)] + [str(x) for x in sol.distribution]) + "\n")
    return buf.getvalue()


def parse_front(text: str, base_power: float = 0.0):
    """Inverse of :func:`format_front`; returns a ParetoFront or TotalFront."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows:
        raise ParseError("front table is empty")
    header = [h.strip() for h in rows[0]]
    if header[:2] not in (["energy", "time"], ["total_energy", "time"]):
        raise ParseError(f"unexpected front header {header!r}")
    total = header[0] == "total_energy"
    sols = []
    for lineno, row in enumerate(rows[1:], 2):
        if len(row) != len(header):
            raise ParseError(f"row {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            energy, time = float(row[0]), float(row[1])
            dist = tuple(int(x) for x in row[2:])
        except ValueError as exc:
            raise ParseError(f"row {lineno}: {exc}") from None
        sols.append(TotalSolution(energy, time, dist) if total else Solution(energy, time, dist))
    return TotalFront(tuple(sols), base_power) if total else ParetoFront(tuple(sols))


def save_front(front, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_front(front))


def load_front(path, base_power: float = 0.0):
    with open(path, encoding="utf-8") as fh:
        return parse_front(fh.read(), base_power)
