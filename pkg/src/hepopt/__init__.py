"""Exact Pareto-optimal workload distribution on heterogeneous processors."""

from .exceptions import (
    BrokenChain,
    DegenerateFront,
    GridMismatch,
    Infeasible,
    LimitExceeded,
    ParseError,
    ValidationError,
    ZeroMean,
)
from .hepopta import ParetoFront, Solution, solve_hepopt
from .htpopta import TotalFront, solve_htpopt, total_energy
from .profile import DiscreteProfile, ProfilePoint, ProfileSet, load_profiles, lookup, save_profiles, worked_example
from .timeopt import TimeOptResult, min_energy_among_time_optimal, solve_time_optimal

__version__ = "0.1.0"
