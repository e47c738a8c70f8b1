"""
Linear profiles give a straight front
======================================

When time and energy both grow linearly with the share, every
Pareto-optimal distribution lies on one line between the fastest and the
cheapest distribution. Here the time slopes are picked so the balanced
split (70, 130) is on the size grid.
"""

import numpy as np

from hepopt.gen import balanced_linear_spec, gen_linear, verify_linear_front
from hepopt.hepopta import solve_hepopt
from hepopt.oracle import brute_min_energy
from hepopt.timeopt import solve_time_optimal

spec = balanced_linear_spec((70, 130), energy_slopes=(2.0, 5.0), grid=range(1, 201))
print("time slopes:", spec.a, "energy slopes:", spec.b)
profiles = gen_linear(spec)
front = solve_hepopt(profiles, 200)
cheapest = brute_min_energy(profiles, 200, limit=10**6)
report = verify_linear_front(front, solve_time_optimal(profiles, 200), (cheapest.energy, cheapest.distribution))

print(f"{len(front)} Pareto-optimal distributions")
print(f"fitted line: energy = {report.slope:.4f} * time + {report.intercept:.4f}")
print(f"largest residual {report.max_residual:.2e} J over an energy range of "
      f"{np.ptp(front.energies):g} J; endpoints match: {report.endpoints_match}")

# A coarser grid can only remove distributions from the front
for step in (1, 2, 5, 10):
    coarse = gen_linear(balanced_linear_spec((70, 130), (2.0, 5.0), range(step, 201, step)))
    print(f"grid step {step:2d}: front size {len(solve_hepopt(coarse, 200))}")
