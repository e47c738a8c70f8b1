"""
From dynamic to total energy
============================

Total energy adds base power times makespan to the dynamic energy. As the
base power grows, slow but frugal distributions stop paying off and the
total-energy front shrinks towards the fastest distribution. Every
distribution that survives is already on the dynamic-energy front.
"""

import numpy as np

from hepopt.gen import gen_synthetic
from hepopt.hepopta import solve_hepopt
from hepopt.htpopta import solve_htpopt
from hepopt.metrics import total_energy_saving_over_dynamic_optimal

profiles = gen_synthetic("jagged", 4, 12, seed=8)
n = 20
dynamic = solve_hepopt(profiles, n)
print(f"dynamic-energy front: {len(dynamic)} distributions")

for base_power in np.geomspace(0.01, 100, 9):
    total = solve_htpopt(profiles, n, base_power)
    inside = set(total.distributions) <= set(dynamic.distributions)
    penalty = total_energy_saving_over_dynamic_optimal(dynamic, total, base_power)
    print(f"base power {base_power:8.3f} W: {len(total):2d} distributions, subset of dynamic front: {inside}, "
          f"minimising dynamic energy alone costs {penalty:6.2f}% more total energy")
