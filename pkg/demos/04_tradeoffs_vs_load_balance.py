"""
How much does a balanced distribution leave on the table?
==========================================================

The usual baseline gives every active processor roughly the same running
time. We compare it with the ends of the Pareto front, and then ask what a
5% (or larger) slack in one objective buys in the other.
"""

from hepopt.gen import gen_synthetic
from hepopt.hepopta import solve_hepopt
from hepopt.metrics import energy_saving, perf_improvement, tradeoff_within_band
from hepopt.oracle import load_balanced

profiles = gen_synthetic("jagged", 3, 10, seed=21)
n = 18
front = solve_hepopt(profiles, n)
base = load_balanced(profiles, n)

print(f"load-balanced shares {base.distribution}: time {base.time:.3f} s, energy {base.energy:.3f} J")
print(f"front: {len(front)} distributions, time {min(front.times):.3f}..{max(front.times):.3f} s")
print(f"fastest front point is {perf_improvement(base.time, min(front.times)):.1f}% faster than the baseline")
print(f"cheapest front point saves {energy_saving(base.energy, min(front.energies)):.1f}% energy")

for band in (0.05, 0.10, 0.25, 0.50):
    res = tradeoff_within_band(front, band)
    print(f"slack {band:4.0%}: {res.perf_gain_percent:6.2f}% faster for the same energy budget, "
          f"{res.energy_saving_percent:6.2f}% cheaper for the same deadline")
