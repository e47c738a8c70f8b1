"""
The four-processor worked example, step by step
================================================

Four processors, four tabulated sizes each, and a workload of 4 units.
We follow the solver through its intermediate state: the fastest
distribution, the energy and size thresholds derived from it, two memo
cells, and the final set of Pareto-optimal distributions.
"""

from hepopt.hepopta import HepoptSolver
from hepopt.oracle import brute_pareto, search_space_size
from hepopt.profile import worked_example

profiles = worked_example()
for prof in profiles:
    cells = ", ".join(f"{pt.size}->(t{pt.time:g}, e{pt.energy:g})" for pt in prof.points)
    print(f"{prof.processor_id}: {cells}")

solver = HepoptSolver(profiles, 4)
front = solver.solve()

# The fastest distribution finishes in 2 s and costs 5 J. Nothing on the
# front can cost more than that, so 5 J becomes the energy threshold.
print("\nmakespan-optimal:", solver.time_opt.distribution, "makespan", solver.time_opt.makespan)
print("energy threshold:", solver.thresholds.epsilon)
# sigma[c]: the most work processors c..3 can absorb using only cheap points
print("size thresholds:", solver.thresholds.sigma)

# Memo cells hold partial fronts: (energy, time, own share, active count, child)
for level, w in ((2, 2), (1, 4)):
    print(f"memo cell level {level}, workload {w}:", [e.as_tuple() for e in solver.memo.peek(level, w).entries])

print("\nPareto-optimal distributions:")
for sol in front:
    print(f"  energy {sol.energy:g} J, time {sol.time:g} s, shares {sol.distribution}")

# Exhaustive enumeration agrees
print(f"\nbrute force over {search_space_size(profiles)} share vectors agrees:",
      brute_pareto(profiles, 4) == front)
