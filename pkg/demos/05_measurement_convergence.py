"""
Repeating a measurement until it is trustworthy
================================================

Measurements are repeated until the Student-t confidence half-width is
below 10% of the sample mean. A quiet sampler converges almost at once;
a bimodal one needs many more runs or hits the time budget.
"""

from hepopt.stats import TtestConfig, make_sampler, mean_with_ttest

config = TtestConfig(min_reps=5, max_reps=1000, max_elapsed=3600.0, confidence=0.95, precision=0.1)
for preset in ("constant", "gaussian", "bimodal"):
    out = mean_with_ttest(make_sampler(preset, seed=3), config)
    print(f"{preset:9s}: {out.stop_reason:11s} after {out.reps_used:4d} runs, mean {out.means[0]:8.3f}, "
          f"elapsed {out.elapsed:8.1f} s")

# Tightening the precision costs more repetitions
for precision in (0.1, 0.01, 0.005, 0.002):
    cfg = TtestConfig(precision=precision, max_elapsed=float("inf"), max_reps=100000)
    out = mean_with_ttest(make_sampler("gaussian", seed=3), cfg)
    print(f"precision {precision:6.3f}: {out.reps_used:5d} runs")
