import random

import numpy as np
import pytest

from hepopt.exceptions import DegenerateFront, ValidationError
from hepopt.gen import (
    LinearSpec, balanced_linear_spec, gen_linear, gen_synthetic, verify_linear_front,
)
from hepopt.hepopta import ParetoFront, Solution, solve_hepopt
from hepopt.oracle import brute_min_energy, brute_pareto
from hepopt.profile import lookup
from hepopt.timeopt import solve_time_optimal

from helpers import feasible_n, rows


def test_gen_linear_example():
    ps = gen_linear(LinearSpec((1, 2), (1, 3), tuple(range(1, 11))))
    assert sum(len(p) for p in ps) == 20
    assert (lookup(ps[1], 4, "time"), lookup(ps[1], 4, "energy")) == (8, 12)


def test_gen_linear_single_size():
    ps = gen_linear(LinearSpec((1, 2, 3), (1, 1, 1), (5,)))
    assert all(len(p) == 1 for p in ps)


@pytest.mark.parametrize("a,b,grid", [
    ((1,), (1, 2), (1, 2)),
    ((0, 1), (1, 1), (1, 2)),
    ((1, 1), (1, 1), (2, 1)),
    ((1, 1), (1, 1), ()),
    ((1, 1), (1, 1), (0, 1)),
])
def test_linear_spec_validation(a, b, grid):
    with pytest.raises(ValidationError):
        LinearSpec(a, b, grid)


def test_synthetic_deterministic():
    assert gen_synthetic("smooth", 3, 16, 42) == gen_synthetic("smooth", 3, 16, 42)
    assert gen_synthetic("smooth", 3, 16, 42) != gen_synthetic("smooth", 3, 16, 43)


def test_synthetic_jagged_invariants():
    ps = gen_synthetic("jagged", 2, 8, 7)
    assert ps.p == 2
    for prof in ps:
        assert len(prof) == 8
        assert all(pt.time > 0 and pt.energy > 0 for pt in prof.points)


def test_synthetic_noise_bands():
    # with noise removed, each curve is c * (x / max) ** k; the ratio to a
    # fitted power law must stay within the advertised noise band
    for shape, (lo, hi) in (("smooth", (0.97, 1.03)), ("jagged", (0.5, 1.5))):
        ps = gen_synthetic(shape, 4, 64, 3)
        rng = np.random.default_rng(3)
        sizes = np.arange(1, 65)
        for prof in ps:
            t_scale, e_scale = rng.uniform(1.0, 10.0, size=2)
            t_exp, e_exp = rng.uniform(0.8, 1.3, size=2)
            rng.uniform(size=64), rng.uniform(size=64)
            base_t = t_scale * (sizes / 64) ** t_exp
            ratio = np.array([pt.time for pt in prof.points]) / base_t
            assert lo <= ratio.min() and ratio.max() <= hi


def test_synthetic_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_synthetic("wavy", 2, 4, 0)
    with pytest.raises(ValueError):
        gen_synthetic("smooth", 0, 4, 0)


@pytest.mark.parametrize("seed", range(5))
def test_synthetic_matches_oracle(seed):
    rng = random.Random(seed)
    ps = gen_synthetic("jagged" if seed % 2 else "smooth", 3, 5, seed)
    n = feasible_n(rng, ps)
    assert rows(solve_hepopt(ps, n)) == rows(brute_pareto(ps, n))


def _linear_check(spec, n):
    ps = gen_linear(spec)
    front = solve_hepopt(ps, n)
    cheapest = brute_min_energy(ps, n, limit=10**8)
    report = verify_linear_front(front, solve_time_optimal(ps, n), (cheapest.energy, cheapest.distribution))
    return front, report


def test_two_processor_linear_front():
    spec = balanced_linear_spec((60, 40), (1, 3), range(1, 101), scale=1)
    front, report = _linear_check(spec, 100)
    energy_range = max(front.energies) - min(front.energies)
    assert report.relative_residual(energy_range) < 1e-6
    assert report.endpoints_match
    assert front[0].distribution == (100, 0)
    assert front[-1].distribution == (60, 40)


def test_four_processor_linear_front():
    spec = balanced_linear_spec((10, 10, 15, 15), (1, 2, 2, 2), range(1, 51))
    front, report = _linear_check(spec, 50)
    energy_range = max(front.energies) - min(front.energies)
    assert report.relative_residual(energy_range) < 1e-6
    assert report.endpoints_match


def test_grid_refinement_never_shrinks_front():
    for k in (2, 4):
        coarse = gen_linear(LinearSpec((2, 3), (1, 2), tuple(range(k, 49, k))))
        fine = gen_linear(LinearSpec((2, 3), (1, 2), tuple(range(1, 49))))
        assert len(solve_hepopt(fine, 48)) >= len(solve_hepopt(coarse, 48))


def test_degenerate_front():
    front = ParetoFront((Solution(1.0, 1.0, (1,)),))
    with pytest.raises(DegenerateFront):
        verify_linear_front(front, None, None)


def test_endpoint_mismatch_reported():
    spec = balanced_linear_spec((6, 4), (1, 3), range(1, 11))
    ps = gen_linear(spec)
    front = solve_hepopt(ps, 10)
    report = verify_linear_front(front, solve_time_optimal(ps, 10), (0.0, (0, 10)))
    assert not report.endpoints_match


def test_balanced_spec_slopes():
    spec = balanced_linear_spec((40, 60), (1, 2), range(1, 11), scale=2)
    assert spec.a == (6.0, 4.0)  # 2 * lcm(40, 60) / share
    assert spec.a[0] * 40 == spec.a[1] * 60
    with pytest.raises(ValidationError):
        balanced_linear_spec((0, 5), (1, 1), range(1, 5))
