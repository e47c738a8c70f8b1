import math
import random
import time

import numpy as np
import pytest
from hypothesis import given, settings

from hepopt.exceptions import BrokenChain, Infeasible
from hepopt.gen import gen_synthetic
from hepopt.hepopta import (
    HepoptSolver, Memo, MemoStatus, ParetoCell, ParetoEntry, build_pareto_sols, compute_energy_threshold,
    compute_size_thresholds, cut, make_pareto_final, merge_partial_paretoes, read_pareto_mem, solve_hepopt,
)
from hepopt.oracle import brute_pareto
from hepopt.profile import DiscreteProfile, ProfilePoint, ProfileSet, evaluate, worked_example
from hepopt.timeopt import solve_time_optimal

from helpers import feasible_n, rows, small_instances, synthetic_case, tied_instance

EX4_FRONT = [(2.0, 6.0, (2, 2, 0, 0)), (4.0, 3.0, (2, 1, 0, 1)), (5.0, 2.0, (2, 0, 2, 0))]


@pytest.fixture(scope="module")
def ex4():
    return worked_example()


@pytest.fixture(scope="module")
def ex4_solver(ex4):
    solver = HepoptSolver(ex4, 4)
    solver.solve()
    return solver


# ------------------------------------------------------------ thresholds


def test_energy_threshold(ex4):
    assert compute_energy_threshold(ex4, (2, 0, 2, 0)) == 5
    assert compute_energy_threshold(ex4, (0, 0, 0, 0)) == 0
    assert compute_energy_threshold(ex4, (4, 0, 0, 0)) == 6


def test_size_thresholds(ex4):
    assert compute_size_thresholds(ex4, 5) == (8, 5, 3, 1)
    assert compute_size_thresholds(ex4, 0) == (0, 0, 0, 0)
    assert compute_size_thresholds(ex4, math.inf) == (16, 12, 8, 4)


def test_cut():
    assert cut(4, 3)
    assert not cut(0, 0)
    assert not cut(3, 3)


# ------------------------------------------------------------ memo cells


def test_read_pareto_mem():
    assert read_pareto_mem(ParetoCell(), 5) is MemoStatus.DUMMY
    assert read_pareto_mem(None, 5) is MemoStatus.DUMMY
    cell = ParetoCell([ParetoEntry(4, 2, 2, 1), ParetoEntry(6, 1, 1, 2)])
    assert read_pareto_mem(cell, 5) is MemoStatus.SOLUTION
    assert read_pareto_mem(ParetoCell([ParetoEntry(4, 2, 2, 1)]), 3) is MemoStatus.NOT_SOLUTION
    assert read_pareto_mem(make_pareto_final(ParetoCell()), 5) is MemoStatus.NOT_SOLUTION


def test_make_pareto_final():
    empty = make_pareto_final(ParetoCell())
    assert empty.no_solution and empty.finalized
    full = make_pareto_final(ParetoCell([ParetoEntry(4, 2, 2, 1)]))
    assert full.finalized and not full.no_solution
    assert [e.as_tuple() for e in full.entries] == [(4, 2, 2, 1, None)]
    again = make_pareto_final(full)
    assert again is full and again.finalized and not again.no_solution
    with pytest.raises(RuntimeError):
        full.set_entries([])


def test_golden_memo_cells(ex4_solver):
    cell_22 = ex4_solver.memo.peek(2, 2)
    assert [e.as_tuple() for e in cell_22.entries] == [(4, 2, 2, 1, None), (6, 1, 1, 2, None)]
    cell_14 = ex4_solver.memo.peek(1, 4)
    assert [(e.energy, e.time, e.part, e.active_count) for e in cell_14.entries] == [(5, 6, 2, 2), (7, 3, 1, 3)]
    # children referenced by energy 4 and 5 in the level-2 cells
    children = [ex4_solver.memo.peek(2, 4 - e.part).entries[e.child_ref].energy for e in cell_14.entries]
    assert children == [4, 5]


def test_golden_thresholds(ex4_solver):
    assert ex4_solver.time_opt.distribution == (2, 0, 2, 0)
    assert ex4_solver.time_opt.makespan == 2
    assert ex4_solver.thresholds.epsilon == 5
    assert ex4_solver.thresholds.sigma == (8, 5, 3, 1)


def test_merge_standalone_matches_golden_cell(ex4):
    memo = Memo(4, 4)
    cell = merge_partial_paretoes(2, 2, [2, 1], memo, ex4)
    assert [e.as_tuple() for e in cell.entries] == [(4, 2, 2, 1, None), (6, 1, 1, 2, None)]


def test_merge_into_empty_cell_keeps_survivors(ex4):
    memo = Memo(4, 4)
    # shares 0, 1, 2 of P2 with the rest on P3: (8,3) (6,1) (4,2) -> (8,3) is dominated
    cell = merge_partial_paretoes(2, 2, [0, 1, 2], memo, ex4)
    assert [(e.energy, e.time) for e in cell.entries] == [(4, 2), (6, 1)]


def test_merge_refuses_finalized_cell(ex4):
    memo = Memo(4, 4)
    make_pareto_final(memo.cell(2, 2))
    with pytest.raises(RuntimeError):
        merge_partial_paretoes(2, 2, [2], memo, ex4)


def test_kernel_cuts_without_recursion(ex4_solver):
    assert ex4_solver.kernel(4, 2) is False  # sigma_2 = 3


def test_kernel_leaf_level(ex4):
    solver = HepoptSolver(ex4, 4)
    solver.solve()
    assert solver.kernel(1, 3) is True      # P3 size 1 has energy 1
    assert solver.kernel(0, 3) is True
    assert solver.kernel(2, 3) is False     # sigma_3 = 1


def test_single_processor_semantics():
    prof = DiscreteProfile("P", (ProfilePoint(1, 3.0, 2.0), ProfilePoint(2, 1.0, 5.0)))
    ps = ProfileSet((prof,))
    assert rows(solve_hepopt(ps, 2)) == [(5.0, 1.0, (2,))]
    assert rows(solve_hepopt(ps, 0)) == [(0.0, 0.0, (0,))]
    with pytest.raises(Infeasible):
        solve_hepopt(ps, 3)


# ------------------------------------------------------------ reconstruction


def test_build_pareto_sols_worked_example(ex4_solver):
    assert rows(build_pareto_sols(ex4_solver.memo, ex4_solver.root, 4)) == EX4_FRONT


def test_build_single_entry_root():
    root = make_pareto_final(ParetoCell([ParetoEntry(3.0, 1.0, 5, 1)]))
    front = build_pareto_sols(Memo(2, 5), root, 5)
    assert rows(front) == [(3.0, 1.0, (5, 0))]


def test_broken_chain_detected(ex4_solver):
    root = ParetoCell([ParetoEntry(2.0, 6.0, 2, 2, child_ref=7)])
    with pytest.raises(BrokenChain):
        build_pareto_sols(ex4_solver.memo, root, 4)
    with pytest.raises(BrokenChain):
        build_pareto_sols(Memo(4, 4), root, 4)


# ------------------------------------------------------------ end to end


def test_worked_example_front(ex4):
    start = time.perf_counter()
    front = solve_hepopt(ex4, 4)
    assert time.perf_counter() - start < 1.0
    assert rows(front) == EX4_FRONT


def test_zero_workload(ex4):
    assert rows(solve_hepopt(ex4, 0)) == [(0.0, 0.0, (0, 0, 0, 0))]


def test_infeasible(ex4):
    with pytest.raises(Infeasible):
        solve_hepopt(ex4, 17)


def test_epsilon_override_must_not_shrink(ex4):
    with pytest.raises(ValueError):
        solve_hepopt(ex4, 4, epsilon=4.0)
    assert rows(solve_hepopt(ex4, 4, epsilon=100.0)) == EX4_FRONT


@pytest.mark.parametrize("seed", range(6))
def test_random_p3_m4_matches_oracle(seed):
    rng = random.Random(seed)
    ps = gen_synthetic("jagged", 3, 4, seed)
    n = feasible_n(rng, ps)
    assert rows(solve_hepopt(ps, n)) == rows(brute_pareto(ps, n))


@settings(max_examples=300, deadline=None)
@given(small_instances())
def test_oracle_equivalence_with_ties(case):
    profiles, n = case
    assert rows(solve_hepopt(profiles, n)) == rows(brute_pareto(profiles, n))


def test_oracle_equivalence_seeded_ties():
    rng = random.Random(2024)
    for _ in range(400):
        ps = tied_instance(rng, rng.randint(2, 5))
        n = feasible_n(rng, ps)
        assert rows(solve_hepopt(ps, n)) == rows(brute_pareto(ps, n))


@pytest.mark.parametrize("seed", range(40))
def test_front_invariants(seed):
    profiles, n = synthetic_case(seed)
    front = solve_hepopt(profiles, n)
    energies, times = front.energies, front.times
    assert all(a < b for a, b in zip(energies, energies[1:]))
    assert all(a > b for a, b in zip(times, times[1:]))
    assert len(front) <= profiles.m * profiles.p
    for sol in front:
        assert sum(sol.distribution) == n
        assert evaluate(profiles, sol.distribution) == (sol.energy, sol.time)
    assert front[-1].time == solve_time_optimal(profiles, n).makespan


@pytest.mark.parametrize("seed", range(20))
def test_epsilon_robustness(seed):
    profiles, n = synthetic_case(seed)
    solver = HepoptSolver(profiles, n)
    base = solver.solve()
    eps = solver.thresholds.epsilon
    for factor in (1.0, 2.0, 1e6):
        assert solve_hepopt(profiles, n, epsilon=eps * factor) == base


@pytest.mark.parametrize("seed", range(20))
def test_energy_scaling(seed):
    profiles, n = synthetic_case(seed)
    base = solve_hepopt(profiles, n)
    scaled = solve_hepopt(profiles.scaled(energy_factor=3.5), n)
    assert scaled.distributions == base.distributions
    np.testing.assert_allclose(scaled.energies, np.array(base.energies) * 3.5, rtol=1e-12)


def test_cell_entries_strictly_ordered_on_generic_input():
    profiles, n = synthetic_case(3)
    solver = HepoptSolver(profiles, n)
    solver.solve()
    for _, _, cell in solver.memo.populated():
        e = [x.energy for x in cell.entries]
        t = [x.time for x in cell.entries]
        assert all(a < b for a, b in zip(e, e[1:]))
        assert all(a > b for a, b in zip(t, t[1:]))
