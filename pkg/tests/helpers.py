"""Instance builders shared by the test modules."""

import random

from hypothesis import strategies as st

from hepopt.gen import gen_synthetic
from hepopt.profile import DiscreteProfile, ProfileSet
from hepopt.timeopt import reachable_sums


def tied_instance(rng: random.Random, p: int, max_size: int = 8, levels: int = 4) -> ProfileSet:
    """Small integer-valued profiles on sparse grids: many exact ties."""
    profs = []
    for i in range(p):
        sizes = sorted(rng.sample(range(1, max_size + 1), rng.randint(1, min(6, max_size))))
        profs.append(DiscreteProfile.from_arrays(
            f"P{i}", sizes, [rng.randint(1, levels) for _ in sizes], [rng.randint(1, levels) for _ in sizes]))
    return ProfileSet(tuple(profs))


def feasible_n(rng: random.Random, profiles: ProfileSet) -> int:
    reach = reachable_sums(profiles, profiles.max_total)
    return rng.choice([w for w, ok in enumerate(reach) if ok and w > 0])


def synthetic_case(seed: int):
    """The seeded (profiles, n) family used for oracle equivalence runs."""
    rng = random.Random(seed)
    p = rng.randint(2, 5)
    m = rng.randint(2, 8)
    shape = "smooth" if seed % 2 == 0 else "jagged"
    profiles = gen_synthetic(shape, p, m, seed, step=rng.randint(1, 3))
    return profiles, feasible_n(rng, profiles)


@st.composite
def small_instances(draw, max_p=4, max_size=6, levels=3):
    """Hypothesis strategy for (profiles, n) with integer times and energies."""
    p = draw(st.integers(1, max_p))
    profs = []
    for i in range(p):
        sizes = draw(st.lists(st.integers(1, max_size), min_size=1, max_size=max_size, unique=True))
        sizes.sort()
        times = draw(st.lists(st.integers(1, levels), min_size=len(sizes), max_size=len(sizes)))
        energies = draw(st.lists(st.integers(1, levels), min_size=len(sizes), max_size=len(sizes)))
        profs.append(DiscreteProfile.from_arrays(f"P{i}", sizes, times, energies))
    profiles = ProfileSet(tuple(profs))
    reach = reachable_sums(profiles, profiles.max_total)
    n = draw(st.sampled_from([w for w, ok in enumerate(reach) if ok]))
    return profiles, n


def rows(front):
    return [(s.energy, s.time, s.distribution) for s in front]
