"""Random case generators: shape guarantees and determinism."""

import random

import pytest

from zerohalf.core import ZeroHalfError, is_integral
from zerohalf.generate import (
    gen_graph,
    gen_primal_case,
    gen_sandwich_case,
)


def test_col2_profile_controls_column_parity():
    rng = random.Random(11)
    for _ in range(25):
        case = gen_primal_case(rng, profile="col2")
        for col in zip(*case.instance.A):
            assert sum(v % 2 for v in col) <= 2


def test_row2_profile_controls_row_parity():
    rng = random.Random(12)
    for _ in range(25):
        case = gen_primal_case(rng, profile="row2")
        for row in case.instance.A:
            assert sum(v % 2 for v in row) <= 2


def test_points_are_feasible_and_shaped():
    rng = random.Random(13)
    for _ in range(25):
        case = gen_primal_case(rng, profile="mixed")
        inst = case.instance
        assert is_integral(case.xhat)
        assert inst.feasibility_failure(case.xhat) is None
        assert inst.feasibility_failure(case.xstar) is None
        assert not is_integral(case.xstar)
        assert all(abs(a) <= 3 for row in inst.A for a in row)


def test_explicit_sizes_respected():
    case = gen_primal_case(random.Random(14), rows=3, cols=5, profile="col2")
    assert case.instance.m == 3 and case.instance.n == 5


def test_unknown_profile_rejected():
    with pytest.raises(ZeroHalfError):
        gen_primal_case(random.Random(0), profile="dense")


def test_same_seed_same_case():
    a = gen_primal_case(random.Random(99), profile="row2")
    b = gen_primal_case(random.Random(99), profile="row2")
    assert a == b


def test_sandwich_cases_fit_the_approximation_preconditions():
    rng = random.Random(15)
    for _ in range(40):
        inst = gen_sandwich_case(rng)
        assert 1 <= inst.m <= 7 and 1 <= inst.n <= 5
        assert all(v >= 1 for v in inst.b)
        assert all(c >= 0 for c in inst.objective)
        assert all(inst.lower_present) and all(inst.upper_present)


def test_graphs_stay_small_and_valid():
    rng = random.Random(16)
    for _ in range(40):
        g = gen_graph(rng)
        assert 2 <= g.node_count <= 7
        assert all(0 <= w <= 5 for _, _, w in g.edges)
