import itertools
import math

import numpy as np
import pytest

from bacap.ba import SolverConfig, ba_capacity, capacity_oracle_grid, iterate_bounds, mutual_information
from bacap.channel import make_bsc, make_nonsymmetric_binary, make_wht_sparse_channel
from bacap.errors import DomainError, UnsupportedShapeError
from conftest import random_channel, refined_capacity
from golden_tables import BSC, NONSYM

EPS = 1e-4


def test_bsc_half():
    res = ba_capacity(make_bsc(0.5), SolverConfig(epsilon=EPS))
    assert res.converged
    assert abs(res.capacity_lower - 0.1308) <= 2e-4


def test_nonsymmetric_half():
    res = ba_capacity(make_nonsymmetric_binary(0.5), SolverConfig(epsilon=EPS))
    assert res.converged
    assert abs(res.capacity_lower - 0.0338) <= 2e-4


def test_identical_rows_have_zero_capacity():
    q = np.array([[0.2, 0.3, 0.5], [0.2, 0.3, 0.5]])
    res = ba_capacity(q, SolverConfig(epsilon=EPS))
    assert res.converged and res.iterations <= 2
    assert abs(res.capacity_lower) < 1e-15
    assert capacity_oracle_grid(q, 1e-4) == pytest.approx(0.0, abs=1e-15)


def test_sparse_channel_against_oracle():
    q = make_wht_sparse_channel(8, 1, 0.1)
    res = ba_capacity(q, SolverConfig(epsilon=1e-8))
    assert abs(res.capacity_lower - capacity_oracle_grid(q, 1e-4)) <= 1e-8 + 1e-7


def test_noiseless_channel_reaches_log_n():
    res = ba_capacity(np.eye(5), SolverConfig(epsilon=1e-10))
    assert res.capacity_lower == pytest.approx(math.log(5), abs=1e-10)


def test_three_input_channel_against_simplex_grid(rng):
    q = random_channel(rng, 3, 4)
    res = ba_capacity(q, SolverConfig(epsilon=1e-9))
    steps = 200
    best = max(
        mutual_information(q, [i / steps, j / steps, (steps - i - j) / steps])
        for i in range(steps + 1) for j in range(steps + 1 - i)
    )
    assert best <= res.capacity_upper + 1e-12
    assert res.capacity_lower >= best - 1e-3


def test_result_invariants(rng):
    for _ in range(20):
        q = random_channel(rng, rng.integers(2, 5), rng.integers(2, 20), zero_fraction=0.3)
        res = ba_capacity(q, SolverConfig(epsilon=1e-6))
        n = q.shape[0]
        assert res.converged
        assert res.capacity_lower <= res.capacity_upper + 1e-12
        assert res.capacity_upper - res.capacity_lower < 1e-6
        assert -1e-12 <= res.capacity_lower and res.capacity_upper <= math.log(n) + 1e-12
        assert abs(res.input_dist.sum() - 1) < 1e-12 and res.input_dist.min() >= 0


def test_non_convergence_is_reported_not_raised():
    q = make_nonsymmetric_binary(0.9)
    res = ba_capacity(q, SolverConfig(epsilon=1e-12, max_iterations=3))
    assert not res.converged
    assert res.iterations == 3
    assert res.capacity_lower <= capacity_oracle_grid(q, 1e-4) + 1e-9 <= res.capacity_upper + 2e-9


def test_strict_zero_points_and_dead_columns():
    q = np.array([[0.5, 0.0, 0.5, 0.0], [0.0, 0.5, 0.5, 0.0]])
    res = ba_capacity(q, SolverConfig(epsilon=1e-10))
    assert res.capacity_lower == pytest.approx(0.5 * math.log(2), abs=1e-9)
    assert np.isfinite(res.capacity_upper)


def test_initial_input_must_be_positive():
    with pytest.raises(DomainError):
        SolverConfig(initial_input=[1.0, 0.0])
    with pytest.raises(DomainError):
        SolverConfig(epsilon=0)
    with pytest.raises(DomainError):
        SolverConfig(max_iterations=0)


def test_explicit_initial_input():
    q = make_nonsymmetric_binary(0.7)
    res = ba_capacity(q, SolverConfig(epsilon=1e-9, initial_input=[0.9, 0.1]))
    assert res.capacity_lower == pytest.approx(capacity_oracle_grid(q, 1e-4), abs=1e-7)


def test_single_row_channel_rejected():
    with pytest.raises(DomainError):
        ba_capacity([[0.5, 0.5]])


def test_epsilon_comparison_is_strict():
    # the BSC gap is exactly 0 on the first pass, which is < eps for any eps > 0
    res = ba_capacity(make_bsc(0.3), SolverConfig(epsilon=1e-300))
    assert res.converged and res.iterations == 1


def test_mutual_information_examples():
    q = make_bsc(0.5)
    assert mutual_information(q, [1, 0]) == 0.0
    assert mutual_information(make_wht_sparse_channel(3, 2, 0.3), [0, 1]) == 0.0
    assert abs(mutual_information(q, [0.5, 0.5]) - 0.1308) <= 1e-4
    ns = make_nonsymmetric_binary(0.5)
    assert mutual_information(ns, [0.5, 0.5]) <= ba_capacity(ns).capacity_upper
    with pytest.raises(DomainError):
        mutual_information(q, [1 / 3] * 3)


def test_mutual_information_against_entropy_difference(rng):
    q = random_channel(rng, 3, 6)
    p = np.array([0.2, 0.5, 0.3])

    def h(v):
        v = v[v > 0]
        return -(v * np.log(v)).sum()

    expected = h(p @ q) - sum(p[j] * h(q[j]) for j in range(3))
    assert mutual_information(q, p) == pytest.approx(expected, abs=1e-14)


def test_oracle_examples():
    assert abs(capacity_oracle_grid(make_bsc(0.5), 1e-4) - 0.1308) <= 1e-4
    ns = make_nonsymmetric_binary(0.9)
    assert abs(capacity_oracle_grid(ns, 1e-4) - 0.1440) <= 2e-4
    assert abs(capacity_oracle_grid(ns, 1e-4) - ba_capacity(ns).capacity_lower) <= 2e-4


def test_oracle_shape_and_step_checks():
    with pytest.raises(UnsupportedShapeError):
        capacity_oracle_grid(np.eye(3), 1e-4)
    with pytest.raises(DomainError):
        capacity_oracle_grid(make_bsc(0.2), 0.05)


def test_sandwich_and_monotone_lower_bound(rng):
    for _ in range(30):
        q = random_channel(rng, 2, rng.choice([2, 3, 16, 64]), zero_fraction=0.2)
        true = refined_capacity(q)
        assert capacity_oracle_grid(q, 1e-4) <= true + 1e-15
        previous = -np.inf
        for step in itertools.islice(iterate_bounds(q), 200):
            assert step.lower <= step.upper + 1e-12
            assert step.lower - 1e-9 <= true <= step.upper + 1e-9
            assert step.lower >= previous - 1e-12
            assert abs(step.input_dist.sum() - 1) < 1e-12 and step.input_dist.min() >= 0
            previous = step.lower


def test_column_permutation_leaves_capacity_unchanged(rng):
    for _ in range(10):
        q = random_channel(rng, 2, 32)
        perm = rng.permutation(32)
        a = ba_capacity(q).capacity_lower
        b = ba_capacity(q[:, perm]).capacity_lower
        assert abs(a - b) <= 1e-12


@pytest.mark.parametrize("d", sorted(NONSYM))
def test_oracle_equivalence_on_nonsymmetric_grid(d):
    q = make_nonsymmetric_binary(d)
    assert abs(ba_capacity(q).capacity_lower - capacity_oracle_grid(q, 1e-4)) <= EPS + 1e-4


@pytest.mark.parametrize("d", sorted(BSC))
def test_oracle_equivalence_on_bsc_grid(d):
    q = make_bsc(d)
    assert abs(ba_capacity(q).capacity_lower - capacity_oracle_grid(q, 1e-4)) <= EPS + 1e-4


def test_large_alphabet_is_stable():
    q = make_wht_sparse_channel(16, 3, 0.2, masks=[1, 2, 4])
    res = ba_capacity(q, SolverConfig(epsilon=1e-8))
    assert res.converged
    assert abs(res.capacity_lower - capacity_oracle_grid(q, 1e-4)) <= 1e-7
