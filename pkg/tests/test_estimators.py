import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import maxdep as md
from conftest import integer_matrices, labels_for, pseudo_matrices, pseudo_obs, table_of


class TestRankTransform:
    def test_distinct_values(self):
        t = table_of(np.array([[3.2, 0.0], [1.1, 0.0], [2.5, 0.0]]))
        u = md.rank_transform(t).u
        assert u[:, 0].tolist() == [1.0, 1 / 3, 2 / 3]

    def test_ties_midrank(self):
        # tied block {5, 5} holds ranks {2, 3}, averaging to 2.5 over n=3
        t = table_of(np.array([[5.0, 0], [5.0, 0], [1.0, 0]]))
        u = md.rank_transform(t, md.EstimationOptions("midrank")).u
        assert u[:, 0].tolist() == [5 / 6, 5 / 6, 1 / 3]

    def test_ties_first_occurrence(self):
        # the empirical CDF counts every tied copy as <=
        t = table_of(np.array([[5.0, 0], [5.0, 0], [1.0, 0]]))
        u = md.rank_transform(t, md.EstimationOptions("first-occurrence")).u
        assert u[:, 0].tolist() == [1.0, 1.0, 1 / 3]

    def test_bad_tie_policy(self):
        with pytest.raises(md.RangeError):
            md.EstimationOptions("nearest")

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices())
    def test_columnwise_monotone(self, x):
        u = md.rank_transform(table_of(x)).u
        for j in range(x.shape[1]):
            order = np.argsort(x[:, j], kind="stable")
            assert (np.diff(u[order, j]) >= 0).all()

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices())
    def test_midrank_columns_average_to_half(self, x):
        # midrank keeps each column mean at (n+1)/(2n) regardless of ties
        n = x.shape[0]
        u = md.rank_transform(table_of(x)).u
        assert np.allclose(u.mean(axis=0), (n + 1) / (2 * n), atol=1e-12)

    def test_no_ties_gives_exact_grid(self, rng):
        x = rng.standard_normal((17, 3))
        u = md.rank_transform(table_of(x)).u
        want = np.arange(1, 18) / 17
        for j in range(3):
            assert np.array_equal(np.sort(u[:, j]), want)


class TestEmpiricalVariogram:
    def test_identical_columns_give_one_exactly(self, rng):
        col = rng.standard_normal(9)
        p = md.rank_transform(table_of(np.column_stack([col, col])))
        assert md.empirical_variogram(p, (1, 2)) == 1.0

    def test_three_identical_columns(self, rng):
        col = rng.standard_normal(5)
        p = md.rank_transform(table_of(np.column_stack([col, col, col])))
        assert md.empirical_variogram(p, (1, 2, 3)) == 1.0

    def test_comonotone_ranks_give_one_without_equal_values(self, rng):
        # equality of ranks, not of raw values, is what drives v to 1
        col = rng.standard_normal(11)
        t = table_of(np.column_stack([col, np.exp(col), col**3]))
        assert md.empirical_variogram(md.rank_transform(t), (1, 2, 3)) == 1.0

    def test_antithetic_pair_hand_value(self):
        # pseudo rows (0.5, 1.0) and (1.0, 0.5): mean range 0.5, v = 1 - 3*0.5
        p = md.rank_transform(table_of(np.array([[1.0, 2.0], [2.0, 1.0]])))
        assert md.empirical_variogram(p, (1, 2)) == -0.5

    def test_subset_too_small(self):
        p = pseudo_obs(np.array([[0.5, 1.0], [1.0, 0.5]]))
        with pytest.raises(md.DimensionError):
            md.empirical_variogram(p, (1,))

    def test_subset_out_of_range(self):
        p = pseudo_obs(np.array([[0.5, 1.0], [1.0, 0.5]]))
        with pytest.raises(md.DimensionError):
            md.empirical_variogram(p, (1, 3))

    @settings(max_examples=50, deadline=None)
    @given(pseudo_matrices())
    def test_never_exceeds_one(self, u):
        p = pseudo_obs(u)
        assert md.empirical_variogram(p, range(1, u.shape[1] + 1)) <= 1.0

    @settings(max_examples=50, deadline=None)
    @given(integer_matrices())
    def test_finite_sample_lower_bound(self, x):
        # per-row range of rank-transformed columns is at most (n-1)/n
        n, k = x.shape
        v = md.empirical_variogram(md.rank_transform(table_of(x)), range(1, k + 1))
        assert v >= 1.0 - (k + 1) / (k - 1) * ((n - 1) / n) - 1e-12

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices(max_n=15))
    def test_matches_naive_loop_oracle(self, x):
        # independent oracle: the defining formula written as plain loops
        # over sorted-position counts, no shared code with the estimator
        n, k = x.shape
        total = 0.0
        for i in range(n):
            pseudo_row = []
            for j in range(k):
                below = sum(1 for r in range(n) if x[r, j] < x[i, j])
                tied = sum(1 for r in range(n) if x[r, j] == x[i, j])
                pseudo_row.append((below + (below + tied) + 1) / (2 * n))
            total += max(pseudo_row) - min(pseudo_row)
        want = 1.0 - (k + 1) / (k - 1) * total / n
        p = md.rank_transform(table_of(x))
        assert md.empirical_variogram(p, range(1, k + 1)) == pytest.approx(want, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices(), st.randoms(use_true_random=False))
    def test_column_permutation_symmetry(self, x, rnd):
        k = x.shape[1]
        p = md.rank_transform(table_of(x))
        perm = list(range(1, k + 1))
        rnd.shuffle(perm)
        assert md.empirical_variogram(p, range(1, k + 1)) == md.empirical_variogram(p, perm)

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices(), st.randoms(use_true_random=False))
    def test_row_shuffle_invariance(self, x, rnd):
        k = x.shape[1]
        order = list(range(x.shape[0]))
        rnd.shuffle(order)
        v1 = md.empirical_variogram(md.rank_transform(table_of(x)), range(1, k + 1))
        v2 = md.empirical_variogram(md.rank_transform(table_of(x[order])), range(1, k + 1))
        assert v1 == pytest.approx(v2, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(
        integer_matrices(),
        st.integers(1, 5),
        st.integers(-3, 3),
        st.booleans(),
    )
    def test_marginal_invariance(self, x, a, b, cube):
        # strictly increasing transforms of one column cannot move ranks
        k = x.shape[1]
        y = x.copy()
        y[:, 0] = y[:, 0] ** 3 if cube else a * y[:, 0] + b
        v1 = md.empirical_variogram(md.rank_transform(table_of(x)), range(1, k + 1))
        v2 = md.empirical_variogram(md.rank_transform(table_of(y)), range(1, k + 1))
        assert v1 == v2


class TestViaPairsIdentity:
    @settings(max_examples=80, deadline=None)
    @given(pseudo_matrices())
    def test_identity_on_arbitrary_pseudo_data(self, u):
        p = pseudo_obs(u)
        sub = range(1, u.shape[1] + 1)
        a = md.empirical_variogram(p, sub)
        b = md.empirical_variogram_via_pairs(p, sub)
        assert a == pytest.approx(b, abs=1e-12)

    def test_identical_columns(self, rng):
        col = rng.standard_normal(6)
        p = md.rank_transform(table_of(np.column_stack([col, col])))
        assert md.empirical_variogram_via_pairs(p, (1, 2)) == 1.0

    def test_hand_value(self):
        p = md.rank_transform(table_of(np.array([[1.0, 2.0], [2.0, 1.0]])))
        assert md.empirical_variogram_via_pairs(p, (1, 2)) == -0.5


class TestEmpiricalMadogram:
    def test_identical_columns_give_zero(self, rng):
        col = rng.standard_normal(8)
        p = md.rank_transform(table_of(np.column_stack([col, col])))
        assert md.empirical_madogram(p, (1, 2)) == 0.0

    def test_hand_value(self):
        p = md.rank_transform(table_of(np.array([[1.0, 2.0], [2.0, 1.0]])))
        assert md.empirical_madogram(p, (1, 2)) == 0.25

    def test_pairs_only(self):
        p = pseudo_obs(np.array([[0.5, 1.0, 0.5], [1.0, 0.5, 1.0]]))
        with pytest.raises(md.DimensionError):
            md.empirical_madogram(p, (1, 2, 3))

    @settings(max_examples=60, deadline=None)
    @given(pseudo_matrices(max_k=4))
    def test_pairwise_identity(self, u):
        p = pseudo_obs(u)
        for a, b in itertools.combinations(range(1, u.shape[1] + 1), 2):
            nu = md.empirical_madogram(p, (a, b))
            v = md.empirical_variogram(p, (a, b))
            assert v == pytest.approx(1.0 - 6.0 * nu, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(integer_matrices(max_k=4))
    def test_bounds_on_ranked_data(self, x):
        n = x.shape[0]
        p = md.rank_transform(table_of(x))
        for a, b in itertools.combinations(range(1, x.shape[1] + 1), 2):
            nu = md.empirical_madogram(p, (a, b))
            assert 0.0 <= nu <= (n - 1) / (2 * n)


class TestExtremalCoefficientFromMadogram:
    def test_independence_value(self):
        assert md.extremal_coefficient_from_madogram(1 / 6) == pytest.approx(2.0, abs=1e-12)

    def test_total_dependence_value(self):
        assert md.extremal_coefficient_from_madogram(0.0) == 1.0

    def test_forward_map_round_trip(self):
        # forward oracle: nu = l/(1+l) - 1/2 evaluated at l = sqrt(2)
        l = 2**0.5
        nu = l / (1 + l) - 0.5
        assert md.extremal_coefficient_from_madogram(nu) == pytest.approx(l, abs=1e-12)
        assert md.extremal_coefficient_from_madogram(0.0857864) == pytest.approx(
            1.4142136, abs=1e-6
        )

    @pytest.mark.parametrize("nu", [-0.01, 0.5, 0.7])
    def test_domain(self, nu):
        with pytest.raises(md.RangeError):
            md.extremal_coefficient_from_madogram(nu)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.0, max_value=0.49))
    def test_at_least_one(self, nu):
        assert md.extremal_coefficient_from_madogram(nu) >= 1.0


class TestBootstrap:
    def test_minimum_replicates(self):
        t = table_of(np.arange(20.0).reshape(10, 2))
        with pytest.raises(md.RangeError):
            md.bootstrap_variogram(t, (1, 2), replicates=50)

    @pytest.mark.parametrize("level", [0.0, 1.0, -0.2, 1.7])
    def test_level_domain(self, level):
        t = table_of(np.arange(20.0).reshape(10, 2))
        with pytest.raises(md.RangeError):
            md.bootstrap_variogram(t, (1, 2), replicates=100, level=level)

    def test_identical_columns_interval_is_degenerate(self, rng):
        col = rng.standard_normal(12)
        t = table_of(np.column_stack([col, col]))
        assert md.bootstrap_variogram(t, (1, 2), 100, seed=4) == (1.0, 1.0)

    def test_same_seed_is_bit_identical(self, rng):
        t = table_of(rng.standard_normal((25, 3)))
        a = md.bootstrap_variogram(t, (1, 2, 3), 150, level=0.9, seed=99)
        b = md.bootstrap_variogram(t, (1, 2, 3), 150, level=0.9, seed=99)
        assert a == b

    def test_different_seeds_differ(self, rng):
        t = table_of(rng.standard_normal((25, 3)))
        a = md.bootstrap_variogram(t, (1, 2, 3), 150, seed=1)
        b = md.bootstrap_variogram(t, (1, 2, 3), 150, seed=2)
        assert a != b

    def test_interval_ordered_and_covers_truth_on_easy_data(self):
        spec = md.SimulationSpec(md.LogisticModel(0.5, 2), 400, 31)
        t = md.sample_logistic(spec)
        lo, hi = md.bootstrap_variogram(t, (1, 2), 400, level=0.95, seed=8)
        assert lo <= hi
        truth = md.logistic_variogram(md.LogisticModel(0.5, 2))
        assert lo - 0.05 < truth < hi + 0.05
