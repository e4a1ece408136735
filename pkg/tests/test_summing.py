import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from multinorm import (
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    OptimizerBudget,
    VectorTuple,
    column_multi_bound,
    partial_sum_operator,
    summing_norm_estimate,
    weak_summing_norm,
    weak_summing_norm_predual,
)
from conftest import random_space

BUDGET = OptimizerBudget(restarts=24, max_iter=300, seed=11)


class TestWeakSumming:
    def test_single_entry_is_the_norm(self, w3_space):
        x = LpVector(w3_space, Fraction(3, 2), np.array([1.0, -2.0, 0.5]))
        est = weak_summing_norm(2, VectorTuple([x]))
        assert est.value == pytest.approx(x.norm, rel=1e-9)

    def test_frozen_corner_value(self, t1):
        # derived by exhaustive sign-corner enumeration of the dual sup ball
        est = weak_summing_norm(2, t1, budget=BUDGET)
        assert est.value == pytest.approx(math.sqrt(18.25), rel=1e-9)

    def test_matches_oracle_on_l1_base(self):
        rng = np.random.default_rng(21)
        for k in range(10):
            m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, 1, rng.standard_normal((n, m)))
            p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
            ref = O.weak_summing(t.coords, sp.weights, 1.0, p)
            est = weak_summing_norm(p, t, budget=BUDGET)
            assert est.value == pytest.approx(ref, rel=1e-7), (k, m, n, p)

    def test_matches_oracle_on_sup_base(self):
        rng = np.random.default_rng(22)
        for k in range(10):
            m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, "inf", rng.standard_normal((n, m)))
            ref = O.weak_summing(t.coords, sp.weights, math.inf, 2.0)
            est = weak_summing_norm(2, t, budget=BUDGET)
            assert est.value == pytest.approx(ref, rel=1e-7), (k, m, n)

    def test_matches_oracle_on_intermediate_base(self):
        rng = np.random.default_rng(23)
        for k in range(6):
            m, n = int(rng.integers(2, 4)), int(rng.integers(1, 4))
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, Fraction(3, 2), rng.standard_normal((n, m)))
            ref = O.weak_summing(t.coords, sp.weights, 1.5, 2.0, samples=6000, seed=k)
            est = weak_summing_norm(2, t, budget=BUDGET)
            assert est.value == pytest.approx(ref, rel=1e-6), (k, m, n)

    def test_zero_tuple(self, w3_space):
        t = VectorTuple.from_array(w3_space, 2, np.zeros((3, 3)))
        est = weak_summing_norm(2, t)
        assert est.certified and est.value == 0.0

    @given(data=st.data(), m=st.integers(1, 4), n=st.integers(1, 4))
    @settings(max_examples=40, deadline=None)
    def test_between_max_norm_and_norm_sum(self, data, m, n):
        seed = data.draw(st.integers(0, 2**31 - 1))
        rng = np.random.default_rng(seed)
        sp = random_space(rng, m)
        t = VectorTuple.from_array(sp, 2, rng.standard_normal((n, m)))
        est = weak_summing_norm(2, t, budget=BUDGET.scaled(restarts=8, max_iter=150))
        norms = t.norms()
        assert est.value <= sum(norms) * (1 + 1e-9) + 1e-12
        assert est.value >= max(norms) * (1 - 5e-3) - 1e-12

    def test_decreasing_in_p(self, t1):
        vals = [weak_summing_norm(p, t1, budget=BUDGET).value for p in (1, Fraction(3, 2), 2, 4)]
        for a, b in zip(vals, vals[1:]):
            assert b <= a * (1 + 1e-9)

    def test_predual_agrees(self):
        rng = np.random.default_rng(24)
        for k in range(5):
            m, n = 3, 3
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, 2, rng.standard_normal((n, m)))
            a = weak_summing_norm(2, t, budget=BUDGET)
            b = weak_summing_norm_predual(2, t, BUDGET)
            assert b.value == pytest.approx(a.value, rel=5e-3), k


class TestSummingNorm:
    def test_frozen_partial_sum_value(self):
        # pi_{2,1} of the 3-step partial-sum map into l^2: sqrt(3), attained
        # at the last point mass
        T = LinearMap(
            FiniteMeasureSpace.unit(3), 1, FiniteMeasureSpace.unit(3), 2,
            np.triu(np.ones((3, 3))).T,
        )
        est = summing_norm_estimate(2, 1, T, tuple_cap=3, budget=BUDGET)
        assert est.value == pytest.approx(math.sqrt(3.0), rel=1e-6)

    def test_dominates_operator_norm(self, w3_space):
        # pi_{q,q} >= operator norm; the search is a lower bound, so allow
        # a small one-sided slack at this budget
        rng = np.random.default_rng(31)
        M = np.outer(rng.standard_normal(3), rng.standard_normal(3))
        T = LinearMap(w3_space, 2, w3_space, 2, M)
        from multinorm import operator_norm

        est = summing_norm_estimate(2, 2, T, tuple_cap=3, budget=BUDGET.scaled(restarts=64, max_iter=400))
        ref = operator_norm(T).value
        assert est.value >= ref * (1 - 2e-2)

    def test_cap_monotone(self):
        rng = np.random.default_rng(32)
        sp = FiniteMeasureSpace.unit(3)
        T = LinearMap(sp, 1, sp, 2, rng.standard_normal((3, 3)))
        vals = [
            summing_norm_estimate(2, 1, T, tuple_cap=c, budget=BUDGET).value
            for c in (1, 2, 3)
        ]
        for a, b in zip(vals, vals[1:]):
            assert b >= a * (1 - 1e-9)

    def test_adjoint_duality_bracket(self):
        rng = np.random.default_rng(33)
        for k in range(6):
            m = int(rng.integers(2, 5))
            dom = FiniteMeasureSpace.unit(m)
            cod = random_space(rng, m)
            pcod = rng.choice([1.0, 1.5, 2.0])
            T = LinearMap(dom, 1, cod, pcod, rng.standard_normal((m, m)))
            alpha = column_multi_bound(1, 2, T, BUDGET)
            pi = summing_norm_estimate(2, 1, T.adjoint(), tuple_cap=m, budget=BUDGET)
            assert pi.value <= alpha.value * (1 + 1e-9) + 1e-12, k
            assert pi.value >= 0.95 * alpha.value - 1e-12, k

    def test_rejects_empty_cap(self, w3_space):
        T = LinearMap(w3_space, 2, w3_space, 2, np.eye(3))
        with pytest.raises(InputError):
            summing_norm_estimate(2, 1, T, tuple_cap=0)


class TestPartialSumOperator:
    def test_shape(self):
        T = partial_sum_operator(4)
        assert T.matrix.shape == (4, 4)
        assert float(T.domain_p) == 1.0
        assert T.codomain_p.is_inf
        assert np.array_equal(T.matrix, np.triu(np.ones((4, 4))))

    def test_tail_sums(self):
        T = partial_sum_operator(3)
        x = np.array([1.0, 10.0, 100.0])
        assert np.allclose(T.matrix @ x, [111.0, 110.0, 100.0])

    def test_rejects_bad_size(self):
        with pytest.raises(InputError):
            partial_sum_operator(0)
