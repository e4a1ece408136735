import math

import numpy as np
import pytest

import oracles as O
from multinorm import (
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    OptimizerBudget,
    SpecMismatchError,
    VectorTuple,
    column_multi_bound,
    max_spec,
    mb_operator_norm,
    min_spec,
    multi_bound_set,
    multi_norm,
    partial_sum_operator,
    pq_spec,
)
from conftest import random_space

BUDGET = OptimizerBudget(restarts=32, max_iter=300, seed=23)


class TestMultiBoundSet:
    def test_singleton(self, w3_space):
        v = LpVector(w3_space, 1, np.array([1.0, -2.0, 0.5]))
        res = multi_bound_set(max_spec(), [v], BUDGET)
        assert res.collapse_length == 1
        assert res.value == pytest.approx(v.norm, rel=1e-12)

    def test_repeats_collapse(self, w3_space):
        v = LpVector(w3_space, 1, np.array([1.0, -2.0, 0.5]))
        u = LpVector(w3_space, 1, np.array([0.0, 1.0, 1.0]))
        res = multi_bound_set(max_spec(), [v, u, v, u, v], BUDGET)
        assert res.collapse_length == 2
        ref = multi_bound_set(max_spec(), [v, u], BUDGET)
        assert res.value == pytest.approx(ref.value, rel=1e-12)

    def test_matches_oracle_max(self):
        rng = np.random.default_rng(61)
        sp = random_space(rng, 4)
        B = [LpVector(sp, 1, rng.standard_normal(4)) for _ in range(3)]
        res = multi_bound_set(max_spec(), B, BUDGET)
        coords = np.array([b.coords for b in B])
        assert res.certified
        assert res.value == pytest.approx(O.max_value_l1(coords, sp.weights), abs=1e-12)

    def test_hull_never_exceeds(self):
        # averaging two elements cannot raise the bound
        rng = np.random.default_rng(62)
        sp = random_space(rng, 4)
        B = [LpVector(sp, 1, rng.standard_normal(4)) for _ in range(3)]
        base = multi_bound_set(max_spec(), B, BUDGET)
        mixed = B + [LpVector(sp, 1, 0.5 * (B[0].coords + B[1].coords))]
        res = multi_bound_set(max_spec(), mixed, BUDGET)
        assert res.value <= base.value * (1 + 1e-9)

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            multi_bound_set(max_spec(), [], BUDGET)

    def test_mixed_spaces_rejected(self, w3_space):
        other = FiniteMeasureSpace.unit(3)
        with pytest.raises(InputError):
            multi_bound_set(
                max_spec(),
                [LpVector(w3_space, 1, np.ones(3)), LpVector(other, 1, np.ones(3))],
                BUDGET,
            )


class TestColumnMultiBound:
    def test_needs_l1_domain(self, w3_space):
        T = LinearMap(w3_space, 2, w3_space, 2, np.eye(3))
        with pytest.raises(SpecMismatchError):
            column_multi_bound(1, 2, T, BUDGET)

    def test_zero_map(self, w3_space):
        T = LinearMap(FiniteMeasureSpace.unit(3), 1, w3_space, 2, np.zeros((3, 3)))
        res = column_multi_bound(1, 2, T, BUDGET)
        assert res.certified and res.value == 0.0

    def test_pq11_columns_against_oracle(self):
        rng = np.random.default_rng(63)
        dom = FiniteMeasureSpace.unit(4)
        cod = random_space(rng, 4)
        M = rng.standard_normal((4, 4))
        T = LinearMap(dom, 1, cod, 1, M)
        res = column_multi_bound(1, 1, T, BUDGET)
        ref = O.max_value_l1(M.T, cod.weights)
        assert res.value <= ref * (1 + 1e-9)
        assert res.value >= 0.98 * ref

    def test_agrees_with_exact_vertex_enumeration(self):
        # l^1 codomain and p = 1: the dual polytope's vertices enumerate
        # exactly, so the search must reproduce the combinatorial value
        rng = np.random.default_rng(64)
        dom = FiniteMeasureSpace.unit(3)
        cod = random_space(rng, 3)
        T = LinearMap(dom, 1, cod, 1, rng.standard_normal((3, 3)))
        res = column_multi_bound(1, 2, T, BUDGET)
        ref = O.pq_value(T.matrix.T, cod.weights, 1.0, 1.0, 2.0)
        assert res.value == pytest.approx(ref, rel=1e-9)

    def test_vertex_enumeration_batch(self):
        rng = np.random.default_rng(69)
        for k in range(8):
            m = int(rng.integers(2, 5))
            dom = FiniteMeasureSpace.unit(m)
            cod = random_space(rng, m)
            T = LinearMap(dom, 1, cod, 1, rng.standard_normal((m, m)))
            q = float(rng.choice([1.5, 2.0, 3.0]))
            res = column_multi_bound(1, q, T, BUDGET)
            ref = O.pq_value(T.matrix.T, cod.weights, 1.0, 1.0, q)
            assert res.value <= ref * (1 + 1e-9), (k, q)
            assert res.value >= ref * (1 - 5e-3), (k, q)

    def test_growth_instance_against_oracle(self):
        # sup-norm codomain, diagonal family: both searches land within a
        # mutual two percent band
        T = partial_sum_operator(2)
        res = column_multi_bound(2, 2, T, OptimizerBudget(seed=42))
        ref = O.pq_value(T.matrix.T, np.ones(2), math.inf, 2.0, 2.0, samples=800)
        assert abs(res.value - ref) <= 2e-2 * max(res.value, ref)

    def test_scaling(self):
        rng = np.random.default_rng(65)
        dom = FiniteMeasureSpace.unit(3)
        cod = random_space(rng, 3)
        M = rng.standard_normal((3, 3))
        a = column_multi_bound(1, 2, LinearMap(dom, 1, cod, 2, M), BUDGET)
        b = column_multi_bound(1, 2, LinearMap(dom, 1, cod, 2, 3.0 * M), BUDGET)
        assert b.value == pytest.approx(3.0 * a.value, rel=1e-9)


class TestMbOperatorNorm:
    def test_k_max_validation(self, w3_space):
        T = LinearMap(w3_space, 1, w3_space, 2, np.eye(3))
        with pytest.raises(InputError):
            mb_operator_norm(min_spec(), pq_spec(1, 2), T, k_max=0, budget=BUDGET)

    def test_zero_map(self, w3_space):
        T = LinearMap(w3_space, 1, w3_space, 2, np.zeros((3, 3)))
        res = mb_operator_norm(min_spec(), pq_spec(1, 2), T, k_max=2, budget=BUDGET)
        assert res.certified and res.value == 0.0

    def test_monotone_in_k_max(self):
        rng = np.random.default_rng(66)
        dom = FiniteMeasureSpace.unit(3)
        cod = random_space(rng, 3)
        T = LinearMap(dom, 1, cod, 2, rng.standard_normal((3, 3)))
        vals = [
            mb_operator_norm(min_spec(), pq_spec(1, 2), T, k_max=k, budget=BUDGET).value
            for k in (1, 2, 3)
        ]
        for a, b in zip(vals, vals[1:]):
            assert b >= a * (1 - 1e-12)

    def test_matches_column_bound_for_l1_domain(self):
        # amplification from the smallest level structure reproduces the
        # column supremum on l^1 domains
        rng = np.random.default_rng(67)
        for k in range(4):
            m = int(rng.integers(2, 4))
            dom = FiniteMeasureSpace.unit(m)
            cod = random_space(rng, m)
            T = LinearMap(dom, 1, cod, float(rng.choice([1.0, 2.0])), rng.standard_normal((m, m)))
            a = mb_operator_norm(min_spec(), pq_spec(1, 2), T, k_max=m, budget=BUDGET)
            b = column_multi_bound(1, 2, T, BUDGET)
            scale = max(1.0, b.value)
            assert abs(a.value - b.value) <= 5e-3 * scale, k

    def test_dominates_operator_norm_at_k1(self, w3_space):
        # k = 1 tuples include the operator-norm witness direction
        rng = np.random.default_rng(68)
        T = LinearMap(FiniteMeasureSpace.unit(3), 1, w3_space, 2, rng.standard_normal((3, 3)))
        from multinorm import operator_norm

        res = mb_operator_norm(min_spec(), pq_spec(1, 2), T, k_max=1, budget=BUDGET)
        ref = operator_norm(T).value
        assert res.value >= ref * (1 - 5e-3)
