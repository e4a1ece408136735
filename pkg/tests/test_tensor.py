"""Tensor bridge: coordinate rewrites, injective/projective values, level-map
amplification."""

import numpy as np
import pytest

import oracles as O
from multinorm import (
    FiniteMeasureSpace,
    InputError,
    LpVector,
    OptimizerBudget,
    TensorElement,
    VectorTuple,
    amplification_check,
    coordinate_tuple,
    injective_tensor_norm,
    lattice_spec,
    max_spec,
    min_spec,
    multi_norm,
    multinorm_tensor_norm,
    parse_spec,
    projective_upper_bound,
)


def _vec(space, p, coords):
    return LpVector(space, p, np.asarray(coords, dtype=float))


def _random_tensor(rng, m=3, N=3, k=2, base_p=1, weighted=True):
    w = rng.uniform(0.3, 2.0, size=m) if weighted else np.ones(m)
    space = FiniteMeasureSpace(tuple(f"t{i}" for i in range(m)), w)
    pairs = [
        (rng.standard_normal(N), _vec(space, base_p, rng.standard_normal(m)))
        for _ in range(k)
    ]
    return TensorElement.build(N, pairs)


class TestTensorElement:
    def test_rejects_bad_level_size(self, w3_space):
        x = _vec(w3_space, 1, [1.0, 0.0, 0.0])
        with pytest.raises(InputError):
            TensorElement.build(0, [(np.ones(0), x)])

    def test_rejects_empty(self):
        with pytest.raises(InputError):
            TensorElement(2, ())

    def test_rejects_level_length_mismatch(self, w3_space):
        x = _vec(w3_space, 1, [1.0, 0.0, 0.0])
        with pytest.raises(InputError):
            TensorElement.build(2, [([1.0, 0.0, 3.0], x)])

    def test_rejects_mixed_base(self, w3_space):
        other = FiniteMeasureSpace(("u",), (1.0,))
        with pytest.raises(InputError):
            TensorElement.build(
                2,
                [
                    ([1.0, 0.0], _vec(w3_space, 1, [1.0, 0.0, 0.0])),
                    ([0.0, 1.0], _vec(other, 1, [1.0])),
                ],
            )

    def test_from_tuple_round_trips(self, t1):
        tau = TensorElement.from_tuple(t1)
        back = coordinate_tuple(tau)
        assert back.space == t1.space and back.p == t1.p
        assert np.array_equal(back.coords, t1.coords)

    def test_coordinate_rewrite_by_hand(self, w3_space):
        # y_j = sum_i a_i(j) x_i, checked entry by entry
        x1 = _vec(w3_space, 1, [1.0, 2.0, -1.0])
        x2 = _vec(w3_space, 1, [0.0, 1.0, 1.0])
        tau = TensorElement.build(2, [([1.0, 2.0], x1), ([0.0, 1.0], x2)])
        Y = coordinate_tuple(tau)
        assert np.allclose(Y.coords[0], [1.0, 2.0, -1.0])
        assert np.allclose(Y.coords[1], [2.0, 5.0, -1.0])


class TestInjective:
    def test_matches_min_multinorm(self):
        # both sides are the operator norm out of l^1_N
        rng = np.random.default_rng(7)
        for base_p in (1, 2, "inf"):
            tau = _random_tensor(rng, base_p=base_p)
            inj = injective_tensor_norm(tau)
            mn = multinorm_tensor_norm(min_spec(), tau)
            assert inj.certified
            assert inj.value == pytest.approx(mn.value, rel=1e-9)

    def test_value_is_largest_column(self):
        rng = np.random.default_rng(11)
        tau = _random_tensor(rng, m=4, N=3, k=3, base_p=2)
        Y = coordinate_tuple(tau)
        ref = max(O.lp(Y.coords[j], Y.space.weights, 2.0) for j in range(3))
        assert injective_tensor_norm(tau).value == pytest.approx(ref, rel=1e-12)

    def test_elementary_tensor_is_cross(self, w3_space):
        x = _vec(w3_space, 1, [1.0, 2.0, -1.0])
        tau = TensorElement.build(2, [([2.0, -1.0], x)])
        # sup|a| * ||x|| = 2 * 4
        assert injective_tensor_norm(tau).value == pytest.approx(8.0, abs=1e-12)


class TestCrossNorm:
    """On an elementary tensor a (x) x every multi-norm collapses to
    sup_j |a_j| times the base norm: min and max pinch there."""

    SPECS = ("min", "max", "lattice", "std:2", "pq:1,2", "pq:1,1")

    @pytest.mark.parametrize("name", SPECS)
    def test_elementary_value(self, name, w3_space):
        x = _vec(w3_space, 1, [1.0, 2.0, -1.0])
        tau = TensorElement.build(3, [([2.0, -1.0, 0.5], x)])
        est = multinorm_tensor_norm(parse_spec(name), tau)
        assert est.certified
        assert est.value == pytest.approx(8.0, rel=1e-9)

    def test_elementary_batch(self):
        rng = np.random.default_rng(23)
        for k in range(6):
            m, N = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            w = rng.uniform(0.3, 2.0, size=m)
            space = FiniteMeasureSpace(tuple(f"t{i}" for i in range(m)), w)
            a = rng.standard_normal(N)
            x = _vec(space, 1, rng.standard_normal(m))
            tau = TensorElement.build(N, [(a, x)])
            want = float(np.abs(a).max()) * x.norm
            for name in self.SPECS:
                est = multinorm_tensor_norm(parse_spec(name), tau)
                assert est.value == pytest.approx(want, rel=1e-9), name


class TestProjective:
    def test_pinches_on_l1_base(self):
        # atom decomposition meets the certified max value exactly
        rng = np.random.default_rng(3)
        for k in range(5):
            tau = _random_tensor(rng, m=3, N=3, k=2, base_p=1)
            proj = projective_upper_bound(tau)
            ref = multi_norm(max_spec(), coordinate_tuple(tau))
            assert ref.certified
            assert proj.certified
            assert proj.value == pytest.approx(ref.value, rel=1e-12)

    def test_dominates_max_multinorm(self):
        rng = np.random.default_rng(5)
        for base_p in (2, 1.5):
            tau = _random_tensor(rng, m=3, N=3, k=2, base_p=base_p)
            proj = projective_upper_bound(tau)
            mx = multinorm_tensor_norm(max_spec(), tau)
            assert proj.value >= mx.value * (1 - 1e-9)

    def test_shared_factor_collapses(self, w3_space):
        # a1 (x) x + a2 (x) x is rank one; the factor search must not pay
        # for the split presentation
        x = _vec(w3_space, 2, [1.0, -1.0, 2.0])
        a1, a2 = np.array([1.0, 3.0]), np.array([2.0, -1.0])
        tau = TensorElement.build(2, [(a1, x), (a2, x)])
        proj = projective_upper_bound(tau)
        want = float(np.abs(a1 + a2).max()) * x.norm
        assert proj.value <= want * (1 + 1e-9)
        naive = (np.abs(a1).max() + np.abs(a2).max()) * x.norm
        assert proj.value < naive * 0.85

    def test_sound_versus_given_presentation(self):
        rng = np.random.default_rng(17)
        tau = _random_tensor(rng, m=4, N=2, k=3, base_p=3)
        given = sum(float(np.abs(a).max()) * x.norm for a, x in tau.summands)
        assert projective_upper_bound(tau).value <= given * (1 + 1e-12)

    def test_deterministic(self):
        rng = np.random.default_rng(29)
        tau = _random_tensor(rng, m=3, N=3, k=2, base_p=2)
        first = projective_upper_bound(tau)
        second = projective_upper_bound(tau)
        assert first.value == second.value


class TestBracketing:
    @pytest.mark.parametrize("name", ["min", "lattice", "std:2", "pq:1,2", "max"])
    def test_injective_below_projective(self, name):
        rng = np.random.default_rng(41)
        for k in range(4):
            tau = _random_tensor(rng, m=3, N=3, k=2, base_p=1)
            lo = injective_tensor_norm(tau).value
            hi = projective_upper_bound(tau).value
            mid = multinorm_tensor_norm(parse_spec(name), tau).value
            scale = max(1.0, hi)
            assert lo <= mid + 1e-9 * scale
            assert mid <= hi + 1e-9 * scale


class TestAmplification:
    def test_identity_map_is_tight(self, t1):
        rep = amplification_check(max_spec(), np.eye(t1.n), t1)
        assert rep["pass"] and rep["factor"] == 1.0
        assert rep["lhs"] == pytest.approx(rep["rhs"], rel=1e-12)

    def test_permutation_preserves_value(self, t1):
        P = np.array([[0.0, 1.0], [1.0, 0.0]])
        rep = amplification_check(lattice_spec(), P, t1)
        assert rep["pass"]
        assert rep["lhs"] == pytest.approx(rep["rhs"], rel=1e-12)

    def test_scaling_row(self, t1):
        rep = amplification_check(max_spec(), 3.0 * np.eye(t1.n), t1)
        assert rep["pass"] and rep["factor"] == 3.0

    def test_rejects_bad_shape(self, t1):
        with pytest.raises(InputError):
            amplification_check(max_spec(), np.ones((2, 3)), t1)

    @pytest.mark.parametrize("name", ["min", "max", "lattice", "std:2", "pq:1,2"])
    def test_random_level_maps(self, name):
        rng = np.random.default_rng(59)
        spec = parse_spec(name)
        for k in range(8):
            m, n, rows = int(rng.integers(2, 5)), int(rng.integers(1, 4)), int(
                rng.integers(1, 4)
            )
            w = rng.uniform(0.3, 2.0, size=m)
            space = FiniteMeasureSpace(tuple(f"t{i}" for i in range(m)), w)
            t = VectorTuple.from_array(space, 1, rng.standard_normal((n, m)))
            T = rng.standard_normal((rows, n))
            assert amplification_check(spec, T, t)["pass"]

    def test_optimizer_backed_spec(self):
        # sup-base pq runs the search; the pulled-back witness keeps the
        # comparison sound even when both sides are lower bounds
        rng = np.random.default_rng(61)
        budget = OptimizerBudget(seed=7, restarts=24, max_iter=200)
        space = FiniteMeasureSpace(("a", "b", "c"), (1.0, 0.5, 2.0))
        t = VectorTuple.from_array(space, "inf", rng.standard_normal((3, 3)))
        T = rng.standard_normal((2, 3))
        assert amplification_check(parse_spec("pq:2,2"), T, t, budget)["pass"]
