from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from multinorm import (
    Exponent,
    InputError,
    OptimizerBudget,
    SpecMismatchError,
    VectorTuple,
    axiom_report,
    dual_level_norm,
    dual_parity,
    dual_spec,
    extension_norm,
    lattice_spec,
    max_spec,
    min_spec,
    multi_norm,
    multi_norm_upper,
    parse_spec,
    pq_spec,
    standard_q_norm,
    standard_spec,
    weak_summing_norm,
)
from conftest import random_space

BUDGET = OptimizerBudget(restarts=24, max_iter=300, seed=17)


class TestSpecParsing:
    @pytest.mark.parametrize(
        "text",
        ["min", "max", "lattice", "std:2", "std:3/2", "pq:1,2", "pq:3/2,3", "ext:2,1,4", "dual(max)", "dual(pq:1,2)"],
    )
    def test_round_trip(self, text):
        spec = parse_spec(text)
        assert parse_spec(str(spec)) == spec

    def test_whitespace_and_case(self):
        assert parse_spec(" MAX ") == max_spec()
        assert parse_spec("Std:2") == standard_spec(2)

    @pytest.mark.parametrize(
        "text",
        ["bogus", "std:inf", "pq:2,1", "pq:2", "pq:1,inf", "ext:2,1", "ext:2,3,4", "ext:1,1,0", "dual()"],
    )
    def test_rejects(self, text):
        with pytest.raises(InputError):
            parse_spec(text)

    def test_exact_fraction_exponents(self):
        spec = parse_spec("pq:3/2,7/4")
        assert spec.p == Exponent(Fraction(3, 2))
        assert spec.q == Exponent(Fraction(7, 4))

    def test_dual_parity(self):
        assert dual_parity(min_spec()) == 0
        assert dual_parity(dual_spec(min_spec())) == 1
        assert dual_parity(dual_spec(dual_spec(min_spec()))) == 0


class TestClosedForms:
    def test_frozen_chain_on_l1(self, t1):
        # on an l^1 base the three certified families agree: 4.0 by hand
        for spec in (max_spec(), standard_spec(1), lattice_spec()):
            est = multi_norm(spec, t1, BUDGET)
            assert est.certified, spec
            assert est.value == pytest.approx(4.0, abs=1e-12), spec

    def test_min_is_largest_entry_norm(self, t1):
        est = multi_norm(min_spec(), t1, BUDGET)
        assert est.certified
        assert est.value == pytest.approx(4.0, abs=1e-12)

    def test_max_matches_oracle_on_l1(self):
        rng = np.random.default_rng(41)
        for k in range(20):
            m, n = int(rng.integers(1, 6)), int(rng.integers(1, 5))
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, 1, rng.standard_normal((n, m)))
            est = multi_norm(max_spec(), t, BUDGET)
            assert est.certified
            assert est.value == pytest.approx(O.max_value_l1(t.coords, sp.weights), abs=1e-12), k

    def test_lattice_matches_oracle(self):
        rng = np.random.default_rng(42)
        for p in (1.0, 1.5, 2.0, 3.0):
            m, n = 4, 3
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, Fraction(p).limit_denominator(10), rng.standard_normal((n, m)))
            est = multi_norm(lattice_spec(), t, BUDGET)
            assert est.certified
            assert est.value == pytest.approx(O.lattice_value(t.coords, sp.weights, p), rel=1e-12)

    def test_lattice_needs_finite_base(self, w3_space):
        t = VectorTuple.from_array(w3_space, "inf", np.ones((2, 3)))
        with pytest.raises(SpecMismatchError):
            multi_norm(lattice_spec(), t, BUDGET)

    def test_max_dual_description_on_l1(self, t1):
        # the largest multi-norm pairs against dual tuples with summed sup
        # norms at most one; random such tuples never beat the closed form
        rng = np.random.default_rng(43)
        est = multi_norm(max_spec(), t1, BUDGET)
        w = t1.space.weights
        for _ in range(200):
            L = rng.standard_normal(t1.coords.shape)
            budget_norms = np.abs(L).max(axis=1)
            L /= budget_norms.sum()
            val = abs(float(((t1.coords * L) @ w).sum()))
            assert val <= est.value + 1e-9


class TestStandardNorm:
    def test_exhaustive_matches_oracle(self):
        rng = np.random.default_rng(44)
        for base, q in ((1.0, 2.0), (1.0, 3.0), (1.5, 2.0), (2.0, 3.0)):
            m, n = int(rng.integers(2, 5)), int(rng.integers(2, 4))
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, Fraction(base).limit_denominator(10), rng.standard_normal((n, m)))
            est = standard_q_norm(q, t)
            ref = O.std_value(t.coords, sp.weights, base, q)
            assert est.certified
            assert est.value == pytest.approx(ref, abs=1e-12), (base, q)

    def test_q_equal_base_is_lattice(self):
        rng = np.random.default_rng(45)
        for p in (1.0, 1.5, 2.0):
            sp = random_space(rng, 5)
            t = VectorTuple.from_array(sp, Fraction(p).limit_denominator(10), rng.standard_normal((4, 5)))
            a = standard_q_norm(p, t)
            b = multi_norm(lattice_spec(), t, BUDGET)
            assert a.certified and b.certified
            assert a.value == pytest.approx(b.value, abs=1e-12)

    def test_greedy_assignment_matches_exhaustive_at_base(self):
        # q equal to the base exponent: the per-atom argmax assignment is
        # provably optimal, so the fast path must equal full enumeration
        rng = np.random.default_rng(46)
        for p in (1.0, 1.5, 2.0):
            for k in range(5):
                m, n = int(rng.integers(2, 6)), int(rng.integers(2, 5))
                sp = random_space(rng, m)
                t = VectorTuple.from_array(sp, Fraction(p).limit_denominator(10), rng.standard_normal((n, m)))
                greedy = standard_q_norm(p, t)
                ref = O.std_value(t.coords, sp.weights, p, p)
                assert greedy.certified
                assert greedy.value == pytest.approx(ref, abs=1e-12), (p, k)

    def test_local_search_is_sound_lower_bound(self):
        # partition cap forced to one: the fallback never overshoots the
        # exhaustive value and drops the certificate
        rng = np.random.default_rng(46)
        for k in range(10):
            m, n = 5, 3
            sp = random_space(rng, m)
            t = VectorTuple.from_array(sp, 1, rng.standard_normal((n, m)))
            full = standard_q_norm(2, t)
            capped = standard_q_norm(2, t, partition_cap=1)
            assert not capped.certified
            assert capped.value <= full.value * (1 + 1e-12), k

    def test_base_above_q_rejected(self, w3_space):
        t = VectorTuple.from_array(w3_space, 3, np.ones((2, 3)))
        with pytest.raises(SpecMismatchError):
            standard_q_norm(2, t)

    def test_sup_base_rejected(self, w3_space):
        t = VectorTuple.from_array(w3_space, "inf", np.ones((2, 3)))
        with pytest.raises(SpecMismatchError):
            standard_q_norm(2, t)


class TestPqFamily:
    def test_pq11_is_max(self):
        rng = np.random.default_rng(47)
        for k in range(5):
            sp = random_space(rng, 4)
            t = VectorTuple.from_array(sp, 1, rng.standard_normal((3, 4)))
            a = multi_norm(pq_spec(1, 1), t, BUDGET)
            b = multi_norm(max_spec(), t, BUDGET)
            assert b.certified
            assert a.value <= b.value * (1 + 1e-9)
            assert a.value >= 0.98 * b.value, k

    def test_monotone_in_parameters(self, t1):
        # nondecreasing in p, nonincreasing in q
        v11 = multi_norm(pq_spec(1, 1), t1, BUDGET).value
        v12 = multi_norm(pq_spec(1, 2), t1, BUDGET).value
        v22 = multi_norm(pq_spec(2, 2), t1, BUDGET).value
        assert v12 <= v11 * (1 + 5e-3)
        assert v22 >= v12 * (1 - 5e-3)

    def test_sandwich_between_min_and_max(self):
        rng = np.random.default_rng(48)
        sp = random_space(rng, 4)
        t = VectorTuple.from_array(sp, 1, rng.standard_normal((3, 4)))
        lo = multi_norm(min_spec(), t, BUDGET).value
        hi = multi_norm(max_spec(), t, BUDGET).value
        for p, q in ((1, 2), (Fraction(3, 2), 2), (2, 3)):
            v = multi_norm(pq_spec(p, q), t, BUDGET).value
            assert v >= lo * (1 - 5e-3)
            assert v <= hi * (1 + 1e-9)


class TestDualNorms:
    def test_dual_min_is_norm_sum(self, t1):
        est = dual_level_norm(dual_spec(min_spec()), t1, BUDGET)
        assert est.certified
        assert est.value == pytest.approx(sum(t1.norms()), rel=1e-12)

    def test_dual_max_is_weak_one_summing(self, t1):
        a = dual_level_norm(dual_spec(max_spec()), t1, BUDGET)
        b = weak_summing_norm(1, t1, budget=BUDGET)
        assert a.value == pytest.approx(b.value, rel=1e-9)

    def test_dual_lattice_is_modulus_sum_norm(self, t1):
        est = dual_level_norm(dual_spec(lattice_spec()), t1, BUDGET)
        ref = O.lp(np.abs(t1.coords).sum(axis=0), t1.space.weights, 1.0)
        assert est.certified
        assert est.value == pytest.approx(ref, rel=1e-12)

    def test_double_dual_strips(self, t1):
        inner = pq_spec(1, 2)
        a = multi_norm(inner, t1, BUDGET)
        b = multi_norm(dual_spec(dual_spec(inner)), t1, BUDGET)
        assert a.value == pytest.approx(b.value, rel=1e-12)

    def test_duality_pairing_bound(self, t1):
        # |<t, s>| <= dual(t) * primal(s) for the min/dual(min) pair
        rng = np.random.default_rng(49)
        dual_val = dual_level_norm(dual_spec(min_spec()), t1, BUDGET).value
        w = t1.space.weights
        for _ in range(100):
            s = rng.standard_normal(t1.coords.shape)
            st_ = VectorTuple.from_array(t1.space, 1, s)
            prim = multi_norm(min_spec(), st_, BUDGET).value
            num = abs(float(((t1.coords * s) @ w).sum()))
            assert num <= dual_val * prim * (1 + 1e-9)


class TestExtension:
    def test_tracks_pq_value(self):
        rng = np.random.default_rng(50)
        sp = random_space(rng, 3)
        t = VectorTuple.from_array(sp, 1, rng.standard_normal((3, 3)))
        for p, q in ((1, 1), (1, 2), (2, 2)):
            a = extension_norm(q, p, t.n, t, BUDGET)
            b = multi_norm(pq_spec(p, q), t, BUDGET)
            assert a.value <= b.value * (1 + 5e-3), (p, q)
            assert a.value >= b.value * (1 - 3e-2), (p, q)

    def test_monotone_in_target_size(self, t1):
        vals = [extension_norm(2, 1, k, t1, BUDGET).value for k in (1, 2, 4)]
        for a, b in zip(vals, vals[1:]):
            assert b >= a * (1 - 1e-12)


class TestMultiNormFrontend:
    def test_upper_dominates(self, t1):
        for text in ("max", "pq:1,2", "std:2"):
            spec = parse_spec(text)
            val = multi_norm(spec, t1, BUDGET).value
            up = multi_norm_upper(spec, t1)
            assert val <= up * (1 + 1e-9), text

    @given(data=st.data(), kind=st.sampled_from(["min", "max", "lattice", "std:2", "pq:1,2"]))
    @settings(max_examples=30, deadline=None)
    def test_homogeneity(self, data, kind):
        seed = data.draw(st.integers(0, 2**31 - 1))
        rng = np.random.default_rng(seed)
        sp = random_space(rng, 3)
        t = VectorTuple.from_array(sp, 1, rng.standard_normal((2, 3)))
        spec = parse_spec(kind)
        c = 2.5
        a = multi_norm(spec, t, BUDGET.scaled(restarts=8, max_iter=150))
        tc = VectorTuple.from_array(sp, 1, c * t.coords)
        b = multi_norm(spec, tc, BUDGET.scaled(restarts=8, max_iter=150))
        if a.certified:
            assert b.value == pytest.approx(c * a.value, rel=1e-12)
        else:
            assert b.value == pytest.approx(c * a.value, rel=5e-3)

    @given(data=st.data(), kind=st.sampled_from(["min", "max", "lattice", "std:2"]))
    @settings(max_examples=30, deadline=None)
    def test_entry_permutation_invariance(self, data, kind):
        seed = data.draw(st.integers(0, 2**31 - 1))
        rng = np.random.default_rng(seed)
        sp = random_space(rng, 3)
        X = rng.standard_normal((3, 3))
        spec = parse_spec(kind)
        a = multi_norm(spec, VectorTuple.from_array(sp, 1, X), BUDGET.scaled(restarts=8, max_iter=150))
        b = multi_norm(spec, VectorTuple.from_array(sp, 1, X[::-1]), BUDGET.scaled(restarts=8, max_iter=150))
        assert a.value == pytest.approx(b.value, rel=1e-12)

    def test_axiom_report_passes(self):
        rng = np.random.default_rng(51)
        for text in ("min", "max", "lattice", "std:2", "pq:1,2", "dual(max)"):
            sp = random_space(rng, 3)
            t = VectorTuple.from_array(sp, 1, rng.standard_normal((3, 3)))
            rep = axiom_report(parse_spec(text), t, BUDGET)
            assert rep["pass"], (text, rep)
