import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from multinorm import (
    Exponent,
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    OptimizerBudget,
    VectorTuple,
    conjugate_exponent,
    identity_map,
    lattice_sup,
    lp_norm,
    norming_functional,
    operator_norm,
    pairing,
    point_mass,
)
from conftest import random_space

EXPONENTS = st.sampled_from([1, Fraction(3, 2), 2, 3, Fraction(7, 3), "inf"])


class TestExponent:
    def test_construction_forms(self):
        assert Exponent("inf").is_inf
        assert Exponent(2) == Exponent(2.0) == Exponent(Fraction(2))
        assert Exponent(1.5) == Exponent(Fraction(3, 2))
        assert float(Exponent("inf")) == math.inf

    def test_out_of_range(self):
        with pytest.raises(InputError):
            Exponent(0.5)
        with pytest.raises(InputError):
            Exponent(0)

    def test_conjugate_exact(self):
        assert conjugate_exponent(1).is_inf
        assert conjugate_exponent("inf") == Exponent(1)
        assert conjugate_exponent(2) == Exponent(2)
        assert conjugate_exponent(Fraction(3, 2)) == Exponent(3)
        assert conjugate_exponent(Fraction(7, 5)) == Exponent(Fraction(7, 2))

    def test_conjugate_involution(self):
        for p in (1, Fraction(3, 2), 2, Fraction(17, 9), "inf"):
            assert conjugate_exponent(conjugate_exponent(p)) == Exponent(p)

    def test_ordering(self):
        assert Exponent(1) < Exponent(Fraction(3, 2)) < Exponent(2) < Exponent("inf")
        assert Exponent("inf") <= Exponent("inf")


class TestSpace:
    def test_equality(self):
        a = FiniteMeasureSpace(("x", "y"), np.array([1.0, 2.0]))
        b = FiniteMeasureSpace(("x", "y"), np.array([1.0, 2.0]))
        c = FiniteMeasureSpace(("x", "y"), np.array([1.0, 3.0]))
        assert a == b
        assert a != c

    def test_unit(self):
        u = FiniteMeasureSpace.unit(4)
        assert u.size == 4
        assert np.array_equal(u.weights, np.ones(4))

    def test_bad_weights(self):
        with pytest.raises(InputError):
            FiniteMeasureSpace(("x",), np.array([-1.0]))
        with pytest.raises(InputError):
            FiniteMeasureSpace(("x", "y"), np.array([1.0]))


class TestLpVector:
    def test_norm_matches_reference(self, w3_space):
        x = LpVector(w3_space, Fraction(3, 2), np.array([1.0, -2.0, 0.5]))
        assert x.norm == pytest.approx(O.lp(x.coords, w3_space.weights, 1.5), abs=1e-14)

    def test_sup_norm_ignores_weights(self, w3_space):
        x = LpVector(w3_space, "inf", np.array([1.0, -3.0, 0.5]))
        assert x.norm == 3.0

    def test_complex(self, w3_space):
        x = LpVector(w3_space, 2, np.array([1j, 0.0, 0.0]))
        assert not x.is_real
        assert x.norm == pytest.approx(1.0)

    def test_validation(self, w3_space):
        with pytest.raises(InputError):
            LpVector(w3_space, 2, np.array([1.0, 2.0]))
        with pytest.raises(InputError):
            LpVector(w3_space, 2, np.array([np.nan, 0.0, 0.0]))

    @given(
        data=st.data(),
        m=st.integers(1, 5),
        p=EXPONENTS,
    )
    @settings(max_examples=60, deadline=None)
    def test_norm_reference_property(self, data, m, p):
        seed = data.draw(st.integers(0, 2**31 - 1))
        rng = np.random.default_rng(seed)
        sp = random_space(rng, m)
        x = LpVector(sp, p, rng.standard_normal(m))
        assert x.norm == pytest.approx(
            O.lp(x.coords, sp.weights, float(Exponent(p))), rel=1e-12, abs=1e-12
        )

    @given(data=st.data(), m=st.integers(1, 5), p=EXPONENTS)
    @settings(max_examples=60, deadline=None)
    def test_norming_functional_attains(self, data, m, p):
        seed = data.draw(st.integers(0, 2**31 - 1))
        rng = np.random.default_rng(seed)
        sp = random_space(rng, m)
        x = LpVector(sp, p, rng.standard_normal(m))
        lam = norming_functional(x)
        assert lam.p == conjugate_exponent(p)
        assert pairing(lam, x) == pytest.approx(x.norm, rel=1e-12, abs=1e-12)
        assert lam.norm <= 1.0 + 1e-12


class TestVectorTuple:
    def test_shape_accessors(self, t1):
        assert t1.n == 2
        assert t1.space.size == 3
        assert t1.norms() == pytest.approx([4.0, 2.5])

    def test_lattice_sup(self, t1):
        s = lattice_sup(t1)
        assert np.array_equal(s.coords, [1.0, 2.0, 1.0])
        assert s.norm == 4.0

    def test_mixed_spaces_rejected(self, w3_space):
        other = FiniteMeasureSpace.unit(3)
        with pytest.raises(InputError):
            VectorTuple(
                [
                    LpVector(w3_space, 1, np.ones(3)),
                    LpVector(other, 1, np.ones(3)),
                ]
            )

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            VectorTuple([])


class TestLinearMap:
    def test_apply_and_columns(self, w3_space):
        M = np.array([[1.0, 0.0, 2.0], [0.0, 1.0, -1.0], [3.0, 0.0, 0.0]])
        T = LinearMap(w3_space, 1, w3_space, 2, M)
        x = LpVector(w3_space, 1, np.array([1.0, 1.0, 1.0]))
        assert np.allclose(T.apply(x).coords, M @ x.coords)

    def test_adjoint_involution(self, w3_space):
        rng = np.random.default_rng(3)
        T = LinearMap(w3_space, Fraction(3, 2), FiniteMeasureSpace.unit(2), 3, rng.standard_normal((2, 3)))
        TT = T.adjoint().adjoint()
        assert np.allclose(TT.matrix, T.matrix)
        assert TT.domain_p == T.domain_p

    def test_adjoint_pairing(self, w3_space):
        # <Tx, lam> = <x, T* lam> under the weighted pairing
        rng = np.random.default_rng(4)
        cod = FiniteMeasureSpace(("u", "v"), np.array([2.0, 0.25]))
        T = LinearMap(w3_space, 2, cod, 3, rng.standard_normal((2, 3)))
        x = LpVector(w3_space, 2, rng.standard_normal(3))
        lam = LpVector(cod, Fraction(3, 2), rng.standard_normal(2))
        lhs = pairing(lam, T.apply(x))
        rhs = pairing(T.adjoint().apply(lam), x)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_shape_mismatch(self, w3_space):
        with pytest.raises(InputError):
            LinearMap(w3_space, 1, w3_space, 2, np.ones((2, 3)))


class TestOperatorNorm:
    def test_identity_certified(self, w3_space):
        est = operator_norm(identity_map(w3_space, 2))
        assert est.certified
        assert est.value == pytest.approx(1.0)

    def test_l1_domain_exact(self, w3_space):
        rng = np.random.default_rng(11)
        M = rng.standard_normal((3, 3))
        T = LinearMap(FiniteMeasureSpace(("x", "y", "z"), np.array([1.0, 2.0, 0.5])), 1, w3_space, 2, M)
        est = operator_norm(T)
        ref = O.operator_norm(M, T.domain_space.weights, 1.0, w3_space.weights, 2.0)
        assert est.certified
        assert est.value == pytest.approx(ref, rel=1e-12)

    def test_sup_to_sup_exact(self):
        rng = np.random.default_rng(12)
        M = rng.standard_normal((4, 4))
        sp = FiniteMeasureSpace.unit(4)
        est = operator_norm(LinearMap(sp, "inf", sp, "inf", M))
        assert est.certified
        assert est.value == pytest.approx(float(np.abs(M).sum(axis=1).max()), rel=1e-12)

    def test_hilbert_case_is_singular_value(self):
        rng = np.random.default_rng(13)
        M = rng.standard_normal((4, 3))
        dom = FiniteMeasureSpace(tuple("abc"), np.array([1.0, 4.0, 0.25]))
        cod = FiniteMeasureSpace(tuple("wxyz"), np.array([2.0, 1.0, 1.0, 0.5]))
        est = operator_norm(LinearMap(dom, 2, cod, 2, M))
        Ms = np.diag(np.sqrt(cod.weights)) @ M @ np.diag(1.0 / np.sqrt(dom.weights))
        assert est.certified
        assert est.value == pytest.approx(float(np.linalg.svd(Ms, compute_uv=False)[0]), rel=1e-12)

    def test_ascent_matches_sampling(self):
        rng = np.random.default_rng(14)
        M = rng.standard_normal((3, 3))
        dom = FiniteMeasureSpace(tuple("abc"), np.array([1.0, 0.5, 2.0]))
        cod = FiniteMeasureSpace(tuple("xyz"), np.array([1.0, 1.0, 3.0]))
        T = LinearMap(dom, Fraction(3, 2), cod, 3, M)
        est = operator_norm(T, OptimizerBudget(restarts=32, max_iter=400, seed=5))
        ref = O.operator_norm(M, dom.weights, 1.5, cod.weights, 3.0, samples=6000, seed=5)
        assert not est.certified
        assert est.value == pytest.approx(ref, rel=1e-6)

    def test_zero_map(self, w3_space):
        est = operator_norm(LinearMap(w3_space, 2, w3_space, 2, np.zeros((3, 3))))
        assert est.certified and est.value == 0.0


class TestBudgetAndEstimates:
    def test_rng_determinism(self):
        b = OptimizerBudget(seed=7)
        a1 = b.rng(3).standard_normal(5)
        a2 = b.rng(3).standard_normal(5)
        a3 = b.rng(4).standard_normal(5)
        assert np.array_equal(a1, a2)
        assert not np.array_equal(a1, a3)

    def test_scaled(self):
        b = OptimizerBudget(restarts=8, max_iter=100, seed=9)
        s = b.scaled(restarts=2, max_iter=50)
        assert (s.restarts, s.max_iter, s.seed) == (2, 50, 9)

    def test_estimates_jsonable(self, w3_space):
        est = operator_norm(identity_map(w3_space, 1))
        blob = json.dumps(est.to_dict())
        assert "value" in json.loads(blob)

    def test_point_mass(self, w3_space):
        x = point_mass(w3_space, 1, 2)
        assert lp_norm(x) == pytest.approx(2.0)  # weight of the third atom
