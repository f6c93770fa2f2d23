"""Natural map, index-set residuals, and the scalar min inequality."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcpkit import (
    ComplexityGuardError,
    InputError,
    PcpInstance,
    PolyMap,
    Polynomial,
    leading_min_map,
    min_phi,
    min_phi_values,
    natural_map,
    phi_residual,
    r_residual,
    random_instance,
    scalar_min_bound,
)

from conftest import scalar_instance


def exhaustive_min_phi(inst, x):
    """Independent oracle: literally walk all 2^n index sets."""
    fx = inst.f.evaluate(x)
    gx = inst.g.evaluate(x)
    n = inst.n
    best = np.inf
    best_set = None
    for mask in range(1 << n):
        total = 0.0
        for i in range(n):
            if mask & (1 << i):
                total += abs(fx[i]) + max(-gx[i], 0.0)
            else:
                total += max(-fx[i], 0.0) + abs(gx[i])
        subset = tuple(i for i in range(n) if mask & (1 << i))
        key = (total, len(subset), subset)
        if best_set is None or key < (best, len(best_set), best_set):
            best, best_set = total, subset
    return best, best_set


class TestNaturalMap:
    def test_equal_maps(self, hyperbola_pair):
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = rng.uniform(-3, 3, size=2)
            assert np.allclose(
                natural_map(hyperbola_pair, x), hyperbola_pair.f.evaluate(x)
            )

    def test_scalar_example(self, scalar_shift):
        assert natural_map(scalar_shift, [0.5]) == pytest.approx(-0.5)

    def test_hyperbola_sequence(self, hyperbola_pair):
        for k in (2.0, 5.0, 50.0):
            value = natural_map(hyperbola_pair, [k, 1.0 / k])
            assert np.allclose(value, [1.0 / k - 1.0, 0.0])

    def test_zero_iff_solution(self, affine_shift):
        m_sol = natural_map(affine_shift, [1.0, 1.0])
        assert np.all(m_sol == 0.0)
        fx = affine_shift.f.evaluate([1.0, 1.0])
        gx = affine_shift.g.evaluate([1.0, 1.0])
        assert np.all(fx >= 0) and np.all(gx >= 0) and fx @ gx == 0.0
        assert np.any(natural_map(affine_shift, [0.5, 0.5]) != 0.0)


class TestPhi:
    def test_scalar_examples(self, scalar_shift):
        assert phi_residual(scalar_shift, (), [0.5]) == pytest.approx(0.5)
        assert phi_residual(scalar_shift, (0,), [0.5]) == pytest.approx(1.0)

    def test_zero_at_solution_with_active_set(self, affine_shift):
        # at (1, 1): f = (1, 1) > 0 and g = 0, so the empty set fits
        assert phi_residual(affine_shift, (), [1.0, 1.0]) == 0.0

    def test_index_out_of_range(self, affine_shift):
        with pytest.raises(InputError):
            phi_residual(affine_shift, (5,), [0.0, 0.0])

    def test_min_phi_scalar(self, scalar_shift):
        value, argmin = min_phi(scalar_shift, [0.5])
        assert value == pytest.approx(0.5)
        assert argmin == ()

    def test_min_phi_at_solution(self, affine_shift):
        value, argmin = min_phi(affine_shift, [1.0, 1.0])
        assert value == 0.0
        assert argmin == ()

    def test_min_phi_matches_exhaustive_oracle(self):
        rng = np.random.default_rng(7)
        for seed in range(6):
            n = int(rng.integers(1, 4))
            inst = random_instance(n, [2] * n, [2] * n, seed)
            for _ in range(50):
                x = rng.uniform(-3, 3, size=n)
                value, argmin = min_phi(inst, x)
                oracle_value, oracle_set = exhaustive_min_phi(inst, x)
                assert value == pytest.approx(oracle_value, rel=1e-12, abs=1e-12)
                assert argmin == oracle_set

    def test_min_phi_guard(self):
        inst = PcpInstance(PolyMap.identity(25), PolyMap.identity(25))
        with pytest.raises(ComplexityGuardError):
            min_phi(inst, np.zeros(25))

    def test_sandwich_on_random_samples(self):
        # ||m|| <= min_phi <= 2 sqrt(n) ||m||, checked against the
        # exhaustive oracle values on 10^4 points
        rng = np.random.default_rng(123)
        inst = random_instance(3, [2, 1, 2], [1, 2, 2], 99)
        pts = rng.uniform(-4, 4, size=(10_000, 3))
        values = min_phi_values(inst, pts)
        m_norms = np.linalg.norm(natural_map(inst, pts), axis=1)
        assert np.all(m_norms <= values + 1e-12)
        assert np.all(values <= 2.0 * np.sqrt(3) * m_norms + 1e-12)
        # oracle agreement on a slice
        for x in pts[:100]:
            oracle_value, _ = exhaustive_min_phi(inst, x)
            value, _ = min_phi(inst, x)
            assert value == pytest.approx(oracle_value, rel=1e-12, abs=1e-12)


class TestRResidual:
    def test_solution_point(self, hyperbola_pair):
        assert r_residual(hyperbola_pair, [1.0, 1.0]) == 0.0

    def test_scalar_example(self, scalar_shift):
        # 0 + 0.5 + sqrt(0.25) = 1.0
        assert r_residual(scalar_shift, [0.5]) == pytest.approx(1.0)

    def test_dominates_natural_norm(self):
        rng = np.random.default_rng(5)
        inst = random_instance(2, [2, 2], [2, 2], 31)
        pts = rng.uniform(-5, 5, size=(10_000, 2))
        r = r_residual(inst, pts)
        m = np.linalg.norm(natural_map(inst, pts), axis=1)
        assert np.all(r >= m)


class TestScalarMinBound:
    def test_examples(self):
        assert scalar_min_bound(1.0, -2.0) == (2.0, 4.0)
        assert scalar_min_bound(0.0, 0.0) == (0.0, 0.0)

    def test_exhaustive_grid(self):
        grid = np.round(np.arange(-5.0, 5.0 + 0.05, 0.1), 10)
        violations = 0
        for a in grid:
            for b in grid:
                lhs, rhs = scalar_min_bound(a, b)
                violations += lhs > rhs
        assert violations == 0

    @given(
        st.floats(-1e6, 1e6, allow_nan=False),
        st.floats(-1e6, 1e6, allow_nan=False),
    )
    @settings(max_examples=500)
    def test_property(self, a, b):
        lhs, rhs = scalar_min_bound(a, b)
        assert lhs <= rhs


class TestLeadingMinMap:
    def test_affine(self, affine_shift):
        # both leading terms are Id, so the leading min map is x
        rng = np.random.default_rng(2)
        for _ in range(10):
            x = rng.uniform(-3, 3, size=2)
            assert np.allclose(leading_min_map(affine_shift, x), x)

    def test_hyperbola(self, hyperbola_pair):
        # leading pair is (0, xy) twice
        assert np.allclose(leading_min_map(hyperbola_pair, [2.0, 3.0]), [0.0, 6.0])

    def test_homogeneous_fixed_point(self, identity_pair):
        x = np.array([0.5, -1.5])
        assert np.allclose(
            leading_min_map(identity_pair, x), natural_map(identity_pair, x)
        )


class TestInstanceValidation:
    def test_arity_mismatch(self):
        with pytest.raises(InputError):
            PcpInstance(PolyMap.identity(2), PolyMap.identity(3))

    def test_constant_map_rejected(self):
        const = PolyMap((Polynomial.constant(1, 1.0),))
        with pytest.raises(InputError):
            PcpInstance(const, PolyMap.identity(1))

    def test_cached_degrees(self, hyperbola_pair):
        assert hyperbola_pair.n == 2
        assert hyperbola_pair.degree_f == 2
        assert hyperbola_pair.degree_g == 2
        assert hyperbola_pair.degree == 2

    def test_scalar_instance_helper(self):
        inst = scalar_instance({(1,): 1.0}, {(2,): 1.0, (0,): -1.0})
        assert inst.n == 1 and inst.degree == 2
