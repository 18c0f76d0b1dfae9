import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _samplers import XNORM_SAMPLERS, generic, rephase, with_phase_difference
from xsep.core import PERMUTATIONS, permute
from xsep.oracle import x_norm_oracle
from xsep.xnorm import (
    XBranch,
    beta_profile,
    lambda_big,
    omega_region,
    x_norm,
    x_norm_lower_bounds,
    x_norm_value,
)

SQRT2 = math.sqrt(2.0)
finite = st.floats(-3.0, 3.0, allow_nan=False)
cvec = st.lists(st.tuples(finite, finite), min_size=4, max_size=4).map(
    lambda xs: np.array([complex(a, b) for a, b in xs])
)


def brute(z, n=1 << 16):
    s = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    e = np.exp(1j * s)
    return float(np.max(np.abs(z[0] * e + np.conj(z[3])) + np.abs(z[1] * e + np.conj(z[2]))))


class TestExamples:
    def test_one_zero(self):
        res = x_norm([1, 1, 1, 0])
        assert res.value == 3.0
        assert res.branch is XBranch.ONE_ZERO

    def test_phase_pi_equal_magnitudes(self):
        res = x_norm([1, 1, 1, -1])
        assert res.value == pytest.approx(2 * SQRT2, abs=1e-12)
        assert res.branch is XBranch.PHASE_PI

    def test_two_two(self):
        res = x_norm([2j, 2, 1, 1])
        assert res.value == pytest.approx(2 * math.sqrt(5 + 2 * SQRT2), rel=1e-12)
        assert res.branch is XBranch.TWO_TWO

    def test_omega_interior(self):
        res = x_norm([-3, 1, 1, 1])
        assert res.value == pytest.approx(8 / math.sqrt(3), rel=1e-12)
        assert (res.branch, res.region) == (XBranch.PHASE_PI, 0)

    def test_omega_one(self):
        res = x_norm([-1, 3, 4, 5])
        assert res.value == pytest.approx(11.0, rel=1e-12)
        assert (res.branch, res.region) == (XBranch.PHASE_PI, 1)

    def test_zero_vector(self):
        assert x_norm([0, 0, 0, 0]).value == 0.0

    def test_phase_zero_is_l1(self):
        res = x_norm([1, 2, 3, 4])
        assert (res.value, res.branch) == (10.0, XBranch.PHASE0)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            x_norm([1, 1, 1, 1], tol=0.0)


class TestLambda:
    def test_examples(self):
        assert lambda_big(1, 1, 1, 1) == pytest.approx(2 * SQRT2, rel=1e-14)
        assert lambda_big(3, 1, 1, 1) == pytest.approx(8 / math.sqrt(3), rel=1e-14)

    @given(st.lists(st.floats(0.1, 10.0), min_size=4, max_size=4), st.floats(0.01, 100.0))
    def test_homogeneous(self, a, lam):
        assert lambda_big(*(lam * np.array(a))) == pytest.approx(lam * lambda_big(*a), rel=1e-12)

    def test_regions(self):
        assert omega_region(np.array([1.0, 1, 1, 1])) == 0
        assert omega_region(np.array([1.0, 3, 4, 5])) == 1
        assert omega_region(np.array([5.0, 4, 3, 1])) == 4


class TestBranchesAgainstBruteForce:
    @pytest.mark.parametrize("name", sorted(XNORM_SAMPLERS))
    def test_branch(self, name):
        rng = np.random.default_rng(sorted(XNORM_SAMPLERS).index(name))
        for _ in range(100):
            z = XNORM_SAMPLERS[name](rng)
            res = x_norm(z)
            assert res.branch.value == name
            assert res.value == pytest.approx(brute(z), abs=1e-7)

    def test_numeric_bracket_contains_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            z = generic(rng)
            res = x_norm(z)
            assert res.branch is XBranch.NUMERIC
            assert res.hi - res.lo <= 1e-12 * max(1.0, res.value) + 1e-15
            rep = x_norm_oracle(z)
            assert rep.lo <= res.hi + 1e-12
            assert res.lo <= rep.hi

    def test_closed_forms_match_numeric_machinery(self):
        # perturb the hypothesis by 1e-10 so the certified numeric branch runs on nearby data
        rng = np.random.default_rng(12)
        for name in ("Phase0", "PhasePi", "TwoTwo"):
            for _ in range(200):
                z = XNORM_SAMPLERS[name](rng)
                w = z * np.exp(1j * np.array([1e-10, 0, 0, 0]))
                w[0] *= 1 + 1e-10
                numeric = x_norm(w)
                assert numeric.branch is XBranch.NUMERIC
                assert numeric.value == pytest.approx(x_norm(z).value, rel=1e-8)

    def test_maximizer_sigma_attains_value(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            for sampler in [generic, *XNORM_SAMPLERS.values()]:
                z = sampler(rng)
                res = x_norm(z)
                e = np.exp(1j * res.maximizer_sigma)
                attained = abs(z[0] * e + np.conj(z[3])) + abs(z[1] * e + np.conj(z[2]))
                assert attained == pytest.approx(res.value, rel=1e-6, abs=1e-12)


class TestNormAxioms:
    @given(cvec, st.floats(-5, 5), st.floats(-5, 5))
    def test_homogeneity(self, z, re, im):
        alpha = complex(re, im)
        assert x_norm_value(alpha * z) == pytest.approx(abs(alpha) * x_norm_value(z), rel=1e-10, abs=1e-10)

    @given(cvec, cvec)
    def test_triangle(self, z, w):
        assert x_norm_value(z + w) <= x_norm_value(z) + x_norm_value(w) + 1e-10

    @given(cvec)
    def test_conjugation(self, z):
        assert x_norm_value(np.conj(z)) == pytest.approx(x_norm_value(z), rel=1e-9, abs=1e-12)

    @settings(max_examples=50)
    @given(cvec)
    def test_group_invariance(self, z):
        v = x_norm_value(z)
        conj = np.conj(z)
        images = [permute(z, p) for p in PERMUTATIONS]
        images += [np.array([z[0], conj[3], z[2], conj[1]]), np.array([z[0], z[1], conj[3], conj[2]])]
        for img in images:
            assert x_norm_value(img) == pytest.approx(v, rel=1e-9, abs=1e-12)

    def test_depends_on_magnitudes_and_abs_phi(self):
        rng = np.random.default_rng(14)
        for _ in range(300):
            z = generic(rng)
            assert x_norm_value(rephase(z, rng)) == pytest.approx(x_norm_value(z), rel=1e-9)

    def test_non_group_permutation_changes_value(self):
        z = np.array([1j, 1, 1j, 1])
        assert x_norm_value(z) == pytest.approx(4.0)
        assert x_norm_value(permute(z, (2, 1, 3, 4))) == pytest.approx(2 * SQRT2)


class TestLowerBounds:
    def test_equal_magnitudes_at_pi_attain_norm(self):
        bounds = dict(x_norm_lower_bounds([1, 1, 1, -1]))
        assert bounds["l1_over_sqrt2"] == pytest.approx(2 * SQRT2)

    def test_basis_vector(self):
        assert all(v <= 1.0 for _, v in x_norm_lower_bounds([1, 0, 0, 0]))

    def test_point_a_on_unit_sphere(self):
        h = 1 / (2 * SQRT2)
        assert x_norm_value([-h, h, h, h]) == pytest.approx(1.0, abs=1e-12)

    def test_bounds_hold(self):
        rng = np.random.default_rng(15)
        for _ in range(2000):
            z = generic(rng)
            res = x_norm(z)
            for _, lb in x_norm_lower_bounds(z):
                assert lb <= res.hi + 1e-12
            assert res.lo <= float(np.abs(z).sum()) + 1e-12


class TestBetaProfile:
    def test_equal_magnitudes(self):
        prof = beta_profile([1, 1, 1, 1], [0.0, math.pi])
        assert prof[0][1] == pytest.approx(4.0)
        assert prof[1][1] == pytest.approx(2 * SQRT2)

    def test_zero_magnitude_constant(self):
        vals = [v for _, v in beta_profile([1, 1, 1, 0], np.linspace(0, math.pi, 7))]
        assert vals == pytest.approx([3.0] * 7)

    def test_two_two_formula(self):
        phis = np.linspace(0, math.pi, 9)
        for phi, v in beta_profile([1, 2, 1, 2], phis):
            assert v == pytest.approx(2 * math.sqrt(5 + 4 * abs(math.cos(phi / 2))), rel=1e-12)

    def test_matches_rephased_vectors(self):
        rng = np.random.default_rng(16)
        r = rng.uniform(0.1, 2, 4)
        phis = np.linspace(0, math.pi, 11)
        for phi, v in beta_profile(r, phis):
            assert v == pytest.approx(brute(with_phase_difference(r, phi, rng)), abs=1e-7)
