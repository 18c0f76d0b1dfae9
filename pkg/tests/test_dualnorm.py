import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _samplers import DUAL_SAMPLERS, generic, mixed, rephase, with_phase_difference
from xsep.core import PERMUTATIONS, permute
from xsep.dualnorm import (
    DualBranch,
    dual_lower_bounds,
    dual_norm,
    dual_norm_numeric,
    dual_norm_real,
    dual_norm_three,
    dual_norm_two_two,
    dual_upper_bounds,
    real_case_data,
    triangle_class,
    two_two_formula,
    vk_test,
)
from xsep.oracle import dual_norm_oracle
from xsep.xnorm import x_norm

SQRT2 = math.sqrt(2.0)


def ratio(c, z):
    return float(np.real(np.dot(c, z))) / x_norm(z).hi


class TestExamples:
    def test_basis_vector(self):
        res = dual_norm([1, 0, 0, 0])
        assert (res.value, res.branch) == (1.0, DualBranch.TWO_ZEROS)
        np.testing.assert_allclose(res.certificate, [1, 0, 0, 0])

    @pytest.mark.parametrize("r, s", [(1.0, 1.0), (0.3, 2.0), (5.0, 0.01)])
    def test_minus_r_r_s_s(self, r, s):
        assert dual_norm([-r, r, s, s]).value == pytest.approx(math.hypot(r, s), rel=1e-12)

    @pytest.mark.parametrize("phi", np.linspace(-math.pi + 0.01, math.pi, 13))
    def test_equal_magnitudes(self, phi):
        rng = np.random.default_rng(0)
        c = with_phase_difference(np.full(4, 0.7), phi, rng)
        assert dual_norm(c).value == pytest.approx(0.7 * math.sqrt(1 + abs(math.sin(phi / 2))), rel=1e-9)

    def test_three_one_one_one(self):
        # phi = 0 is dispatched to the real case before the v_k shortcut; both give 3
        res = dual_norm([3, 1, 1, 1])
        assert res.value == 3.0
        assert res.branch is DualBranch.REAL_CASE
        res = dual_norm([3, 1, 1, np.exp(1j)])
        assert (res.value, res.branch) == (3.0, DualBranch.VK_SHORTCUT)

    def test_case_c(self):
        res = dual_norm([-1, 1, 1, 1])
        assert res.value == pytest.approx(SQRT2, rel=1e-14)
        assert (res.branch, res.detail) == (DualBranch.REAL_CASE, "C")

    def test_imaginary_fourth_entry(self):
        assert dual_norm([1, 1, 1, 1j]).value == pytest.approx(math.sqrt(1 + math.sin(math.pi / 4)), rel=1e-12)

    def test_zero_vector(self):
        assert dual_norm([0, 0, 0, 0]).value == 0.0


class TestRealCase:
    def test_examples(self):
        assert dual_norm_real([1, 1, 1, 1])[0] == 1.0
        assert real_case_data([1, 1, 1, 1]).case == "A"
        v, data = dual_norm_real([2, 1, 1, 1])
        assert (v, data.case) == (2.0, "A")
        assert np.prod(data.lambdas) < 0
        v, data = dual_norm_real([-1, 1, 1, 1])
        assert data.lambdas == (4.0, 4.0, 4.0, 4.0)
        assert data.ts == (-4.0, 4.0, 4.0, 4.0)
        assert (v, data.case) == (pytest.approx(SQRT2), "C")

    def test_rejects_complex(self):
        with pytest.raises(ValueError):
            dual_norm_real([1j, 1, 1, 1])

    def test_case_invariants(self):
        rng = np.random.default_rng(1)
        for _ in range(2000):
            c = rng.uniform(-2, 2, 4)
            d = real_case_data(c)
            lam, t = d.lambdas, d.ts
            prod = np.prod(lam)
            if d.case == "A":
                assert prod <= 0
            elif d.case == "B":
                assert prod > 0 and (t[0] * t[3] * lam[1] * lam[2] >= 0 or t[1] * t[2] * lam[0] * lam[3] <= 0)
            else:
                assert prod > 0 and t[0] * t[3] * lam[1] * lam[2] < 0 and t[1] * t[2] * lam[0] * lam[3] > 0

    def test_against_oracle(self):
        rng = np.random.default_rng(2)
        seen = set()
        for _ in range(60):
            c = rng.uniform(-2, 2, 4)
            v, data = dual_norm_real(c)
            seen.add(data.case)
            assert v == pytest.approx(dual_norm_oracle(c, starts=32).value, abs=1e-6)
        assert seen == {"A", "B", "C"}


class TestOneZero:
    def test_examples(self):
        assert dual_norm_three([3, 4, 5, 0]) == (5.0, "right")
        v, cls = dual_norm_three([2, 2, 2, 0])
        assert cls == "acute"
        assert v == pytest.approx(16 / math.sqrt(48), rel=1e-14)
        assert dual_norm_three([1, 1, 5, 0]) == (5.0, "none")
        assert dual_norm_three([2, 3, 4, 0])[1] == "obtuse"

    def test_requires_one_zero(self):
        with pytest.raises(ValueError):
            dual_norm_three([1, 1, 1, 1])

    def test_right_angle_boundary_is_continuous(self):
        # the acute formula tends to the longest side at the right angle
        for eps in (1e-4, 1e-6, 1e-8):
            v, cls = dual_norm_three([3, 4, 5 - eps, 0])
            assert cls == "acute"
            assert v == pytest.approx(5.0, abs=10 * eps)
        assert triangle_class(3, 4, 5 * (1 + 1e-14)) == "right"

    def test_phases_are_irrelevant(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            c = DUAL_SAMPLERS["OneZero"](rng)
            assert dual_norm(c * np.exp(1j * rng.uniform(-3, 3, 4))).value == pytest.approx(dual_norm(c).value)


class TestTwoTwo:
    def test_equal_sizes_give_t0_one(self):
        v, t0 = two_two_formula(1.3, 1.3, 1.0)
        assert t0 == pytest.approx(1.0)
        assert v == pytest.approx(1.3 * math.sqrt(1 + math.sin(0.5)))

    def test_phase_pi(self):
        v, t0 = two_two_formula(2.0, 0.5, math.pi)
        assert t0 == pytest.approx(4.0)
        assert v == pytest.approx(math.hypot(2.0, 0.5))

    def test_phase_zero(self):
        assert two_two_formula(2.0, 1.0, 0.0) == (2.0, None)

    def test_explicit_partition(self):
        c = np.array([1, 2, 2j, 1])
        assert dual_norm_two_two(c, 0) == dual_norm_two_two(c)
        with pytest.raises(ValueError):
            dual_norm_two_two([1, 2, 3, 4])

    def test_stable_for_nearly_equal_sizes(self):
        v1, _ = two_two_formula(1.0, 1.0 + 1e-13, 0.3)
        v2, _ = two_two_formula(1.0, 1.0, 0.3)
        assert v1 == pytest.approx(v2, rel=1e-12)


class TestVk:
    def test_examples(self):
        assert vk_test([1, 1, 1, 1]).v == (4.0, 4.0, 4.0, 4.0)
        d = vk_test([3, 1, 1, 1])
        assert d.v[0] == -16.0 and d.shortcut
        d = vk_test([5, 1, 1, 1])
        assert not d.quadrangle and d.v[0] <= 0

    def test_never_two_nonpositive(self):
        rng = np.random.default_rng(4)
        r = np.exp(rng.uniform(-3, 3, (100_000, 4)))
        sq = np.sum(r * r, axis=1, keepdims=True)
        prod = np.prod(r, axis=1, keepdims=True)
        v = r * (sq - 2 * r * r) + 2 * prod / r
        assert np.max(np.sum(v <= 0, axis=1)) <= 1
        for row in r[:200]:
            assert vk_test(row).v == pytest.approx(tuple(row * (np.sum(row**2) - 2 * row**2) + 2 * np.prod(row) / row))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            vk_test([1, 0, 1, 1])


class TestBranchesAgainstOracle:
    @pytest.mark.parametrize("name", sorted(DUAL_SAMPLERS))
    def test_branch(self, name):
        rng = np.random.default_rng(sorted(DUAL_SAMPLERS).index(name))
        for i in range(25):
            c = DUAL_SAMPLERS[name](rng)
            res = dual_norm(c)
            assert res.branch.value == name
            assert res.value == pytest.approx(dual_norm_oracle(c, starts=32, seed=i).value, abs=1e-6)

    def test_numeric_against_oracle(self):
        rng = np.random.default_rng(5)
        for i in range(25):
            c = generic(rng)
            res = dual_norm(c)
            rep = dual_norm_oracle(c, starts=32, seed=i)
            # the oracle's bracket is only as sharp as its own tolerance and SOCP solver accuracy
            slack = 1e-7 * max(1.0, rep.value)
            assert res.lo <= rep.hi + slack and rep.lo <= res.hi + slack

    def test_numeric_solver_reproduces_closed_forms(self):
        rng = np.random.default_rng(6)
        for name, sampler in DUAL_SAMPLERS.items():
            for _ in range(20):
                c = sampler(rng)
                lo, hi, z = dual_norm_numeric(c)
                value = dual_norm(c).value
                assert lo - 1e-9 <= value <= hi + 1e-9, name
                assert ratio(c, z) == pytest.approx(lo, abs=1e-9)


class TestCertificates:
    def test_numeric_bracket_and_certificate(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            c = generic(rng)
            res = dual_norm(c)
            if res.branch is not DualBranch.NUMERIC:
                continue
            assert res.hi - res.lo <= 1e-9 * max(1.0, res.value)
            assert ratio(c, res.certificate) == pytest.approx(res.lo, abs=1e-9)

    def test_closed_form_certificates(self):
        rng = np.random.default_rng(8)
        for sampler in DUAL_SAMPLERS.values():
            for _ in range(20):
                c = sampler(rng)
                res = dual_norm(c)
                assert ratio(c, res.certificate) == pytest.approx(res.value, abs=1e-8)

    def test_bidual(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            c = generic(rng)
            target = x_norm(c).value
            best = max(ratio_dual(c, generic(rng)) for _ in range(20))
            assert best <= target + 1e-4
            # equality is attained at z with c as its dual certificate
            z = generic(rng)
            w = dual_norm(z).certificate
            assert ratio_dual(w, z) == pytest.approx(x_norm(w).value, rel=1e-7)

    def test_to_dict(self):
        out = dual_norm([2, 2, 2, 0]).to_dict(with_certificate=True)
        assert out["branch"] == "OneZero" and out["detail"] == "acute"
        assert len(out["certificate"]) == 4


def ratio_dual(c, z):
    return float(np.real(np.dot(c, z))) / dual_norm(z).hi


class TestInvariance:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_group(self, seed):
        rng = np.random.default_rng(seed)
        c = mixed(rng)
        v = dual_norm(c).value
        conj = np.conj(c)
        images = [permute(c, p) for p in PERMUTATIONS]
        images += [conj, np.array([c[0], conj[3], c[2], conj[1]]), np.array([c[0], c[1], conj[3], conj[2]])]
        images.append(rephase(c, rng))
        for img in images:
            assert dual_norm(img).value == pytest.approx(v, rel=1e-8)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.01, 100.0), st.floats(-math.pi, math.pi))
    def test_homogeneous(self, seed, lam, angle):
        c = mixed(np.random.default_rng(seed))
        scaled = dual_norm(lam * np.exp(1j * angle) * c).value
        assert scaled == pytest.approx(lam * dual_norm(c).value, rel=1e-8)


class TestBounds:
    def test_basic_sandwich(self):
        rng = np.random.default_rng(10)
        for _ in range(1000):
            c = mixed(rng)
            res = dual_norm(c)
            r = np.abs(c)
            assert r.max() <= res.hi + 1e-12
            assert res.lo <= min(r.sum(), SQRT2 * r.max(), np.sort(r)[1] + r.max()) + 1e-12

    def test_lower_bound_examples(self):
        b = dict(dual_lower_bounds([-1, 1, 1, 1]))
        assert b["phase_pi"] == pytest.approx(SQRT2)
        assert b["pair_sine[14|23]"] == pytest.approx(SQRT2)
        assert all(v <= 1.0 + 1e-12 for _, v in dual_lower_bounds([1, 0, 0, 0]))

    def test_upper_bound_examples(self):
        assert min(v for _, v in dual_upper_bounds([1, 1, 1, 1])) == pytest.approx(SQRT2)
        b = dict(dual_upper_bounds([3, 1, 1, 1]))
        assert b["second_plus_largest"] == 4.0
        assert b["sqrt2_linf"] == pytest.approx(3 * SQRT2)
        assert b["real_flip"] == 3.0
        assert all(v >= 1.0 for _, v in dual_upper_bounds([0, 0, 1, 0]))

    def test_bounds_are_tight_somewhere(self):
        c = np.array([-1, 1, 1, 1.0])
        assert max(v for _, v in dual_lower_bounds(c)) == pytest.approx(dual_norm(c).value)
        c = np.array([3, 1, 1, np.exp(1j)])
        assert min(v for _, v in dual_upper_bounds(c)) == pytest.approx(3.0)
