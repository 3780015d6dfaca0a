import math

import numpy as np
import pytest

from antihankel import (
    HankelParams,
    PoleKind,
    PoleSource,
    compute_spectrum,
    perturbation_bounds,
    pole_multiset,
    weyl_brackets,
)
from antihankel.spectrum import group_sorted, reduced_phase, unit_root_power

SQRT3 = math.sqrt(3.0)


class TestHankelParams:
    def test_derived_sizes(self):
        p = HankelParams(5, 1, 2, 3)
        assert (p.size, p.odd, p.half) == (7, True, 3)
        q = HankelParams(4, 1, 2, 3)
        assert (q.size, q.odd, q.half) == (6, False, 2)

    def test_scale(self):
        assert HankelParams(1, -1.0, 2.0, -0.5).scale == 4.5

    def test_coercion(self):
        p = HankelParams(3.0, 1, 2, 3)
        assert isinstance(p.n, int) and isinstance(p.a, float)

    @pytest.mark.parametrize("n", [0, -1, 2.5, True])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            HankelParams(n, 1.0, 1.0, 1.0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            HankelParams(2, bad, 1.0, 1.0)

    def test_negated(self):
        assert HankelParams(2, 1, -2, 3).negated() == HankelParams(2, -1, 2, -3)


def test_reduced_phase_range():
    size = 7
    r = np.arange(-20, 21)
    phase = reduced_phase(r, size)
    assert np.all(phase > -np.pi) and np.all(phase <= np.pi)
    np.testing.assert_allclose(np.exp(1j * phase), np.exp(2j * np.pi * r / size), atol=1e-14)


def test_unit_root_power_reduces_before_trig():
    # large exponents must not lose accuracy
    assert abs(unit_root_power(10**12 + 1, 4) - 1j) < 1e-15
    assert abs(unit_root_power(-3, 4) - 1j) < 1e-15
    assert abs(unit_root_power(2, 4) + 1) < 1e-15


class TestComputeSpectrum:
    def test_unit_anticirculant(self):
        s = compute_spectrum(HankelParams(2, 0, 0, 1))
        np.testing.assert_allclose(s.lam, [1, 1j, -1, -1j], atol=1e-15)
        np.testing.assert_allclose(s.modulus, 1.0, atol=1e-15)
        np.testing.assert_allclose(s.theta, [0, np.pi / 2, np.pi, -np.pi / 2], atol=1e-15)

    def test_three_by_three(self):
        # 2 + w^2 + 3w with w = exp(2 pi i / 3) collapses to i*sqrt(3)
        s = compute_spectrum(HankelParams(1, 1, 2, 3))
        assert s.lam[0] == 6
        assert abs(s.lam[1] - 1j * SQRT3) < 1e-14
        assert s.lam[2] == np.conj(s.lam[1])
        assert abs(s.theta[1] - np.pi / 2) < 1e-14
        assert abs(s.modulus[1] - SQRT3) < 1e-14

    def test_even_middle_entry_is_real(self):
        s = compute_spectrum(HankelParams(4, 1, 2, -1))
        assert s.lam[3] == 4
        assert s.lam[3].imag == 0

    def test_negative_real_gets_pi(self):
        s = compute_spectrum(HankelParams(2, 0, 0, 1))
        assert s.theta[2] == np.pi

    def test_zero_eigenvalue_gets_zero_angle(self):
        # lambda_0 = a + b + c = 0
        s = compute_spectrum(HankelParams(3, 1.0, 1.0, -2.0))
        assert s.theta[0] == 0.0

    def test_arrays_read_only(self):
        s = compute_spectrum(HankelParams(2, 1, 2, 3))
        with pytest.raises(ValueError):
            s.lam[0] = 0

    def test_against_dft(self):
        rng = np.random.default_rng(1)
        for n in range(1, 15):
            p = HankelParams(n, *rng.uniform(-3, 3, 3))
            size = p.size
            row = np.zeros(size)
            row[0], row[-2], row[-1] = p.b, p.a, p.c
            k = np.arange(size)
            # lambda_k = sum_j r_j w^(-jk)
            w = np.exp(-2j * np.pi * np.outer(k, k) / size)
            np.testing.assert_allclose(compute_spectrum(p).lam, w @ row, atol=1e-13)


class TestPoleMultiset:
    def test_exchange_sources(self):
        poles = pole_multiset(HankelParams(1, 0, 0, 1), compute_spectrum(HankelParams(1, 0, 0, 1)))
        np.testing.assert_allclose(poles.values, [-1, 1, 1], atol=1e-15)
        assert [str(s) for s in poles.sources] == ["MINUS_MOD(1)", "LAMBDA0", "PLUS_MOD(1)"]
        assert poles.distinct[0][1] == 1 and poles.distinct[1][1] == 2

    def test_three_by_three(self):
        p = HankelParams(1, 1, 2, 3)
        poles = pole_multiset(p, compute_spectrum(p))
        np.testing.assert_allclose(poles.values, [-SQRT3, SQRT3, 6], atol=1e-14)

    def test_unit_anticirculant(self):
        p = HankelParams(2, 0, 0, 1)
        poles = pole_multiset(p, compute_spectrum(p))
        np.testing.assert_allclose(poles.values, [-1, -1, 1, 1], atol=1e-15)
        kinds = {s.kind for s in poles.sources}
        assert kinds == {PoleKind.LAMBDA0, PoleKind.LAMBDA_HALF, PoleKind.PLUS_MOD, PoleKind.MINUS_MOD}

    def test_modal_order(self):
        p = HankelParams(4, 0.5, -1.0, 2.0)
        s = compute_spectrum(p)
        poles = pole_multiset(p, s)
        m = p.half
        expected = [s.lam[0].real, *s.modulus[1 : m + 1], s.lam[m + 1].real, *(-s.modulus[m:0:-1])]
        np.testing.assert_array_equal(poles.diagonal, expected)
        np.testing.assert_array_equal(poles.values, np.sort(expected))

    def test_source_str(self):
        assert str(PoleSource(PoleKind.PLUS_MOD, 3)) == "PLUS_MOD(3)"
        assert str(PoleSource(PoleKind.LAMBDA_HALF, 2)) == "LAMBDA_HALF"

    def test_group_bounds_cover_distinct(self):
        p = HankelParams(6, 0, 0, 1)
        poles = pole_multiset(p, compute_spectrum(p))
        assert sum(mult for _, mult in poles.distinct) == p.size
        for (value, _), (lo, hi) in zip(poles.distinct, poles.group_bounds):
            assert lo <= value <= hi


def test_group_sorted():
    assert group_sorted(np.array([0.0, 1e-12, 1.0, 2.0, 2.0]), 1e-10) == [(0, 2), (2, 3), (3, 5)]
    assert group_sorted(np.array([]), 1.0) == []


class TestWeylBrackets:
    def test_three_by_three(self):
        p = HankelParams(1, 1, 2, 3)
        br = weyl_brackets(p, pole_multiset(p, compute_spectrum(p)))
        expected = [[-SQRT3 - 2, -SQRT3], [SQRT3 - 2, SQRT3], [4, 6]]
        np.testing.assert_allclose(br, expected, atol=1e-14)

    def test_vanishing_perturbation(self):
        p = HankelParams(3, 0, 0, 1.5)
        br = weyl_brackets(p, pole_multiset(p, compute_spectrum(p)))
        np.testing.assert_array_equal(br[:, 0], br[:, 1])

    def test_bounds(self):
        assert perturbation_bounds(HankelParams(1, -1, 3, 0)) == (-3.0, 1.0)
        assert perturbation_bounds(HankelParams(1, 1, 2, 0)) == (-2.0, 0.0)
