"""Unit tests for the closed-form resolvent kernel and its branch handling."""

import cmath

import numpy as np
import pytest

from sgnspec.errors import DomainError, SpectrumError
from sgnspec.kernel import (Region, classify_region, dirichlet_kernel,
                            dirichlet_kernel_grid, principal_sqrt,
                            ray_distances, resolvent_kernel,
                            resolvent_kernel_grid, spectrum_distance,
                            wave_numbers)


class TestPrincipalSqrt:
    def test_positive_real(self):
        assert principal_sqrt(4.0) == 2.0

    def test_negative_real_maps_to_positive_imag(self):
        v = principal_sqrt(-4.0 + 0.0j)
        assert abs(v - 2j) < 1e-15
        assert v.imag > 0

    def test_branch_cut_normalization(self):
        # approaching the cut from below must not flip the branch for -0.0
        v = principal_sqrt(complex(-1.0, -0.0))
        assert v.imag > 0

    def test_square_recovers_argument(self):
        for z in (1 + 2j, -3 + 0.1j, 0.5 - 7j, -2 - 2j):
            assert abs(principal_sqrt(z) ** 2 - z) < 1e-13 * abs(z)


class TestWaveNumbers:
    def test_defining_relations(self):
        for z in (-1 + 0.5j, 2 + 0.3j, 100.0, -5 - 2j):
            kk = wave_numbers(z)
            assert abs(kk.k_plus**2 - (1j - z)) < 1e-12 * max(1, abs(z))
            assert abs(kk.k_minus**2 - (-1j - z)) < 1e-12 * max(1, abs(z))

    def test_decay_inside_strip(self):
        kk = wave_numbers(50 + 0.5j)
        assert kk.k_plus.real > 0
        assert kk.k_minus.real > 0


class TestRegions:
    def test_disk_membership(self):
        assert classify_region(0.99j) is Region.D_PLUS
        assert classify_region(-0.99j) is Region.D_MINUS
        assert classify_region(0.5 + 0.9j) is Region.D_PLUS

    def test_strip_remainder(self):
        assert classify_region(50 + 0.5j) is Region.W
        assert classify_region(100.0) is Region.W

    def test_outside(self):
        assert classify_region(-5 + 0.5j) is Region.U
        assert classify_region(1 + 5j) is Region.U

    def test_spectrum_ray(self):
        assert classify_region(2 + 1j) is Region.SPECTRUM
        assert classify_region(3 - 1j) is Region.SPECTRUM

    def test_ray_distances(self):
        dp, dm = ray_distances(2 + 0.5j)
        assert dp == pytest.approx(0.5)
        assert dm == pytest.approx(1.5)
        assert spectrum_distance(2 + 0.5j) == pytest.approx(0.5)


class TestResolventKernel:
    def test_symmetric_in_arguments(self):
        z = -1 + 0.5j
        for x, y in ((0.3, -0.2), (1.0, 2.0), (-0.5, -1.5)):
            a = resolvent_kernel(z, x, y)
            b = resolvent_kernel(z, y, x)
            assert abs(a - b) < 1e-14 * abs(a)

    def test_continuous_across_origin(self):
        z = 2 + 0.4j
        y = 0.7
        eps = 1e-9
        left = resolvent_kernel(z, -eps, y)
        right = resolvent_kernel(z, eps, y)
        assert abs(left - right) < 1e-7 * abs(right)

    def test_raises_on_spectrum(self):
        with pytest.raises(SpectrumError):
            resolvent_kernel(2 + 1j, 0.1, 0.2)

    def test_endpoint_values_finite(self):
        # the kernel extends continuously to z = +-i
        v = resolvent_kernel(1j, 0.3, 0.5)
        assert np.isfinite(v.real) and np.isfinite(v.imag)
        w = resolvent_kernel(-1j, -0.3, -0.5)
        assert np.isfinite(w.real) and np.isfinite(w.imag)

    def test_series_matches_direct_near_endpoint(self):
        # just outside the series cutoff the two evaluation paths must agree
        # k_plus = t at z = i - t^2; pick t on both sides of the series
        # cutoff |k (b - a)| = 1e-6 so the two evaluation paths meet
        a = resolvent_kernel(1j - (6e-7) ** 2, 0.4, 0.6)
        b = resolvent_kernel(1j - (3e-6) ** 2, 0.4, 0.6)
        assert abs(a - b) < 1e-4 * abs(a)

    def test_grid_matches_scalar(self):
        z = -1 + 0.5j
        x = np.array([-1.2, -0.3, 0.0, 0.4, 2.0])
        y = np.array([-0.7, 0.1, 1.5])
        mat = resolvent_kernel_grid(z, x, y)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                assert abs(mat[i, j] - resolvent_kernel(z, xi, yj)) < 1e-13

    def test_differential_equation(self):
        # u(x) = R_z(x, y0) solves -u'' + (i sgn - z) u = 0 away from y0,
        # checked with 4th-order central differencing
        z = -1 + 0.5j
        y0 = -0.4
        h = 1e-3
        for x0 in (0.8, 1.7, -1.3, -2.2):
            pts = x0 + h * np.arange(-2, 3)
            u = np.array([resolvent_kernel(z, float(p), y0) for p in pts])
            upp = (-u[0] + 16 * u[1] - 30 * u[2] + 16 * u[3] - u[4]) / (
                12 * h * h)
            sgn = 1.0 if x0 > 0 else -1.0
            resid = -upp + (1j * sgn - z) * u[2]
            assert abs(resid) < 1e-6 * abs(z * u[2])

    def test_decay_at_infinity(self):
        z = 1 + 0.5j
        near = abs(resolvent_kernel(z, 1.0, 0.5))
        far = abs(resolvent_kernel(z, 40.0, 0.5))
        assert far < 1e-3 * near


class TestDirichletKernel:
    def test_vanishes_across_origin(self):
        z = 2 + 0.5j
        assert dirichlet_kernel(z, 0.5, -0.5) == 0.0
        assert dirichlet_kernel(z, -1.0, 2.0) == 0.0

    def test_vanishes_at_origin(self):
        z = 2 + 0.5j
        assert abs(dirichlet_kernel(z, 1e-12, 0.5)) < 1e-10

    def test_same_side_matches_image_formula(self):
        z = 2 + 0.5j
        kp = wave_numbers(z).k_plus
        x, y = 0.7, 0.3
        expect = (cmath.exp(-kp * abs(x - y))
                  - cmath.exp(-kp * (x + y))) / (2 * kp)
        assert abs(dirichlet_kernel(z, x, y) - expect) < 1e-14

    def test_grid_matches_scalar(self):
        z = 3 - 0.2j
        x = np.array([-1.0, -0.2, 0.3, 1.1])
        mat = dirichlet_kernel_grid(z, x, x)
        for i, xi in enumerate(x):
            for j, yj in enumerate(x):
                assert abs(mat[i, j] - dirichlet_kernel(z, xi, yj)) < 1e-13
