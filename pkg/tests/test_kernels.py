import math

import numpy as np
import pytest
import sympy as sp

from liouville_lab.errors import GrowthBoundError, UnresolvedSpectrumError
from liouville_lab.kernels import (
    ModeProblem,
    fundamental_pair,
    kernel_functions,
    kernel_residuals,
    mean_value_exponent,
    mode_solve,
    principal_eigenvalue,
)
from liouville_lab.radial import closed_form_profile, zero_potential_profile


class TestKernelFunctions:
    def test_center_values(self):
        phi0, phi1, phi2 = kernel_functions(0j, 0.125)
        assert (phi0, phi1, phi2) == (1.0, 0.0, 0.0)

    def test_sign_change_circle(self):
        phi0, _, _ = kernel_functions(math.sqrt(8) + 0j, 0.125)
        assert phi0 == pytest.approx(0.0, abs=1e-15)

    def test_translation_kernel_value(self):
        _, phi1, _ = kernel_functions(1 + 0j, 0.125)
        assert phi1 == pytest.approx(8.0 / 9.0, abs=1e-15)

    @pytest.mark.parametrize("c", [0.125, 1.0, 4.0])
    def test_residuals(self, c):
        rng = np.random.default_rng(11)
        zs = rng.uniform(-3, 3, 100) + 1j * rng.uniform(-3, 3, 100)
        for res in kernel_residuals(zs, c):
            assert np.max(np.abs(res)) <= 1e-9

    def test_laplacian_matches_finite_differences(self):
        c, z0, h = 0.5, 0.6 + 0.2j, 1e-4
        for i in range(3):
            def f(z, i=i):
                return kernel_functions(z, c)[i]
            fd = (f(z0 + h) + f(z0 - h) + f(z0 + 1j * h) + f(z0 - 1j * h) - 4 * f(z0)) / h ** 2
            from liouville_lab.kernels import kernel_laplacians
            assert fd == pytest.approx(kernel_laplacians(z0, c)[i], abs=1e-5)


def _sympy_mode_residual(expr, r, c, mode):
    v = 8 * c / (1 + c * r ** 2) ** 2 - mode ** 2 / r ** 2
    return sp.simplify(sp.diff(expr, r, 2) + sp.diff(expr, r) / r + v * expr)


class TestFundamentalPair:
    def test_mode0_values(self):
        pair = fundamental_pair(ModeProblem(mode=0, c=0.125))
        assert pair.g1(np.array([1e-12]))[0] == pytest.approx(1.0, abs=1e-10)
        assert pair.g1(np.array([1e6]))[0] == pytest.approx(-1.0, abs=1e-10)

    def test_mode1_closed_form_and_residual(self):
        c = 0.125
        pair = fundamental_pair(ModeProblem(mode=1, c=c))
        rs = np.linspace(0.2, 10.0, 25)
        assert np.max(np.abs(pair.g1(rs) - rs / (1 + c * rs ** 2))) <= 1e-15
        r = sp.symbols("r", positive=True)
        res = _sympy_mode_residual(r / (1 + sp.Rational(1, 8) * r ** 2), r, sp.Rational(1, 8), 1)
        assert abs(float(res.subs(r, 3.7))) <= 1e-9

    def test_mode0_second_solution_residual(self):
        # closed form g02 = g01 log(c r^2)/2 + 2/(1+c r^2), smooth through the
        # zero of g01 at r = 1/sqrt(c)
        r = sp.symbols("r", positive=True)
        c = sp.Rational(1, 8)
        g01 = (1 - c * r ** 2) / (1 + c * r ** 2)
        g02 = g01 * sp.log(c * r ** 2) / 2 + 2 / (1 + c * r ** 2)
        res = _sympy_mode_residual(g02, r, c, 0)
        for rv in (0.5, 1.0 / math.sqrt(0.125), 5.0):
            assert abs(float(res.subs(r, rv))) <= 1e-9

    def test_mode1_second_solution_behaviour(self):
        pair = fundamental_pair(ModeProblem(mode=1, c=0.125))
        assert pair.g2(np.array([1e-3]))[0] * 1e-3 == pytest.approx(-0.5, rel=1e-3)
        big = pair.g2(np.array([1e4]))[0] / 1e4
        assert abs(big) == pytest.approx(0.125 / 2, rel=1e-2)

    def test_mode0_log_growth(self):
        pair = fundamental_pair(ModeProblem(mode=0, c=1.0))
        r1, r2 = 100.0, 1000.0
        ratio1 = pair.g2(np.array([r1]))[0] / math.log(r1)
        ratio2 = pair.g2(np.array([r2]))[0] / math.log(r2)
        assert abs(ratio1 / ratio2 - 1.0) <= 0.05
        # with c = 1/8 the limit carries the offset -log(sqrt(c) r)
        pair8 = fundamental_pair(ModeProblem(mode=0, c=0.125))
        for r in (100.0, 1000.0):
            val = pair8.g2(np.array([r]))[0]
            assert val == pytest.approx(-math.log(math.sqrt(0.125) * r), rel=5e-3)

    @pytest.mark.parametrize("mode", [2, 5, 8, 64])
    def test_asymptotic_bands(self, mode):
        pair = fundamental_pair(ModeProblem(mode=mode, c=0.125))
        for r in (0.01, 100.0):
            assert 0.1 <= pair.g1(np.array([r]))[0] / r ** mode <= 10.0
            assert 0.1 <= pair.g2(np.array([r]))[0] * r ** mode <= 10.0

    @pytest.mark.parametrize("mode", [0, 1, 3, 8])
    def test_wronskian_constant(self, mode):
        pair = fundamental_pair(ModeProblem(mode=mode, c=0.125))
        rs = np.geomspace(0.05, 50.0, 40)
        w = pair.wronskian(rs)
        assert np.max(np.abs(w / w[len(w) // 2] - 1.0)) <= 1e-6

    def test_numeric_mode_cross_validated(self):
        # independent re-integration at brutal tolerance
        from liouville_lab.numerics import QuadratureSpec, ode_integrate

        problem = ModeProblem(mode=3, c=0.125)
        pair = fundamental_pair(problem)
        r0 = 1e-3
        c, l = 0.125, 3
        a2 = -2 * c / (l + 1)
        y0 = [r0 ** l * (1 + a2 * r0 ** 2), r0 ** (l - 1) * (l + (l + 2) * a2 * r0 ** 2)]
        traj = ode_integrate(
            lambda r, y: [y[1], -y[1] / r - (8 * c / (1 + c * r * r) ** 2 - l * l / (r * r)) * y[0]],
            y0, r0, 100.0, QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300), method="DOP853")
        rs = np.geomspace(0.01, 90.0, 60)
        ref = traj(rs)[0]
        assert np.max(np.abs(pair.g1(rs) - ref) / np.abs(ref)) <= 1e-7


class TestModeSolve:
    def test_zero_data_zero_solution(self):
        sol = mode_solve(ModeProblem(mode=2, c=0.125), lambda r: np.zeros_like(r), boundary=0.0)
        assert np.max(np.abs(sol.values)) <= 1e-30

    def test_mode0_log_certificate(self):
        sol = mode_solve(ModeProblem(mode=0, c=0.125, r_max=1000.0),
                         lambda r: (1 + r) ** -3.0)
        assert sol.certificate <= 50.0

    def test_mode1_linear_certificate(self):
        sol = mode_solve(ModeProblem(mode=1, c=0.125, r_max=1000.0),
                         lambda r: (1 + r) ** -3.0)
        assert sol.certificate <= 50.0

    def test_higher_mode_certificate(self):
        sol = mode_solve(ModeProblem(mode=4, c=0.125), lambda r: (1 + r) ** -3.0,
                         boundary=0.05)
        assert sol.certificate <= 50.0
        assert sol.g(sol.grid[-1]) == pytest.approx(0.05, rel=1e-6)

    def test_linearity(self):
        a = mode_solve(ModeProblem(mode=1, c=0.125), lambda r: (1 + r) ** -3.0)
        b = mode_solve(ModeProblem(mode=1, c=0.125), lambda r: 5.0 * (1 + r) ** -3.0)
        rel = np.max(np.abs(5.0 * a.values - b.values)) / np.max(np.abs(b.values))
        assert rel <= 1e-10

    def test_growth_bound_violation(self):
        with pytest.raises(GrowthBoundError):
            mode_solve(ModeProblem(mode=0, c=0.125, r_max=1000.0),
                       lambda r: (1 + r) ** -3.0, envelope=1e-9)


class TestMeanValueExponent:
    def test_diagonal(self):
        assert mean_value_exponent(1.0, 1.0) == pytest.approx(math.e, abs=1e-15)

    def test_small_gap(self):
        # the naive quotient loses ~4e-14 to cancellation; expm1 is exact
        assert mean_value_exponent(1e-3, 0.0) == pytest.approx((math.exp(1e-3) - 1) / 1e-3,
                                                               abs=1e-12)
        assert mean_value_exponent(1e-3, 0.0) == pytest.approx(math.expm1(1e-3) / 1e-3,
                                                               abs=1e-15)

    def test_taylor_remainder_sweep(self):
        for v in np.linspace(-5.0, 5.0, 11):
            for w in np.linspace(-0.1, 0.1, 21):
                if w == 0:
                    continue
                val = mean_value_exponent(v + w, v)
                assert abs(val / math.exp(v) - 1.0 - w / 2.0) <= w ** 2


class TestPrincipalEigenvalue:
    def test_bessel_oracle(self):
        # smallest Dirichlet eigenvalue of -Delta on the unit disk: j_{0,1}^2
        from scipy.special import jn_zeros
        expected = jn_zeros(0, 1)[0] ** 2
        assert expected == pytest.approx(5.7832, abs=1e-4)
        ev = principal_eigenvalue(zero_potential_profile(), 0, n=1024)
        assert ev == pytest.approx(expected, abs=1e-3)

    @pytest.mark.parametrize("N", [0, 1])
    def test_fold_degeneracy(self, N):
        ev = principal_eigenvalue(closed_form_profile(N, 1.0), 0)
        assert abs(ev) <= 1e-3

    def test_high_mode_positive(self):
        for b in (0.5, 1.0, 100.0):
            ev = principal_eigenvalue(closed_form_profile(1, b), 8)
            assert ev > 0

    def test_monotone_in_mode(self):
        prof = closed_form_profile(0, 1.0)
        evs = [principal_eigenvalue(prof, m, n=256) for m in range(4)]
        assert all(b >= a - 1e-10 for a, b in zip(evs, evs[1:]))

    def test_unresolved_spectrum(self):
        with pytest.raises(UnresolvedSpectrumError):
            principal_eigenvalue(closed_form_profile(0, 1.0), 0, n=4)

    def test_requires_solution(self):
        prof = closed_form_profile(0, 1.0)
        prof.u = prof.u + 0.1  # break it
        prof.b = 0.0           # force sampled-data path
        with pytest.raises(ValueError):
            principal_eigenvalue(prof, 0)
