import math

import numpy as np
import pytest

from liouville_lab.errors import ShootingError
from liouville_lab.numerics import QuadratureSpec
from liouville_lab.radial import (
    BranchPoint,
    RadialProfile,
    branch_mass,
    branch_to_csv,
    closed_form_profile,
    closed_form_u,
    harnack_argmax,
    harnack_diagnostic,
    lambda_of_b,
    profile_residual,
    shoot_radial,
    trace_branch,
)

SPEC = QuadratureSpec(rel_tol=1e-10)


def _point(N, b):
    prof = closed_form_profile(N, b)
    return BranchPoint(profile=prof, u_center=2 * math.log1p(b),
                       mass=branch_mass(prof, SPEC))


class TestClosedForm:
    def test_gelfand_base_case(self):
        prof = closed_form_profile(0, 1.0)
        assert prof.lam == pytest.approx(2.0, rel=1e-15)
        assert prof.u_at(1e-12) == pytest.approx(math.log(4.0), abs=1e-9)

    def test_singular_weight_case(self):
        prof = closed_form_profile(1, 1.0)
        assert prof.lam == pytest.approx(8.0, rel=1e-15)
        assert prof.u_at(1e-12) == pytest.approx(math.log(4.0), abs=1e-9)

    @pytest.mark.parametrize("N,b", [(0, 0.3), (1, 2.0), (3, 17.0)])
    def test_boundary_condition(self, N, b):
        prof = closed_form_profile(N, b)
        assert prof.u[-1] == 0.0
        assert abs(profile_residual(prof)) <= 1e-10

    def test_center_blowup(self):
        u0 = [closed_form_profile(0, b).u_at(1e-12) for b in (10.0, 100.0, 1000.0)]
        lam = [lambda_of_b(0, b) for b in (10.0, 100.0, 1000.0)]
        assert u0[0] < u0[1] < u0[2]
        assert lam[0] > lam[1] > lam[2]


class TestShooting:
    def test_lower_branch_root(self):
        prof = shoot_radial(0, 1.0, 0.3)
        b = 3.0 - 2.0 * math.sqrt(2.0)
        assert prof.b == pytest.approx(b, abs=1e-9)
        gap = np.max(np.abs(prof.u - closed_form_u(0, b, prof.r_grid)))
        assert gap <= 1e-8

    def test_upper_branch_root(self):
        prof = shoot_radial(0, 1.0, 3.8)
        assert prof.b == pytest.approx(3.0 + 2.0 * math.sqrt(2.0), abs=1e-8)

    def test_fold_point(self):
        prof = shoot_radial(1, 8.0, math.log(4.0) + 0.01)
        assert prof.b == pytest.approx(1.0, abs=1e-4)

    def test_roots_bracket_fold(self):
        lo = shoot_radial(0, 1.0, 0.3)
        hi = shoot_radial(0, 1.0, 3.8)
        assert lo.b < 1.0 < hi.b

    def test_singular_weight_branches(self):
        # N = 2: lambda(b) = 9 * 8b/(1+b)^2, so lambda = 9 has roots 3 +/- 2 sqrt 2
        lam = 9.0
        lo = shoot_radial(2, lam, 0.3)
        hi = shoot_radial(2, lam, 4.0)
        gap_lo = np.max(np.abs(lo.u - closed_form_u(2, lo.b, lo.r_grid)))
        gap_hi = np.max(np.abs(hi.u - closed_form_u(2, hi.b, hi.r_grid)))
        assert gap_lo <= 1e-8 and gap_hi <= 1e-8
        assert lo.b < 1.0 < hi.b

    def test_above_fold_fails(self):
        with pytest.raises(ShootingError):
            shoot_radial(0, 3.0, 0.5)


class TestBranch:
    @pytest.mark.parametrize("N,expected", [(0, 2.0), (1, 8.0), (2, 18.0)])
    def test_fold_location(self, N, expected):
        trace = trace_branch(N, [0.1, 0.5, 1.0, 2.0, 10.0], SPEC)
        assert trace.fold.lambda_star == pytest.approx(expected, rel=1e-4)
        assert trace.fold.b_star == pytest.approx(1.0, abs=1e-3)

    def test_mass_monotone_and_bounded(self):
        trace = trace_branch(1, [0.1, 0.5, 1.0, 2.0, 10.0, 100.0], SPEC)
        masses = [pt.mass for pt in trace.points]
        assert all(b > a for a, b in zip(masses, masses[1:]))
        assert max(masses) <= 16 * math.pi

    def test_mass_limit(self):
        pt = _point(2, 1000.0)
        assert pt.mass == pytest.approx(24 * math.pi, rel=2e-2)
        # closed-form oracle: mass = 8 pi (N+1) b/(1+b)
        assert pt.mass == pytest.approx(24 * math.pi * 1000.0 / 1001.0, rel=1e-8)

    def test_mass_cap_enforced(self):
        prof = closed_form_profile(0, 1.0)
        with pytest.raises(ValueError):
            BranchPoint(profile=prof, u_center=2 * math.log(2.0), mass=9 * math.pi)

    def test_requires_fold_coverage(self):
        with pytest.raises(ValueError):
            trace_branch(0, [2.0, 3.0], SPEC)


class TestHarnack:
    @pytest.mark.parametrize("N,expected", [(0, math.log(2.0)), (1, math.log(8.0))])
    def test_constant_value(self, N, expected):
        for b in (0.1, 1.0, 10.0, 100.0, 1000.0):
            assert harnack_diagnostic(_point(N, b)) == pytest.approx(expected, abs=1e-6)

    def test_supremum_location(self):
        for N, b in ((0, 4.0), (1, 9.0), (2, 0.25)):
            pt = _point(N, b)
            r_star = harnack_argmax(pt)
            assert r_star == pytest.approx(b ** (-1.0 / (2 * (N + 1))), rel=1e-12)
            prof = pt.profile
            m = N + 1

            def diag(r):
                return closed_form_u(N, b, r) + math.log(prof.lam) + 2 * m * math.log(r)

            assert diag(r_star) >= diag(r_star * 1.01)
            assert diag(r_star) >= diag(r_star * 0.99)


class TestCsvExport:
    def test_columns(self, tmp_path):
        trace = trace_branch(0, [0.5, 1.0, 2.0], SPEC)
        path = tmp_path / "branch.csv"
        branch_to_csv(trace, path)
        lines = path.read_text(encoding="utf-8").strip().splitlines()
        assert lines[0] == "b,lambda,u_center,mass,harnack_sup"
        assert len(lines) == 4
        row = lines[2].split(",")
        assert float(row[0]) == 1.0
        assert float(row[1]) == pytest.approx(2.0)
        assert float(row[4]) == pytest.approx(math.log(2.0), abs=1e-6)


class TestProfileValidation:
    def test_boundary_enforced(self):
        r = np.linspace(0.1, 1.0, 50)
        with pytest.raises(ValueError):
            RadialProfile(N=0, lam=1.0, b=0.5, r_grid=r, u=np.ones_like(r),
                          u_prime=np.zeros_like(r))
