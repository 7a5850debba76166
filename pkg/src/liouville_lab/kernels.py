"""Kernel of the linearized Liouville operator and per-mode fundamental solutions.

The linearization of Delta u + h e^u = 0 at the planar bubble with constant
c = h/8 is Delta phi + 8c/(1 + c|z|^2)^2 phi = 0.  Its kernel is spanned by

    phi0 = (1 - c|z|^2)/(1 + c|z|^2),   phi1 = z1/(1 + c|z|^2),
    phi2 = z2/(1 + c|z|^2).

Per Fourier mode l the radial operator is

    L_l g = g'' + g'/r + (8c/(1+c r^2)^2 - l^2/r^2) g,

with closed-form fundamental pairs for l = 0, 1 and series-launched numerical
solutions for l >= 2 (second solutions by reduction of order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicHermiteSpline
from scipy.linalg import eigh_tridiagonal, solve_banded

from .errors import GrowthBoundError, UnresolvedSpectrumError
from .numerics import QuadratureSpec, ode_integrate
from .radial import RadialProfile, profile_residual


@dataclass(frozen=True)
class ModeProblem:
    """One Fourier-mode linearized problem at bubble constant c = h/8."""

    mode: int
    c: float = 0.125
    rhs_envelope: float = 1.0   # A with |rhs| <= A (1+r)^-3
    r_max: float = 100.0

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError("mode must be non-negative")
        if self.mode > 64:
            raise ValueError("modes above 64 are not supported")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.r_max <= 1:
            raise ValueError("r_max must exceed 1")


def potential(r, c: float):
    return 8.0 * c / (1.0 + c * np.asarray(r, dtype=float) ** 2) ** 2


def kernel_functions(z, c: float):
    """(phi0, phi1, phi2) at z."""
    z = np.asarray(z, dtype=complex)
    s = c * np.abs(z) ** 2
    phi0 = (1.0 - s) / (1.0 + s)
    phi1 = z.real / (1.0 + s)
    phi2 = z.imag / (1.0 + s)
    return phi0, phi1, phi2


def kernel_laplacians(z, c: float):
    """Closed-form Laplacians of the three kernel functions.

    Derived termwise (not through the ODE), so that
    kernel_residual = Delta phi + 8c/(1+c|z|^2)^2 phi is a genuine
    cancellation check.
    """
    z = np.asarray(z, dtype=complex)
    s = c * np.abs(z) ** 2
    lap0 = 8.0 * c * (s - 1.0) / (1.0 + s) ** 3
    lap1 = -8.0 * c * z.real / (1.0 + s) ** 3
    lap2 = -8.0 * c * z.imag / (1.0 + s) ** 3
    return lap0, lap1, lap2


def kernel_residuals(z, c: float):
    """Delta phi_i + 8c/(1+c|z|^2)^2 phi_i for i = 0, 1, 2."""
    phis = kernel_functions(z, c)
    laps = kernel_laplacians(z, c)
    v = potential(np.abs(np.asarray(z, dtype=complex)), c)
    return tuple(l + v * p for l, p in zip(laps, phis))


# ----------------------------------------------------------------------------
# fundamental pairs

@dataclass
class FundamentalPair:
    """Fundamental system (g1, g2) with derivatives for one mode."""

    mode: int
    c: float
    g1: Callable
    g1p: Callable
    g2: Callable
    g2p: Callable

    def wronskian(self, r):
        r = np.asarray(r, dtype=float)
        return r * (self.g1(r) * self.g2p(r) - self.g1p(r) * self.g2(r))


def _pair_mode0(c: float) -> FundamentalPair:
    def g1(r):
        s = c * np.asarray(r, dtype=float) ** 2
        return (1.0 - s) / (1.0 + s)

    def g1p(r):
        r = np.asarray(r, dtype=float)
        return -4.0 * c * r / (1.0 + c * r ** 2) ** 2

    # reduction of order across the zero at r = 1/sqrt(c) in closed form:
    # g2 = g1 * log(c r^2)/2 + 2/(1 + c r^2)
    def g2(r):
        r = np.asarray(r, dtype=float)
        s = c * r ** 2
        return g1(r) * 0.5 * np.log(s) + 2.0 / (1.0 + s)

    def g2p(r):
        r = np.asarray(r, dtype=float)
        s = c * r ** 2
        return g1p(r) * 0.5 * np.log(s) + g1(r) / r - 4.0 * c * r / (1.0 + s) ** 2

    return FundamentalPair(0, c, g1, g1p, g2, g2p)


def _pair_mode1(c: float) -> FundamentalPair:
    def g1(r):
        r = np.asarray(r, dtype=float)
        return r / (1.0 + c * r ** 2)

    def g1p(r):
        r = np.asarray(r, dtype=float)
        return (1.0 - c * r ** 2) / (1.0 + c * r ** 2) ** 2

    # g2 = g1 * (-1/(2r^2) + 2c log r + c^2 r^2 / 2)
    def g2(r):
        r = np.asarray(r, dtype=float)
        return g1(r) * (-0.5 / r ** 2 + 2.0 * c * np.log(r) + 0.5 * c ** 2 * r ** 2)

    def g2p(r):
        r = np.asarray(r, dtype=float)
        I = -0.5 / r ** 2 + 2.0 * c * np.log(r) + 0.5 * c ** 2 * r ** 2
        return g1p(r) * I + g1(r) * (1.0 / r ** 3 + 2.0 * c / r + c ** 2 * r)

    return FundamentalPair(1, c, g1, g1p, g2, g2p)


def _mode_ode(c: float, l: int):
    def rhs(r, y):
        v = 8.0 * c / (1.0 + c * r * r) ** 2 - l * l / (r * r)
        return [y[1], -y[1] / r - v * y[0]]

    return rhs


def _pair_mode_l(problem: ModeProblem) -> FundamentalPair:
    """Series-launched g1 ~ r^l and reduction-of-order g2 ~ r^-l for l >= 2."""
    c, l, r_max = problem.c, problem.mode, problem.r_max
    # keep r0^l representable: the pair spans ~10^(2 l log10(rmax/r0)) overall
    r0 = max(1e-3, 10.0 ** (-150.0 / l))
    a2 = -2.0 * c / (l + 1.0)   # two-term launch g = r^l (1 + a2 r^2 + ...)
    y0 = [r0 ** l * (1.0 + a2 * r0 ** 2), r0 ** (l - 1) * (l + (l + 2.0) * a2 * r0 ** 2)]
    spec = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-300, max_subdivisions=200)
    traj = ode_integrate(_mode_ode(c, l), y0, r0, r_max, spec)

    grid = np.geomspace(r0, r_max, 4000)
    vals = traj(grid)
    g1_spline = CubicHermiteSpline(grid, vals[0], vals[1])
    g1p_spline = g1_spline.derivative()

    def g1(r):
        r = np.asarray(r, dtype=float)
        out = np.where(r < r0, r ** l * (1.0 + a2 * np.minimum(r, r0) ** 2),
                       g1_spline(np.clip(r, r0, r_max)))
        return out

    def g1p(r):
        r = np.asarray(r, dtype=float)
        inner = r ** np.maximum(l - 1, 0) * (l + (l + 2.0) * a2 * np.minimum(r, r0) ** 2)
        return np.where(r < r0, inner, g1p_spline(np.clip(r, r0, r_max)))

    # J(r) = int_r^rmax ds/(s g1^2) + analytic tail;  g2 = 2l * g1 * J  so that
    # g2 ~ r^-l with unit leading coefficient.  Accumulate top-down: the
    # integrand spans ~300 orders of magnitude and a forward cumulative sum
    # cancels catastrophically.
    t = np.log(grid)
    integrand = 1.0 / vals[0] ** 2         # d s / (s g1^2) = dt / g1^2
    seg = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(t)
    tail = 1.0 / (2.0 * l * vals[0][-1] ** 2)
    J_grid = np.empty_like(t)
    J_grid[-1] = tail
    J_grid[:-1] = tail + np.cumsum(seg[::-1])[::-1]
    logJ_spline = CubicHermiteSpline(t, np.log(J_grid), -integrand / J_grid)

    def J(r):
        r = np.clip(np.asarray(r, dtype=float), r0, r_max)
        return np.exp(logJ_spline(np.log(r)))

    b2 = 2.0 * c / (l - 1.0)   # series g2 ~ r^-l (1 + b2 r^2 + ...)

    def g2(r):
        r = np.asarray(r, dtype=float)
        inner = r ** (-l) * (1.0 + b2 * r ** 2)
        core = 2.0 * l * g1(r) * J(r)
        return np.where(r < r0, inner, core)

    def g2p(r):
        r = np.asarray(r, dtype=float)
        rr = np.clip(r, r0, r_max)
        inner = r ** (-l - 1) * (-l + (2.0 - l) * b2 * r ** 2)
        core = 2.0 * l * (g1p(rr) * J(rr) - 1.0 / (rr * g1(rr)))
        return np.where(r < r0, inner, core)

    return FundamentalPair(l, c, g1, g1p, g2, g2p)


def fundamental_pair(problem: ModeProblem) -> FundamentalPair:
    """Fundamental system for the mode ODE: closed form for l in {0, 1},
    series-launched numeric plus reduction of order for l >= 2."""
    if problem.mode == 0:
        return _pair_mode0(problem.c)
    if problem.mode == 1:
        return _pair_mode1(problem.c)
    return _pair_mode_l(problem)


# ----------------------------------------------------------------------------
# variation-of-parameters mode solve with growth certificate

@dataclass
class ModeSolution:
    """Mode solution with its growth certificate."""

    g: Callable
    grid: np.ndarray
    values: np.ndarray
    bound: Callable
    certificate: float   # sup_r |g(r)| / bound(r)


def _growth_bound(problem: ModeProblem, boundary: float, envelope: float):
    l, r_max = problem.mode, problem.r_max
    if l == 0:
        return lambda r: envelope * np.log(2.0 + r)
    if l == 1:
        return lambda r: envelope * (1.0 + r)
    return lambda r: abs(boundary) * (np.asarray(r) / r_max) ** l + envelope / l ** 2


def mode_solve(problem: ModeProblem, rhs: Callable, boundary: float = 0.0,
               envelope: float | None = None, certificate_threshold: float = 50.0,
               n_grid: int = 4000) -> ModeSolution:
    """Variation-of-parameters solution of L_l g = rhs with growth certificate.

    Modes 0 and 1 take zero value and derivative at r = 0; modes >= 2 take the
    prescribed boundary value at r_max.  The certificate reports
    sup_r |g| / bound(r) with bound log(2+r), (1+r), or
    |boundary| (r/r_max)^l + A/l^2 respectively; a ratio above the threshold
    raises GrowthBoundError.
    """
    pair = fundamental_pair(problem)
    l, r_max = problem.mode, problem.r_max
    r = np.geomspace(1e-4, r_max, n_grid)
    f = np.asarray(rhs(r), dtype=float)
    if envelope is None:
        envelope = float(np.max(np.abs(f) * (1.0 + r) ** 3))
    g1, g2 = pair.g1(r), pair.g2(r)
    w0 = np.median(pair.wronskian(np.linspace(1.0, 2.0, 9)))

    int_g1f = cumulative_trapezoid(g1 * f * r, r, initial=0.0)
    int_g2f = cumulative_trapezoid(g2 * f * r, r, initial=0.0)
    if l <= 1:
        vals = (g2 * int_g1f - g1 * int_g2f) / w0
    else:
        outer = int_g2f[-1] - int_g2f
        vals = (g2 * int_g1f + g1 * outer) / w0
        c1 = (boundary - vals[-1]) / g1[-1]
        vals = vals + c1 * g1

    bound = _growth_bound(problem, boundary, max(envelope, 1e-300))
    ratio = float(np.max(np.abs(vals) / np.maximum(bound(r), 1e-300)))
    if ratio > certificate_threshold:
        raise GrowthBoundError(
            f"growth bound violated: certificate ratio {ratio:.2f} > {certificate_threshold}")
    spline = CubicHermiteSpline(r, vals, np.gradient(vals, r))
    return ModeSolution(g=spline, grid=r, values=vals, bound=bound, certificate=ratio)


# ----------------------------------------------------------------------------
# mean-value exponent

def mean_value_exponent(u_value, v_value):
    """e^xi = (e^u - e^v)/(u - v), continuously extended by e^v on the diagonal.

    Satisfies e^xi = e^v (1 + w/2 + O(w^2)) with w = u - v.
    """
    u = np.asarray(u_value, dtype=float)
    v = np.asarray(v_value, dtype=float)
    w = u - v
    small = np.abs(w) < 1e-12
    ratio = np.where(small, 1.0 + 0.5 * w, np.expm1(np.where(small, 1.0, w)) / np.where(small, 1.0, w))
    out = np.exp(v) * ratio
    return float(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------------
# principal eigenvalue of the linearized mode operator on the unit disk

def _assemble_tridiagonal(profile: RadialProfile, mode: int, n: int):
    """Lumped-mass P1 discretization of
    -g'' - g'/r - (lambda r^2N e^u - mode^2/r^2) g on (0, 1), g(1) = 0."""
    x = (np.arange(n + 1) / n) ** 2          # graded mesh clustering at r = 0
    h = np.diff(x)
    rm = 0.5 * (x[:-1] + x[1:])
    w_pot = mode ** 2 / rm ** 2 - profile.lam * rm ** (2 * profile.N) * np.exp(profile.u_at(rm))

    nn = n + 1
    diag = np.zeros(nn)
    off = np.zeros(nn - 1)
    lump = np.zeros(nn)
    for e in range(n):
        k = rm[e] / h[e]
        pe = w_pot[e] * rm[e] * h[e]
        diag[e] += k + 0.25 * pe
        diag[e + 1] += k + 0.25 * pe
        off[e] += -k + 0.25 * pe
        lump[e] += 0.5 * rm[e] * h[e]
        lump[e + 1] += 0.5 * rm[e] * h[e]
    lo = 0 if mode == 0 else 1              # natural at 0 for mode 0, Dirichlet otherwise
    sl = slice(lo, n)                        # Dirichlet at r = 1
    scale = 1.0 / np.sqrt(lump[sl])
    e_off = off[lo:n - 1] * scale[:-1] * scale[1:]
    d = diag[sl] * scale ** 2
    return d, e_off, lump[sl], diag[sl], off[lo:n - 1]


def _smallest_eig(profile: RadialProfile, mode: int, n: int) -> float:
    d, e_off, lump, diag, off = _assemble_tridiagonal(profile, mode, n)
    lam0 = eigh_tridiagonal(d, e_off, select="i", select_range=(0, 0))[0][0]
    # shifted-inverse polish on the unscaled lumped-mass pencil
    shift = lam0 - 1e-8 * max(1.0, abs(lam0))
    ad = diag - shift * lump
    m = d.size
    ab = np.zeros((3, m))
    ab[0, 1:] = off
    ab[1, :] = ad
    ab[2, :-1] = off
    rng = np.random.default_rng(0)
    x = rng.standard_normal(m)
    lam = lam0
    for _ in range(8):
        x = solve_banded((1, 1), ab, lump * x)
        x /= np.linalg.norm(x)
        kx = diag * x
        kx[:-1] += off * x[1:]
        kx[1:] += off * x[:-1]
        lam_new = float(x @ kx) / float(x @ (lump * x))
        if abs(lam_new - lam) <= 1e-12 * max(1.0, abs(lam_new)):
            lam = lam_new
            break
        lam = lam_new
    return lam


def principal_eigenvalue(profile: RadialProfile, mode: int, n: int = 512,
                         resolve_tol: float = 1e-3) -> float:
    """Smallest Dirichlet eigenvalue of the linearized mode operator.

    Shifted-inverse iteration on a graded-mesh collocation of
    -g'' - g'/r - (lambda r^2N e^u - mode^2/r^2) g = Lambda g, g(1) = 0.
    The profile must solve the radial equation (residual <= 1e-6).
    Raises UnresolvedSpectrumError if doubling the mesh moves the eigenvalue
    by more than resolve_tol.
    """
    if mode < 0:
        raise ValueError("mode must be non-negative")
    res = profile_residual(profile)
    if res > 1e-6:
        raise ValueError(f"profile does not solve the radial equation (residual {res:.2e})")
    coarse = _smallest_eig(profile, mode, n)
    fine = _smallest_eig(profile, mode, 2 * n)
    if abs(fine - coarse) > resolve_tol * max(1.0, abs(fine)):
        raise UnresolvedSpectrumError(
            f"unresolved spectrum: eigenvalue moved {abs(fine - coarse):.2e} under refinement")
    return fine
