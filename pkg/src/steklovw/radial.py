"""Radial mode solver for weighted Steklov eigenvalues of geodesic balls.

For each angular mode degree i >= 1 the separated radial factor T solves

    T'' + ((n-1) C_kappa/S_kappa - phi') T' - lam_i S_kappa^{-2} T = 0,
    lam_i = i (i + n - 2),

with T ~ t^i near the regular singular point t = 0.  The shooting value
beta_i = T'(R)/T(R) is the Steklov eigenvalue of the mode; beta_1 is the
first nonzero eigenvalue of the ball.  The module also evaluates the two
monotone comparison profiles

    G = (T^2)' + (n-1)(C/S) T^2 - T^2 phi',
    H = (T')^2 + (n-1) T^2 / S^2,

whose weighted ball integrals satisfy sigma_1(B_R) = int H dmu / int G dmu.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson, solve_ivp

from .config import DEFAULT_CONFIG, NumericsConfig
from .geometry import (DomainError, RadialWeight, SpaceForm,
                       ball_boundary_weighted_measure, c_kappa, s_kappa,
                       unit_sphere_area, validate_property_i)
from .spectrum import SteklovSpectrum


class IntegrationError(RuntimeError):
    """The adaptive integrator failed (stiffness, step underflow, ...)."""


class NonPositiveSolutionError(IntegrationError):
    """T <= 0 detected inside (0, R): invalid weight or integrator failure."""


class AdmissibilityError(ValueError):
    """Weight fails the non-increasing/concavity requirement and no waiver set."""


def angular_eigenvalue(n: int, i: int) -> float:
    """Unit-sphere eigenvalue of degree-i spherical harmonics: i(i+n-2)."""
    return float(i * (i + n - 2))


def harmonic_multiplicity(n: int, i: int) -> int:
    """Dimension of the degree-i spherical-harmonic space on S^{n-1}."""
    if i == 0:
        return 1
    if n == 2:
        return 2
    return (2 * i + n - 2) * math.factorial(i + n - 3) // (
        math.factorial(i) * math.factorial(n - 2))


def _series_coeffs(form: SpaceForm, w: RadialWeight, i: int) -> tuple[float, float]:
    """Coefficients of T = t^i (1 + c1 t + c2 t^2 + ...) near t = 0."""
    n = form.dim
    kappa = form.kappa
    lam = angular_eigenvalue(n, i)
    dp0 = float(w.phi_prime(0.0))
    d2p0 = float(w.phi_second(0.0))
    c1 = i * dp0 / (2 * i + n - 1)
    c2 = (kappa * (lam + (n - 1) * i) / 3.0 + dp0 * c1 * (i + 1) + i * d2p0) / (4 * i + 2 * n)
    return c1, c2


@dataclass
class RadialSolution:
    """Sampled trajectory of one radial mode plus its shooting eigenvalue."""

    form: SpaceForm
    weight: RadialWeight
    mode_degree: int
    angular_eigenvalue: float
    R: float
    grid: np.ndarray
    T_values: np.ndarray
    Tprime_values: np.ndarray
    beta: float
    t0: float
    lead_coeff: float = 1.0
    series_c1: float = 0.0
    series_c2: float = 0.0
    _dense: object = field(default=None, repr=False)

    @property
    def t_end(self) -> float:
        return float(self.grid[-1])

    def _series_eval(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        i, c1, c2 = self.mode_degree, self.series_c1, self.series_c2
        base = t ** i
        T = self.lead_coeff * base * (1.0 + c1 * t + c2 * t * t)
        dT = self.lead_coeff * (i * t ** (i - 1) + c1 * (i + 1) * base
                                + c2 * (i + 2) * base * t)
        return T, dT

    def T_at(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(t)
        low = t < self.t0
        if np.any(low):
            out[low] = self._series_eval(t[low])[0]
        if np.any(~low):
            out[~low] = self._dense(t[~low])[0]
        return out

    def Tprime_at(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(t)
        low = t < self.t0
        if np.any(low):
            out[low] = self._series_eval(t[low])[1]
        if np.any(~low):
            out[~low] = self._dense(t[~low])[1]
        return out


def solve_mode(form: SpaceForm, w: RadialWeight, i: int, R: float,
               config: NumericsConfig = DEFAULT_CONFIG, *,
               lead_coeff: float = 1.0, t_end: float | None = None,
               waive_admissibility: bool = False) -> RadialSolution:
    """Integrate one radial mode and return the sampled solution with beta_i.

    ``t_end`` extends the integration beyond R (the shooting value is still
    taken at R); this is what inequality audits use to evaluate T outside
    the comparison ball.
    """
    if i < 1:
        raise DomainError("mode degree must be >= 1")
    if R <= 0:
        raise DomainError("R must be positive")
    if t_end is None:
        t_end = R
    if t_end < R:
        raise DomainError("t_end must be >= R")
    if form.curvature.kappa == 1 and t_end >= math.pi:
        raise DomainError("spherical-cap solves require t_end < pi")

    if not waive_admissibility:
        adm = validate_property_i(w, t_end, config.property_samples, config=config)
        if not adm.admissible:
            raise AdmissibilityError(
                "weight fails Property I (non-increasing, concave): "
                f"max phi' = {adm.max_phi_prime:.3e}, max phi'' = {adm.max_phi_second:.3e}; "
                "pass waive_admissibility=True to integrate anyway")

    n = form.dim
    lam = angular_eigenvalue(n, i)
    c1, c2 = _series_coeffs(form, w, i)
    t0 = config.series_start_factor * R

    base = t0 ** i
    y0 = np.array([
        lead_coeff * base * (1.0 + c1 * t0 + c2 * t0 * t0),
        lead_coeff * (i * t0 ** (i - 1) + c1 * (i + 1) * base + c2 * (i + 2) * base * t0),
    ])

    def rhs(t, y):
        T, dT = y
        s = s_kappa(form, t)
        c = c_kappa(form, t)
        return (dT,
                -((n - 1) * c / s - w.phi_prime(t)) * dT + lam / (s * s) * T)

    atol = config.integrator_rtol * max(abs(y0[0]), 1e-290)
    sol = solve_ivp(rhs, (t0, t_end), y0, method=config.integrator_method,
                    rtol=config.integrator_rtol, atol=atol, dense_output=True)
    if not sol.success:
        raise IntegrationError(f"radial integration failed: {sol.message}")

    grid = np.linspace(t0, t_end, config.report_points)
    vals = sol.sol(grid)
    T_vals, dT_vals = vals[0], vals[1]
    if np.any(T_vals <= 0.0):
        raise NonPositiveSolutionError(
            "radial solution T became non-positive inside (0, R)")

    if t_end == R:
        TR, dTR = sol.y[0, -1], sol.y[1, -1]
    else:
        TR, dTR = sol.sol(R)
    beta = float(dTR / TR)

    return RadialSolution(
        form=form, weight=w, mode_degree=i, angular_eigenvalue=lam, R=float(R),
        grid=grid, T_values=T_vals, Tprime_values=dT_vals, beta=beta,
        t0=t0, lead_coeff=lead_coeff, series_c1=c1, series_c2=c2,
        _dense=sol.sol)


# ---------------------------------------------------------------------------
# weighted radial integrals
# ---------------------------------------------------------------------------

def _radial_integral(sol: RadialSolution, values_fn, upto: float,
                     head: float, npts: int = 4097) -> float:
    """omega_{n-1} * int_0^upto values_fn(t, T, T') S^{n-1} e^{-phi} dt.

    ``head`` supplies the (analytic leading-order) contribution of [0, t0].
    """
    form, w = sol.form, sol.weight
    n = form.dim
    ts = np.linspace(sol.t0, upto, npts)
    T = sol.T_at(ts)
    dT = sol.Tprime_at(ts)
    s = s_kappa(form, ts)
    integrand = values_fn(ts, T, dT) * s ** (n - 1) * np.exp(-w.phi(ts))
    body = simpson(integrand, x=ts)
    return unit_sphere_area(n) * (body + head)


def _h_values(form: SpaceForm, w: RadialWeight, t, T, dT):
    s = s_kappa(form, t)
    return dT * dT + (form.dim - 1) * (T / s) ** 2


def _g_values(form: SpaceForm, w: RadialWeight, t, T, dT):
    s = s_kappa(form, t)
    c = c_kappa(form, t)
    return 2.0 * T * dT + ((form.dim - 1) * c / s - w.phi_prime(t)) * T * T


def ball_gh_integrals(sol: RadialSolution, npts: int = 4097) -> tuple[float, float]:
    """Weighted ball integrals (int_B G dmu, int_B H dmu) for a mode-1 solve."""
    if sol.mode_degree != 1:
        raise DomainError("G/H integrals are defined for the mode-1 solution")
    form, w = sol.form, sol.weight
    n = form.dim
    w0 = math.exp(-w.phi(0.0)) * sol.lead_coeff ** 2
    head_g = w0 * sol.t0 ** (n + 1)        # G ~ (n+1) t, S^{n-1} ~ t^{n-1}
    head_h = w0 * sol.t0 ** n              # H ~ n
    ig = _radial_integral(sol, lambda t, T, dT: _g_values(form, w, t, T, dT),
                          sol.R, head_g, npts)
    ih = _radial_integral(sol, lambda t, T, dT: _h_values(form, w, t, T, dT),
                          sol.R, head_h, npts)
    return ig, ih


@dataclass
class BallSigma1:
    """First nonzero ball eigenvalue with the integral-identity cross check."""

    value: float
    beta: float
    integral_value: float
    rel_discrepancy: float
    constant_boundary_eigenvalue_reading: float
    solution: RadialSolution

    def __float__(self) -> float:
        return self.value


def sigma1_ball(form: SpaceForm, w: RadialWeight, R: float,
                config: NumericsConfig = DEFAULT_CONFIG, *,
                waive_admissibility: bool = False) -> BallSigma1:
    """sigma_1 of the weighted ball via shooting, cross-checked by quadrature.

    The identity checked is beta_1 = int_B H dmu / (T(R)^2 |bd B_R|_phi);
    the metadata also records the (inconsistent) reading that freezes the
    boundary-sphere eigenvalue at its t = R value, so the discrepancy
    between the two readings stays visible in data.
    """
    sol = solve_mode(form, w, 1, R, config, waive_admissibility=waive_admissibility)
    n = form.dim
    _, ih = ball_gh_integrals(sol)
    denom = (sol.T_at(R)[0] ** 2) * ball_boundary_weighted_measure(form, w, R)
    integral_value = ih / denom
    rel = abs(sol.beta - integral_value) / abs(sol.beta)
    if rel > config.identity_warn_tol:
        warnings.warn(
            f"shooting/integral identity discrepancy {rel:.3e} exceeds "
            f"{config.identity_warn_tol:.1e}", RuntimeWarning, stacklevel=2)

    v1_at_R = (n - 1) / s_kappa(form, R) ** 2
    w0 = math.exp(-w.phi(0.0)) * sol.lead_coeff ** 2
    head_alt = w0 * sol.t0 ** n / n   # (T')^2 ~ 1 dominates the head
    alt = _radial_integral(
        sol, lambda t, T, dT: dT * dT + v1_at_R * T * T, sol.R, head_alt) / denom

    return BallSigma1(value=sol.beta, beta=sol.beta, integral_value=integral_value,
                      rel_discrepancy=rel,
                      constant_boundary_eigenvalue_reading=alt, solution=sol)


def ball_spectrum(form: SpaceForm, w: RadialWeight, R: float, count: int,
                  config: NumericsConfig = DEFAULT_CONFIG, *,
                  waive_admissibility: bool = False) -> SteklovSpectrum:
    """sigma_0 = 0 followed by the ``count`` smallest ball eigenvalues.

    Mode eigenvalues beta_i enter with the multiplicity of degree-i
    spherical harmonics; beta_i increases with i, so modes are walked in
    order until enough values are collected.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    n = form.dim
    values = [0.0]
    modes = [0]
    i = 1
    while len(values) < count + 1:
        sol = solve_mode(form, w, i, R, config,
                         waive_admissibility=waive_admissibility)
        mult = harmonic_multiplicity(n, i)
        values.extend([sol.beta] * mult)
        modes.extend([i] * mult)
        i += 1
    values = values[:count + 1]
    modes = modes[:count + 1]
    return SteklovSpectrum(
        eigenvalues=np.array(values), modes=modes,
        metadata={"source": "radial", "curvature": form.curvature.label,
                  "n": n, "R": R, "weight": w.label})


# ---------------------------------------------------------------------------
# monotone comparison profiles
# ---------------------------------------------------------------------------

@dataclass
class GHProfile:
    """G and H sampled on the grid of a mode-1 radial solution."""

    form: SpaceForm
    weight: RadialWeight
    grid: np.ndarray
    G_values: np.ndarray
    H_values: np.ndarray


def compute_gh(sol: RadialSolution) -> GHProfile:
    if sol.mode_degree != 1:
        raise DomainError("G/H profiles are defined for the mode-1 solution")
    t, T, dT = sol.grid, sol.T_values, sol.Tprime_values
    return GHProfile(
        form=sol.form, weight=sol.weight, grid=t,
        G_values=_g_values(sol.form, sol.weight, t, T, dT),
        H_values=_h_values(sol.form, sol.weight, t, T, dT))


@dataclass
class GHMonotonicityReport:
    """Finite-difference slopes of G and H against a relative tolerance."""

    min_g_slope: float
    max_h_slope: float
    g_scale: float
    h_scale: float
    tol: float
    g_ok: bool
    h_ok: bool

    @property
    def passed(self) -> bool:
        return self.g_ok and self.h_ok


def check_gh_monotonicity(p: GHProfile, tol: float = 1e-8) -> GHMonotonicityReport:
    """Check G non-decreasing and H non-increasing up to tol * scale."""
    dt = np.diff(p.grid)
    g_slopes = np.diff(p.G_values) / dt
    h_slopes = np.diff(p.H_values) / dt
    g_scale = float(np.max(np.abs(p.G_values)))
    h_scale = float(np.max(np.abs(p.H_values)))
    min_g = float(np.min(g_slopes))
    max_h = float(np.max(h_slopes))
    return GHMonotonicityReport(
        min_g_slope=min_g, max_h_slope=max_h,
        g_scale=g_scale, h_scale=h_scale, tol=tol,
        g_ok=(min_g >= -tol * g_scale), h_ok=(max_h <= tol * h_scale))


def export_radial_csv(sol: RadialSolution, path, profile: GHProfile | None = None):
    """Write the sampled trajectory (and optional G/H columns) as CSV."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        if profile is None:
            wr.writerow(["t", "T", "Tprime"])
            for row in zip(sol.grid, sol.T_values, sol.Tprime_values):
                wr.writerow([repr(float(v)) for v in row])
        else:
            wr.writerow(["t", "T", "Tprime", "G", "H"])
            for row in zip(sol.grid, sol.T_values, sol.Tprime_values,
                           profile.G_values, profile.H_values):
                wr.writerow([repr(float(v)) for v in row])
