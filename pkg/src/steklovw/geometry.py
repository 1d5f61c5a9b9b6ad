"""Space-form metric coefficients, radial weights and weighted ball measures.

The ambient spaces are the three simply connected constant-curvature models
(Euclidean space, hyperbolic space, and the unit hemisphere), described by
the curvature tag and the metric coefficient S_kappa with derivative
C_kappa.  Weights are radial functions phi(t) of the distance from a fixed
origin; the measure everywhere is exp(-phi) times the Riemannian one.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .config import DEFAULT_CONFIG, NumericsConfig


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to meet the requested tolerance."""


class Curvature(enum.Enum):
    EUCLIDEAN = 0
    HYPERBOLIC = -1
    SPHERICAL_CAP = 1

    @property
    def kappa(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class SpaceForm:
    """Constant-curvature model space: curvature tag plus dimension n >= 2."""

    curvature: Curvature
    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"space form dimension must be >= 2, got {self.dim}")

    @property
    def kappa(self) -> int:
        return self.curvature.kappa

    @property
    def label(self) -> str:
        return f"{self.curvature.label}(n={self.dim})"


def _check_radial_arg(form: SpaceForm, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("radial argument must be nonnegative")
    if form.curvature is Curvature.SPHERICAL_CAP and np.any(t >= math.pi):
        raise DomainError("spherical-cap radial argument must satisfy t < pi")
    return t


def s_kappa(form: SpaceForm, t):
    """Metric coefficient: sin t, t or sinh t depending on the curvature."""
    t = _check_radial_arg(form, t)
    if form.curvature is Curvature.EUCLIDEAN:
        out = t.copy()
    elif form.curvature is Curvature.HYPERBOLIC:
        out = np.sinh(t)
    else:
        out = np.sin(t)
    return out if out.ndim else float(out)


def c_kappa(form: SpaceForm, t):
    """Derivative of s_kappa: 1, cos t or cosh t."""
    t = _check_radial_arg(form, t)
    if form.curvature is Curvature.EUCLIDEAN:
        out = np.ones_like(t)
    elif form.curvature is Curvature.HYPERBOLIC:
        out = np.cosh(t)
    else:
        out = np.cos(t)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# radial weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RadialWeight:
    """Radial weight phi(t) with first/second derivative evaluators.

    Closed-form kinds carry exact derivatives; tabulated weights use
    centered finite differences on their sample grid and linear
    interpolation in between.
    """

    kind: str
    c: float = 0.0
    a: float = 0.0
    b: float = 0.0
    grid_t: np.ndarray | None = field(default=None, repr=False)
    grid_phi: np.ndarray | None = field(default=None, repr=False)
    grid_dphi: np.ndarray | None = field(default=None, repr=False)
    grid_d2phi: np.ndarray | None = field(default=None, repr=False)

    # -- constructors -------------------------------------------------
    @staticmethod
    def constant(c: float = 0.0) -> "RadialWeight":
        return RadialWeight(kind="constant", c=float(c))

    @staticmethod
    def linear(a: float) -> "RadialWeight":
        """phi(t) = -a t."""
        return RadialWeight(kind="linear", a=float(a))

    @staticmethod
    def quadratic(a: float, b: float) -> "RadialWeight":
        """phi(t) = -a t - b t^2."""
        return RadialWeight(kind="quadratic", a=float(a), b=float(b))

    @staticmethod
    def tabulated(t, phi) -> "RadialWeight":
        t = np.asarray(t, dtype=float)
        phi = np.asarray(phi, dtype=float)
        if t.ndim != 1 or t.shape != phi.shape or t.size < 4:
            raise DomainError("tabulated weight needs matching 1-D arrays with >= 4 samples")
        if np.any(np.diff(t) <= 0):
            raise DomainError("tabulated weight grid must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(phi))):
            raise DomainError("tabulated weight samples must be finite")
        dphi = np.gradient(phi, t)
        d2phi = np.gradient(dphi, t)
        return RadialWeight(kind="tabulated", grid_t=t, grid_phi=phi,
                            grid_dphi=dphi, grid_d2phi=d2phi)

    # -- evaluation ---------------------------------------------------
    def _tab_interp(self, values: np.ndarray, t):
        t_arr = np.asarray(t, dtype=float)
        lo, hi = self.grid_t[0], self.grid_t[-1]
        pad = 1e-12 * max(1.0, abs(hi))
        if np.any(t_arr < lo - pad) or np.any(t_arr > hi + pad):
            raise DomainError(
                f"tabulated weight queried outside its grid [{lo}, {hi}]")
        out = np.interp(t_arr, self.grid_t, values)
        return out if out.ndim else float(out)

    def phi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = np.full_like(t, self.c)
        elif self.kind == "linear":
            out = -self.a * t
        elif self.kind == "quadratic":
            out = -self.a * t - self.b * t * t
        else:
            return self._tab_interp(self.grid_phi, t)
        return out if out.ndim else float(out)

    def phi_prime(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = np.zeros_like(t)
        elif self.kind == "linear":
            out = np.full_like(t, -self.a)
        elif self.kind == "quadratic":
            out = -self.a - 2.0 * self.b * t
        else:
            return self._tab_interp(self.grid_dphi, t)
        return out if out.ndim else float(out)

    def phi_second(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant" or self.kind == "linear":
            out = np.zeros_like(t)
        elif self.kind == "quadratic":
            out = np.full_like(t, -2.0 * self.b)
        else:
            return self._tab_interp(self.grid_d2phi, t)
        return out if out.ndim else float(out)

    @property
    def label(self) -> str:
        if self.kind == "constant":
            return f"const({self.c:g})"
        if self.kind == "linear":
            return f"-{self.a:g}*t"
        if self.kind == "quadratic":
            return f"-{self.a:g}*t-{self.b:g}*t^2"
        return f"tabulated[{self.grid_t.size}]"


@dataclass(frozen=True)
class WeightAdmissibility:
    """Outcome of the non-increasing/concavity check on a sample grid."""

    admissible: bool
    max_phi_prime: float
    max_phi_second: float
    tol: float
    t_max: float
    samples: int


def validate_property_i(w: RadialWeight, t_max: float, samples: int = 256,
                        tol: float | None = None,
                        config: NumericsConfig = DEFAULT_CONFIG) -> WeightAdmissibility:
    """Check that phi is non-increasing and concave on [0, t_max].

    Inadmissibility is a report outcome, never an exception.  The check is
    numerical on a sample grid; closed-form kinds use their exact
    derivatives on that grid.
    """
    if t_max <= 0:
        raise DomainError("t_max must be positive")
    if samples < 16:
        raise DomainError("need at least 16 samples")
    if tol is None:
        tol = config.property_tol
    ts = np.linspace(0.0, t_max, samples)
    if w.kind == "tabulated":
        # stay on the tabulated range, and widen the tolerance to the
        # roundoff floor of twice-differenced table values (~eps/h^2)
        ts = ts[ts <= w.grid_t[-1] + 1e-15]
        h_min = float(np.min(np.diff(w.grid_t)))
        scale = max(1.0, float(np.max(np.abs(w.grid_phi))))
        tol = max(tol, 32.0 * np.finfo(float).eps * scale / h_min ** 2)
    dp = np.asarray(w.phi_prime(ts))
    d2p = np.asarray(w.phi_second(ts))
    max_dp = float(np.max(dp))
    max_d2p = float(np.max(d2p))
    return WeightAdmissibility(
        admissible=(max_dp <= tol and max_d2p <= tol),
        max_phi_prime=max_dp, max_phi_second=max_d2p,
        tol=tol, t_max=float(t_max), samples=int(ts.size))


# ---------------------------------------------------------------------------
# weighted ball measures
# ---------------------------------------------------------------------------

def unit_sphere_area(n: int) -> float:
    """Surface measure of the unit (n-1)-sphere in R^n: 2 pi^{n/2} / Gamma(n/2)."""
    if n < 2:
        raise DomainError("need n >= 2")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def _quad_checked(f, a: float, b: float, abstol: float):
    res = quad(f, a, b, epsabs=abstol, epsrel=1e-13, limit=200, full_output=1)
    if len(res) > 3:
        raise QuadratureError(f"quadrature did not converge: {res[3]}")
    value, abserr = res[0], res[1]
    if abserr > 10.0 * max(abstol, 1e-12 * abs(value)):
        raise QuadratureError(
            f"quadrature error estimate {abserr:.3e} exceeds tolerance")
    return value


def ball_weighted_volume(form: SpaceForm, w: RadialWeight, R: float,
                         config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Weighted volume of the geodesic ball of radius R about the origin."""
    if R <= 0:
        raise DomainError("ball radius must be positive")
    _check_radial_arg(form, R)
    n = form.dim
    omega = unit_sphere_area(n)

    def integrand(t):
        return s_kappa(form, t) ** (n - 1) * math.exp(-w.phi(t))

    return omega * _quad_checked(integrand, 0.0, R, config.quadrature_abstol)


def ball_boundary_weighted_measure(form: SpaceForm, w: RadialWeight,
                                   R: float) -> float:
    """Weighted surface measure of the geodesic sphere of radius R."""
    if R <= 0:
        raise DomainError("ball radius must be positive")
    sr = s_kappa(form, R)
    return unit_sphere_area(form.dim) * sr ** (form.dim - 1) * math.exp(-w.phi(R))


# ---------------------------------------------------------------------------
# Poincare-disk bookkeeping (curvature -1 model in the unit disk)
# ---------------------------------------------------------------------------

def poincare_distance(x) -> float | np.ndarray:
    """Hyperbolic distance from the origin of a point in the open unit disk.

    Accepts a single point of shape (2,) or an array of points (..., 2).
    """
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r >= 1.0):
        raise DomainError("point must lie strictly inside the unit disk")
    out = np.log((1.0 + r) / (1.0 - r))
    return out if out.ndim else float(out)


def conformal_factor(x) -> float | np.ndarray:
    """Poincare metric factor rho(x) = 2 / (1 - |x|^2)."""
    x = np.asarray(x, dtype=float)
    r2 = np.sum(x * x, axis=-1)
    if np.any(r2 >= 1.0):
        raise DomainError("point must lie strictly inside the unit disk")
    out = 2.0 / (1.0 - r2)
    return out if out.ndim else float(out)
