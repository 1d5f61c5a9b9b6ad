import math

import numpy as np
import pytest

from oracles import fd_beta_rich, linear_weight_beta1_euclid_n2
from steklovw.config import DEFAULT_CONFIG
from steklovw.geometry import Curvature, DomainError, RadialWeight, SpaceForm
from steklovw.radial import (AdmissibilityError, ball_gh_integrals,
                             ball_spectrum, check_gh_monotonicity, compute_gh,
                             export_radial_csv, harmonic_multiplicity,
                             sigma1_ball, solve_mode)

E2 = SpaceForm(Curvature.EUCLIDEAN, 2)
E3 = SpaceForm(Curvature.EUCLIDEAN, 3)
E5 = SpaceForm(Curvature.EUCLIDEAN, 5)
H2 = SpaceForm(Curvature.HYPERBOLIC, 2)
H3 = SpaceForm(Curvature.HYPERBOLIC, 3)
W0 = RadialWeight.constant()


# ---------------------------------------------------------------------------
# exact Euclidean and hyperbolic values
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("form", [E2, E3, E5])
@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
def test_euclidean_mode1_exact(form, R):
    # T = t solves the constant-weight equation in every dimension
    sol = solve_mode(form, W0, 1, R)
    assert sol.beta == pytest.approx(1.0 / R, rel=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_euclidean_higher_modes_exact(k):
    # T = t^k solves the mode-k equation; beta_k = k / R
    for R in (0.5, 2.0):
        sol = solve_mode(E2, W0, k, R)
        assert sol.beta == pytest.approx(k / R, rel=1e-9)


def test_unit_disk_first_eigenvalue_is_one():
    assert sigma1_ball(E2, W0, 1.0).value == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
def test_hyperbolic_mode1_closed_form(R):
    # T = 2 tanh(t/2) solves the n=2 constant-weight equation: beta = 1/sinh R
    sol = solve_mode(H2, W0, 1, R)
    assert sol.beta == pytest.approx(1.0 / math.sinh(R), rel=1e-9)


@pytest.mark.parametrize("R", [0.5, 1.0, 1.4])
def test_spherical_cap_mode1_closed_form(R):
    # sin/sinh analogy: T = 2 tan(t/2) solves the n=2 cap equation
    S2 = SpaceForm(Curvature.SPHERICAL_CAP, 2)
    sol = solve_mode(S2, W0, 1, R)
    assert sol.beta == pytest.approx(1.0 / math.sin(R), rel=1e-9)


def test_spherical_cap_weighted_against_fd_march():
    S2 = SpaceForm(Curvature.SPHERICAL_CAP, 2)
    got = solve_mode(S2, RadialWeight.linear(0.5), 1, 1.0).beta
    assert got == pytest.approx(fd_beta_rich(2, 1, lambda t: -0.5, 1.0),
                                rel=1e-8)
    res = sigma1_ball(SpaceForm(Curvature.SPHERICAL_CAP, 3),
                      RadialWeight.linear(0.25), 1.2)
    assert res.rel_discrepancy < 1e-9


def test_linear_weight_closed_form_family():
    # exact solution T = 2(exp(-a t) - 1 + a t)/(a^2 t) for the plane
    for a, R in ((1.0, 1.0), (0.5, 1.0), (0.25, 2.0)):
        sol = solve_mode(E2, RadialWeight.linear(a), 1, R)
        assert sol.beta == pytest.approx(
            linear_weight_beta1_euclid_n2(a, R), rel=1e-9)
    # a = 1, R = 1 collapses to e - 2
    assert sigma1_ball(E2, RadialWeight.linear(1.0), 1.0).value == \
        pytest.approx(math.e - 2.0, rel=1e-9)


def test_weighted_values_against_fd_march():
    cases = [
        (E2, 0, RadialWeight.quadratic(1.0, 0.25), lambda t: -1.0 - 0.5 * t),
        (E3, 0, RadialWeight.linear(0.5), lambda t: -0.5),
        (H2, -1, RadialWeight.linear(0.5), lambda t: -0.5),
        (H2, -1, RadialWeight.quadratic(1.0, 0.25), lambda t: -1.0 - 0.5 * t),
    ]
    for form, kappa, w, dphi in cases:
        got = solve_mode(form, w, 1, 1.0).beta
        want = fd_beta_rich(form.dim, kappa, dphi, 1.0)
        assert got == pytest.approx(want, rel=2e-7)


# frozen values from the finite-difference oracle (Richardson, err ~1e-9)
FROZEN = [
    (E2, RadialWeight.quadratic(1.0, 0.25), 0.635828806820),
    (E3, RadialWeight.linear(0.5), 0.883986597683),
    (H2, RadialWeight.linear(0.5), 0.712835084381),
    (H2, RadialWeight.quadratic(1.0, 0.25), 0.526215233365),
]


@pytest.mark.parametrize("form,w,expected", FROZEN)
def test_frozen_weighted_values(form, w, expected):
    assert sigma1_ball(form, w, 1.0).value == pytest.approx(expected, rel=1e-8)


# ---------------------------------------------------------------------------
# integral identity and metadata
# ---------------------------------------------------------------------------

def test_integral_identity_small_discrepancy():
    for form, w in [(E2, RadialWeight.linear(1.0)),
                    (H2, RadialWeight.quadratic(0.5, 0.25)),
                    (E3, RadialWeight.linear(0.25)),
                    (H3, RadialWeight.constant())]:
        res = sigma1_ball(form, w, 1.5)
        assert res.rel_discrepancy < 1e-8
        assert res.integral_value == pytest.approx(res.beta, rel=1e-8)


def test_constant_boundary_eigenvalue_reading_differs():
    # freezing the boundary-sphere eigenvalue at its R value is a different
    # (inconsistent) quantity: int (t^2 + 1) t dt / R^3 = 3/4 at R = 1
    res = sigma1_ball(E2, W0, 1.0)
    assert res.constant_boundary_eigenvalue_reading == pytest.approx(0.75, rel=1e-6)
    assert abs(res.constant_boundary_eigenvalue_reading - res.beta) > 0.2


def test_ball_gh_integrals_disk():
    # G = 3t, H = 2 for the unit disk: int G dmu = 2 pi, int H dmu = 2 pi
    sol = solve_mode(E2, W0, 1, 1.0)
    ig, ih = ball_gh_integrals(sol)
    assert ig == pytest.approx(2 * math.pi, rel=1e-9)
    assert ih == pytest.approx(2 * math.pi, rel=1e-9)
    # sigma1(B_R) = int H / int G
    assert ih / ig == pytest.approx(sol.beta, rel=1e-9)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_normalization_invariance():
    w = RadialWeight.quadratic(0.5, 0.25)
    b1 = solve_mode(H2, w, 1, 1.0).beta
    b2 = solve_mode(H2, w, 1, 1.0, lead_coeff=3.7).beta
    assert b2 == pytest.approx(b1, rel=1e-10)


def test_mode_monotonicity():
    w = RadialWeight.linear(0.5)
    for form in (E2, H2, E3):
        betas = [solve_mode(form, w, i, 1.0).beta for i in range(1, 6)]
        assert all(b2 > b1 for b1, b2 in zip(betas, betas[1:]))


def test_constant_weight_reduction_is_exact():
    # the equation sees only phi', so any constant weight gives identical output
    a = solve_mode(E2, RadialWeight.constant(0.0), 1, 1.0)
    b = solve_mode(E2, RadialWeight.constant(5.0), 1, 1.0)
    assert np.array_equal(a.T_values, b.T_values)
    assert a.beta == b.beta


def test_solution_grid_and_positivity():
    sol = solve_mode(H2, RadialWeight.linear(1.0), 1, 2.0)
    assert np.all(np.diff(sol.grid) > 0)
    assert sol.grid[-1] == pytest.approx(2.0, abs=1e-12)
    assert np.all(sol.T_values > 0)
    assert np.all(sol.Tprime_values > 0)
    assert sol.beta > 0


def test_solve_mode_preconditions():
    with pytest.raises(DomainError):
        solve_mode(E2, W0, 0, 1.0)
    with pytest.raises(DomainError):
        solve_mode(E2, W0, 1, -1.0)
    with pytest.raises(DomainError):
        solve_mode(E2, W0, 1, 1.0, t_end=0.5)
    with pytest.raises(DomainError):
        solve_mode(SpaceForm(Curvature.SPHERICAL_CAP, 2), W0, 1, 3.3)


def test_admissibility_gate():
    bad = RadialWeight.linear(-1.0)    # phi = +t, increasing
    with pytest.raises(AdmissibilityError):
        solve_mode(E2, bad, 1, 1.0)
    sol = solve_mode(E2, bad, 1, 1.0, waive_admissibility=True)
    assert sol.beta > 0


def test_extended_solution_evaluators():
    sol = solve_mode(E2, W0, 1, 1.0, t_end=2.0)
    assert sol.beta == pytest.approx(1.0, rel=1e-9)   # beta taken at R, not t_end
    ts = np.array([5e-5, 0.5, 1.0, 1.7])
    assert np.allclose(sol.T_at(ts), ts, rtol=1e-8)
    assert np.allclose(sol.Tprime_at(ts), 1.0, rtol=1e-8)


# ---------------------------------------------------------------------------
# spectra and multiplicities
# ---------------------------------------------------------------------------

def test_harmonic_multiplicity():
    assert [harmonic_multiplicity(2, i) for i in (1, 2, 3)] == [2, 2, 2]
    assert [harmonic_multiplicity(3, i) for i in (1, 2, 3)] == [3, 5, 7]
    assert harmonic_multiplicity(4, 2) == 9
    assert harmonic_multiplicity(5, 1) == 5


def test_disk_spectrum_matches_classical_list():
    spec = ball_spectrum(E2, W0, 1.0, 5)
    assert np.allclose(spec.eigenvalues, [0, 1, 1, 2, 2, 3], atol=1e-9)


def test_ball3_spectrum():
    spec = ball_spectrum(E3, W0, 1.0, 3)
    assert np.allclose(spec.eigenvalues, [0, 1, 1, 1], atol=1e-9)


def test_weighted_disk_double_first_eigenvalue():
    spec = ball_spectrum(E2, RadialWeight.linear(0.5), 1.0, 2)
    assert spec.eigenvalues[0] == 0.0
    assert spec.eigenvalues[1] == spec.eigenvalues[2]   # rotational multiplicity
    assert spec.eigenvalues[1] == pytest.approx(0.8467422493615949, rel=1e-8)


# ---------------------------------------------------------------------------
# G/H profiles
# ---------------------------------------------------------------------------

def test_gh_profile_disk_closed_form():
    sol = solve_mode(E2, W0, 1, 1.0)
    p = compute_gh(sol)
    assert np.allclose(p.G_values, 3 * p.grid, rtol=1e-8)
    assert np.allclose(p.H_values, 2.0, rtol=1e-8)


def test_gh_profile_leading_order():
    for form, w in [(E3, RadialWeight.linear(0.5)), (H2, W0)]:
        sol = solve_mode(form, w, 1, 1.0)
        p = compute_gh(sol)
        n = form.dim
        t0 = p.grid[0]
        assert p.H_values[0] == pytest.approx(n, rel=1e-3)
        expected_g = (n + 1) * t0 - t0 ** 2 * w.phi_prime(t0)
        assert p.G_values[0] == pytest.approx(expected_g, rel=1e-3)


def test_gh_requires_mode_one():
    sol = solve_mode(E2, W0, 2, 1.0)
    with pytest.raises(DomainError):
        compute_gh(sol)


def test_gh_monotonicity_constant_weight():
    for form in (E2, H2, E3, H3):
        rep = check_gh_monotonicity(compute_gh(solve_mode(form, W0, 1, 1.5)))
        assert rep.passed, (form.label, rep)


def test_gh_monotonicity_flags_inadmissible_weight():
    # phi = +t violates the hypotheses; H gains an increasing stretch
    bad = RadialWeight.linear(-1.0)
    sol = solve_mode(E2, bad, 1, 2.0, waive_admissibility=True)
    rep = check_gh_monotonicity(compute_gh(sol))
    assert not rep.h_ok
    assert not rep.passed


def test_radial_csv_export(tmp_path):
    sol = solve_mode(E2, W0, 1, 1.0)
    p = compute_gh(sol)
    path = tmp_path / "radial.csv"
    export_radial_csv(sol, path, p)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,T,Tprime,G,H"
    assert len(lines) == 1 + DEFAULT_CONFIG.report_points
    first = [float(x) for x in lines[1].split(",")]
    assert first[1] == pytest.approx(first[0], rel=1e-6)   # T ~ t near 0
