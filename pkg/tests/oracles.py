"""Independent oracles used by the tests.

The finite-difference march below discretizes the radial boundary problem
directly (3-point scheme plus one-sided endpoint derivative) and never
touches the package's Runge-Kutta shooting path, so agreement between the
two is a genuine cross-check.
"""
import math


def fd_beta(n, kappa, phi_prime, R, m, mode=1):
    """Shooting value T'(R)/T(R) from a second-order finite-difference march."""
    lam = mode * (mode + n - 2)
    if kappa == 0:
        S = lambda t: t
        C = lambda t: 1.0
    elif kappa == -1:
        S, C = math.sinh, math.cosh
    else:
        S, C = math.sin, math.cos
    h = R / m
    c1 = mode * phi_prime(0.0) / (2 * mode + n - 1)
    T = [0.0] * (m + 1)
    T[1] = h ** mode * (1 + c1 * h)
    T[2] = (2 * h) ** mode * (1 + c1 * 2 * h)
    for j in range(2, m):
        t = j * h
        p = (n - 1) * C(t) / S(t) - phi_prime(t)
        q = lam / S(t) ** 2
        a = 1.0 / h ** 2 + p / (2 * h)
        b = -2.0 / h ** 2 - q
        c = 1.0 / h ** 2 - p / (2 * h)
        T[j + 1] = -(b * T[j] + c * T[j - 1]) / a
    dT = (3 * T[m] - 4 * T[m - 1] + T[m - 2]) / (2 * h)
    return dT / T[m]


def fd_beta_rich(n, kappa, phi_prime, R, m=4000, mode=1):
    """Richardson-extrapolated finite-difference value (error ~ 1e-9)."""
    b1 = fd_beta(n, kappa, phi_prime, R, m, mode)
    b2 = fd_beta(n, kappa, phi_prime, R, 2 * m, mode)
    return b2 + (b2 - b1) / 3.0


def linear_weight_beta1_euclid_n2(a, R):
    """Exact closed form for phi(t) = -a t in the plane.

    T(t) = 2 (exp(-a t) - 1 + a t) / (a^2 t) solves the mode-1 equation
    (verified by substitution); the value below is its log-derivative at R.
    """
    s = a * R
    return a * (1 - (1 + s) * math.exp(-s)) / (s * (math.exp(-s) - 1 + s))
