"""Near-critical scaling constants for fugacity q_N = 1 - c/N.

Quenched and annealed free energy densities mu_c and nu_c, the gap function
h(c) = c (nu_c - mu_c), the four-term variance density
sigma_c^2 = alpha + beta - gamma - delta, and the generic pair-statistic
variance functional.

Special functions are evaluated by dual-regime expansions: the exponential
integral E1 by alternating series below 1 and by continued fraction above,
the dilogarithm by its power series with the standard reflection at
z = 1/2.  The 2D variance integrals are reduced by the symmetric change of
variables s = x + y, t = x - y and evaluated by nested adaptive quadrature
with an explicit exponential truncation of the unbounded region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

_EULER_GAMMA = 0.5772156649015329


def _check_c(c: float):
    if c <= 0.0:
        raise ValueError(f"scaling parameter c must be positive, got {c}")


def exp1(x: float, tol: float = 1e-14) -> float:
    """Exponential integral E1(x) = int_x^inf exp(-t)/t dt for x > 0.

    Alternating series for x < 1, modified Lentz continued fraction for
    x >= 1; target absolute error 1e-12 or better.
    """
    if x <= 0.0:
        raise ValueError("exp1 requires x > 0")
    if x < 1.0:
        total = -_EULER_GAMMA - math.log(x)
        term = 1.0
        k = 1
        while True:
            term *= -x / k
            contrib = -term / k
            total += contrib
            if abs(contrib) < tol:
                return total
            k += 1
    # continued fraction E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c_ = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        a = -(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c_ = b + a / c_
        delta = c_ * d
        h *= delta
        if abs(delta - 1.0) < tol:
            break
    return h * math.exp(-x)


def dilog(z: float, tol: float = 1e-15) -> float:
    """Li2(z) = sum_{m>=1} z^m / m^2 for 0 <= z < 1, with the reflection
    Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z) applied for z > 1/2."""
    if not 0.0 <= z < 1.0:
        raise ValueError("dilog implemented for 0 <= z < 1")
    if z == 0.0:
        return 0.0
    if z > 0.5:
        return (
            math.pi**2 / 6.0 - math.log(z) * math.log1p(-z) - dilog(1.0 - z, tol)
        )
    total = 0.0
    power = 1.0
    m = 1
    while True:
        power *= z
        contrib = power / (m * m)
        total += contrib
        if contrib < tol:
            return total
        m += 1


def mu_c(c: float) -> float:
    """Quenched free energy density: (1 - exp(-c))/c + E1(c)."""
    _check_c(c)
    return -math.expm1(-c) / c + exp1(c)


def nu_c(c: float) -> float:
    """Annealed free energy density: (pi^2/6 - Li2(exp(-c))) / c.

    Termwise integration of -log(1 - exp(-cx)) over [0,1]; the log
    singularity of the defining integral never enters this path.
    """
    _check_c(c)
    return (math.pi**2 / 6.0 - dilog(math.exp(-c))) / c


def nu_c_quad(c: float) -> float:
    """Cross-check route for nu_c: adaptive quadrature of the defining
    integral, with subinterval refinement absorbing the log endpoint."""
    _check_c(c)
    val, _ = quad(lambda x: -math.log(-math.expm1(-c * x)), 0.0, 1.0, limit=200)
    return val


def h_gap(c: float) -> float:
    """Gap function h(c) = c (nu_c - mu_c); strictly positive for c > 0."""
    _check_c(c)
    return c * (nu_c(c) - mu_c(c))


def h_gap_derivative_integrand(x: float) -> float:
    """Integrand of h'(c) = int_c^inf (1/(e^x - 1) - e^-x / x) dx;
    positive for all x > 0.  Written via e^-x to stay finite for large x."""
    ex = math.exp(-x)
    return ex / (1.0 - ex) - ex / x


def h_gap_derivative(c: float) -> float:
    """h'(c) by adaptive quadrature of the displayed integrand."""
    _check_c(c)
    val, _ = quad(h_gap_derivative_integrand, c, math.inf, limit=200)
    return val


@dataclass(frozen=True)
class ScalingConstants:
    """All near-critical constants at a given c."""

    c: float
    mu: float
    nu: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    @property
    def sigma2(self) -> float:
        return self.alpha + self.beta - self.gamma - self.delta


def _gamma_integral(c: float, tol: float) -> float:
    # region x,y >= 0, max(x,y) >= 1, |x-y| <= 1 in coordinates s = x+y,
    # t = x-y: |t| <= 1, s >= 2 - |t|; integrand becomes
    # 2 (1-|t|) e^{-cs} / (s^2 - t^2) with measure ds dt / 2, and the
    # t -> -t symmetry halves the domain.
    s_cut = 2.0
    while 2.0 * math.exp(-c * s_cut) / (c * (s_cut**2 - 1.0)) > tol / 4.0:
        s_cut += 1.0

    def inner(t):
        val, _ = quad(
            lambda s: math.exp(-c * s) / (s * s - t * t),
            2.0 - t,
            s_cut,
            limit=200,
            epsabs=tol / 40.0,
        )
        return (1.0 - t) * val

    val, _ = quad(inner, 0.0, 1.0, limit=200, epsabs=tol / 40.0)
    return 4.0 * val


def _delta_integral(c: float, tol: float) -> float:
    # region 0 <= x,y <= 1, x+y >= 1 in the same (s, t) coordinates:
    # s in [1,2], |t| <= 2-s; numerator (s-1) vanishes linearly where the
    # inner integral develops its log, so plain adaptive quadrature suffices.
    def inner(s):
        val, _ = quad(
            lambda t: 1.0 / (s * s - t * t),
            0.0,
            2.0 - s,
            limit=200,
            epsabs=tol / 40.0,
        )
        return (s - 1.0) * math.exp(-c * s) * val

    val, _ = quad(inner, 1.0, 2.0, limit=200, epsabs=tol / 40.0)
    return 4.0 * val


def sigma2_c(c: float, tol: float = 1e-9) -> ScalingConstants:
    """Variance density constants alpha, beta, gamma, delta at parameter c.

    alpha = (1 - exp(-2c)) / (2c) in closed form; beta through the
    integration-by-parts identity beta = exp(-2c) - 2c E1(2c); gamma and
    delta by nested adaptive quadrature over the symmetric half-domains.
    """
    _check_c(c)
    alpha = -math.expm1(-2.0 * c) / (2.0 * c)
    beta = math.exp(-2.0 * c) - 2.0 * c * exp1(2.0 * c)
    gamma = _gamma_integral(c, tol)
    delta = _delta_integral(c, tol)
    return ScalingConstants(
        c=c, mu=mu_c(c), nu=nu_c(c), alpha=alpha, beta=beta, gamma=gamma, delta=delta
    )


def sw_variance(
    fhat: Callable[[int], float],
    n: int,
    tol: float = 1e-12,
    decay: tuple | None = None,
) -> float:
    """Variance of the pair statistic sum_{m,n} f(theta_m - theta_n) for an
    even test function with Fourier coefficients ``fhat``.

    Returns 4 (A + B - C - D) with the four coefficient sums.  ``decay``
    is a mandatory certificate (C0, r) asserting |fhat(k)| <= C0 r^k, used
    to truncate the two infinite sums with tails below tol.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if decay is None:
        raise ValueError("decay certificate (C0, r) is required for tail truncation")
    c0, r = decay
    if c0 < 0.0 or not 0.0 <= r < 1.0:
        raise ValueError("decay certificate needs C0 >= 0 and 0 <= r < 1")

    a = sum(k * k * fhat(k) ** 2 for k in range(1, n))

    if c0 == 0.0:
        b = 0.0
        c_sum = 0.0
    else:
        one_minus_r2 = 1.0 - r * r
        coeff = n * n - n
        k_max = n
        while coeff * c0 * c0 * r ** (2 * (k_max + 1)) / one_minus_r2 > tol / 3.0:
            k_max = max(k_max + 1, int(k_max * 1.2))
        b = coeff * sum(fhat(k) ** 2 for k in range(n, k_max + 1))

        c_sum = 0.0
        per_d_budget = tol / (3.0 * max(n - 1, 1))
        for d in range(1, n):
            factor = 2.0 * (n - d)
            l0 = n - d
            l_max = l0
            while (
                factor * c0 * c0 * r ** (2 * (l_max + 1) + d) / one_minus_r2
                > per_d_budget
            ):
                l_max = max(l_max + 1, int(l_max * 1.2))
            c_sum += factor * sum(
                fhat(l) * fhat(l + d) for l in range(l0, l_max + 1)
            )

    d_sum = 0.0
    for k in range(1, n):
        for l in range(n + 1 - k, n):
            d_sum += (k + l - n) * fhat(k) * fhat(l)

    return 4.0 * (a + b - c_sum - d_sum)
