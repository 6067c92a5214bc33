"""Quantities computed from a fixed disorder realization.

Three routes to the free energy of a Schur measure at spectrum U and
fugacity q:

* ``partition_function`` -- the Cauchy product prod_{i,j} (1 - q u_i conj(u_j))^-1,
  accumulated as a sum of complex logs (log space is the primary
  representation; q near 1 at large N overflows the product itself);
* ``free_energy`` -- the real pair-statistic form
  (1/2) sum_{m,n} f(theta_m - theta_n) with f(t) = -log(1 - 2q cos t + q^2),
  free of complex logs and branch cuts;
* ``free_energy_series`` -- the Newton-parameter series
  sum_d (q^d / d) |p_d|^2, truncated with an explicit tail bound.

The brute-force oracle ``enumerate_Z`` sums q^|lambda| |s_lambda|^2 over all
partitions up to a weight cap and reports a rigorous tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cue import PowerTraces, UnitarySpectrum, roots_of_unity_spectrum
from .partitions import (
    count_partitions,
    enumerate_partitions,
    from_particles,
    has_empty_ncore,
    weight,
)
from .symfunc import schur_eval

_ENUMERATION_GUARD = 10**7


@dataclass(frozen=True)
class MeasureParams:
    """A disorder realization together with the fugacity 0 < q < 1."""

    spectrum: UnitarySpectrum
    q: float

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"fugacity must lie strictly in (0,1), got {self.q}")

    @property
    def n(self) -> int:
        return self.spectrum.n


def free_energy(params: MeasureParams) -> float:
    """log Z as the pair statistic (1/2) sum_{m,n} f(theta_m - theta_n).

    f(t) = -log(1 - 2q cos t + q^2); the argument is bounded below by
    (1-q)^2 > 0, so the value is always finite.  O(N^2).
    """
    theta = np.asarray(params.spectrum.angles)
    q = params.q
    diff = theta[:, None] - theta[None, :]
    return -0.5 * float(np.sum(np.log1p(q * q - 2.0 * q * np.cos(diff))))


def partition_function(params: MeasureParams) -> float:
    """Z = prod_{i,j} (1 - q u_i conj(u_j))^{-1}, evaluated in log space.

    The imaginary parts of the complex logs cancel in conjugate pairs; a
    residual beyond 1e-10 relative signals a conditioning problem.  Raises
    OverflowError when even log Z exceeds the double range.
    """
    u = params.spectrum.eigenvalues()
    w = 1.0 - params.q * np.outer(u, np.conj(u))
    s = -np.sum(np.log(w))
    if abs(s.imag) > 1e-10 * (1.0 + abs(s.real)):
        raise ArithmeticError(f"imaginary residue {s.imag} in log Z")
    log_z = float(s.real)
    if log_z > math.log(np.finfo(float).max):
        raise OverflowError(f"partition function overflows: log Z = {log_z}")
    return math.exp(log_z)


def series_depth(n: int, q: float, tol: float) -> int:
    """Smallest M with N^2 q^(M+1) / ((M+1)(1-q)) <= tol."""
    m = 1
    while n * n * q ** (m + 1) / ((m + 1) * (1.0 - q)) > tol:
        m += 1
    return m


def free_energy_series(traces: PowerTraces, q: float, tol: float) -> float:
    """sum_{d=1..M} (q^d / d) |p_d|^2 from precomputed power traces.

    The depth M of ``traces`` must satisfy the tail bound
    N^2 q^(M+1) / ((M+1)(1-q)) <= tol; otherwise an error names the
    required depth.
    """
    if not 0.0 < q < 1.0:
        raise ValueError("fugacity must lie strictly in (0,1)")
    n, m = traces.n, traces.depth
    tail = n * n * q ** (m + 1) / ((m + 1) * (1.0 - q))
    if tail > tol:
        raise ValueError(
            f"depth {m} insufficient for tol {tol}; need M >= {series_depth(n, q, tol)}"
        )
    d = np.arange(1, m + 1)
    p2 = np.abs(np.asarray(traces.values)) ** 2
    return float(np.sum(q**d / d * p2))


def measure_prob(lam: Sequence[int], params: MeasureParams) -> float:
    """q^|lambda| |s_lambda(U)|^2 / Z."""
    u = params.spectrum.eigenvalues()
    s = schur_eval(lam, u)
    log_z = free_energy(params)
    log_num = weight(lam) * math.log(params.q)
    s2 = abs(s) ** 2
    if s2 == 0.0:
        return 0.0
    return math.exp(log_num + math.log(s2) - log_z)


def determinantal_prob(kappa: Sequence[int], params: MeasureParams) -> float:
    """Particle-ensemble density: |det[u_j^kappa_i]|^2 prod q^kappa_i / Ztilde,
    with Ztilde = Z * prod_{i<j} q |u_i - u_j|^2.

    Agrees with ``measure_prob`` of the corresponding partition; the two
    routes share only the normalizing free energy.
    """
    u = params.spectrum.eigenvalues()
    n = params.n
    if len(kappa) != n:
        raise ValueError(f"expected {n} particle positions, got {len(kappa)}")
    from_particles(kappa)  # validates strict decrease
    kappa = np.asarray(kappa, dtype=int)
    det = np.linalg.det(u[None, :] ** kappa[:, None])
    num = abs(det) ** 2
    if num == 0.0:
        return 0.0
    log_num = math.log(num) + float(np.sum(kappa)) * math.log(params.q)
    i_upper, j_upper = np.triu_indices(n, k=1)
    pair_factor = np.abs(u[i_upper] - u[j_upper]) ** 2
    log_ztilde = (
        free_energy(params)
        + n * (n - 1) / 2 * math.log(params.q)
        + float(np.sum(np.log(pair_factor)))
    )
    return math.exp(log_num - log_ztilde)


def enumeration_tail_bound(n: int, q: float, max_weight: int) -> float:
    """Rigorous bound on sum_{|lambda| > max_weight} q^|lambda| |s_lambda|^2.

    Uses |s_lambda(U)|^2 <= dim(lambda)^2 (triangle inequality on the
    monomial expansion at unit-modulus points) and RSK:
    sum_{|lambda|=w} dim(lambda)^2 = C(w + N^2 - 1, N^2 - 1), the number of
    N x N nonnegative integer matrices with total w.  The resulting series
    sum_{w>W} q^w C(w+N^2-1, N^2-1) is bounded by its first term times a
    geometric factor; infinity is returned when the term ratio is >= 1.
    """
    m = n * n
    w0 = max_weight + 1
    ratio = q * (w0 + m) / (w0 + 1)
    if ratio >= 1.0:
        return math.inf
    log_t0 = w0 * math.log(q) + (
        math.lgamma(w0 + m) - math.lgamma(w0 + 1) - math.lgamma(m)
    )
    return math.exp(log_t0) / (1.0 - ratio)


def enumerate_Z(params: MeasureParams, max_weight: int) -> tuple:
    """Brute-force partial sum of Z over |lambda| <= max_weight.

    Returns (value, tail_bound).  Refuses when the enumeration would exceed
    10^7 partitions.
    """
    n = params.n
    count = count_partitions(n, max_weight)
    if count > _ENUMERATION_GUARD:
        raise ValueError(
            f"enumeration needs {count} partitions, above the {_ENUMERATION_GUARD} guard"
        )
    u = params.spectrum.eigenvalues()
    q = params.q
    total = 0.0
    for lam in enumerate_partitions(n, max_weight):
        total += q ** weight(lam) * abs(schur_eval(lam, u)) ** 2
    return total, enumeration_tail_bound(n, q, max_weight)


@dataclass
class CyclotomicReport:
    """Outcome of checking the roots-of-unity measure density formula."""

    n: int
    q: float
    max_weight: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def cyclotomic_density_check(n: int, q: float, max_weight: int) -> CyclotomicReport:
    """Verify the support/density law of the measure at the n-th roots of unity.

    Off the empty-n-core set the probability must vanish (within 1e-10);
    on it the probability must equal (1-q^n)^n q^|lambda| (relative 1e-8).
    """
    if n > 4 or max_weight > 24:
        raise ValueError("desk-scale guard: n <= 4 and max_weight <= 24")
    params = MeasureParams(roots_of_unity_spectrum(n), q)
    report = CyclotomicReport(n=n, q=q, max_weight=max_weight)
    density_prefactor = (1.0 - q**n) ** n
    for lam in enumerate_partitions(n, max_weight):
        prob = measure_prob(lam, params)
        report.checked += 1
        if has_empty_ncore(lam, n):
            expected = density_prefactor * q ** weight(lam)
            if abs(prob - expected) > 1e-8 * expected:
                report.violations.append((lam, prob, expected))
        else:
            if abs(prob) > 1e-10:
                report.violations.append((lam, prob, 0.0))
    return report
