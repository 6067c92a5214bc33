"""Closed-form finite-N and fixed-q formulas under Haar-averaged disorder.

Everything here is deterministic: expected partition function and free
energy, the limiting quenched/annealed gap as a Lambert series, Euler's
product, the special-value check at fugacity exp(-pi), the moment series
over invariant dimensions, the limit-law parameters of the free energy, and
the exact four-term variance decomposition.

Every truncated series carries an explicit rigorous tail bound; nothing is
cut at a fixed iteration count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partitions import partitions_of_weight
from .symfunc import invariant_dimension

# Gamma(1/4), stored to double precision and validated in the test suite
# against an independent 15-digit computation (math.gamma and mpmath).
GAMMA_QUARTER = 3.6256099082219083


def _check_q(q: float):
    if not 0.0 < q < 1.0:
        raise ValueError(f"fugacity must lie strictly in (0,1), got {q}")


def expected_Z(q: float, n: int) -> float:
    """E Z_N = prod_{m=1..N} (1 - q^m)^{-1}, the generating function for
    partitions with at most N parts."""
    _check_q(q)
    log_val = -sum(math.log1p(-(q**m)) for m in range(1, n + 1))
    return math.exp(log_val)


def log_expected_Z(q: float, n: int) -> float:
    """log E Z_N, kept in log space for large N near q = 1."""
    _check_q(q)
    return -sum(math.log1p(-(q**m)) for m in range(1, n + 1))


def expected_logZ(q: float, n: int) -> float:
    """E log Z_N = sum_{d<=N} q^d + N (-log(1-q) - sum_{d<=N} q^d / d).

    Closed form: the geometric head is exact and the logarithmic tail
    N sum_{d>N} q^d / d is rewritten through -log(1-q).
    """
    _check_q(q)
    d = np.arange(1, n + 1)
    powers = q**d
    head = float(np.sum(powers))
    tail = n * (-math.log1p(-q) - float(np.sum(powers / d)))
    return head + tail


def euler_phi(q: float, tol: float = 1e-14) -> float:
    """Euler's function prod_{m>=1} (1 - q^m), truncated when the log-tail
    bound q^m / (1-q) drops below tol."""
    _check_q(q)
    log_val = 0.0
    m = 1
    while q**m / (1.0 - q) > tol:
        log_val += math.log1p(-(q**m))
        m += 1
    return math.exp(log_val)


def disorder_gap_limit(q: float, tol: float = 1e-13) -> float:
    """Limiting gap log E Z_N - E log Z_N = sum_{m>=2} q^m / (m (1 - q^m)).

    Truncated with tail bound q^(M+1) / ((M+1)(1-q)^2) <= tol, then
    cross-checked against -log euler_phi(q) - q/(1-q) to 10 tol.
    """
    _check_q(q)
    m_max = 1
    while q ** (m_max + 1) / ((m_max + 1) * (1.0 - q) ** 2) > tol:
        m_max += 1
    total = sum(q**m / (m * (1.0 - q**m)) for m in range(2, m_max + 1))
    alt = -math.log(euler_phi(q, tol)) - q / (1.0 - q)
    if abs(total - alt) > 10.0 * tol * (1.0 + abs(total)):
        raise ArithmeticError(
            f"Lambert series {total} disagrees with Euler-function route {alt}"
        )
    return total


@dataclass
class RamanujanGapReport:
    closed_form: float
    series_value: float
    tol: float

    @property
    def discrepancy(self) -> float:
        return abs(self.closed_form - self.series_value)

    @property
    def passed(self) -> bool:
        rounded = float(f"{self.series_value:.2e}")
        return self.discrepancy <= self.tol and rounded == 9.63e-4


def ramanujan_gap_check(tol: float = 1e-10) -> RamanujanGapReport:
    """Compare the limiting gap at fugacity exp(-pi) against its Gamma(1/4)
    closed form; both must agree to tol and round to 9.63e-4."""
    closed = (
        7.0 / 8.0 * math.log(2.0)
        + 3.0 / 4.0 * math.log(math.pi)
        - math.log(GAMMA_QUARTER)
        - math.pi / 24.0
        - 1.0 / (math.exp(math.pi) - 1.0)
    )
    series = disorder_gap_limit(math.exp(-math.pi), tol=tol / 100.0)
    return RamanujanGapReport(closed_form=closed, series_value=series, tol=tol)


def diaconis_evans_expected(d: int, n: int) -> int:
    """E |Tr U^d|^2 = min(d, N) under Haar measure."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    return min(d, n)


def moment_series(q: float, n: int, k: int, max_total_weight: int) -> tuple:
    """Truncated E Z_N^k = sum over k-tuples of partitions of
    q^(total weight) times the invariant dimension of the tuple.

    Returns (value, last_shell_contribution); the final weight shell's
    contribution serves as a convergence diagnostic since no certified tail
    bound is available for the invariant dimensions.  Desk-scale guards:
    k <= 3 and max_total_weight <= 12.
    """
    _check_q(q)
    if k > 3 or max_total_weight > 12:
        raise ValueError("desk-scale guard: k <= 3 and max_total_weight <= 12")
    parts_by_weight = [
        list(partitions_of_weight(w, n)) for w in range(max_total_weight + 1)
    ]
    cache: dict = {}

    def inv_dim(shapes):
        key = tuple(sorted(shapes))
        if key not in cache:
            cache[key] = invariant_dimension(key, n)
        return cache[key]

    def tuples(weight_budget, slots):
        if slots == 1:
            for w in range(weight_budget + 1):
                for lam in parts_by_weight[w]:
                    yield w, (lam,)
            return
        for w in range(weight_budget + 1):
            for lam in parts_by_weight[w]:
                for rest_w, rest in tuples(weight_budget - w, slots - 1):
                    yield w + rest_w, (lam,) + rest

    shells = [0.0] * (max_total_weight + 1)
    for total_w, shapes in tuples(max_total_weight, k):
        shells[total_w] += q**total_w * inv_dim(shapes)
    return sum(shells), shells[max_total_weight]


def limit_F_params(q: float) -> tuple:
    """Mean and variance of the limiting free energy sum_d q^d X_d with
    X_d iid Exp(1): mean q/(1-q), variance q^2/(1-q^2)."""
    _check_q(q)
    return q / (1.0 - q), q * q / (1.0 - q * q)


def limit_F_depth(q: float, tol: float) -> int:
    """Smallest M with tail mean q^(M+1)/(1-q) <= tol."""
    _check_q(q)
    m = 1
    while q ** (m + 1) / (1.0 - q) > tol:
        m += 1
    return m


def sample_limit_F(q: float, rng: np.random.Generator, tol: float = 1e-12) -> float:
    """One draw of the truncated limit law sum_{d<=M} q^d X_d, X_d iid Exp(1)."""
    m = limit_F_depth(q, tol)
    x = rng.exponential(size=m)
    d = np.arange(1, m + 1)
    return float(np.sum(q**d * x))


@dataclass
class VarianceDecomposition:
    """Exact Var[log Z_N] = A + B - C - D with reported truncation error."""

    a: float
    b: float
    c: float
    d: float
    truncation_error: float

    @property
    def total(self) -> float:
        return self.a + self.b - self.c - self.d


def variance_exact(q: float, n: int, tol: float = 1e-12) -> VarianceDecomposition:
    """Four-term variance of the free energy at fixed (q, N).

    A is a finite geometric sum; B truncates sum_{k>=N} q^(2k)/k^2 with tail
    bound q^(2(M+1)) / ((M+1)^2 (1-q^2)); C uses the symmetric rewrite
    2 sum_{d<N} (N-d) sum_{l>=N-d} q^(2l+d) / (l(l+d)) with per-d tails;
    D is a finite double sum grouped by m = k + l.
    """
    _check_q(q)
    if n == 1:
        return VarianceDecomposition(0.0, 0.0, 0.0, 0.0, 0.0)
    q2 = q * q
    one_minus_q2 = 1.0 - q2
    trunc = 0.0

    k = np.arange(1, n)
    a = float(np.sum(q2**k))

    # B: find M with N(N-1) q^(2(M+1)) / ((M+1)^2 (1-q^2)) <= tol/2
    coeff = n * (n - 1)
    m = n
    while coeff * q2 ** (m + 1) / ((m + 1) ** 2 * one_minus_q2) > tol / 2.0:
        m = max(m + 1, int(m * 1.2))
    ks = np.arange(n, m + 1, dtype=float)
    b = coeff * float(np.sum(q2**ks / ks**2))
    trunc += coeff * q2 ** (m + 1) / ((m + 1) ** 2 * one_minus_q2)

    # C: symmetric rewrite, inner series truncated per d
    c = 0.0
    per_d_budget = tol / (2.0 * (n - 1))
    for d in range(1, n):
        factor = 2.0 * (n - d)
        l0 = n - d
        l_max = l0
        while (
            factor
            * q ** (2 * (l_max + 1) + d)
            / ((l_max + 1) * (l_max + 1 + d) * one_minus_q2)
            > per_d_budget
        ):
            l_max = max(l_max + 1, int(l_max * 1.2))
        ls = np.arange(l0, l_max + 1, dtype=float)
        c += factor * float(np.sum(q ** (2 * ls + d) / (ls * (ls + d))))
        trunc += (
            factor
            * q ** (2 * (l_max + 1) + d)
            / ((l_max + 1) * (l_max + 1 + d) * one_minus_q2)
        )

    # D: finite sum over m = k + l in {N+1, ..., 2N-2}
    d_sum = 0.0
    for m_val in range(n + 1, 2 * n - 1):
        ks = np.arange(m_val - n + 1, n, dtype=float)
        d_sum += (m_val - n) * q**m_val * float(np.sum(1.0 / (ks * (m_val - ks))))

    return VarianceDecomposition(a=a, b=b, c=c, d=d_sum, truncation_error=trunc)
