"""Reproducible Monte Carlo harness and per-theorem verification suites.

Every suite's output is a pure function of (master seed, configuration):
replicate r draws exclusively from ``replicate_rng(master_seed, r)`` and
results are assembled in replicate order, so thread count and scheduling
cannot change a single bit.

Statistical acceptances are at the 1% level.  Hard failures (closed-form
mismatches) are reported as-is; soft failures (statistical rejections) are
rerun once with an independently derived seed before a verdict, which
bounds flakiness without hiding real bugs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cue import power_traces, replicate_rng, sample_haar_spectrum
from .exact import (
    expected_logZ,
    expected_Z,
    limit_F_params,
    moment_series,
    sample_limit_F,
    variance_exact,
)
from .measure import MeasureParams, free_energy
from .scaling import mu_c

# Asymptotic Kolmogorov critical coefficient at the 1% level:
# c(alpha) = sqrt(-ln(alpha/2) / 2).
KS_COEFF_1PCT = math.sqrt(-math.log(0.005) / 2.0)

# Offset mixed into the master seed for the single soft-failure retry.
_RETRY_SEED_OFFSET = 0x9E3779B9


@dataclass(frozen=True)
class RunConfig:
    """Configuration of a Monte Carlo run.

    Exactly one of ``q`` (fixed fugacity) or ``c`` (near-critical, meaning
    q = 1 - c/N) must be given.
    """

    master_seed: int
    reps: int
    n: int
    q: float | None = None
    c: float | None = None
    suite: str = ""

    def __post_init__(self):
        if (self.q is None) == (self.c is None):
            raise ValueError("exactly one of q (fixed) or c (near-critical) required")
        if self.reps < 1:
            raise ValueError("reps must be positive")

    @property
    def fugacity(self) -> float:
        if self.q is not None:
            return self.q
        q = 1.0 - self.c / self.n
        if not 0.0 < q < 1.0:
            raise ValueError(f"near-critical q = 1 - c/N = {q} outside (0,1)")
        return q


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo mean with standard error."""

    mean: float
    std_error: float
    sample_variance: float
    reps: int

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "Estimate":
        samples = np.asarray(samples, dtype=float)
        reps = len(samples)
        var = float(np.var(samples, ddof=1)) if reps > 1 else 0.0
        return cls(
            mean=float(np.mean(samples)),
            std_error=math.sqrt(var / reps),
            sample_variance=var,
            reps=reps,
        )


@dataclass
class TestResult:
    name: str
    statistic: float
    threshold: float
    passed: bool
    details: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "pass": self.passed,
            "details": self.details,
        }


def _require_statistical_reps(config: RunConfig):
    if config.reps < 100:
        raise ValueError("statistical suites need reps >= 100")


def mc_free_energy(config: RunConfig, workers: int | None = None) -> np.ndarray:
    """reps free energy samples over independently seeded Haar spectra.

    Output index r always corresponds to substream (master_seed, r)
    regardless of the execution schedule.
    """
    q = config.fugacity

    def one(r: int) -> float:
        rng = replicate_rng(config.master_seed, r)
        spectrum = sample_haar_spectrum(config.n, rng)
        return free_energy(MeasureParams(spectrum, q))

    if workers is None or workers <= 1:
        return np.array([one(r) for r in range(config.reps)])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(one, range(config.reps))))


def mc_partition_function(config: RunConfig, workers: int | None = None) -> tuple:
    """Estimate of E Z_N from exp(free energy) samples.

    Returns (Estimate, warnings).  Large q at N >= 5 makes Z heavy-tailed;
    the estimate is still returned but a guard warning is recorded.
    """
    warnings = []
    if config.fugacity > 0.6 and config.n >= 5:
        warnings.append(
            f"heavy-tail guard: q={config.fugacity} > 0.6 at N={config.n} >= 5; "
            "annealed average may be dominated by rare spectra"
        )
    samples = np.exp(mc_free_energy(config, workers=workers))
    return Estimate.from_samples(samples), warnings


def ks_distance(samples: Sequence[float], reference) -> TestResult:
    """Kolmogorov-Smirnov test at the 1% level.

    ``reference`` is either a second sample (two-sample test) or a callable
    CDF (one-sample test).  Both sides need at least 500 points.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    if n < 500:
        raise ValueError(f"need >= 500 samples, got {n}")
    if callable(reference):
        cdf = reference(x)
        ecdf_hi = np.arange(1, n + 1) / n
        ecdf_lo = np.arange(0, n) / n
        stat = float(np.max(np.maximum(ecdf_hi - cdf, cdf - ecdf_lo)))
        threshold = KS_COEFF_1PCT / math.sqrt(n)
        kind = "one-sample"
    else:
        y = np.sort(np.asarray(reference, dtype=float))
        m = len(y)
        if m < 500:
            raise ValueError(f"need >= 500 reference samples, got {m}")
        grid = np.concatenate([x, y])
        cdf_x = np.searchsorted(x, grid, side="right") / n
        cdf_y = np.searchsorted(y, grid, side="right") / m
        stat = float(np.max(np.abs(cdf_x - cdf_y)))
        threshold = KS_COEFF_1PCT * math.sqrt((n + m) / (n * m))
        kind = "two-sample"
    return TestResult(
        name=f"ks-{kind}",
        statistic=stat,
        threshold=threshold,
        passed=stat <= threshold,
        details=f"{kind} KS at 1% level, n={n}",
    )


def _normal_cdf(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.vectorize(math.erf)(np.asarray(x) / math.sqrt(2.0)))


def _with_retry(run: Callable[[int], TestResult], master_seed: int) -> TestResult:
    """Run a soft statistical test, rerunning once on failure with an
    independently derived seed."""
    result = run(master_seed)
    if result.passed:
        return result
    retry = run(master_seed ^ _RETRY_SEED_OFFSET)
    retry.details += " (after one seeded retry)"
    return retry


def verify_limit_distribution(
    q: float, n: int, reps: int, seed: int, workers: int | None = None
) -> TestResult:
    """KS comparison of free energy samples at (q, N) against draws of the
    truncated limit law, plus a first-moment check."""
    config = RunConfig(master_seed=seed, reps=reps, n=n, q=q, suite="limit-law")
    _require_statistical_reps(config)
    mean_ref, _ = limit_F_params(q)

    def run(s: int) -> TestResult:
        cfg = RunConfig(master_seed=s, reps=reps, n=n, q=q, suite="limit-law")
        samples = mc_free_energy(cfg, workers=workers)
        limit_rng_base = s ^ 0x5DEECE66
        limit_samples = np.array(
            [
                sample_limit_F(q, replicate_rng(limit_rng_base, r), tol=1e-12)
                for r in range(reps)
            ]
        )
        ks = ks_distance(samples, limit_samples)
        est = Estimate.from_samples(samples)
        moment_ok = abs(est.mean - mean_ref) <= 4.0 * est.std_error
        ks.name = "limit-distribution"
        ks.passed = ks.passed and moment_ok
        ks.details += (
            f"; mean {est.mean:.6f} vs limit {mean_ref:.6f} "
            f"(SE {est.std_error:.2e}, moment {'ok' if moment_ok else 'FAIL'})"
        )
        return ks

    return _with_retry(run, seed)


def verify_self_averaging(
    c: float, ladder: Sequence[int], reps: int, seed: int, workers: int | None = None
) -> TestResult:
    """Exceedance P(|log Z_N / N - mu_c| > 0.05) must decrease along the
    N-ladder with terminal value below 0.05; the exact variance over N^2
    must also decrease."""
    ladder = list(ladder)
    if ladder != sorted(ladder):
        raise ValueError("N-ladder must be increasing")
    mu = mu_c(c)
    eps = 0.05
    exceedances = []
    var_over_n2 = []
    for i, n in enumerate(ladder):
        cfg = RunConfig(
            master_seed=seed + i, reps=reps, n=n, c=c, suite="self-averaging"
        )
        _require_statistical_reps(cfg)
        samples = mc_free_energy(cfg, workers=workers)
        exceedances.append(float(np.mean(np.abs(samples / n - mu) > eps)))
        var_over_n2.append(variance_exact(cfg.fugacity, n, tol=1e-12).total / n**2)
    decreasing = all(b <= a for a, b in zip(exceedances, exceedances[1:]))
    var_decreasing = all(b < a for a, b in zip(var_over_n2, var_over_n2[1:]))
    terminal_ok = exceedances[-1] < 0.05
    passed = decreasing and var_decreasing and terminal_ok
    return TestResult(
        name="self-averaging",
        statistic=exceedances[-1],
        threshold=0.05,
        passed=passed,
        details=(
            f"exceedances {exceedances} at eps={eps}, ladder {ladder}; "
            f"Var/N^2 {var_over_n2}"
        ),
    )


def verify_clt(
    c: float, n: int, reps: int, seed: int, workers: int | None = None
) -> TestResult:
    """One-sample KS normality test of the standardized free energy under
    exact finite-N variance normalization, with the asymptotic sigma_c^2 N
    normalization reported alongside, plus a skewness check."""
    from .scaling import sigma2_c

    q = 1.0 - c / n
    mean = expected_logZ(q, n)
    var_exact = variance_exact(q, n, tol=1e-12).total
    sigma2 = sigma2_c(c).sigma2

    def run(s: int) -> TestResult:
        cfg = RunConfig(master_seed=s, reps=reps, n=n, c=c, suite="clt")
        _require_statistical_reps(cfg)
        samples = mc_free_energy(cfg, workers=workers)
        std_exact = (samples - mean) / math.sqrt(var_exact)
        std_asym = (samples - mean) / math.sqrt(sigma2 * n)
        ks = ks_distance(std_exact, _normal_cdf)
        ks_asym = ks_distance(std_asym, _normal_cdf)
        skew = float(
            np.mean(std_exact**3) / np.mean(std_exact**2) ** 1.5
        )
        ks.name = "clt-normality"
        # pass verdict is the KS test under exact-variance normalization;
        # the asymptotic normalization and the skewness (whose finite-N bias
        # decays only like 1/sqrt(N)) are reported as diagnostics
        ks.details += (
            f"; asymptotic-normalization KS {ks_asym.statistic:.4f} "
            f"(informational); skewness {skew:.4f} "
            f"(4*sqrt(6/reps) = {4.0 * math.sqrt(6.0 / reps):.4f})"
        )
        return ks

    return _with_retry(run, seed)


def verify_moments(
    q: float,
    n: int,
    k: int,
    reps: int,
    seed: int,
    max_total_weight: int,
    workers: int | None = None,
) -> TestResult:
    """Monte Carlo estimate of E Z^k against the invariant-dimension series.

    Pass criterion: |difference| <= 4 SE + 3 * last weight-shell
    contribution (the shell is the truncation diagnostic)."""
    cfg = RunConfig(master_seed=seed, reps=reps, n=n, q=q, suite="moments")
    _require_statistical_reps(cfg)
    series_value, last_shell = moment_series(q, n, k, max_total_weight)
    samples = np.exp(k * mc_free_energy(cfg, workers=workers))
    est = Estimate.from_samples(samples)
    diff = abs(est.mean - series_value)
    threshold = 4.0 * est.std_error + 3.0 * last_shell
    return TestResult(
        name=f"moments-k{k}",
        statistic=diff,
        threshold=threshold,
        passed=diff <= threshold,
        details=(
            f"MC {est.mean:.8f} (SE {est.std_error:.2e}) vs series "
            f"{series_value:.8f} (last shell {last_shell:.2e})"
        ),
    )


def verify_expectations(
    q: float, n: int, reps: int, seed: int, workers: int | None = None
) -> TestResult:
    """Monte Carlo means of Z_N and log Z_N against their closed forms,
    both within 4 standard errors."""
    cfg = RunConfig(master_seed=seed, reps=reps, n=n, q=q, suite="expectations")
    _require_statistical_reps(cfg)
    samples = mc_free_energy(cfg, workers=workers)
    log_est = Estimate.from_samples(samples)
    z_est = Estimate.from_samples(np.exp(samples))
    ref_log = expected_logZ(q, n)
    ref_z = expected_Z(q, n)
    dev_log = abs(log_est.mean - ref_log) / log_est.std_error
    dev_z = abs(z_est.mean - ref_z) / z_est.std_error
    passed = dev_log <= 4.0 and dev_z <= 4.0
    return TestResult(
        name="expectations",
        statistic=max(dev_log, dev_z),
        threshold=4.0,
        passed=passed,
        details=(
            f"E log Z: {log_est.mean:.6f} vs {ref_log:.6f} ({dev_log:.2f} SE); "
            f"E Z: {z_est.mean:.6f} vs {ref_z:.6f} ({dev_z:.2f} SE)"
        ),
    )


def verify_trace_moments(
    n: int, d_max: int, reps: int, seed: int
) -> TestResult:
    """Empirical E |p_d|^2 against min(d, N) for d = 1..d_max, each within
    4 standard errors."""
    if reps < 100:
        raise ValueError("statistical suites need reps >= 100")
    samples = np.empty((reps, d_max))
    for r in range(reps):
        rng = replicate_rng(seed, r)
        spectrum = sample_haar_spectrum(n, rng)
        traces = power_traces(spectrum, d_max)
        samples[r] = np.abs(np.asarray(traces.values)) ** 2
    worst = 0.0
    lines = []
    for j in range(d_max):
        est = Estimate.from_samples(samples[:, j])
        ref = float(min(j + 1, n))
        dev = abs(est.mean - ref) / est.std_error
        worst = max(worst, dev)
        lines.append(f"d={j+1}: {est.mean:.4f} vs {ref} ({dev:.2f} SE)")
    return TestResult(
        name="trace-moments",
        statistic=worst,
        threshold=4.0,
        passed=worst <= 4.0,
        details="; ".join(lines),
    )
