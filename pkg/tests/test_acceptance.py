"""End-to-end acceptance gate.

Each criterion prints exactly one ACCEPTANCE line (run with -s to see them
live) and fails the suite if its stated tolerance is violated.
"""

import math

import numpy as np

from schur_cue.cue import replicate_rng, sample_haar_spectrum, power_traces
from schur_cue.exact import (
    expected_logZ,
    log_expected_Z,
    ramanujan_gap_check,
    disorder_gap_limit,
    variance_exact,
)
from schur_cue.measure import (
    MeasureParams,
    cyclotomic_density_check,
    enumerate_Z,
    free_energy,
    free_energy_series,
    partition_function,
    series_depth,
)
from schur_cue.montecarlo import (
    RunConfig,
    mc_free_energy,
    verify_clt,
    verify_expectations,
    verify_limit_distribution,
    verify_moments,
)
from schur_cue.scaling import mu_c, nu_c, sigma2_c


def _report(idx: int, passed: bool, detail: str = ""):
    line = f"ACCEPTANCE {idx}: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line, flush=True)
    assert passed, line


def test_acceptance_1_route_identities():
    worst = 0.0
    for n in (2, 3, 5, 8):
        for q in (0.2, 0.5, 0.8):
            depth = series_depth(n, q, 1e-10)
            for r in range(100):
                rng = replicate_rng(1000 * n + int(10 * q), r)
                s = sample_haar_spectrum(n, rng)
                p = MeasureParams(s, q)
                fe = free_energy(p)
                lz = math.log(partition_function(p))
                fs = free_energy_series(power_traces(s, depth), q, 1e-10)
                worst = max(worst, abs(fe - lz), abs(fe - fs))
    _report(1, worst <= 1e-9, f"worst route discrepancy {worst:.2e}")


def test_acceptance_2_enumeration_oracle():
    ok = True
    detail = []
    for n in (1, 2, 3):
        for q in (0.2, 0.4):
            rng = replicate_rng(2000 + n, 0)
            p = MeasureParams(sample_haar_spectrum(n, rng), q)
            value, tail = enumerate_Z(p, 40)
            gap = abs(value - partition_function(p))
            # at this depth the series tail sits below double-precision
            # roundoff of the two routes, so allow machine epsilon on top
            if gap > tail + 1e-13 * max(1.0, value):
                ok = False
                detail.append(f"N={n} q={q} gap {gap:.2e} > tail {tail:.2e}")
    for n in (1, 2, 3, 4):
        rep = cyclotomic_density_check(n, 0.3, max_weight=12)
        if not rep.passed:
            ok = False
            detail.append(f"cyclotomic N={n} failed")
    _report(2, ok, "; ".join(detail) or "enumeration within tail bounds")


def test_acceptance_3_expectations():
    res = verify_expectations(q=0.3, n=5, reps=20_000, seed=7)
    _report(3, res.passed, res.details)


def test_acceptance_4_disorder_gap():
    rep = ramanujan_gap_check(tol=1e-10)
    finite_ok = True
    for q in (0.3, 0.5, 0.7):
        finite = log_expected_Z(q, 60) - expected_logZ(q, 60)
        if abs(finite - disorder_gap_limit(q)) > 1e-8:
            finite_ok = False
    _report(
        4,
        rep.passed and finite_ok,
        f"discrepancy {rep.discrepancy:.2e}, value {rep.series_value:.6e}",
    )


def test_acceptance_5_moments_dual_route():
    ok = True
    lines = []
    cases = [(2, 0.2, 2), (2, 0.2, 3), (3, 0.15, 2)]
    for k, q, n in cases:
        res = verify_moments(
            q=q, n=n, k=k, reps=100_000, seed=500 + 10 * k + n, max_total_weight=12
        )
        ok = ok and res.passed
        lines.append(f"k={k} (N={n}, q={q}): {'ok' if res.passed else res.details}")
    _report(5, ok, "; ".join(lines))


def test_acceptance_6_limit_law():
    res = verify_limit_distribution(q=0.5, n=200, reps=5_000, seed=606)
    _report(6, res.passed, res.details)


def test_acceptance_7_variance_corollary():
    q, n, reps = 0.5, 8, 20_000
    cfg = RunConfig(master_seed=707, reps=reps, n=n, q=q)
    samples = mc_free_energy(cfg)
    sample_var = float(samples.var(ddof=1))
    m4 = float(np.mean((samples - samples.mean()) ** 4))
    se_var = math.sqrt(max(m4 - sample_var**2, 0.0) / reps)
    exact_var = variance_exact(q, n).total
    stat_ok = abs(exact_var - sample_var) <= 5.0 * se_var

    bounds_ok = True
    for qq in (0.3, 0.6, 0.9):
        for nn in (2, 8, 32, 128):
            v = variance_exact(qq, nn)
            if not (v.a / nn < qq * qq and v.b / nn < 1.0):
                bounds_ok = False
            if v.c > 2.0 * qq ** (nn + 1) / (1.0 - qq * qq):
                bounds_ok = False
            # the D bound only applies beyond N = 3
            if nn > 3 and not v.d < (nn - 3) * qq ** (nn + 1):
                bounds_ok = False
    _report(
        7,
        stat_ok and bounds_ok,
        f"exact {exact_var:.6f} vs MC {sample_var:.6f} (SE {se_var:.2e})",
    )


def test_acceptance_8_extensive_scaling():
    ok = True
    details = []
    for c in (0.5, 1.0, 2.0):
        mu, nu = mu_c(c), nu_c(c)
        errs_mu, errs_nu = [], []
        for n in (50, 100, 200, 400):
            q_n = 1.0 - c / n
            errs_mu.append(abs(expected_logZ(q_n, n) / n - mu))
            errs_nu.append(abs(log_expected_Z(q_n, n) / n - nu))
        if not all(b < a for a, b in zip(errs_mu, errs_mu[1:])):
            ok = False
        if not all(b < a for a, b in zip(errs_nu, errs_nu[1:])):
            ok = False
        rel_mu = errs_mu[-1] / mu
        rel_nu = errs_nu[-1] / nu
        if rel_mu >= 0.02 or rel_nu >= 0.02:
            ok = False
        details.append(f"c={c}: terminal {rel_mu:.2%}/{rel_nu:.2%}")
    gap_ok = all(mu_c(0.1 * k) < nu_c(0.1 * k) for k in range(1, 101))
    _report(8, ok and gap_ok, "; ".join(details))


def test_acceptance_9_variance_asymptotics_and_clt():
    c, n = 1.0, 512
    sigma2 = sigma2_c(c).sigma2
    var_over_n = variance_exact(1.0 - c / n, n).total / n
    var_ok = abs(var_over_n - sigma2) / sigma2 < 0.03
    res = verify_clt(c=1.0, n=400, reps=4_000, seed=909)
    _report(
        9,
        var_ok and res.passed,
        f"Var/N {var_over_n:.6f} vs sigma2 {sigma2:.6f}; CLT {res.details}",
    )
