import numpy as np
import pytest

from schur_cue.cue import (
    power_traces,
    replicate_rng,
    roots_of_unity_spectrum,
    sample_haar_spectrum,
)
from schur_cue.montecarlo import ks_distance


def test_roots_of_unity_examples():
    assert roots_of_unity_spectrum(1).angles == (0.0,)
    assert roots_of_unity_spectrum(4).angles == pytest.approx(
        (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)
    )


def test_roots_of_unity_power_traces():
    for n in (3, 4):
        tr = power_traces(roots_of_unity_spectrum(n), 2 * n)
        for d in range(1, 2 * n + 1):
            expected = n if d % n == 0 else 0
            assert tr.values[d - 1] == pytest.approx(expected, abs=1e-12)


def test_identity_spectrum_traces():
    from schur_cue.cue import UnitarySpectrum

    tr = power_traces(UnitarySpectrum((0.0, 0.0, 0.0)), 5)
    assert all(v == pytest.approx(3.0) for v in tr.values)


def test_trace_magnitude_bound():
    rng = replicate_rng(1, 0)
    s = sample_haar_spectrum(6, rng)
    tr = power_traces(s, 20)
    assert all(abs(v) <= 6.0 + 1e-12 for v in tr.values)


def test_seed_determinism():
    a = sample_haar_spectrum(5, replicate_rng(123, 4))
    b = sample_haar_spectrum(5, replicate_rng(123, 4))
    assert a.angles == b.angles
    c = sample_haar_spectrum(5, replicate_rng(123, 5))
    assert a.angles != c.angles


def test_angles_sorted_in_range():
    s = sample_haar_spectrum(8, replicate_rng(2, 0))
    angles = np.asarray(s.angles)
    assert np.all(np.diff(angles) >= 0)
    assert np.all((angles >= 0) & (angles < 2 * np.pi))


def test_u1_uniform_phase():
    reps = 100_000
    vals = np.empty(reps, dtype=complex)
    for r in range(reps):
        rng = replicate_rng(7, r)
        vals[r] = np.exp(1j * sample_haar_spectrum(1, rng).angles[0])
    assert abs(vals.mean()) <= 3.0 / np.sqrt(reps)


@pytest.mark.slow
def test_haar_trace_moments():
    # E |p_d|^2 = min(d, N) within 4 standard errors
    reps = 20_000
    for n in (2, 4, 8):
        d_max = 2 * n
        samples = np.empty((reps, d_max))
        for r in range(reps):
            rng = replicate_rng(1000 + n, r)
            tr = power_traces(sample_haar_spectrum(n, rng), d_max)
            samples[r] = np.abs(np.asarray(tr.values)) ** 2
        for d in range(1, d_max + 1):
            col = samples[:, d - 1]
            se = col.std(ddof=1) / np.sqrt(reps)
            assert abs(col.mean() - min(d, n)) <= 4.0 * se, (n, d)


@pytest.mark.slow
def test_rotation_invariance():
    # a global angle shift leaves |p_d|^2 distributed identically
    reps = 10_000
    n, d = 4, 2
    shift = 0.8765

    def draw(seed, shifted):
        out = np.empty(reps)
        for r in range(reps):
            rng = replicate_rng(seed, r)
            s = sample_haar_spectrum(n, rng)
            theta = np.asarray(s.angles) + (shift if shifted else 0.0)
            out[r] = np.abs(np.exp(1j * d * theta).sum()) ** 2
        return out

    result = ks_distance(draw(21, False), draw(22, True))
    assert result.passed, result.details
