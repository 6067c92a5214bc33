import pytest
from hypothesis import given, strategies as st

from schur_cue.partitions import (
    count_partitions,
    enumerate_partitions,
    from_particles,
    has_empty_ncore,
    pad,
    to_particles,
    trim,
    weight,
)


def series_coefficients(factors, max_weight):
    """Coefficients of prod (1 - q^m)^(-e) style factors, given as a list of
    (exponent_step, power) pairs meaning (1 - q^step)^(-power).  Independent
    polynomial-expansion oracle."""
    coeffs = [1] + [0] * max_weight
    for step, power in factors:
        for _ in range(power):
            for w in range(step, max_weight + 1):
                coeffs[w] += coeffs[w - step]
    return coeffs


def test_weight_examples():
    assert weight(()) == 0
    assert weight((3, 1)) == 4
    assert weight((5, 5, 2)) == 12


def test_to_particles_examples():
    assert to_particles((0, 0, 0), 3) == (2, 1, 0)
    assert to_particles((2, 1), 2) == (3, 1)


def test_to_particles_rejects_too_many_parts():
    with pytest.raises(ValueError):
        to_particles((2, 1, 1), 2)


def test_from_particles_examples():
    assert from_particles((2, 1, 0)) == (0, 0, 0)
    assert from_particles((3, 1)) == (2, 1)
    assert from_particles((5, 2, 0)) == (3, 1, 0)


def test_from_particles_rejects_non_decreasing():
    with pytest.raises(ValueError):
        from_particles((1, 1))
    with pytest.raises(ValueError):
        from_particles((1, 3))


def test_round_trip_exhaustive():
    for n in range(1, 9):
        for lam in enumerate_partitions(n, 12):
            assert trim(from_particles(to_particles(lam, n))) == trim(lam)


@given(st.integers(1, 6), st.lists(st.integers(0, 9), min_size=0, max_size=6))
def test_round_trip_property(n, raw):
    lam = tuple(sorted(raw, reverse=True))[:n]
    assert trim(from_particles(to_particles(lam, n))) == trim(lam)


def test_enumeration_examples():
    assert list(enumerate_partitions(1, 3)) == [(), (1,), (2,), (3,)]
    assert list(enumerate_partitions(2, 2)) == [(), (1,), (2,), (1, 1)]


def test_enumeration_count_n3_w6():
    # independent oracle: coefficient sum of prod_{n=1..3} (1-q^n)^{-1} up to q^6
    coeffs = series_coefficients([(1, 1), (2, 1), (3, 1)], 6)
    assert sum(coeffs) == 23
    assert sum(1 for _ in enumerate_partitions(3, 6)) == 23


def test_enumeration_completeness_against_generating_function():
    for n in range(1, 6):
        coeffs = series_coefficients([(m, 1) for m in range(1, n + 1)], 20)
        by_weight = [0] * 21
        for lam in enumerate_partitions(n, 20):
            by_weight[weight(lam)] += 1
        assert by_weight == coeffs


def test_enumeration_no_duplicates():
    seen = set(enumerate_partitions(4, 10))
    assert len(seen) == sum(1 for _ in enumerate_partitions(4, 10))


def test_count_partitions_matches_enumeration():
    for n in (1, 2, 3, 5):
        for w in (0, 3, 8):
            assert count_partitions(n, w) == sum(1 for _ in enumerate_partitions(n, w))


def test_empty_ncore_examples():
    for n in (1, 2, 3, 5):
        assert has_empty_ncore((), n)
    assert not has_empty_ncore((1,), 2)
    assert has_empty_ncore((2,), 2)


def test_empty_ncore_density_generating_function():
    # empty-N-core partitions have generating function (1 - q^N)^{-N}
    for n in range(1, 5):
        coeffs = series_coefficients([(n, n)], 12)
        by_weight = [0] * 13
        for lam in enumerate_partitions(n, 12):
            if has_empty_ncore(lam, n):
                by_weight[weight(lam)] += 1
        assert by_weight == coeffs


def test_pad_and_trim():
    assert pad((2, 1), 4) == (2, 1, 0, 0)
    assert trim((2, 1, 0, 0)) == (2, 1)
    with pytest.raises(ValueError):
        pad((2, 1, 1), 2)
