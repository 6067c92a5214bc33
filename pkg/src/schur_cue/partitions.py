"""Integer partitions, hard-particle configurations, and bounded enumeration.

Partitions are tuples of weakly decreasing nonnegative integers.  Particle
configurations are tuples of strictly decreasing nonnegative integers.  The
two are related by the displacement bijection kappa_i = N - i + lambda_i
(1-indexed), which measures displacement from the fully packed configuration
(N-1, N-2, ..., 1, 0).

Enumeration order is fixed: weight-major, then lexicographically descending
within each weight, so that downstream oracle sums are reproducible
bit-for-bit.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Partition = tuple
ParticleConfig = tuple


def validate_partition(parts: Sequence[int]) -> tuple:
    """Check weak decrease and nonnegativity; return the parts as a tuple."""
    parts = tuple(int(p) for p in parts)
    for i, p in enumerate(parts):
        if p < 0:
            raise ValueError(f"negative part {p} at index {i}")
        if i > 0 and parts[i - 1] < p:
            raise ValueError(f"parts not weakly decreasing at index {i}: {parts}")
    return parts


def weight(parts: Sequence[int]) -> int:
    """Sum of the parts (the number being partitioned)."""
    return sum(parts)


def trim(parts: Sequence[int]) -> tuple:
    """Drop trailing zero parts."""
    parts = tuple(parts)
    n = len(parts)
    while n > 0 and parts[n - 1] == 0:
        n -= 1
    return parts[:n]


def pad(parts: Sequence[int], n: int) -> tuple:
    """Zero-pad to length ``n``.  Rejects more than ``n`` nonzero parts."""
    parts = trim(parts)
    if len(parts) > n:
        raise ValueError(f"partition {parts} has more than {n} nonzero parts")
    return tuple(parts) + (0,) * (n - len(parts))


def to_particles(parts: Sequence[int], n: int) -> tuple:
    """Map a partition with <= n parts to particle positions N-i+lambda_i."""
    lam = pad(validate_partition(parts), n)
    return tuple(n - i + lam[i - 1] for i in range(1, n + 1))


def from_particles(kappa: Sequence[int]) -> tuple:
    """Inverse of :func:`to_particles`; lambda_i = kappa_i - N + i."""
    kappa = tuple(int(k) for k in kappa)
    n = len(kappa)
    for i in range(1, n):
        if kappa[i - 1] <= kappa[i]:
            raise ValueError(f"positions not strictly decreasing: {kappa}")
    if n > 0 and kappa[-1] < 0:
        raise ValueError(f"negative position in {kappa}")
    return tuple(kappa[i - 1] - n + i for i in range(1, n + 1))


def partitions_of_weight(w: int, max_parts: int, max_part: int | None = None) -> Iterator[tuple]:
    """Partitions of ``w`` with at most ``max_parts`` parts, lexicographically
    descending (largest first part first)."""
    if w == 0:
        yield ()
        return
    if max_parts <= 0:
        return
    top = w if max_part is None else min(w, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of_weight(w - first, max_parts - 1, first):
            yield (first,) + rest


def enumerate_partitions(n: int, max_weight: int) -> Iterator[tuple]:
    """Every partition with <= n parts and weight <= max_weight, exactly once.

    Order: weight-major, then lexicographic descending.
    """
    if n < 1:
        raise ValueError("n must be positive")
    for w in range(max_weight + 1):
        yield from partitions_of_weight(w, n)


def count_partitions(n: int, max_weight: int) -> int:
    """Number of partitions with <= n parts and weight <= max_weight.

    Dynamic program on the generating function prod_{m<=n} 1/(1-q^m);
    used as a cheap feasibility guard before enumerating.
    """
    coeffs = [1] + [0] * max_weight
    for m in range(1, n + 1):
        for w in range(m, max_weight + 1):
            coeffs[w] += coeffs[w - m]
    return sum(coeffs)


def has_empty_ncore(parts: Sequence[int], n: int) -> bool:
    """True iff the particle residues mod n hit every class exactly once.

    Exactly the support condition of the cyclotomic measure: the particle
    determinant is nonzero iff kappa_1..kappa_N reduce mod N to a
    permutation of {0, ..., N-1}.
    """
    kappa = to_particles(parts, n)
    return sorted(k % n for k in kappa) == list(range(n))
