"""Schur polynomial evaluation and Littlewood-Richardson decompositions.

Two evaluation paths for a Schur polynomial at N unit-modulus points:

* bialternant ratio det[u_j^(N-i+lambda_i)] / det[u_j^(N-i)], computed with
  pivoted LU determinants -- the fast path for well-separated spectra;
* Jacobi-Trudi determinant in complete homogeneous symmetric polynomials,
  generated from power sums by the Newton recurrence -- division-free, used
  when the Vandermonde denominator is too small.

Littlewood-Richardson coefficients are obtained by exhaustive enumeration of
LR skew tableaux (chains of horizontal strips whose reverse reading word is
a lattice word), memoized per (lambda, mu) product.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .partitions import pad, trim, validate_partition, weight

# Vandermonde magnitudes below this fraction of the worst case 2^(N(N-1)/2)
# trigger the Jacobi-Trudi fallback.
_SEPARATION_THRESHOLD = 1e-12

# Refuse LR products beyond this total weight; the memo table blows up first.
_LR_WEIGHT_CAP = 40


def _complete_homogeneous(u: np.ndarray, depth: int) -> np.ndarray:
    """h_0..h_depth at the points u, via the Newton recurrence
    m*h_m = sum_{d=1..m} p_d h_{m-d}."""
    p = np.array([np.sum(u**d) for d in range(1, depth + 1)])
    h = np.zeros(depth + 1, dtype=complex)
    h[0] = 1.0
    for m in range(1, depth + 1):
        h[m] = np.dot(p[:m], h[m - 1 :: -1]) / m
    return h


def _schur_jacobi_trudi(lam: tuple, u: np.ndarray) -> complex:
    n = len(u)
    depth = (lam[0] if lam else 0) + n
    h = _complete_homogeneous(u, depth)
    mat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            k = lam[i] - (i + 1) + (j + 1)
            mat[i, j] = h[k] if k >= 0 else 0.0
    val = np.linalg.det(mat)
    if not np.isfinite(val):
        raise ArithmeticError("Jacobi-Trudi determinant is not finite")
    return complex(val)


def schur_eval(lam: Sequence[int], u: Sequence[complex]) -> complex:
    """Evaluate the Schur polynomial of shape ``lam`` at unit-modulus points.

    Parameters
    ----------
    lam : partition with at most len(u) parts
    u : eigenvalues, all of unit modulus

    Falls back to the Jacobi-Trudi path when the spectrum is nearly
    degenerate; raises ArithmeticError if neither path yields a finite value.
    """
    u = np.asarray(u, dtype=complex)
    n = len(u)
    lam = pad(validate_partition(lam), n)
    if n == 1:
        return complex(u[0] ** lam[0])

    i_upper, j_upper = np.triu_indices(n, k=1)
    vandermonde = np.abs(np.prod(u[i_upper] - u[j_upper]))
    worst_case = 2.0 ** (n * (n - 1) / 2)
    if vandermonde < _SEPARATION_THRESHOLD * worst_case:
        return _schur_jacobi_trudi(lam, u)

    exps_num = np.array([n - i + lam[i - 1] for i in range(1, n + 1)])
    exps_den = np.arange(n - 1, -1, -1)
    num = np.linalg.det(u[None, :] ** exps_num[:, None])
    den = np.linalg.det(u[None, :] ** exps_den[:, None])
    val = num / den
    if not np.isfinite(val):
        return _schur_jacobi_trudi(lam, u)
    return complex(val)


def weyl_dimension(lam: Sequence[int], n: int) -> int:
    """dim of the irreducible with highest weight ``lam``:
    prod_{i<j} (lam_i - lam_j + j - i) / (j - i)."""
    lam = pad(validate_partition(lam), n)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def _horizontal_strips(shape: tuple, size: int):
    """All partitions tau containing ``shape`` with tau/shape a horizontal
    strip of ``size`` cells.  tau may have one more row than shape."""
    rows = len(shape) + 1
    padded = tuple(shape) + (0,)

    def rec(i, remaining):
        if i == rows:
            if remaining == 0:
                yield ()
            return
        lo = padded[i]
        # strip condition: at most one new cell per column, so tau_i <= shape_{i-1}
        hi = padded[i - 1] if i > 0 else padded[i] + remaining
        hi = min(hi, padded[i] + remaining)
        for tau_i in range(lo, hi + 1):
            for rest in rec(i + 1, remaining - (tau_i - lo)):
                yield (tau_i,) + rest

    for tau in rec(0, size):
        yield trim(tau)


def _is_lattice_word(word):
    counts = {}
    for letter in word:
        counts[letter] = counts.get(letter, 0) + 1
        if letter > 1 and counts[letter] > counts.get(letter - 1, 0):
            return False
    return True


@lru_cache(maxsize=None)
def _schur_product(lam: tuple, mu: tuple) -> dict:
    """Expansion of s_lam * s_mu as {nu: c^nu_{lam,mu}}.

    Enumerates chains lam = nu^0 subset ... subset nu^r where step k adds a
    horizontal strip of mu_k cells labeled k, then keeps the chains whose
    reverse reading word (right-to-left, top-to-bottom) is a lattice word.
    """
    if weight(lam) + weight(mu) > _LR_WEIGHT_CAP:
        raise ValueError(
            f"total weight {weight(lam) + weight(mu)} exceeds LR cap {_LR_WEIGHT_CAP}"
        )
    result: dict = {}
    mu = trim(mu)
    if not mu:
        return {lam: 1}

    def extend(shape, letter, labels):
        # labels: {(row, col): letter} for cells added so far
        if letter > len(mu):
            nrows = len(shape)
            word = []
            for r in range(nrows):
                row_end = shape[r]
                for c in range(row_end - 1, -1, -1):
                    if (r, c) in labels:
                        word.append(labels[(r, c)])
            if _is_lattice_word(word):
                result[shape] = result.get(shape, 0) + 1
            return
        for tau in _horizontal_strips(shape, mu[letter - 1]):
            new_labels = dict(labels)
            padded = tuple(shape) + (0,) * (len(tau) - len(shape))
            for r in range(len(tau)):
                for c in range(padded[r], tau[r]):
                    new_labels[(r, c)] = letter
            extend(tau, letter + 1, new_labels)

    extend(lam, 1, {})
    return result


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient c^nu_{lam,mu}."""
    lam = trim(validate_partition(lam))
    mu = trim(validate_partition(mu))
    nu = trim(validate_partition(nu))
    if weight(nu) != weight(lam) + weight(mu):
        return 0
    padded_lam = lam + (0,) * (len(nu) - len(lam))
    if len(lam) > len(nu) or any(l > v for l, v in zip(padded_lam, nu)):
        return 0
    return _schur_product(lam, mu).get(nu, 0)


def tensor_multiplicities(
    shapes: Sequence[Sequence[int]], n: int, max_weight: int | None = None
) -> dict:
    """Multiplicities of <=n-row irreducibles in the iterated tensor product
    of the irreducibles indexed by ``shapes``.

    Iterated LR expansion; shapes with more than n rows are discarded after
    each pairwise step (polynomial-representation truncation).  ``max_weight``
    guards the total weight of the product.
    """
    shapes = [trim(validate_partition(s)) for s in shapes]
    if not shapes:
        raise ValueError("need at least one shape")
    total = sum(weight(s) for s in shapes)
    if max_weight is not None and total > max_weight:
        raise ValueError(f"total weight {total} exceeds cap {max_weight}")
    for s in shapes:
        if len(s) > n:
            raise ValueError(f"shape {s} has more than {n} rows")
    current = {shapes[0]: 1}
    for mu in shapes[1:]:
        nxt: dict = {}
        for nu, m in current.items():
            for tau, c in _schur_product(nu, mu).items():
                if len(trim(tau)) <= n:
                    nxt[tau] = nxt.get(tau, 0) + m * c
        current = nxt
    return current


def invariant_dimension(shapes: Sequence[Sequence[int]], n: int) -> int:
    """Dimension of the invariant subspace of End W^1 x ... x End W^k.

    Equals sum of squared multiplicities in the tensor product of the
    underlying irreducibles, by Schur's lemma.
    """
    mults = tensor_multiplicities(shapes, n)
    return sum(m * m for m in mults.values())
