"""Disorder sampling: Haar unitary eigenvalue spectra and power traces.

The Haar sampler follows the standard QR construction: orthonormalize an
N x N matrix of iid standard complex Gaussians and multiply each column by
the phase of the corresponding diagonal entry of R, which makes the
resulting unitary exactly Haar distributed.  Only the eigenvalue angles are
retained; downstream quantities depend on the matrix through its spectrum
alone.

Reproducibility contract: all randomness flows through numpy Generators
built from a SeedSequence.  Replicate r of a run with master seed s uses
``replicate_rng(s, r)``, so parallel schedules cannot change any draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class UnitarySpectrum:
    """Eigenvalue angles (sorted ascending, in [0, 2*pi)) of an N x N unitary."""

    angles: tuple

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if len(self.angles) == 0:
            raise ValueError("spectrum must contain at least one angle")

    @property
    def n(self) -> int:
        return len(self.angles)

    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.angles))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "angles": list(self.angles)}


@dataclass(frozen=True)
class PowerTraces:
    """Newton parameters p_d = Tr U^d for d = 1..M, with ambient dimension n."""

    values: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    @property
    def depth(self) -> int:
        return len(self.values)


def replicate_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible substream for replicate ``index``.

    SeedSequence spawn-key mixing; bit-identical across platforms and
    independent of how replicates are scheduled.
    """
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def sample_haar_spectrum(n: int, rng: np.random.Generator) -> UnitarySpectrum:
    """Eigenvalue angles of a Haar-distributed N x N unitary matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    ginibre = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(ginibre)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    eigs = np.linalg.eigvals(q)
    angles = np.sort(np.mod(np.angle(eigs), 2.0 * np.pi))
    return UnitarySpectrum(tuple(angles))


def roots_of_unity_spectrum(n: int) -> UnitarySpectrum:
    """The deterministic spectrum of the distinct n-th roots of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    return UnitarySpectrum(tuple(2.0 * np.pi * k / n for k in range(n)))


def power_traces(spectrum: UnitarySpectrum, m: int) -> PowerTraces:
    """p_d = sum_j exp(i d theta_j) for d = 1..m."""
    if m < 1:
        raise ValueError("m must be positive")
    theta = np.asarray(spectrum.angles)
    d = np.arange(1, m + 1)
    values = np.exp(1j * d[:, None] * theta[None, :]).sum(axis=1)
    return PowerTraces(tuple(values), spectrum.n)
