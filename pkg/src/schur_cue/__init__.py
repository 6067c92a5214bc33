"""Schur measures with CUE disorder: exact formulas, scaling limits, and
reproducible Monte Carlo verification."""

from .cue import (
    PowerTraces,
    UnitarySpectrum,
    power_traces,
    replicate_rng,
    roots_of_unity_spectrum,
    sample_haar_spectrum,
)
from .exact import (
    VarianceDecomposition,
    diaconis_evans_expected,
    disorder_gap_limit,
    euler_phi,
    expected_logZ,
    expected_Z,
    limit_F_params,
    moment_series,
    ramanujan_gap_check,
    sample_limit_F,
    variance_exact,
)
from .measure import (
    MeasureParams,
    cyclotomic_density_check,
    determinantal_prob,
    enumerate_Z,
    free_energy,
    free_energy_series,
    measure_prob,
    partition_function,
)
from .montecarlo import Estimate, RunConfig, TestResult, ks_distance, mc_free_energy
from .partitions import (
    enumerate_partitions,
    from_particles,
    has_empty_ncore,
    to_particles,
    weight,
)
from .scaling import ScalingConstants, h_gap, mu_c, nu_c, sigma2_c, sw_variance
from .symfunc import invariant_dimension, lr_coefficient, schur_eval, tensor_multiplicities

__version__ = "0.1.0"
