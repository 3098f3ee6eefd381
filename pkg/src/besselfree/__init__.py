"""Exact Bessel-generating-function machinery for fixed-temperature laws of
large numbers, with Monte-Carlo beta-ensemble simulators for desk-scale
verification of the limit theorems."""

from .symcore import (
    Basis, Partition, Rat, SymSeries, basis_convert, f_eta_eval,
    partitions_of, series_exp, series_log, z_lambda,
)
from .jack import JackParam, JackTable, jack_J, jack_inner, jack_table, jack_weight
from .dunkl import (
    DunklContext, MVPoly, divided_difference, dunkl_apply, moment_extract,
    pk_apply, power_partition_poly, power_sum_poly,
)
from .bessel import (
    AtomicMeasure, BgfCoeffs, LlnReport, bessel_truncated, bgf_atomic,
    bgf_polynomial, corner_restrict, dbm_factor, lln_check, log_bgf_coeffs,
    point_mass_log_coeffs, theta_add,
)
from .freeprob import (
    LukPath, cumulants_from_moments, free_convolve, free_project,
    luk_enumerate, moments_from_cumulants, nc_oracle_cumulants,
    semicircle_cumulants,
)
from .constellations import (
    ConstellationStats, OrientedConstellation, constellation_stats,
    cumulant_polynomial, enumerate_orientable, leading_coeff_verify,
    moment_polynomial_text,
)
from .ensembles import (
    EnsembleSample, MomentEstimate, SimConfig, empirical_moments, sample_gbe,
    sample_corner_matrix, sample_corner_mcmc, simulate_dbm,
)

__version__ = "0.1.0"
