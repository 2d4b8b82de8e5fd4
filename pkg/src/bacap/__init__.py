"""Blahut-Arimoto capacities for Walsh-sparse cryptanalytic channels."""

from .analytic import (
    EstimateComparison,
    binary_entropy,
    bsc_capacity_estimate,
    bsc_capacity_exact,
    conjecture_gap,
    crypto_estimate,
    entropy_quadratic_approx,
    kl_divergence,
    nonsym_capacity_estimate,
    nonsym_mutual_information_closed,
    renyi_divergence,
)
from .ba import CapacityResult, SolverConfig, ba_capacity, capacity_oracle_grid, iterate_bounds, mutual_information
from .channel import (
    as_channel,
    as_distribution,
    inverse_walsh_hadamard,
    make_bsc,
    make_nonsymmetric_binary,
    make_wht_sparse_channel,
    walsh_hadamard_transform,
)
from .distinguisher import Decision, DistinguisherReport, SampleCounts, draw_samples, estimate_error_rates, llr_decide
from .errors import DomainError, InvalidAlphabetError, InvalidSpectrumError, UnsupportedShapeError

__version__ = "0.1.0"
