"""Large-n asymptotics of Hankel determinants with Fisher-Hartwig singularities."""

from .applications import (
    CLTParams,
    ThinningSpec,
    char_poly_correlation_log,
    clt_params,
    gap_probability_log,
    mgf_asymptotic,
    partition_asymptotics,
    thinning_to_fh,
)
from .equilibrium import EnsembleClass, EquilibriumDensity, potential_prime_from_density, solve_density, tail_integral
from .fh_asymptotics import (
    AsymptoticConstants,
    WeightSpec,
    asymptotic_log_dn,
    constants,
    dik_log_jacobi,
    exact_log_jacobi,
    exact_log_laguerre,
    forrester_frankel_ratio,
)
from .numerics_core import ChebSeries, cheb_fit
from .oracle import OracleResult, convergence_sweep, oracle_log_dn, thinned_expectation

__version__ = "0.1.0"

__all__ = [
    "AsymptoticConstants",
    "CLTParams",
    "ChebSeries",
    "EnsembleClass",
    "EquilibriumDensity",
    "OracleResult",
    "ThinningSpec",
    "WeightSpec",
    "asymptotic_log_dn",
    "char_poly_correlation_log",
    "cheb_fit",
    "clt_params",
    "constants",
    "convergence_sweep",
    "dik_log_jacobi",
    "exact_log_jacobi",
    "exact_log_laguerre",
    "forrester_frankel_ratio",
    "gap_probability_log",
    "mgf_asymptotic",
    "oracle_log_dn",
    "partition_asymptotics",
    "potential_prime_from_density",
    "solve_density",
    "tail_integral",
    "thinned_expectation",
    "thinning_to_fh",
]
