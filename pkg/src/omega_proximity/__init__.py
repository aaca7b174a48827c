"""Exact factor-count censuses and coincidence counting for constructed
strongly multiplicative functions."""

from .budget import BUDGET_ENV_VAR, DEFAULT_SEGMENT_SIZE, memory_budget_mb
from .census import (
    CensusTable,
    ConcentrationInterval,
    census,
    concentration_interval,
    concentration_tail,
    interval_from_center,
    levels_in_interval,
    mode_k,
    normalize_f,
    write_census_csv,
)
from .errors import CapacityError, ScaleError
from .gfunction import GEntry, GFunction, MaximizerRecord, build_g, compute_maximizer
from .primeset import (
    PrimeSetS,
    anchor_scale,
    coprime_count,
    coprime_count_inclusion_exclusion,
    coprime_mask,
    density_constant,
    power_prime_set,
    reciprocal_sums,
    threshold_prime_set,
)
from .proximity import (
    PhiDiagnostics,
    ProximityReport,
    ReportRow,
    certificate_count,
    coincidence_count,
    growth_report,
    phi_diagnostics,
    write_report_csv,
    write_report_json,
)
from .sieve import (
    FactorCensus,
    PrimeList,
    factorize,
    is_prime,
    iter_factor_segments,
    next_prime,
    primes_up_to,
    sieve_census,
)

__version__ = "0.1.0"

__all__ = [
    "BUDGET_ENV_VAR",
    "DEFAULT_SEGMENT_SIZE",
    "CapacityError",
    "CensusTable",
    "ConcentrationInterval",
    "FactorCensus",
    "GEntry",
    "GFunction",
    "MaximizerRecord",
    "PhiDiagnostics",
    "PrimeList",
    "PrimeSetS",
    "ProximityReport",
    "ReportRow",
    "ScaleError",
    "anchor_scale",
    "build_g",
    "census",
    "certificate_count",
    "coincidence_count",
    "compute_maximizer",
    "concentration_interval",
    "concentration_tail",
    "coprime_count",
    "coprime_count_inclusion_exclusion",
    "coprime_mask",
    "density_constant",
    "factorize",
    "growth_report",
    "interval_from_center",
    "is_prime",
    "iter_factor_segments",
    "levels_in_interval",
    "memory_budget_mb",
    "mode_k",
    "next_prime",
    "normalize_f",
    "phi_diagnostics",
    "power_prime_set",
    "primes_up_to",
    "reciprocal_sums",
    "sieve_census",
    "threshold_prime_set",
    "write_census_csv",
    "write_report_csv",
    "write_report_json",
]
