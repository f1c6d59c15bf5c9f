"""Dependence of block maxima at several locations.

Estimates, evaluates in closed form, and Monte Carlo-validates a
[0, 1]-valued coefficient of dependence among block maxima at k
locations (1 at total dependence, 0 at independence), together with the
pairwise madogram, extremal coefficients, and bootstrap intervals.
"""
from maxdep.core import (
    MAX_SUBSET_DIMENSION,
    BlockMaximaTable,
    BootstrapInterval,
    DependenceReport,
    ExtremalCoefficientSet,
    LocationId,
    PseudoObservations,
    SubsetIndex,
    enumerate_subsets,
    validate_table,
)
from maxdep.errors import (
    DimensionError,
    DuplicateLabelError,
    InvariantError,
    MaxdepError,
    MissingValueError,
    NonFiniteError,
    ParseError,
    RangeError,
)
from maxdep.estimators import (
    MIN_BOOTSTRAP_REPLICATES,
    TIE_FIRST_OCCURRENCE,
    TIE_MIDRANK,
    EstimationOptions,
    bootstrap_variogram,
    empirical_madogram,
    empirical_variogram,
    empirical_variogram_via_pairs,
    extremal_coefficient_from_madogram,
    rank_transform,
)
from maxdep.cli import parse_csv, read_table
from maxdep.kernels import active_backend, available_backends
from maxdep.models import (
    MIN_ALPHA_CLOSED_FORM,
    LogisticModel,
    logistic_extremal_coefficients,
    logistic_tail_dependence,
    logistic_variogram,
    madogram_from_tail_dependence,
    pairwise_variogram_from_madogram,
    variogram_from_extremal_coefficients,
)
from maxdep.simulate import (
    MIN_ALPHA_SIMULATION,
    SimulationSpec,
    default_labels,
    ks_critical_value,
    margin_check,
    sample_logistic,
    sample_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BlockMaximaTable",
    "BootstrapInterval",
    "DependenceReport",
    "DimensionError",
    "DuplicateLabelError",
    "EstimationOptions",
    "ExtremalCoefficientSet",
    "InvariantError",
    "LocationId",
    "LogisticModel",
    "MAX_SUBSET_DIMENSION",
    "MIN_ALPHA_CLOSED_FORM",
    "MIN_ALPHA_SIMULATION",
    "MIN_BOOTSTRAP_REPLICATES",
    "MaxdepError",
    "MissingValueError",
    "NonFiniteError",
    "ParseError",
    "PseudoObservations",
    "RangeError",
    "SimulationSpec",
    "SubsetIndex",
    "TIE_FIRST_OCCURRENCE",
    "TIE_MIDRANK",
    "active_backend",
    "available_backends",
    "bootstrap_variogram",
    "default_labels",
    "empirical_madogram",
    "empirical_variogram",
    "empirical_variogram_via_pairs",
    "enumerate_subsets",
    "extremal_coefficient_from_madogram",
    "ks_critical_value",
    "logistic_extremal_coefficients",
    "logistic_tail_dependence",
    "logistic_variogram",
    "madogram_from_tail_dependence",
    "margin_check",
    "pairwise_variogram_from_madogram",
    "parse_csv",
    "rank_transform",
    "read_table",
    "sample_logistic",
    "sample_matrix",
    "validate_table",
    "variogram_from_extremal_coefficients",
]
