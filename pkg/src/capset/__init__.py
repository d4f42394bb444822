"""Exact bounds on progression-free sets in F_q^n and desk-scale checks of the polynomial method."""

from .asymptotics import RateReport, appendix_bound_check, check_growth, crq, minimize_crq, q3_closed_form
from .coeff_oracle import CoeffOracleQuery, extract_coeff, geometric_sum_filter
from .coeffs import CoeffRow, cf_step, coeff_row, eg_bound, m_value
from .errors import DomainError, InvariantViolation, NumericalError
from .ffld import FieldVector, PointSet, PrimeField, ProgressionSpec, is_progression_free, vec_combine
from .polyspace import (
    FpMatrix,
    MonomialBasis,
    SubspaceReport,
    combinatorial_bound_check,
    dim_V,
    eval_matrix,
    monomial_basis,
    null_space,
    proposition2_check,
    rank,
)
from .search import SearchResult, max_progression_free, verify_cap
from .setgame import SetCard, find_valid_triples

__version__ = "0.1.0"
