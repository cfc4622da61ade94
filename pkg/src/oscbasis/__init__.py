"""Orthonormal polynomial-trig bases for oscillatory function approximation.

Builds the paired family {p_k, q_k} spanning {x^j cos(omega x),
x^j sin(omega x)} on [-1, 1], with inner-product tables computed by a
stable skew-diagonal recursion, spectral derivative matrices, and
projection of oscillatory targets, all checked against an independent
quadrature oracle.
"""

from .approx import (ENVELOPES, BasisRef, Expansion, OscTarget,
                     evaluate_expansion, load_expansion,
                     plain_legendre_residuals, project, reduce_frequency,
                     residual_norm, save_expansion)
from .basis import (BasisDegenerationError, OscBasis, RecurrenceStep,
                    build_basis, evaluate_member, load_basis,
                    monic_norm_profile, save_basis, save_basis_csv)
from .calculus import (DerivativeOperator, derivative_matrix_legtrig,
                       load_operator, save_operator, save_operator_csv,
                       to_orthogonal_basis)
from .frequency import Frequency, StabilityWarning, parse_omega_spec
from .legendre import (DerivExpansion, QuadratureRule, derivative_expansion,
                       eval_legendre, gauss_legendre_rule, legendre_norm_sq)
from .oracle import (OracleConfig, cond_estimate, hilbert_limit, integrate,
                     monomial_gram, oracle_entry)
from .pairing import LegTrigCoeffs, gram_matrix, inner_product, norm
from .tables import (InnerProductTables, VerifyReport, build_tables,
                     load_tables, save_tables, save_tables_csv, verify_tables)

__version__ = "0.1.0"

__all__ = [
    "ENVELOPES",
    "BasisDegenerationError",
    "BasisRef",
    "DerivExpansion",
    "DerivativeOperator",
    "Expansion",
    "Frequency",
    "InnerProductTables",
    "LegTrigCoeffs",
    "OracleConfig",
    "OscBasis",
    "OscTarget",
    "QuadratureRule",
    "RecurrenceStep",
    "StabilityWarning",
    "VerifyReport",
    "build_basis",
    "build_tables",
    "cond_estimate",
    "derivative_expansion",
    "derivative_matrix_legtrig",
    "eval_legendre",
    "evaluate_expansion",
    "evaluate_member",
    "gauss_legendre_rule",
    "gram_matrix",
    "hilbert_limit",
    "inner_product",
    "integrate",
    "legendre_norm_sq",
    "load_basis",
    "load_expansion",
    "load_operator",
    "load_tables",
    "monic_norm_profile",
    "monomial_gram",
    "norm",
    "oracle_entry",
    "parse_omega_spec",
    "plain_legendre_residuals",
    "project",
    "reduce_frequency",
    "residual_norm",
    "save_basis",
    "save_basis_csv",
    "save_expansion",
    "save_operator",
    "save_operator_csv",
    "save_tables",
    "save_tables_csv",
    "to_orthogonal_basis",
    "verify_tables",
]
