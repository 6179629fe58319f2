"""Exact derivation algebras of finite-dimensional (Leibniz) algebras.

Structure constants and all linear algebra are exact rationals.  Kernel
dimensions of rational systems do not change under field extension, so the
dimensions computed here are the complex ones as well.
"""
from .algebra import (Algebra, LeibnizWitness, Subspace, basis_vector, bracket,
                      check_leibniz, gradation_dims, is_filiform, is_leibniz, is_lie,
                      is_nilpotent, leibniz_defect, lower_central_series, series_dims)
from .derivations import (DerivationBasis, der_basis, der_dim,
                          derivation_constraint_matrix, is_derivation,
                          ngf1_analytic_der_basis, right_mul)
from .families import (CaseMatch, FLbParams, SLbParams, classify_flb, classify_slb,
                       expected_dim_ngf, flb, ngf1, ngf2, ngf3, sample_params, slb)
from .io import AlgebraFormatError, emit_algebra, parse_algebra
from .linalg import Matrix, Scalar, commutator, in_span, kernel_basis, mat_mul, rank, rref

__version__ = "0.1.0"
