"""Model computations: Virasoro modules, lisse verdicts and affine closures."""

from .affine import (LieAlgebraData, LieAlgebraError, abelian, colored_partition_counts,
                     graded_dims_jet_vs_pbw, integrable_closure_check, jet_monomial_counts,
                     kirillov_kostant, sl2, sl_n)
from .lisse import LisseReport, lisse_verdict
from .virasoro import (VirasoroModule, VirasoroParams, minimal_central_charge, partitions,
                       vacuum_basis)

__all__ = [
    "LieAlgebraData", "LieAlgebraError", "LisseReport", "VirasoroModule", "VirasoroParams",
    "abelian", "colored_partition_counts", "graded_dims_jet_vs_pbw", "integrable_closure_check",
    "jet_monomial_counts", "kirillov_kostant", "lisse_verdict", "minimal_central_charge",
    "partitions", "sl2", "sl_n", "vacuum_basis",
]
