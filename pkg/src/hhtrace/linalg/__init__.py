from .fields import GF, QQ, Field, Fp, field_spec, format_scalar, parse_field
from .sparse import (
    Basis,
    Echelon,
    SparseMatrix,
    block_diagonal,
    block_rank,
    column_blocks,
    column_space_basis,
    determinant,
    inverse,
    is_invertible,
    kernel_basis,
    pivot_columns,
    rank,
    solve,
)
from .complexes import ChainComplex, ComplexError, HomologySummary, homology_at, homology_dims

__all__ = [
    "GF", "QQ", "Field", "Fp", "field_spec", "format_scalar", "parse_field",
    "Basis", "Echelon", "SparseMatrix", "block_diagonal", "block_rank", "column_blocks", "column_space_basis",
    "determinant", "inverse", "is_invertible", "kernel_basis", "pivot_columns",
    "rank", "solve",
    "ChainComplex", "ComplexError", "HomologySummary", "homology_at", "homology_dims",
]
