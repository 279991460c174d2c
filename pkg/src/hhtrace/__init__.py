"""Exact Hochschild homology, Euler classes and trace-formula verification."""

from .algebra import (
    AlgebraMorphism,
    GradedAlgebra,
    Quiver,
    cyclic_group_algebra,
    ground_field,
    matrix_algebra,
    opposite,
    path_algebra,
    split_semisimple,
    tensor,
    validate,
)
from .hochschild import Bimodule, hh_dims, hh_with_coefficients, hochschild_complex, kunneth_on_homology
from .invariants import (
    euler_class,
    euler_class_prime,
    gram_matrix,
    induced_map_direct,
    pairing,
    verify_hrr,
    verify_lfp,
    verify_main_lemma,
    verify_nondegenerate,
    verify_pairing_symmetry,
)
from .linalg import GF, QQ
from .perf import PerfComplex, diagonal_resolution, hh_via_resolution

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism", "GradedAlgebra", "Quiver", "cyclic_group_algebra", "ground_field",
    "matrix_algebra", "opposite", "path_algebra", "split_semisimple", "tensor", "validate",
    "Bimodule", "hh_dims", "hh_with_coefficients", "hochschild_complex", "kunneth_on_homology",
    "euler_class", "euler_class_prime", "gram_matrix", "induced_map_direct", "pairing",
    "verify_hrr", "verify_lfp", "verify_main_lemma", "verify_nondegenerate", "verify_pairing_symmetry",
    "GF", "QQ", "PerfComplex", "diagonal_resolution", "hh_via_resolution",
]
