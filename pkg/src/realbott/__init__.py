"""Mod 2 cohomology and Stiefel-Whitney classes of real Bott manifolds."""

from .bott_matrix import (
    BottMatrix,
    BottMatrixError,
    ParseError,
    enumerate_matrices,
    holonomy_rank,
    is_orientable,
    parse,
    random_matrix,
    row_submatrix,
    serialize,
)
from .cohomology import CohomologyRing, Z2Polynomial, add, basis, monomial, multiply, reduce_square
from .group_model import AffineMap, check_lattice, generator, holonomy_image
from .stiefel_whitney import (
    DecompositionReport,
    TotalSWClass,
    decomposition_sum,
    example_matrix,
    line_class,
    sw_class,
    sw_class_naive,
    total_sw,
    verify_decomposition,
    w1_from_rows,
)

__version__ = "0.1.0"
