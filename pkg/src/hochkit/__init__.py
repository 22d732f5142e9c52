"""Exact toolkit for the Hochschild complex of multidifferential operators on Q[x1..xm]."""

from .errors import DslError, HochkitError
from .exact_poly import Polynomial, multi_index_split_coeff
from .multiop import (
    MultiDiffOp,
    ZeroCochain,
    apply,
    identity,
    is_diff_op_of_order_at_most,
    mu,
    multiplication,
    partial,
    syntactic_order,
    vanishes_on_constants,
)
from .hochschild import (
    SignConvention,
    associativity_defect,
    cup,
    cup_many,
    gerstenhaber,
    hochschild_delta,
    hochschild_delta_via_bracket,
    partial_compose,
    total_compose,
)
from .sder import CompositionWord, SDerDecomposition, VectorField, expand_word, sder_decompose, word_order_check
from .hkr import (
    MultiVectorField,
    Truncation,
    alt,
    cohomology_dims,
    cohomology_report,
    delta_matrix,
    enumerate_basis,
    mvf_to_op,
    op_to_mvf,
    split_cocycle,
    wedge,
)
from .linalg import ExactMatrix
from .dsl import parse_operator, parse_polynomial

__version__ = "0.1.0"
