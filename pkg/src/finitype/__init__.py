"""Multifractal analysis of self-similar measures of finite type on the line.

Exact arithmetic in a real number field drives the construction of net
intervals, characteristic vectors and transition matrices; local
dimensions are then computed or bracketed from spectral radii and
pseudo-norms of matrix products.
"""

from .numberfield import QQ, FieldElement, NumberField, RationalInterval, field_arith, field_sign, field_to_float
from .ifs import IFS, AffineMap, IFSError, NOT_COMMENSURABLE, commensurability_exponents, compose, generation_words
from .netstructure import (
    CharacteristicVector,
    NotFiniteTypeError,
    VectorGraph,
    adjacent_path,
    build_vector_graph,
    children,
    instantiate_path,
    net_intervals,
    prune_to_attractor,
)
from .transitions import (
    ModelViolation,
    StructuralError,
    TransitionMatrix,
    decompose,
    is_positive_type,
    path_matrix,
    primitive_matrix,
)
from .dimension import (
    Bound,
    DimensionBracket,
    PeriodicPoint,
    approx_local_dim,
    density_check_sr,
    endpoint_point,
    essential_bracket,
    essential_points,
    periodic_dim,
    pn_of_path,
    spectral_radius,
)
from .regularity import RegularityReport, Verdict, generalized_regular_sufficient, regularity_diagnostics

__version__ = "0.1.0"
