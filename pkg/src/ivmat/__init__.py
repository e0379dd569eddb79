"""Special classes of interval matrices: recognition, ranges, and hulls."""

from .intervals import (
    Interval,
    IntervalMatrix,
    IntervalVector,
    SymmetricIntervalMatrix,
    as_symmetric,
    checkerboard_box,
    checkerboard_vertices,
    comparison_matrix,
    vertex_iter,
)
from .classify import (
    ClassReport,
    classify_all,
    classify_structure,
    conjecture_check_inverse_m,
    is_b_matrix_interval,
    is_h_matrix_interval,
    is_inverse_m_interval,
    is_inverse_nonnegative_interval,
    is_m_matrix_interval,
    is_m_matrix_real,
    is_p_matrix_special,
    is_positive_definite_sufficient,
    is_regular_via_h,
    is_totally_positive_interval,
    is_totally_positive_real,
)
from .linsolve import HullResult, IntervalLinearSystem, solve_hull
from .oracle import OracleConfig
from .parametric import ParametricSystem, hull_orthant_lp, hull_rank_one, is_pd_parametric
from .ranges import RangeResult, UpperBound, det_range

__all__ = [
    "Interval",
    "IntervalMatrix",
    "IntervalVector",
    "SymmetricIntervalMatrix",
    "as_symmetric",
    "checkerboard_box",
    "checkerboard_vertices",
    "comparison_matrix",
    "vertex_iter",
    "ClassReport",
    "classify_all",
    "classify_structure",
    "conjecture_check_inverse_m",
    "is_b_matrix_interval",
    "is_h_matrix_interval",
    "is_inverse_m_interval",
    "is_inverse_nonnegative_interval",
    "is_m_matrix_interval",
    "is_m_matrix_real",
    "is_p_matrix_special",
    "is_positive_definite_sufficient",
    "is_regular_via_h",
    "is_totally_positive_interval",
    "is_totally_positive_real",
    "HullResult",
    "IntervalLinearSystem",
    "solve_hull",
    "OracleConfig",
    "ParametricSystem",
    "hull_orthant_lp",
    "hull_rank_one",
    "is_pd_parametric",
    "RangeResult",
    "UpperBound",
    "det_range",
]
