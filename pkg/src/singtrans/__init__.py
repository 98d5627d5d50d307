"""Exact invariants of isolated hypersurface threefold singularities and
topological bookkeeping of geometric transitions."""

from .poly import (
    DEGREVLEX,
    LEX,
    LOCAL_DEGREVLEX,
    MultiPoly,
    ParseError,
    TermOrder,
    parse_poly,
    scan_variables,
)
from .groebner import (
    BudgetExceeded,
    Ideal,
    StandardBasis,
    Staircase,
    buchberger,
    divide,
    m_primary_dimension_at_origin,
    mora_normal_form,
    mora_standard_basis,
    normal_form,
    quotient_dimension,
    s_polynomial,
    staircase,
)
from .germ import (
    GermReport,
    NonIsolated,
    NotSingular,
    SingularityType,
    classify_simple,
    detect_weighted_homogeneous,
    du_val_section_type,
    hessian_corank,
    jacobian_ideal,
    least_index_estimate,
    milnor_number,
    milnor_orlik,
    split_residual,
    tyurina_number,
)
from .families import (
    ADEFamily,
    AdjacencyResult,
    CriticalPoint,
    DeformationVector,
    DegenerateDeformation,
    InconsistentLocus,
    adjacency_table,
    build_deformed,
    critical_system,
    deformation_type_at,
    locus_membership,
    make_family,
    rational_critical_points,
    solve_lambda_on_locus,
)
from .transition import (
    ConifoldVerdict,
    InapplicableCharacterization,
    SingularPointRecord,
    SmallTransitionData,
    TransitionDataError,
    TransitionReport,
    clemens_report,
    conifoldability_wh,
    load_descriptor,
    report_from_descriptor,
    type2_report,
    type3_report,
)

__version__ = "0.1.0"
