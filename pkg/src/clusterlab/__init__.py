"""Exact verification toolkit for cluster algebra mutation: tropical
dualities, g-vector fans, folding, and exchange graphs, all over arbitrary
precision integer and rational arithmetic."""

__version__ = "0.1.0"

from .errors import (
    AdmissibilityError,
    ClusterLabError,
    DimensionError,
    ExactnessError,
    GroupTooLargeError,
    ParseError,
    SignSkewSymmetryError,
    SignUndefinedError,
    UnsupportedCoefficientsError,
    UnsupportedInputError,
)
from .matrices import (
    ExchangeMatrix,
    IntMatrix,
    SSSReport,
    bracket_plus,
    column_sign,
    is_acyclic,
    is_sign_skew_symmetric,
    is_skew_symmetric,
    is_skew_symmetrizable,
    matrix_from_json,
    matrix_to_json,
    mutate_along,
    mutate_matrix,
    row_sign,
    skew_symmetrizer,
    verify_totally_sss,
)
from .laurent import LaurentPoly, laurent_from_json
from .tropical import TropicalElement
from .seeds import (
    Seed,
    c_matrix_of,
    check_constant_term_one,
    check_positivity,
    f_polynomial,
    g_matrix_of,
    g_vector_from_grading,
    initial_recurrence_data,
    mutate_seed,
    mutate_seed_along,
    principal_seed,
    recurrence_along,
    recurrence_step,
    seed_from_json,
    verify_yhat_identity,
    verify_yhat_to_depth,
)
from .reports import CheckReport
from .pattern import (
    LockstepPair,
    PatternNode,
    change_initial_gvector,
    check_assumption,
    check_determinants,
    check_dual_mutation,
    check_first_duality,
    check_second_duality,
    dualities_report,
    initial_node,
    iter_lockstep,
    iter_pattern,
    node_at,
    path_between,
    step,
    walk_report,
)
from .gfan import (
    FanReport,
    SimplicialCone,
    check_fan,
    cone_of,
    enumerate_gfan,
    eta_along,
    eta_inverse_check,
    eta_map,
    sign_equivalent,
)
from .folding import (
    ActedQuiver,
    AdmissibilityResult,
    check_admissible,
    close_group,
    fold_matrix,
    frame,
    orbit_mutate,
    orbit_mutate_by_composition,
    quiver_from_json,
    verify_globally_foldable,
)
from .exchange_graph import (
    CanonicalSeedKey,
    ExchangeGraph,
    canonical_key,
    explore,
    export_dot,
    graph_from_json,
    graph_to_json,
    verify_adjacency_common_variables,
    verify_cluster_determines_seed,
    verify_cmatrix_determines_seed,
    verify_odd_rank_theorem,
)
