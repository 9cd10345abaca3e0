"""Exact Ollivier-Ricci and Lin-Lu-Yau curvature on finite simple graphs."""

from .assignment import lly_equal_degree, solve_assignment
from .curvature import (
    EdgeCurvature,
    LLYCurvature,
    PiecewiseLinearFn,
    edge_curvatures,
    idleness_function,
    kappa_alpha,
    kappa_lly,
    ricci_lower,
)
from .graph import (
    INFINITE,
    Graph,
    ball,
    common_neighbors,
    diameter,
    distance,
    generate_sharpness,
    generate_standard,
    min_degree,
    parse_edge_list,
    random_min_degree_graph,
    sphere,
)
from .theorems import (
    TheoremReport,
    check_degree_threshold,
    check_diameter_lemma,
    check_proof_bound,
    check_sharpness,
    sweep_exhaustive,
    sweep_random,
)
from .transport import (
    MassByDistance,
    ProbMeasure,
    TransportPlan,
    diagonal_fixed_plan,
    mass_by_distance,
    optimal_plan,
    vertex_measure,
    wasserstein,
)

__version__ = "0.1.0"
