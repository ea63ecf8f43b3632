"""Witness Gabriel graphs.

Given vertices P and witnesses W in the plane, the witness Gabriel graph
joins two vertices exactly when the closed disk having them as a
diameter contains no witness other than possibly the two vertices
themselves. This package computes these graphs (brute force plus two
fast algorithms), decides whether an embedded graph is realizable as one
(producing a witness certificate or a covering counterexample), and
emits certified drawings of trees, complete bipartite graphs, and the
named lower-bound gadgets.
"""

from .errors import (
    ConsistencyError,
    ConstructionFailure,
    DegenerateCirclesError,
    InputFormatError,
    InvalidGeometryError,
    VerificationInternalError,
    WggError,
)
from .geometry import (
    DiametralDisk,
    Tolerance,
    Violation,
    circle_circle_intersections,
    general_position_check,
    in_blocking_region,
    perturb_points,
    rotate_points,
    rotation_with_distinct_x,
    segments_cross,
)
from .graphs import (
    Instance,
    WitnessGabrielGraph,
    canonical_edges,
    construct_k_gabriel,
    edge_test_midpoint,
    labeled_isomorphic,
    oracle_construct,
    random_instance,
)
from .construct import (
    BenchRow,
    FeasibleRegion,
    HalfPlane,
    NearestWitnessIndex,
    bench_constructions,
    construct_halfplane,
    construct_voronoi,
    feasible_region,
)
from .verify import (
    BoundaryArc,
    DiskUnion,
    EmbeddedGraph,
    RejectionReport,
    WedgeViolation,
    WitnessCertificate,
    find_free_point,
    quick_reject,
    reduce_edge_count,
    union_boundary_arcs,
    verify_drawing,
)
from .drawings import (
    Tree,
    bipartite_strip_width,
    concentric_instance,
    draw_complete_bipartite,
    draw_tree,
    eliminate_all_witnesses,
    hexagonal_instance,
    k3333_candidate,
)
from .svg import render_svg, write_svg

__version__ = "0.1.0"
