"""Circle packing layouts and disk configuration analysis."""

from .analysis import (
    Defect,
    DiskSet,
    RealizationReport,
    RigidityReport,
    SimilarityTransform,
    ThinnessReport,
    ThinnessViolation,
    are_similar,
    extract_contact_graph,
    is_thin,
    normalize,
    rigidity_index,
    rigidity_jacobian,
    similarity_velocity_fields,
    verify_realization,
)
from .errors import (
    DegenerateNormalizationError,
    DegenerateTriangleError,
    DiskPackError,
    InconsistentBoundaryError,
    InconsistentLayoutError,
    InvalidConfigurationError,
    InvalidInputError,
    NoIntersectionError,
    NonConvergenceError,
    ParseError,
    UnsupportedInputError,
)
from .geometry import (
    Disk,
    PairKind,
    PairRelation,
    boundary_meeting_points,
    edge_length,
    overlap_angle,
    pair_relation,
    triangle_angle,
    triple_intersects,
)
from .graph import (
    EmbeddedGraph,
    Graph,
    LabeledContactGraph,
    chordless_4cycles,
    edge_key,
    faces_from_rotation,
    is_triangulated,
    outer_face_index,
    planarity_necessary,
    quad_feasibility,
    rotation_from_positions,
    validate_simple,
)
from .io import (
    GraphDocument,
    graph_document_from_labeled,
    graph_document_from_layout,
    read_disks,
    read_graph,
    render_svg,
    write_disks,
    write_graph,
)
from .layout import (
    LayoutProblem,
    RadiiSolution,
    angle_sum,
    pack,
    place_centers,
    solve_radii,
)

__version__ = "0.1.0"
