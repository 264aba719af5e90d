"""Exact vertex normal surface enumeration for 3-manifold triangulations.

The kernel models generalised triangulations (tetrahedra with faces
affinely identified in pairs), their normal surface coordinates, and
the enumeration of admissible extremal rays of the solution cone by a
filtered double description method.  On top of that sit the named
extremal constructions, closed-form bounds on the admissible vertex
count, and an isomorph-free census of small closed triangulations.
"""

from .bounds import (
    BoundReport,
    bound_report,
    facet_vertex_bound,
    fibonacci,
    hass_bound,
    mcmullen,
    mcmullen_growth_base,
    theorem_bound,
    worst_case_sigma,
)
from .census import (
    CensusLimitError,
    CensusRecord,
    CensusStats,
    census_records,
    census_stats,
    conjecture_checks,
    generate_closed,
    stats_from_records,
    write_csv,
)
from .constructions import (
    Block,
    BlockBoundary,
    OrientationError,
    close_block,
    four_block,
    join_blocks,
    pillow,
    s2xs1,
    x_k,
)
from .coords import (
    BoundaryProfile,
    MatchingError,
    MatchingSystem,
    boundary_profile,
    edge_weight,
    equalize_boundary_equations,
    euler_char,
    is_admissible,
    matching_matrix,
    vertex_link,
)
from .dd import (
    EnumerationLimitError,
    EnumerationResult,
    EnumerationStats,
    Ray,
    brute_force_vertices,
    enumerate_vertex_surfaces,
    sigma,
)
from .homology import HomologyGroup, homology_h1, smith_normal_form
from .isosig import iso_signature
from .perm import Perm4
from .triangulation import (
    GluingError,
    Skeleton,
    Triangulation,
    connected_components,
    disjoint_union,
    join_faces,
    make_triangulation,
    orientation_signs,
    with_gluings,
)

__version__ = "0.1.0"
