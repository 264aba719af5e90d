"""Normal surface coordinates: 7 per tetrahedron (4 triangles, 3 quads).

A surface meeting each tetrahedron in normal triangles and
quadrilaterals is encoded by the vector
``(t0, t1, t2, t3, q0, q1, q2)`` per tetrahedron, where ``tv`` counts
triangles cutting off vertex ``v`` and ``qj`` counts quadrilaterals of
type ``j``.  Quadrilateral types are indexed by the vertex pairs they
separate: type 0 separates {0,1} from {2,3}, type 1 separates {0,2}
from {1,3}, type 2 separates {0,3} from {1,2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .triangulation import FACE_CORNERS, FACES_AT_VERTEX, TET_EDGES, Triangulation

#: Quadrilateral type whose pieces are parallel to the edge joining a
#: vertex pair; equivalently, for a corner v of face f, QUAD_PAIRING of
#: {v, f} is the type whose arcs cut off corner v inside face f.
_QUAD_PAIRING = {
    frozenset({0, 1}): 0,
    frozenset({2, 3}): 0,
    frozenset({0, 2}): 1,
    frozenset({1, 3}): 1,
    frozenset({0, 3}): 2,
    frozenset({1, 2}): 2,
}

#: sep(v, f): quad type meeting face f in arcs that cut off corner v.
#: Frozen 4x4 table (diagonal unused); the type pairs v with f.
SEP = tuple(
    tuple(
        _QUAD_PAIRING[frozenset({v, f})] if v != f else -1
        for f in range(4)
    )
    for v in range(4)
)

#: Quad types crossed by each tetrahedron edge: the two types whose
#: separating pair splits the edge's endpoints.
QUADS_MEETING_EDGE = {
    (a, b): tuple(j for j in range(3) if j != _QUAD_PAIRING[frozenset({a, b})])
    for a in range(4)
    for b in range(4)
    if a != b
}


def tri_coord(tet: int, vertex: int) -> int:
    """Index of the triangle coordinate at the given corner."""
    return 7 * tet + vertex


def quad_coord(tet: int, quad_type: int) -> int:
    """Index of the quadrilateral coordinate of the given type."""
    return 7 * tet + 4 + quad_type


class MatchingError(ValueError):
    """A vector fails the matching equations where they are required."""


@dataclass(frozen=True)
class MatchingSystem:
    """Homogeneous integer equations over the 7n coordinates.

    One provenance tag per row: ``("face", t, f, t2, f2, corner)`` for a
    row induced by a face gluing, or ``("user", k)`` /
    ``("equalize", k)`` for supplied rows.
    """

    dim: int
    rows: tuple[tuple[int, ...], ...]
    tags: tuple[tuple, ...] = field(default=())

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.dim:
                raise ValueError("row length does not match dimension")

    def satisfied_by(self, vector: Sequence[int]) -> bool:
        if len(vector) != self.dim:
            raise ValueError("vector length does not match dimension")
        return all(
            sum(c * v for c, v in zip(row, vector)) == 0 for row in self.rows
        )


def matching_matrix(tri: Triangulation) -> MatchingSystem:
    """The matching equations of a triangulation.

    Across every internal face gluing and each of the three corners of
    the face, the pieces producing an arc at that corner must agree:
    the triangle coordinate there plus the quad coordinate cutting that
    corner, on each side.  Boundary faces contribute nothing; a closed
    triangulation of size n yields exactly 6n rows.
    """
    dim = 7 * tri.n
    rows = []
    tags = []
    for t, f, t2, f2, p in tri.gluing_pairs():
        for v in FACE_CORNERS[f]:
            row = [0] * dim
            row[tri_coord(t, v)] += 1
            row[quad_coord(t, SEP[v][f])] += 1
            row[tri_coord(t2, p[v])] -= 1
            row[quad_coord(t2, SEP[p[v]][f2])] -= 1
            rows.append(tuple(row))
            tags.append(("face", t, f, t2, f2, v))
    return MatchingSystem(dim, tuple(rows), tuple(tags))


def is_admissible(vector: Sequence[int]) -> bool:
    """True when each tetrahedron has at most one nonzero quad coordinate."""
    if len(vector) % 7:
        raise ValueError("vector length is not a multiple of 7")
    for base in range(4, len(vector), 7):
        nonzero = 0
        for j in range(3):
            if vector[base + j]:
                nonzero += 1
                if nonzero > 1:
                    return False
    return True


def _require_matching(vector: Sequence[int], tri: Triangulation) -> None:
    system = matching_matrix(tri)
    if len(vector) != system.dim:
        raise MatchingError(
            f"vector length {len(vector)} != 7n = {system.dim}"
        )
    if any(v < 0 for v in vector):
        raise MatchingError("negative coordinate")
    if not system.satisfied_by(vector):
        raise MatchingError("vector does not satisfy the matching equations")


def _edge_weight_at(vector: Sequence[int], t: int, a: int, b: int) -> int:
    w = vector[tri_coord(t, a)] + vector[tri_coord(t, b)]
    for j in QUADS_MEETING_EDGE[(a, b)]:
        w += vector[quad_coord(t, j)]
    return w


def edge_weight(
    vector: Sequence[int], tri: Triangulation, edge_class: int
) -> int:
    """Intersection count of the surface with an edge class.

    Computed from any incident tetrahedron edge as the two triangle
    coordinates at its endpoints plus the quad coordinates crossing it;
    the matching equations make all members of the class agree.
    """
    _require_matching(vector, tri)
    members = tri.skeleton.edge_classes[edge_class]
    weights = {_edge_weight_at(vector, t, a, b) for (t, a, b) in members}
    if len(weights) != 1:
        raise MatchingError(
            f"edge class {edge_class} weight differs between members"
        )
    return weights.pop()


def vertex_link(tri: Triangulation, vertex_class: int) -> tuple[int, ...]:
    """The triangle-only surface with one disc at every corner of the class."""
    vector = [0] * (7 * tri.n)
    for (t, v) in tri.skeleton.vertex_classes[vertex_class]:
        vector[tri_coord(t, v)] = 1
    return tuple(vector)


def _face_arc_count(vector: Sequence[int], t: int, f: int) -> int:
    return sum(
        vector[tri_coord(t, v)] + vector[quad_coord(t, SEP[v][f])]
        for v in FACE_CORNERS[f]
    )


def euler_char(vector: Sequence[int], tri: Triangulation) -> int:
    """Euler characteristic of the surface a matching vector encodes.

    Cell structure: one 2-cell per normal piece, one 1-cell per arc in
    each face class, one 0-cell per intersection point with each edge
    class.
    """
    _require_matching(vector, tri)
    sk = tri.skeleton
    discs = sum(vector)
    arcs = sum(
        _face_arc_count(vector, cls[0][0], cls[0][1]) for cls in sk.face_classes
    )
    points = sum(
        _edge_weight_at(vector, *cls[0]) for cls in sk.edge_classes
    )
    return points - arcs + discs


@dataclass
class BoundaryProfile:
    """Boundary curve multiplicities around each boundary vertex class.

    ``multiplicity`` maps a boundary vertex class index to the common
    corner arc count around that class; a class whose corner counts
    disagree is omitted and flips ``consistent`` off.
    """

    multiplicity: dict[int, int]
    consistent: bool


def boundary_profile(
    vector: Sequence[int], tri: Triangulation
) -> BoundaryProfile:
    """Arc counts of the surface around every boundary vertex class."""
    _require_matching(vector, tri)
    sk = tri.skeleton
    multiplicity: dict[int, int] = {}
    consistent = True
    for idx in sk.boundary_vertex_classes:
        counts = {
            vector[tri_coord(t, v)] + vector[quad_coord(t, SEP[v][f])]
            for (t, v) in sk.vertex_classes[idx]
            for f in FACES_AT_VERTEX[v]
            if tri.gluing(t, f) is None
        }
        if len(counts) == 1:
            multiplicity[idx] = counts.pop()
        else:
            consistent = False
    return BoundaryProfile(multiplicity, consistent)


def _corner_form(tri: Triangulation, vertex_class: int) -> tuple[int, ...]:
    """Arc-count linear form at the canonical boundary corner of a class."""
    sk = tri.skeleton
    incidences = sorted(
        (t, v, f)
        for (t, v) in sk.vertex_classes[vertex_class]
        for f in FACES_AT_VERTEX[v]
        if tri.gluing(t, f) is None
    )
    t, v, f = incidences[0]
    row = [0] * (7 * tri.n)
    row[tri_coord(t, v)] = 1
    row[quad_coord(t, SEP[v][f])] = 1
    return tuple(row)


def equalize_boundary_equations(tri: Triangulation) -> MatchingSystem:
    """Rows forcing equal boundary multiplicity around every boundary vertex.

    For c boundary vertex classes this produces c - 1 rows, each the
    difference of the corner arc-count forms of consecutive classes.
    Vectors already spanned by consistent-profile surfaces then have all
    boundary curves appearing with one common multiplicity.
    """
    classes = tri.skeleton.boundary_vertex_classes
    rows = []
    tags = []
    for k in range(len(classes) - 1):
        a = _corner_form(tri, classes[k])
        b = _corner_form(tri, classes[k + 1])
        rows.append(tuple(x - y for x, y in zip(a, b)))
        tags.append(("equalize", k))
    return MatchingSystem(7 * tri.n, tuple(rows), tuple(tags))
