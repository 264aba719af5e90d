"""Named triangulations: pillow, 4-block, block chains, and a 2-tet S2xS1.

The gluing tables here were derived once from the pictorial
constructions and frozen; the test suite pins them down through their
skeletal invariants (vertex/edge/face class counts, validity, boundary
shape) and their vertex normal surface counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .perm import Perm4
from .triangulation import (
    FACE_CORNERS,
    GluingError,
    Triangulation,
    disjoint_union,
    join_faces,
    orientation_signs,
    with_gluings,
)


class OrientationError(ValueError):
    """A boundary identification would reverse orientation."""


@dataclass(frozen=True)
class BlockBoundary:
    """The two-triangle boundary shape shared by all blocks here.

    Each boundary triangle has one corner at a singleton vertex class
    and two corners at the class named P, which both triangles share:
    corner name multisets {P, P, R} and {P, P, Q}.  ``names`` maps the
    corner labels of each triangle to their name.
    """

    triangles: tuple[tuple[int, int], tuple[int, int]]
    names: tuple[tuple[tuple[int, str], ...], tuple[tuple[int, str], ...]]

    def corner_names(self, which: int) -> dict[int, str]:
        return dict(self.names[which])


@dataclass(frozen=True)
class Block:
    """A triangulation with boundary in the two-triangle block shape."""

    triangulation: Triangulation
    boundary: BlockBoundary


def pillow() -> Triangulation:
    """The two-tetrahedron triangular pillow.

    Two faces of the first tetrahedron are folded together, and the
    second tetrahedron is wrapped around the remaining two.  Skeleton:
    three vertices, three boundary edges, two internal edges, two
    boundary faces.
    """
    return join_faces(
        [
            (0, 3, 0, 2, Perm4("0132")),
            (0, 0, 1, 0, Perm4("0123")),
            (0, 1, 1, 1, Perm4("0123")),
        ],
        2,
    )


_BLOCK_GLUINGS = (
    # pillow on tetrahedra 0, 1
    (0, 3, 0, 2, "0132"),
    (0, 0, 1, 0, "0123"),
    (0, 1, 1, 1, "0123"),
    # tetrahedra 2 and 3 each folded along two of their own faces
    (2, 3, 2, 2, "0132"),
    (3, 3, 3, 2, "0132"),
    # pillow boundary wrapped by the folded tetrahedra
    (1, 2, 2, 1, "2013"),
    (1, 3, 3, 1, "2031"),
)


def four_block() -> Block:
    """The four-tetrahedron block: a ball with the two-triangle boundary.

    A pillow buried around the single internal vertex, wrapped by two
    folded tetrahedra.  Boundary triangle (2, 0) has corners (R, P, P)
    at labels (1, 2, 3); triangle (3, 0) has corners (Q, P, P).  Its
    projective solution space has exactly 17 admissible vertices.
    """
    tri = join_faces(
        [(t, f, t2, f2, Perm4(p)) for (t, f, t2, f2, p) in _BLOCK_GLUINGS], 4
    )
    boundary = BlockBoundary(
        triangles=((2, 0), (3, 0)),
        names=(
            ((1, "R"), (2, "P"), (3, "P")),
            ((1, "Q"), (2, "P"), (3, "P")),
        ),
    )
    return Block(tri, boundary)


def _derive_block_boundary(tri: Triangulation) -> BlockBoundary:
    """Recover the block boundary structure of a triangulation.

    Raises GluingError when the boundary is not two triangles with
    three boundary vertex classes in the doubled-corner shape.
    """
    sk = tri.skeleton
    faces = tri.boundary_faces()
    if len(faces) != 2:
        raise GluingError(f"expected 2 boundary faces, found {len(faces)}")
    if len(sk.boundary_vertex_classes) != 3:
        raise GluingError(
            f"expected 3 boundary vertex classes, found {len(sk.boundary_vertex_classes)}"
        )
    per_face = []
    for t, f in faces:
        classes = [sk.vertex_class_of(t, v) for v in FACE_CORNERS[f]]
        doubled = {c for c in classes if classes.count(c) == 2}
        if len(doubled) != 1:
            raise GluingError(
                f"boundary face ({t}, {f}) lacks the doubled-corner shape"
            )
        per_face.append((classes, next(iter(doubled))))
    (classes_a, p_a), (classes_b, p_b) = per_face
    if p_a != p_b:
        raise GluingError("boundary triangles do not share the doubled vertex")
    p_class = p_a
    names = []
    for (t, f), (classes, _) in zip(faces, per_face):
        corner_names = []
        for v, c in zip(FACE_CORNERS[f], classes):
            if c == p_class:
                corner_names.append((v, "P"))
            elif (t, f) == faces[0]:
                corner_names.append((v, "R"))
            else:
                corner_names.append((v, "Q"))
        names.append(tuple(corner_names))
    return BlockBoundary(triangles=(faces[0], faces[1]), names=tuple(names))


def _corner_bijections(
    fa: int, fb: int
) -> list[Perm4]:
    """The six gluing permutations matching face ``fa`` onto face ``fb``,
    ordered by their image strings."""
    out = []
    for image in permutations(FACE_CORNERS[fb]):
        images = [0, 0, 0, 0]
        images[fa] = fb
        for v, w in zip(FACE_CORNERS[fa], image):
            images[v] = w
        out.append(Perm4(images))
    out.sort(key=lambda p: p.string())
    return out


def join_blocks(first: Block, second: Block, identification: int) -> Block:
    """Glue a boundary triangle of ``first`` to one of ``second``.

    The R-side triangle of ``first`` meets the Q-side triangle of
    ``second`` under one of the six corner bijections, numbered 1..6 in
    lexicographic order of their permutation strings.  The result is a
    block again: two boundary triangles in the same shape.
    """
    if not 1 <= identification <= 6:
        raise ValueError(f"identification must be 1..6, got {identification}")
    combined = disjoint_union(first.triangulation, second.triangulation)
    offset = first.triangulation.n
    ta, fa = first.boundary.triangles[0]
    tb, fb = second.boundary.triangles[1]
    tb += offset
    perm = _corner_bijections(fa, fb)[identification - 1]
    joined = with_gluings(combined, [(ta, fa, tb, fb, perm)])
    return Block(joined, _derive_block_boundary(joined))


def close_block(block: Block, identification: int) -> Triangulation:
    """Identify the two boundary triangles of a block with each other.

    ``identification`` numbers the six corner bijections from the
    R-side triangle onto the Q-side triangle; only the three
    orientation-preserving ones are accepted, the rest are rejected
    with an OrientationError.
    """
    if not 1 <= identification <= 6:
        raise ValueError(f"identification must be 1..6, got {identification}")
    tri = block.triangulation
    (ta, fa), (tb, fb) = block.boundary.triangles
    perm = _corner_bijections(fa, fb)[identification - 1]
    signs = orientation_signs(tri)
    if signs is None:
        raise OrientationError("block is not orientable")
    if signs[ta] * signs[tb] * perm.sign() != -1:
        raise OrientationError(
            f"identification {identification} (permutation {perm.string()}) "
            "reverses orientation"
        )
    return with_gluings(tri, [(ta, fa, tb, fb, perm)])


def _twist_gluing(tri: Triangulation, src: tuple[int, int], src_names: dict[int, str],
                  dst: tuple[int, int], dst_names: dict[int, str]) -> Perm4:
    """The orientation-preserving twisted identification of two block
    triangles: R maps to a P corner and one P corner maps to Q, so all
    named boundary vertices become identified."""
    ta, fa = src
    tb, fb = dst
    signs = orientation_signs(tri)
    if signs is None:
        raise OrientationError("triangulation is not orientable")
    candidates = []
    for perm in _corner_bijections(fa, fb):
        if any(
            src_names[v] == "R" and dst_names[perm[v]] != "P"
            for v in FACE_CORNERS[fa]
        ):
            continue
        q_hits = sum(
            1
            for v in FACE_CORNERS[fa]
            if src_names[v] == "P" and dst_names[perm[v]] == "Q"
        )
        if q_hits != 1:
            continue
        if signs[ta] * signs[tb] * perm.sign() == -1:
            candidates.append(perm)
    if not candidates:
        raise OrientationError("no orientation-preserving twist exists")
    return min(candidates, key=lambda p: p.string())


def x_k(k: int) -> Triangulation:
    """Cyclic chain of ``k`` four-blocks, closed up into a 3-sphere.

    Blocks occupy tetrahedra 4i..4i+3.  The R-side triangle of block i
    is glued to the Q-side triangle of block i+1 (indices mod k) by the
    orientation-preserving twist that merges all named boundary
    vertices, leaving k + 1 vertex classes in total.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    base = four_block()
    tri = base.triangulation
    for _ in range(k - 1):
        tri = disjoint_union(tri, base.triangulation)
    bb = base.boundary
    src_names = bb.corner_names(0)
    dst_names = bb.corner_names(1)
    (ta, fa), (tb, fb) = bb.triangles
    pairs = []
    for i in range(k):
        j = (i + 1) % k
        tri_step = tri if not pairs else with_gluings(tri, pairs)
        perm = _twist_gluing(
            tri_step,
            (4 * i + ta, fa),
            src_names,
            (4 * j + tb, fb),
            dst_names,
        )
        pairs.append((4 * i + ta, fa, 4 * j + tb, fb, perm))
    return with_gluings(tri, pairs)


def s2xs1() -> Triangulation:
    """A two-tetrahedron triangulation of the product of a sphere and a circle.

    The back two faces of each tetrahedron are identified with a twist
    and the front faces of the two tetrahedra are identified directly:
    one vertex, three edges, first homology Z.
    """
    return join_faces(
        [
            (0, 2, 0, 3, Perm4("1230")),
            (1, 2, 1, 3, Perm4("1230")),
            (0, 0, 1, 0, Perm4("0123")),
            (0, 1, 1, 1, Perm4("0123")),
        ],
        2,
    )
