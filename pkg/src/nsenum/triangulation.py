"""Generalised 3-manifold triangulations.

A triangulation is a set of ``n`` abstract tetrahedra, some of whose
``4n`` triangular faces are affinely identified in pairs.  Face ``f`` of
a tetrahedron is the face opposite vertex ``f``; a gluing of face ``f``
of tetrahedron ``t`` onto face ``f2`` of ``t2`` is recorded as a vertex
relabelling ``p`` with ``p[f] == f2``.  Multiple vertices or edges of a
single tetrahedron may become identified; the quotient space is a
3-manifold exactly when the skeleton checks below succeed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .perm import Perm4

Corner = tuple[int, int]  # (tetrahedron, vertex label)

#: Faces of a tetrahedron containing a given vertex label.
FACES_AT_VERTEX = tuple(
    tuple(f for f in range(4) if f != v) for v in range(4)
)
#: Vertex labels lying on a given face (the three labels other than the face's).
FACE_CORNERS = tuple(
    tuple(v for v in range(4) if v != f) for f in range(4)
)
#: The six unordered edges of a tetrahedron.
TET_EDGES = tuple(
    (a, b) for a in range(4) for b in range(a + 1, 4)
)
#: The twelve ordered (directed) edges, and their index lookup.
DIRECTED_EDGES = tuple(
    (a, b) for a in range(4) for b in range(4) if a != b
)
_DIR_INDEX = {ab: i for i, ab in enumerate(DIRECTED_EDGES)}


class GluingError(ValueError):
    """A gluing table violates the structural rules.

    Carries the offending (tetrahedron, face) when one can be named.
    """

    def __init__(self, message: str, tet: int | None = None, face: int | None = None):
        if tet is not None:
            message = f"tetrahedron {tet}, face {face}: {message}"
        super().__init__(message)
        self.tet = tet
        self.face = face


class _UnionFind:
    """Plain union-find over 0..size-1 with union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra


@dataclass(frozen=True)
class Skeleton:
    """Face/edge/vertex identifications induced by the gluings.

    Classes are listed in order of their smallest member, memberssorted.
    ``vertex_link_euler`` holds the Euler characteristic of each vertex
    link, built from one corner triangle per tetrahedron corner; for a
    valid triangulation an internal link is a sphere (chi 2) and a
    boundary link a disc (chi 1).  An edge class is invalid when some
    identification carries an edge onto itself with its endpoints
    swapped.
    """

    vertex_classes: tuple[tuple[Corner, ...], ...]
    vertex_is_boundary: tuple[bool, ...]
    vertex_link_euler: tuple[int, ...]
    edge_classes: tuple[tuple[tuple[int, int, int], ...], ...]
    edge_is_boundary: tuple[bool, ...]
    edge_is_valid: tuple[bool, ...]
    face_classes: tuple[tuple[tuple[int, int], ...], ...]
    face_is_boundary: tuple[bool, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_classes)

    @property
    def edge_count(self) -> int:
        return len(self.edge_classes)

    @property
    def face_count(self) -> int:
        return len(self.face_classes)

    def vertex_class_of(self, tet: int, vertex: int) -> int:
        return self._vertex_lookup[(tet, vertex)]

    def edge_class_of(self, tet: int, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        return self._edge_lookup[(tet, a, b)]

    @cached_property
    def _vertex_lookup(self) -> dict[Corner, int]:
        return {
            corner: i
            for i, cls in enumerate(self.vertex_classes)
            for corner in cls
        }

    @cached_property
    def _edge_lookup(self) -> dict[tuple[int, int, int], int]:
        return {
            member: i
            for i, cls in enumerate(self.edge_classes)
            for member in cls
        }

    @cached_property
    def boundary_vertex_classes(self) -> tuple[int, ...]:
        return tuple(
            i for i, b in enumerate(self.vertex_is_boundary) if b
        )


class Triangulation:
    """An immutable gluing table over ``n`` tetrahedra.

    ``gluings`` maps ``(tet, face)`` to ``(tet2, face2, perm)`` for glued
    faces and omits boundary faces.  The table always stores both
    directions of every gluing, with mutually inverse permutations.
    """

    __slots__ = ("n", "_table", "__dict__")

    def __init__(self, n: int, gluings: Mapping[tuple[int, int], tuple[int, int, Perm4]]):
        if n < 0:
            raise GluingError(f"negative tetrahedron count {n}")
        table: list[list[tuple[int, int, Perm4] | None]] = [
            [None] * 4 for _ in range(n)
        ]
        for (t, f), dest in gluings.items():
            t2, f2, p = dest
            if not isinstance(p, Perm4):
                p = Perm4(p)
            if not (0 <= t < n and 0 <= f < 4):
                raise GluingError(f"face reference out of range", tet=t, face=f)
            if not (0 <= t2 < n and 0 <= f2 < 4):
                raise GluingError(
                    f"gluing target ({t2}, {f2}) out of range", tet=t, face=f
                )
            if p[f] != f2:
                raise GluingError(
                    f"permutation {p.string()} does not carry face {f} to face {f2}",
                    tet=t, face=f,
                )
            if (t2, f2) == (t, f):
                raise GluingError("face glued to itself", tet=t, face=f)
            table[t][f] = (t2, f2, p)
        # Involution: the reverse entry must be present and inverse.
        for t in range(n):
            for f in range(4):
                entry = table[t][f]
                if entry is None:
                    continue
                t2, f2, p = entry
                back = table[t2][f2]
                if back is None:
                    raise GluingError(
                        f"reverse of gluing to ({t2}, {f2}) is missing",
                        tet=t, face=f,
                    )
                bt, bf, bp = back
                if (bt, bf) != (t, f) or bp != p.inverse():
                    raise GluingError(
                        f"reverse entry at ({t2}, {f2}) does not invert this gluing",
                        tet=t, face=f,
                    )
        self.n = n
        self._table = tuple(tuple(row) for row in table)

    # -- basic queries ------------------------------------------------

    def gluing(self, tet: int, face: int) -> tuple[int, int, Perm4] | None:
        """The gluing of the given face, or None for a boundary face."""
        return self._table[tet][face]

    def gluing_pairs(self) -> list[tuple[int, int, int, int, Perm4]]:
        """Each glued face pair once, as (t, f, t2, f2, perm) with (t,f) minimal."""
        out = []
        for t in range(self.n):
            for f in range(4):
                entry = self._table[t][f]
                if entry is None:
                    continue
                t2, f2, p = entry
                if (t, f) <= (t2, f2):
                    out.append((t, f, t2, f2, p))
        return out

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [
            (t, f)
            for t in range(self.n)
            for f in range(4)
            if self._table[t][f] is None
        ]

    def is_closed(self) -> bool:
        """True when every face is glued."""
        return all(
            self._table[t][f] is not None
            for t in range(self.n)
            for f in range(4)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.n == other.n
            and self._table == other._table
        )

    def __hash__(self) -> int:
        return hash((self.n, self._table))

    def __repr__(self) -> str:
        glued = sum(1 for t in range(self.n) for f in range(4) if self._table[t][f])
        return f"<Triangulation n={self.n}, {glued // 2} gluings, {4 * self.n - glued} boundary faces>"

    # -- skeleton -----------------------------------------------------

    @cached_property
    def skeleton(self) -> Skeleton:
        """Vertex/edge/face classes with boundary, validity and link data."""
        return _compute_skeleton(self)

    def euler_characteristic(self) -> int:
        """V - E + F - n of the quotient cell complex."""
        sk = self.skeleton
        return sk.vertex_count - sk.edge_count + sk.face_count - self.n

    def is_valid_3manifold(self) -> bool:
        """True when the quotient space is a 3-manifold (maybe with boundary).

        Requires every edge class to avoid reversed self-identification,
        every internal vertex link to be a sphere and every boundary
        vertex link to be a disc.
        """
        sk = self.skeleton
        if not all(sk.edge_is_valid):
            return False
        for boundary, chi in zip(sk.vertex_is_boundary, sk.vertex_link_euler):
            if chi != (1 if boundary else 2):
                return False
        return True

    # -- relabelling and assembly --------------------------------------

    def relabelled(self, tet_map: list[int], vertex_maps: list[Perm4]) -> "Triangulation":
        """The isomorphic triangulation with tetrahedron ``t`` renamed to
        ``tet_map[t]`` and its vertices relabelled by ``vertex_maps[t]``."""
        gluings = {}
        for t in range(self.n):
            vm = vertex_maps[t]
            for f in range(4):
                entry = self._table[t][f]
                if entry is None:
                    continue
                t2, f2, p = entry
                vm2 = vertex_maps[t2]
                gluings[(tet_map[t], vm[f])] = (
                    tet_map[t2],
                    vm2[f2],
                    vm2 * p * vm.inverse(),
                )
        return Triangulation(self.n, gluings)

    # -- text format ----------------------------------------------------

    def to_text(self) -> str:
        """Serialise in the line-based gluing table format.

        First line ``tri <n>``; then one line per tetrahedron with four
        whitespace-separated tokens, ``b`` for a boundary face or
        ``<t>:<f>:<perm>`` where the permutation is the four-character
        image string.
        """
        lines = [f"tri {self.n}"]
        for t in range(self.n):
            tokens = []
            for f in range(4):
                entry = self._table[t][f]
                if entry is None:
                    tokens.append("b")
                else:
                    t2, f2, p = entry
                    tokens.append(f"{t2}:{f2}:{p.string()}")
            lines.append(" ".join(tokens))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        """Parse the format produced by :meth:`to_text`, validating fully."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GluingError("empty triangulation file")
        header = lines[0].split()
        if len(header) != 2 or header[0] != "tri":
            raise GluingError(f"bad header line: {lines[0]!r}")
        try:
            n = int(header[1])
        except ValueError:
            raise GluingError(f"bad tetrahedron count: {header[1]!r}") from None
        if len(lines) != n + 1:
            raise GluingError(
                f"expected {n} gluing lines after the header, found {len(lines) - 1}"
            )
        gluings = {}
        for t in range(n):
            tokens = lines[t + 1].split()
            if len(tokens) != 4:
                raise GluingError("expected 4 face tokens", tet=t, face=None)
            for f, token in enumerate(tokens):
                if token == "b":
                    continue
                parts = token.split(":")
                if len(parts) != 3:
                    raise GluingError(f"bad gluing token {token!r}", tet=t, face=f)
                try:
                    t2, f2 = int(parts[0]), int(parts[1])
                    p = Perm4(parts[2])
                except ValueError as exc:
                    raise GluingError(
                        f"bad gluing token {token!r}: {exc}", tet=t, face=f
                    ) from None
                gluings[(t, f)] = (t2, f2, p)
        return cls(n, gluings)


def make_triangulation(
    n: int,
    gluings: Iterable[tuple[int, int, int, int, Perm4]] | Mapping,
) -> Triangulation:
    """Build a triangulation from an explicit gluing table.

    ``gluings`` lists entries ``(t, f, t2, f2, perm)``; the table must
    contain both directions of every gluing (the reverse with the
    inverse permutation), and is rejected otherwise with the offending
    face named.
    """
    if isinstance(gluings, Mapping):
        mapping = dict(gluings)
    else:
        mapping = {}
        for t, f, t2, f2, p in gluings:
            key = (t, f)
            value = (t2, f2, p if isinstance(p, Perm4) else Perm4(p))
            if key in mapping and mapping[key] != value:
                raise GluingError("face glued twice", tet=t, face=f)
            mapping[key] = value
    return Triangulation(n, mapping)


def join_faces(
    pairs: Iterable[tuple[int, int, int, int, Perm4]], n: int
) -> Triangulation:
    """Build a triangulation listing each gluing once; reverses are added."""
    mapping: dict[tuple[int, int], tuple[int, int, Perm4]] = {}
    for t, f, t2, f2, p in pairs:
        if not isinstance(p, Perm4):
            p = Perm4(p)
        for key, value in (((t, f), (t2, f2, p)), ((t2, f2), (t, f, p.inverse()))):
            if key in mapping and mapping[key] != value:
                raise GluingError("face glued twice", tet=key[0], face=key[1])
            mapping[key] = value
    return Triangulation(n, mapping)


def with_gluings(
    tri: Triangulation, pairs: Iterable[tuple[int, int, int, int, Perm4]]
) -> Triangulation:
    """A new triangulation extending ``tri`` by the given gluings (one
    entry per pair; reverses are added)."""
    mapping = {}
    for t in range(tri.n):
        for f in range(4):
            entry = tri.gluing(t, f)
            if entry is not None:
                mapping[(t, f)] = entry
    for t, f, t2, f2, p in pairs:
        if not isinstance(p, Perm4):
            p = Perm4(p)
        for key, value in (((t, f), (t2, f2, p)), ((t2, f2), (t, f, p.inverse()))):
            if key in mapping:
                raise GluingError("face already glued", tet=key[0], face=key[1])
            mapping[key] = value
    return Triangulation(tri.n, mapping)


def disjoint_union(a: Triangulation, b: Triangulation) -> Triangulation:
    """The two triangulations side by side, ``b``'s tetrahedra shifted up."""
    mapping = {}
    for t in range(a.n):
        for f in range(4):
            entry = a.gluing(t, f)
            if entry is not None:
                mapping[(t, f)] = entry
    for t in range(b.n):
        for f in range(4):
            entry = b.gluing(t, f)
            if entry is not None:
                t2, f2, p = entry
                mapping[(t + a.n, f)] = (t2 + a.n, f2, p)
    return Triangulation(a.n + b.n, mapping)


def connected_components(tri: Triangulation) -> list[list[int]]:
    """Tetrahedron indices grouped by gluing connectivity, each sorted."""
    uf = _UnionFind(max(tri.n, 1))
    for t, f, t2, f2, p in tri.gluing_pairs():
        uf.union(t, t2)
    groups: dict[int, list[int]] = {}
    for t in range(tri.n):
        groups.setdefault(uf.find(t), []).append(t)
    return sorted(groups.values())


def orientation_signs(tri: Triangulation) -> list[int] | None:
    """A coherent orientation (+-1 per tetrahedron), or None if there is none.

    A gluing with permutation ``p`` is orientation-coherent exactly when
    ``sign(tet) * sign(tet2) * p.sign() == -1``; the first tetrahedron of
    each connected component is assigned +1.
    """
    signs: list[int | None] = [None] * tri.n
    for start in range(tri.n):
        if signs[start] is not None:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                entry = tri.gluing(t, f)
                if entry is None:
                    continue
                t2, f2, p = entry
                required = -signs[t] * p.sign()
                if signs[t2] is None:
                    signs[t2] = required
                    stack.append(t2)
                elif signs[t2] != required:
                    return None
    return [s if s is not None else 1 for s in signs]


def _compute_skeleton(tri: Triangulation) -> Skeleton:
    n = tri.n
    pairs = tri.gluing_pairs()

    # Vertex classes: corners identified across every gluing.
    vuf = _UnionFind(4 * n)
    for t, f, t2, f2, p in pairs:
        for v in FACE_CORNERS[f]:
            vuf.union(4 * t + v, 4 * t2 + p[v])

    # Directed edge classes drive both edge validity and link corners.
    euf = _UnionFind(12 * n)
    for t, f, t2, f2, p in pairs:
        corners = FACE_CORNERS[f]
        for a in corners:
            for b in corners:
                if a != b:
                    euf.union(
                        12 * t + _DIR_INDEX[(a, b)],
                        12 * t2 + _DIR_INDEX[(p[a], p[b])],
                    )

    # Group the undirected edges: an edge class pairs the two directed
    # classes of its members, and is invalid when those coincide.
    edge_groups: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for t in range(n):
        for a, b in TET_EDGES:
            r1 = euf.find(12 * t + _DIR_INDEX[(a, b)])
            r2 = euf.find(12 * t + _DIR_INDEX[(b, a)])
            key = (min(r1, r2), max(r1, r2))
            edge_groups.setdefault(key, []).append((t, a, b))
    edge_classes = sorted(tuple(sorted(v)) for v in edge_groups.values())
    edge_is_valid = []
    edge_is_boundary = []
    for cls in edge_classes:
        t, a, b = cls[0]
        r1 = euf.find(12 * t + _DIR_INDEX[(a, b)])
        r2 = euf.find(12 * t + _DIR_INDEX[(b, a)])
        edge_is_valid.append(r1 != r2)
        edge_is_boundary.append(
            any(
                tri.gluing(t, f) is None
                for (t, a, b) in cls
                for f in range(4)
                if f != a and f != b
            )
        )

    # Vertex classes with boundary flags and link Euler characteristics.
    vertex_groups: dict[int, list[Corner]] = {}
    for t in range(n):
        for v in range(4):
            vertex_groups.setdefault(vuf.find(4 * t + v), []).append((t, v))
    vertex_classes = sorted(tuple(sorted(v)) for v in vertex_groups.values())
    vertex_is_boundary = []
    vertex_link_euler = []
    for cls in vertex_classes:
        corners = len(cls)
        # Unglued (corner, face) incidences: boundary sides of the link.
        b = sum(
            1
            for (t, v) in cls
            for f in FACES_AT_VERTEX[v]
            if tri.gluing(t, f) is None
        )
        # Link vertices: directed edge classes whose tail lies in this class.
        tails = {
            euf.find(12 * t + _DIR_INDEX[(v, w)])
            for (t, v) in cls
            for w in range(4)
            if w != v
        }
        # Link triangles each have 3 sides; glued sides pair up.
        link_edges = (3 * corners + b) // 2
        vertex_is_boundary.append(b > 0)
        vertex_link_euler.append(len(tails) - link_edges + corners)

    # Face classes are just the glued pairs plus boundary singletons.
    face_classes = []
    face_is_boundary = []
    for t in range(n):
        for f in range(4):
            entry = tri.gluing(t, f)
            if entry is None:
                face_classes.append(((t, f),))
                face_is_boundary.append(True)
            else:
                t2, f2, p = entry
                if (t, f) <= (t2, f2):
                    face_classes.append(((t, f), (t2, f2)))
                    face_is_boundary.append(False)
    order = sorted(range(len(face_classes)), key=lambda i: face_classes[i])
    face_classes = [face_classes[i] for i in order]
    face_is_boundary = [face_is_boundary[i] for i in order]

    return Skeleton(
        vertex_classes=tuple(vertex_classes),
        vertex_is_boundary=tuple(vertex_is_boundary),
        vertex_link_euler=tuple(vertex_link_euler),
        edge_classes=tuple(edge_classes),
        edge_is_boundary=tuple(edge_is_boundary),
        edge_is_valid=tuple(edge_is_valid),
        face_classes=tuple(face_classes),
        face_is_boundary=tuple(face_is_boundary),
    )
