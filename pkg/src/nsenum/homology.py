"""First homology of the quotient cell complex, via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .triangulation import (
    DIRECTED_EDGES,
    FACE_CORNERS,
    TET_EDGES,
    Triangulation,
    _UnionFind,
)

_DIR_INDEX = {ab: i for i, ab in enumerate(DIRECTED_EDGES)}


@dataclass(frozen=True)
class HomologyGroup:
    """A finitely generated abelian group Z^rank + Z/d1 + Z/d2 + ...

    Invariant factors exceed 1 and divide successively.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for i, d in enumerate(self.torsion):
            if d <= 1:
                raise ValueError(f"invariant factor {d} out of range")
            if i and d % self.torsion[i - 1] != 0:
                raise ValueError("invariant factors must divide successively")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def smith_normal_form(matrix: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the non-negative invariant factors in divisibility order,
    including trailing zeros up to min(rows, cols).  Naive row/column
    reduction choosing the smallest-magnitude pivot; fine at the matrix
    sizes this package produces.
    """
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    top = 0
    while top < min(rows, cols):
        # Smallest-magnitude nonzero entry in the remaining submatrix.
        pr = pc = -1
        best = None
        for i in range(top, rows):
            ai = a[i]
            for j in range(top, cols):
                v = ai[j]
                if v and (best is None or abs(v) < best):
                    best, pr, pc = abs(v), i, j
        if best is None:
            break
        a[top], a[pr] = a[pr], a[top]
        if pc != top:
            for row in a:
                row[top], row[pc] = row[pc], row[top]
        pivot = a[top][top]
        dirty = False
        for i in range(top + 1, rows):
            q = a[i][top] // pivot
            if q:
                ai, at = a[i], a[top]
                for j in range(top, cols):
                    ai[j] -= q * at[j]
            if a[i][top]:
                dirty = True
        for j in range(top + 1, cols):
            q = a[top][j] // pivot
            if q:
                for i in range(top, rows):
                    a[i][j] -= q * a[i][top]
            if a[top][j]:
                dirty = True
        if dirty:
            continue  # remainders left; pick a smaller pivot next sweep
        # Pivot must divide the rest of the submatrix for divisibility order.
        offender = None
        for i in range(top + 1, rows):
            ai = a[i]
            for j in range(top + 1, cols):
                if ai[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            ao, at = a[offender], a[top]
            for j in range(top, cols):
                at[j] += ao[j]
            continue
        diag.append(abs(pivot))
        top += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return diag


def integer_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix, by fraction-free Gaussian elimination."""
    a = [row[:] for row in matrix if any(row)]
    cols = len(matrix[0]) if matrix else 0
    rank = 0
    for j in range(cols):
        pivot_row = None
        for i in range(rank, len(a)):
            if a[i][j]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pv = a[rank][j]
        for i in range(rank + 1, len(a)):
            v = a[i][j]
            if v:
                ai, ar = a[i], a[rank]
                a[i] = [pv * x - v * y for x, y in zip(ai, ar)]
        rank += 1
        if rank == len(a):
            break
    return rank


def _boundary_maps(tri: Triangulation) -> tuple[list[list[int]], list[list[int]]]:
    """Cellular boundary matrices d1 (V x E) and d2 (E x F).

    Each edge class is oriented by its lexicographically smallest
    directed member; a directed tetrahedron edge then carries sign +1
    when it lies in the same directed class as that representative and
    -1 otherwise.  Requires all edge classes valid, else signs are
    ill-defined.
    """
    sk = tri.skeleton
    if not all(sk.edge_is_valid):
        raise ValueError("homology needs a triangulation with valid edges")

    euf = _UnionFind(12 * tri.n)
    for t, f, t2, f2, p in tri.gluing_pairs():
        corners = FACE_CORNERS[f]
        for a in corners:
            for b in corners:
                if a != b:
                    euf.union(
                        12 * t + _DIR_INDEX[(a, b)],
                        12 * t2 + _DIR_INDEX[(p[a], p[b])],
                    )

    # Root of the forward direction of each edge class representative.
    forward_root = [
        euf.find(12 * cls[0][0] + _DIR_INDEX[(cls[0][1], cls[0][2])])
        for cls in sk.edge_classes
    ]

    def directed_sign(t: int, a: int, b: int) -> tuple[int, int]:
        """(edge class index, +-1) for the directed edge a->b of tet t."""
        idx = sk.edge_class_of(t, a, b)
        root = euf.find(12 * t + _DIR_INDEX[(a, b)])
        return idx, (1 if root == forward_root[idx] else -1)

    nv, ne, nf = sk.vertex_count, sk.edge_count, sk.face_count
    d1 = [[0] * ne for _ in range(nv)]
    for j, cls in enumerate(sk.edge_classes):
        t, a, b = cls[0]
        d1[sk.vertex_class_of(t, b)][j] += 1
        d1[sk.vertex_class_of(t, a)][j] -= 1

    d2 = [[0] * nf for _ in range(ne)]
    for j, cls in enumerate(sk.face_classes):
        t, f = cls[0]
        v0, v1, v2 = FACE_CORNERS[f]
        for (a, b), sgn in (((v1, v2), 1), ((v0, v2), -1), ((v0, v1), 1)):
            idx, orient = directed_sign(t, a, b)
            d2[idx][j] += sgn * orient
    return d1, d2


def homology_h1(tri: Triangulation) -> HomologyGroup:
    """First homology of the quotient space of a valid triangulation."""
    if tri.n == 0:
        return HomologyGroup(0)
    d1, d2 = _boundary_maps(tri)
    r1 = integer_rank(d1)
    diag2 = smith_normal_form(d2)
    r2 = sum(1 for d in diag2 if d)
    rank = len(d2) - r1 - r2
    torsion = tuple(d for d in diag2 if d > 1)
    return HomologyGroup(rank, torsion)
