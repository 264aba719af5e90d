"""Vertex normal surface enumeration over the cone x >= 0, Mx = 0.

The enumerator runs a filtered double description method: starting from
the unit rays of the non-negative orthant it intersects one equation
hyperplane at a time, keeping the rays on the hyperplane and combining
adjacent (positive, negative) pairs exactly.  Rays violating the
quadrilateral constraints are discarded the moment they appear; this is
sound because the support of a combination is the union of its parents'
supports and admissibility is monotone under shrinking supports, so a
discarded ray can never contribute to an admissible one.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .coords import MatchingSystem, is_admissible, matching_matrix
from .triangulation import Triangulation


class EnumerationLimitError(RuntimeError):
    """A configured resource limit was hit; distinct from mathematical failure."""


@dataclass(frozen=True)
class Ray:
    """A primitive extremal ray: coprime coordinates, not all zero."""

    vector: tuple[int, ...]
    zero_set: frozenset[int]

    @staticmethod
    def from_vector(vector: Sequence[int]) -> "Ray":
        vector = tuple(vector)
        g = 0
        for v in vector:
            g = gcd(g, v)
        if g == 0:
            raise ValueError("zero vector is not a ray")
        if g != 1:
            vector = tuple(v // g for v in vector)
        return Ray(vector, frozenset(i for i, v in enumerate(vector) if v == 0))


@dataclass
class EnumerationStats:
    hyperplanes: int
    peak_rays: int
    seconds: float


@dataclass
class EnumerationResult:
    """Sorted admissible extremal rays, their count, and run statistics."""

    surfaces: tuple[Ray, ...]
    sigma: int
    stats: EnumerationStats


def _quad_conflict_masks(n_tets: int) -> tuple[int, int]:
    """(bit0 mask, full mask) for 3-bit-per-tetrahedron quad usage masks."""
    m0 = 0
    for t in range(n_tets):
        m0 |= 1 << (3 * t)
    return m0, (1 << (3 * n_tets)) - 1


def _quad_mask(vector: Sequence[int], n_tets: int) -> int:
    mask = 0
    for t in range(n_tets):
        base = 7 * t + 4
        for j in range(3):
            if vector[base + j]:
                mask |= 1 << (3 * t + j)
    return mask


def _sorted_rows(rows: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    # Fixed insertion order: fewest nonzero entries first, ties by the
    # row itself.  Order only affects intermediate ray counts.
    return sorted(
        (tuple(r) for r in rows),
        key=lambda r: (sum(1 for c in r if c), r),
    )


def _filtered_dd(
    dim: int,
    rows: list[tuple[int, ...]],
    n_tets: int,
    max_rays: int | None,
) -> tuple[list[tuple[int, ...]], EnumerationStats]:
    start_time = time.perf_counter()
    m0, _ = _quad_conflict_masks(n_tets)

    vecs: list[tuple[int, ...]] = []
    zmasks: list[int] = []
    qmasks: list[int] = []
    for i in range(dim):
        vec = tuple(1 if j == i else 0 for j in range(dim))
        vecs.append(vec)
        zmasks.append(((1 << dim) - 1) ^ (1 << i))
        qmasks.append(_quad_mask(vec, n_tets))

    peak = len(vecs)
    for row in _sorted_rows(rows):
        sparse = [(i, c) for i, c in enumerate(row) if c]
        if not sparse:
            continue
        dots = []
        for vec in vecs:
            d = 0
            for i, c in sparse:
                d += c * vec[i]
            dots.append(d)
        pos = [k for k, d in enumerate(dots) if d > 0]
        neg = [k for k, d in enumerate(dots) if d < 0]
        if not pos and not neg:
            continue
        keep = [k for k, d in enumerate(dots) if d == 0]

        new_vecs = [vecs[k] for k in keep]
        new_zmasks = [zmasks[k] for k in keep]
        new_qmasks = [qmasks[k] for k in keep]

        if pos and neg:
            # Per-coordinate bitsets over current rays, for the
            # combinatorial adjacency test: a witness for a candidate
            # pair is any third ray vanishing on their common zero set.
            count = len(vecs)
            all_mask = (1 << count) - 1
            nz = [0] * dim
            for k, vec in enumerate(vecs):
                bit = 1 << k
                for i, v in enumerate(vec):
                    if v:
                        nz[i] |= bit
            seen: dict[tuple[int, ...], None] = {}
            for kp in pos:
                zp = zmasks[kp]
                qp = qmasks[kp]
                dp = dots[kp]
                vp = vecs[kp]
                bit_p = 1 << kp
                for km in neg:
                    qc = qp | qmasks[km]
                    x = qc & m0
                    y = (qc >> 1) & m0
                    zq = (qc >> 2) & m0
                    if (x & y) | (x & zq) | (y & zq):
                        continue  # combined support breaks a quad constraint
                    z = zp & zmasks[km]
                    acc = 0
                    zz = z
                    while zz:
                        low = zz & -zz
                        acc |= nz[low.bit_length() - 1]
                        zz ^= low
                    witness = all_mask & ~acc & ~(bit_p | (1 << km))
                    if witness:
                        continue  # some other ray spans the common face
                    dm = dots[km]
                    vm = vecs[km]
                    cp, cm = -dm, dp
                    combo = tuple(
                        cp * a + cm * b for a, b in zip(vp, vm)
                    )
                    g = 0
                    for v in combo:
                        g = gcd(g, v)
                    if g > 1:
                        combo = tuple(v // g for v in combo)
                    if combo in seen:
                        continue
                    seen[combo] = None
                    new_vecs.append(combo)
                    new_zmasks.append(z)
                    new_qmasks.append(qc)

        vecs, zmasks, qmasks = new_vecs, new_zmasks, new_qmasks
        peak = max(peak, len(vecs))
        if max_rays is not None and len(vecs) > max_rays:
            raise EnumerationLimitError(
                f"ray count {len(vecs)} exceeded the limit of {max_rays}"
            )

    elapsed = time.perf_counter() - start_time
    stats = EnumerationStats(
        hyperplanes=len(rows), peak_rays=peak, seconds=elapsed
    )
    return sorted(vecs), stats


def enumerate_vertex_surfaces(
    tri: Triangulation,
    extra: MatchingSystem | Iterable[Sequence[int]] | None = None,
    max_rays: int | None = None,
) -> EnumerationResult:
    """All admissible extremal rays of {x >= 0, Mx = 0, Ex = 0}.

    ``M`` is the matching system of the triangulation and ``E`` any
    additional homogeneous rows.  Each surface is returned as a
    primitive integer vector; the zero vector is never a surface.
    """
    system = matching_matrix(tri)
    rows = list(system.rows)
    if extra is not None:
        extra_rows = extra.rows if isinstance(extra, MatchingSystem) else extra
        for row in extra_rows:
            row = tuple(row)
            if len(row) != system.dim:
                raise ValueError(
                    f"extra row has length {len(row)}, expected {system.dim}"
                )
            rows.append(row)
    vecs, stats = _filtered_dd(system.dim, rows, tri.n, max_rays)
    surfaces = tuple(Ray.from_vector(v) for v in vecs)
    return EnumerationResult(surfaces, len(surfaces), stats)


def sigma(tri: Triangulation) -> int:
    """The admissible vertex count of the projective solution space."""
    return enumerate_vertex_surfaces(tri).sigma


# -- independent oracle ------------------------------------------------


def _fraction_nullspace_dim1(
    rows: list[tuple[int, ...]], support: tuple[int, ...]
) -> tuple[int, ...] | None:
    """Solve the system restricted to ``support``.

    Returns a strictly positive primitive integer generator when the
    restricted nullspace has dimension exactly one and admits one, else
    None.
    """
    cols = len(support)
    mat = [[Fraction(row[i]) for i in support] for row in rows]
    mat = [row for row in mat if any(row)]
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][j]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][j]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][j]:
                factor = mat[i][j]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[r])]
        pivots.append(j)
        r += 1
    if cols - r != 1:
        return None
    free = next(j for j in range(cols) if j not in pivots)
    sol = [Fraction(0)] * cols
    sol[free] = Fraction(1)
    for row, pj in zip(mat, pivots):
        sol[pj] = -row[free]
    if any(x == 0 for x in sol):
        return None
    if all(x < 0 for x in sol):
        sol = [-x for x in sol]
    if any(x < 0 for x in sol):
        return None
    lcm = 1
    for x in sol:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in sol]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


def brute_force_vertices(
    tri: Triangulation, dimension_limit: int = 21
) -> EnumerationResult:
    """Admissible extremal rays by exhaustive zero-set candidacy.

    Independent of the double description path: every candidate support
    is tested by solving the matching system restricted to it, keeping
    supports whose restricted nullspace is one-dimensional with a
    strictly positive generator.  Supports of distinct extremal rays
    are incomparable, so supersets of accepted supports are skipped.
    Only usable on tiny instances.
    """
    start_time = time.perf_counter()
    system = matching_matrix(tri)
    dim = system.dim
    if dim > dimension_limit:
        raise EnumerationLimitError(
            f"brute force oracle refuses dimension {dim} > {dimension_limit}"
        )
    rows = list(system.rows)
    accepted: list[tuple[tuple[int, ...], frozenset[int]]] = []
    found_supports: list[frozenset[int]] = []
    seen: set[tuple[int, ...]] = set()
    for size in range(1, dim + 1):
        for support in itertools.combinations(range(dim), size):
            sset = frozenset(support)
            if any(s <= sset for s in found_supports):
                continue
            sol = _fraction_nullspace_dim1(rows, support)
            if sol is None:
                continue
            vector = [0] * dim
            for j, i in enumerate(support):
                vector[i] = sol[j]
            vector = tuple(vector)
            if not is_admissible(vector):
                # Extremal but inadmissible; still blocks supersets.
                found_supports.append(sset)
                continue
            if vector not in seen:
                seen.add(vector)
                accepted.append((vector, sset))
            found_supports.append(sset)
    vecs = sorted(v for v, _ in accepted)
    elapsed = time.perf_counter() - start_time
    surfaces = tuple(Ray.from_vector(v) for v in vecs)
    stats = EnumerationStats(hyperplanes=len(rows), peak_rays=len(vecs), seconds=elapsed)
    return EnumerationResult(surfaces, len(surfaces), stats)
