"""Isomorph-free census of closed 3-manifold triangulations.

The search runs in two phases: first the face pairings (4-regular
multigraphs on the tetrahedra, loops allowed, connected, up to
isomorphism), then a depth-first assignment of a gluing permutation to
every paired face.  Partial assignments are abandoned as soon as an
edge is identified with itself in reverse or a completed vertex link
fails to be a sphere, so only valid closed triangulations reach the
leaves.  Leaves are deduplicated by canonical signature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from multiprocessing import Pool

from .dd import enumerate_vertex_surfaces
from .isosig import iso_signature
from .perm import Perm4
from .triangulation import (
    DIRECTED_EDGES,
    FACE_CORNERS,
    FACES_AT_VERTEX,
    Triangulation,
)

#: Largest census size accepted without an explicit override.
DEFAULT_SIZE_LIMIT = 5

_DIR_INDEX = {ab: i for i, ab in enumerate(DIRECTED_EDGES)}

#: PERMS_BY_FACES[f][f2]: the six gluing permutations carrying face f
#: to face f2, sorted by image string.
_PERMS_BY_FACES = tuple(
    tuple(
        sorted(
            (
                p
                for p in Perm4.all()
                if p[f] == f2
            ),
            key=lambda p: p.string(),
        )
        for f2 in range(4)
    )
    for f in range(4)
)


class CensusLimitError(ValueError):
    """Requested census size exceeds the configured resource guard."""


@dataclass(frozen=True)
class CensusRecord:
    n: int
    ordinal: int
    iso_signature: str
    sigma: int


@dataclass(frozen=True)
class CensusStats:
    """Aggregate admissible vertex counts for one census size.

    The mean and variance are exact rationals; the displayed standard
    deviation is the population value (divide by the count).
    """

    n: int
    count: int
    mean: Fraction
    variance: Fraction
    min_sigma: int
    max_sigma: int

    @property
    def stddev(self) -> float:
        return sqrt(self.variance)

    def display(self) -> str:
        return (
            f"n={self.n} count={self.count} mean={float(self.mean):.2f} "
            f"stddev={self.stddev:.2f} min={self.min_sigma} max={self.max_sigma}"
        )


# -- phase 1: face pairings ---------------------------------------------


def _pairing_multigraphs(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Connected 4-regular multigraphs on n nodes, up to isomorphism.

    Each is a sorted tuple of edges (a, b) with a <= b; loops count two
    towards the degree.
    """
    results: set[tuple[tuple[int, int], ...]] = set()

    def extend(edges: list[tuple[int, int]], degree: list[int]):
        node = next((t for t in range(n) if degree[t] < 4), None)
        if node is None:
            if _connected(edges, n):
                results.add(_canonical_multigraph(edges, n))
            return
        for other in range(node, n):
            need = 2 if other == node else 1
            if degree[other] + need > 4 and other != node:
                continue
            if other == node and degree[node] + 2 > 4:
                continue
            edge = (node, other)
            if edges and edge < edges[-1]:
                continue  # build edge list in non-decreasing order
            degree[node] += 1
            degree[other] += 1
            edges.append(edge)
            extend(edges, degree)
            edges.pop()
            degree[node] -= 1
            degree[other] -= 1

    extend([], [0] * n)
    return sorted(results)


def _connected(edges: list[tuple[int, int]], n: int) -> bool:
    adj: dict[int, set[int]] = {t: set() for t in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _canonical_multigraph(
    edges: list[tuple[int, int]], n: int
) -> tuple[tuple[int, int], ...]:
    best = None
    for relabel in itertools.permutations(range(n)):
        mapped = sorted(
            (min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
            for a, b in edges
        )
        key = tuple(mapped)
        if best is None or key < best:
            best = key
    return best


def _pairing_faces(
    graph: tuple[tuple[int, int], ...], n: int
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Concrete face pairs realising a multigraph: each node's incident
    edge ends take its faces 0..3 in edge order."""
    next_face = [0] * n
    pairs = []
    for a, b in graph:
        fa = next_face[a]
        next_face[a] += 1
        fb = next_face[b]
        next_face[b] += 1
        pairs.append(((a, fa), (b, fb)))
    return sorted(pairs)


# -- phase 2: gluing permutations ----------------------------------------


class _SearchState:
    """Incremental skeleton state with rollback for the gluing DFS."""

    def __init__(self, n: int):
        self.n = n
        # union-find over 12n directed edges and 4n corners
        self.eparent = list(range(12 * n))
        self.esize = [1] * (12 * n)
        self.vparent = list(range(4 * n))
        self.vsize = [1] * (4 * n)
        # unglued (corner, face) incidences per vertex class root
        self.open_sides = [3] * (4 * n)
        self.log: list[tuple] = []

    def mark(self) -> int:
        return len(self.log)

    def rollback(self, mark: int) -> None:
        log = self.log
        while len(log) > mark:
            kind, *data = log.pop()
            if kind == 0:  # edge union
                child, = data
                parent = self.eparent[child]
                self.esize[parent] -= self.esize[child]
                self.eparent[child] = child
            elif kind == 1:  # vertex union
                child, = data
                parent = self.vparent[child]
                self.vsize[parent] -= self.vsize[child]
                self.open_sides[parent] -= self.open_sides[child]
                self.vparent[child] = child
            else:  # open-side decrement
                root, = data
                self.open_sides[root] += 1

    def efind(self, x: int) -> int:
        p = self.eparent
        while p[x] != x:
            x = p[x]
        return x

    def vfind(self, x: int) -> int:
        p = self.vparent
        while p[x] != x:
            x = p[x]
        return x

    def eunion(self, a: int, b: int) -> None:
        ra, rb = self.efind(a), self.efind(b)
        if ra == rb:
            return
        if self.esize[ra] < self.esize[rb]:
            ra, rb = rb, ra
        self.eparent[rb] = ra
        self.esize[ra] += self.esize[rb]
        self.log.append((0, rb))

    def vunion(self, a: int, b: int) -> int:
        ra, rb = self.vfind(a), self.vfind(b)
        if ra == rb:
            return ra
        if self.vsize[ra] < self.vsize[rb]:
            ra, rb = rb, ra
        self.vparent[rb] = ra
        self.vsize[ra] += self.vsize[rb]
        self.open_sides[ra] += self.open_sides[rb]
        self.log.append((1, rb))
        return ra

    def apply_gluing(
        self, t: int, f: int, t2: int, f2: int, p: Perm4
    ) -> bool:
        """Record one gluing; False when it creates an invalid edge or a
        completed vertex link that is not a sphere."""
        corners = FACE_CORNERS[f]
        base, base2 = 12 * t, 12 * t2
        for a in corners:
            for b in corners:
                if a < b:
                    self.eunion(
                        base + _DIR_INDEX[(a, b)], base2 + _DIR_INDEX[(p[a], p[b])]
                    )
                    self.eunion(
                        base + _DIR_INDEX[(b, a)], base2 + _DIR_INDEX[(p[b], p[a])]
                    )
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = corners[i], corners[j]
                if self.efind(base + _DIR_INDEX[(a, b)]) == self.efind(
                    base + _DIR_INDEX[(b, a)]
                ):
                    return False  # edge identified with itself reversed
        roots = set()
        for v in corners:
            roots.add(self.vunion(4 * t + v, 4 * t2 + p[v]))
        for v in corners:
            root = self.vfind(4 * t + v)
            self.open_sides[root] -= 1
            self.log.append((2, root))
            roots.add(root)
            root2 = self.vfind(4 * t2 + p[v])
            self.open_sides[root2] -= 1
            self.log.append((2, root2))
            roots.add(root2)
        for root in roots:
            root = self.vfind(root)
            if self.open_sides[root] == 0 and not self._link_is_sphere(root):
                return False
        return True

    def _link_is_sphere(self, root: int) -> bool:
        corners = [
            c for c in range(4 * self.n) if self.vfind(c) == root
        ]
        tails = set()
        for c in corners:
            t, v = divmod(c, 4)
            for w in range(4):
                if w != v:
                    tails.add(self.efind(12 * t + _DIR_INDEX[(v, w)]))
        # chi = tails - 3F/2 + F must equal 2 for a closed link
        return 2 * len(tails) - len(corners) == 4


def _search_pairing(
    n: int, pairs: list[tuple[tuple[int, int], tuple[int, int]]]
) -> dict[str, str]:
    """All valid closed triangulations over one face pairing, as a map
    from canonical signature to serialised gluing table."""
    state = _SearchState(n)
    found: dict[str, str] = {}
    assignment: list[Perm4] = []

    def descend(depth: int) -> None:
        if depth == len(pairs):
            gluings = {}
            for ((t, f), (t2, f2)), p in zip(pairs, assignment):
                gluings[(t, f)] = (t2, f2, p)
                gluings[(t2, f2)] = (t, f, p.inverse())
            tri = Triangulation(n, gluings)
            sig = iso_signature(tri)
            if sig not in found:
                found[sig] = tri.to_text()
            return
        (t, f), (t2, f2) = pairs[depth]
        for p in _PERMS_BY_FACES[f][f2]:
            mark = state.mark()
            if state.apply_gluing(t, f, t2, f2, p):
                assignment.append(p)
                descend(depth + 1)
                assignment.pop()
            state.rollback(mark)

    descend(0)
    return found


def _census_worker(
    args: tuple[int, tuple[tuple[int, int], ...]],
) -> dict[str, str]:
    n, graph = args
    return _search_pairing(n, _pairing_faces(graph, n))


def generate_closed(
    n: int, size_limit: int = DEFAULT_SIZE_LIMIT, threads: int = 1
) -> list[Triangulation]:
    """Every closed valid 3-manifold triangulation of size exactly n,
    once up to isomorphism, sorted by canonical signature."""
    if n < 1:
        raise CensusLimitError(f"census size must be positive, got {n}")
    if n > size_limit:
        raise CensusLimitError(
            f"census size {n} exceeds the configured limit {size_limit}"
        )
    graphs = _pairing_multigraphs(n)
    merged: dict[str, str] = {}
    if threads > 1 and len(graphs) > 1:
        with Pool(min(threads, len(graphs))) as pool:
            for part in pool.map(_census_worker, [(n, g) for g in graphs]):
                merged.update(part)
    else:
        for graph in graphs:
            merged.update(_search_pairing(n, _pairing_faces(graph, n)))
    return [
        Triangulation.from_text(merged[sig]) for sig in sorted(merged)
    ]


def _sigma_worker(text: str) -> int:
    tri = Triangulation.from_text(text)
    return enumerate_vertex_surfaces(tri).sigma


def census_records(
    n: int, size_limit: int = DEFAULT_SIZE_LIMIT, threads: int = 1
) -> list[CensusRecord]:
    """Census rows (ordinal, signature, admissible vertex count) for size n."""
    tris = generate_closed(n, size_limit=size_limit, threads=threads)
    if threads > 1 and len(tris) > 1:
        with Pool(threads) as pool:
            sigmas = pool.map(
                _sigma_worker, [tri.to_text() for tri in tris], chunksize=16
            )
    else:
        sigmas = [enumerate_vertex_surfaces(tri).sigma for tri in tris]
    return [
        CensusRecord(n, i, iso_signature(tri), s)
        for i, (tri, s) in enumerate(zip(tris, sigmas))
    ]


def stats_from_records(records: list[CensusRecord]) -> CensusStats:
    if not records:
        raise ValueError("no census records")
    n = records[0].n
    sigmas = [r.sigma for r in records]
    count = len(sigmas)
    mean = Fraction(sum(sigmas), count)
    variance = (
        Fraction(sum(s * s for s in sigmas), count) - mean * mean
    )
    return CensusStats(
        n=n,
        count=count,
        mean=mean,
        variance=variance,
        min_sigma=min(sigmas),
        max_sigma=max(sigmas),
    )


def census_stats(
    n: int, size_limit: int = DEFAULT_SIZE_LIMIT, threads: int = 1
) -> CensusStats:
    """Aggregate sigma statistics over the size-n census."""
    return stats_from_records(
        census_records(n, size_limit=size_limit, threads=threads)
    )


def write_csv(records: list[CensusRecord], stream) -> None:
    """Rows ``n,index,isosig,sigma`` with a header line."""
    stream.write("n,index,isosig,sigma\n")
    for r in records:
        stream.write(f"{r.n},{r.ordinal},{r.iso_signature},{r.sigma}\n")


@dataclass(frozen=True)
class ConjectureCheck:
    name: str
    n: int
    status: str  # "pass", "fail", or "skipped"
    detail: str


def conjecture_checks(
    stats_by_n: dict[int, CensusStats],
) -> list[ConjectureCheck]:
    """Evaluate the two aggregate conjectures on available census data.

    For each n >= 3 with data, the mean must satisfy
    mean(n) < mean(n-1) + mean(n-2); for each n where the extremal
    formula is defined, the census maximum must equal it.
    """
    from .bounds import worst_case_sigma

    checks = []
    sizes = sorted(stats_by_n)
    for n in sizes:
        if n >= 3 and n - 1 in stats_by_n and n - 2 in stats_by_n:
            lhs = stats_by_n[n].mean
            rhs = stats_by_n[n - 1].mean + stats_by_n[n - 2].mean
            checks.append(
                ConjectureCheck(
                    "mean-subadditive",
                    n,
                    "pass" if lhs < rhs else "fail",
                    f"{float(lhs):.2f} < {float(rhs):.2f}",
                )
            )
        expected = worst_case_sigma(n)
        if expected is None:
            checks.append(
                ConjectureCheck(
                    "max-is-extremal", n, "skipped",
                    "extremal formula undefined at this size",
                )
            )
        else:
            actual = stats_by_n[n].max_sigma
            checks.append(
                ConjectureCheck(
                    "max-is-extremal",
                    n,
                    "pass" if actual == expected else "fail",
                    f"max {actual} vs formula {expected}",
                )
            )
    return checks
