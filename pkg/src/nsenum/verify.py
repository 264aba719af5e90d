"""Acceptance check suites shared by the command line and the tests.

Each suite returns a list of named pass/fail results; nothing here
mutates state, so suites can run in any order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import bounds as _bounds
from .census import (
    census_records,
    conjecture_checks,
    generate_closed,
    stats_from_records,
)
from .constructions import four_block, pillow, s2xs1, x_k
from .coords import boundary_profile, equalize_boundary_equations
from .dd import brute_force_vertices, enumerate_vertex_surfaces
from .homology import homology_h1
from .triangulation import Triangulation

#: Expected boundary multiset of the 17 block surfaces, keyed by which
#: of the curves around (P, Q, R) appear.
BLOCK_BOUNDARY_MULTISET = {
    (0, 0, 0): 1,
    (1, 0, 0): 5,
    (0, 1, 0): 2,
    (0, 0, 1): 2,
    (1, 1, 0): 2,
    (1, 0, 1): 2,
    (0, 1, 1): 1,
    (1, 1, 1): 2,
}

#: Reference census rows: n -> (count, mean, stddev, min, max).
CENSUS_TABLE = {
    1: (4, 2.00, 0.71, 1, 3),
    2: (17, 3.94, 1.39, 2, 7),
    3: (81, 5.49, 1.97, 2, 11),
    4: (577, 8.80, 3.38, 2, 18),
    5: (5184, 13.34, 5.49, 4, 36),
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.detail}"


def _check(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(ok), detail)


def suite_table1() -> list[CheckResult]:
    """The 17 block surfaces, their boundary multiset, and the
    constrained 18-vertex polytope."""
    block = four_block()
    tri = block.triangulation
    result = enumerate_vertex_surfaces(tri)
    checks = [
        _check("block sigma", result.sigma == 17, f"sigma = {result.sigma}")
    ]
    sk = tri.skeleton
    # P first: the doubled boundary vertex has the largest class.  The
    # expected multiset is symmetric in the other two curves.
    order = sorted(
        sk.boundary_vertex_classes,
        key=lambda idx: -len(sk.vertex_classes[idx]),
    )
    multiset = Counter()
    consistent = True
    for ray in result.surfaces:
        profile = boundary_profile(ray.vector, tri)
        consistent &= profile.consistent
        multiset[tuple(profile.multiplicity[i] for i in order)] += 1
    checks.append(
        _check(
            "block boundary multiset",
            consistent and dict(multiset) == BLOCK_BOUNDARY_MULTISET,
            f"{dict(sorted(multiset.items()))}",
        )
    )
    constrained = enumerate_vertex_surfaces(
        tri, extra=equalize_boundary_equations(tri)
    )
    checks.append(
        _check(
            "constrained polytope",
            constrained.sigma == 18,
            f"admissible vertices = {constrained.sigma}",
        )
    )
    return checks


def suite_xk(slow: bool = False) -> list[CheckResult]:
    """Structure and sigma of the extremal family."""
    checks = []
    for k in (1, 2, 3, 4):
        tri = x_k(k)
        sk = tri.skeleton
        ok = (
            tri.is_closed()
            and tri.is_valid_3manifold()
            and sk.vertex_count == k + 1
            and homology_h1(tri).is_trivial
        )
        checks.append(
            _check(
                f"x_k({k}) structure",
                ok,
                f"closed valid, {sk.vertex_count} vertices, H1 {homology_h1(tri)}",
            )
        )
    targets = [(1, 18), (2, 291)] + ([(3, 4916)] if slow else [])
    for k, expected in targets:
        s = enumerate_vertex_surfaces(x_k(k)).sigma
        checks.append(
            _check(f"x_k({k}) sigma", s == expected, f"sigma = {s}, want {expected}")
        )
    return checks


def suite_table2(slow: bool = False, threads: int = 1) -> list[CheckResult]:
    """Census counts and statistics against the reference rows."""
    checks = []
    stats_by_n = {}
    sizes = (1, 2, 3, 4) if slow else (1, 2, 3)
    for n in sizes:
        records = census_records(n, threads=threads)
        stats = stats_from_records(records)
        stats_by_n[n] = stats
        count, mean, stddev, mn, mx = CENSUS_TABLE[n]
        ok = (
            stats.count == count
            and abs(float(stats.mean) - mean) <= 0.005
            and abs(stats.stddev - stddev) <= 0.005
            and stats.min_sigma == mn
            and stats.max_sigma == mx
        )
        checks.append(_check(f"census n={n}", ok, stats.display()))
    for chk in conjecture_checks(stats_by_n):
        if chk.status == "skipped":
            checks.append(
                _check(f"{chk.name} n={chk.n}", True, f"skipped: {chk.detail}")
            )
        else:
            checks.append(
                _check(f"{chk.name} n={chk.n}", chk.status == "pass", chk.detail)
            )
    return checks


def suite_bounds() -> list[CheckResult]:
    """Bound inequalities, exhaustive binomial checks, and the growth fit."""
    checks = []
    ok = all(
        math.comb(k - a, a) <= _bounds.fibonacci(k)
        for k in range(1, 61)
        for a in range(0, k + 1)
        if k - a >= a
    )
    checks.append(_check("binomial vs fibonacci", ok, "C(k-a,a) <= F_k for k <= 60"))
    ok = all(
        _bounds.mcmullen(k, d) <= _bounds.facet_vertex_bound(k)
        for k in range(4, 21)
        for d in range(3, k)
    )
    checks.append(_check("mcmullen vs facet bound", ok, "k <= 20, all dimensions"))
    base = _bounds.mcmullen_growth_base()
    checks.append(
        _check("growth base", abs(base - 1.613) <= 0.01, f"fitted base {base:.4f}")
    )
    ok = all(
        _bounds.theorem_bound(n) < _bounds.hass_bound(n) for n in range(1, 41)
    )
    checks.append(_check("fibonacci below 128^n", ok, "n <= 40"))
    ok = all(
        (_bounds.worst_case_sigma(n) or 0) <= _bounds.theorem_bound(n)
        for n in range(1, 41)
    )
    checks.append(_check("extremal below fibonacci", ok, "n <= 40"))
    # Every small-census sigma obeys both bounds.
    sigma_ok = True
    detail = []
    for n in (1, 2, 3):
        records = census_records(n)
        top = max(r.sigma for r in records)
        sigma_ok &= all(
            r.sigma <= _bounds.theorem_bound(n) and r.sigma <= _bounds.hass_bound(n)
            for r in records
        )
        detail.append(f"n={n} max {top}")
    checks.append(_check("census sigma bounds", sigma_ok, ", ".join(detail)))
    return checks


def suite_oracle() -> list[CheckResult]:
    """Double description versus the exhaustive zero-set oracle."""
    checks = []
    instances: list[tuple[str, Triangulation]] = [
        ("lone tetrahedron", Triangulation(1, {})),
        ("pillow", pillow()),
    ]
    instances += [
        (f"census n=1 #{i}", tri) for i, tri in enumerate(generate_closed(1))
    ]
    for name, tri in instances:
        fast = enumerate_vertex_surfaces(tri)
        slow = brute_force_vertices(tri)
        same = [r.vector for r in fast.surfaces] == [r.vector for r in slow.surfaces]
        checks.append(
            _check(
                f"oracle {name}",
                same,
                f"dd {fast.sigma} vs oracle {slow.sigma}",
            )
        )
    return checks


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "table1": suite_table1,
    "table2": suite_table2,
    "xk": suite_xk,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
}


def run_suite(name: str, slow: bool = False, threads: int = 1) -> list[CheckResult]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, slow=slow, threads=threads))
        return out
    if name not in SUITES:
        raise KeyError(name)
    fn = SUITES[name]
    if name == "table2":
        return fn(slow=slow, threads=threads)
    if name == "xk":
        return fn(slow=slow)
    return fn()
