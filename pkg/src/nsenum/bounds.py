"""Closed-form bounds on the admissible vertex count.

Three families: the Fibonacci facet bound (a polytope with k facets has
at most F_{k+1} vertices, so sigma <= F_{7n+1}), the older 128^n bound,
and the extremal-family formulas giving the conjectured exact maxima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def fibonacci(k: int) -> int:
    """F_k with F_0 = 0, F_1 = 1."""
    if k < 0:
        raise ValueError(f"negative index {k}")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def facet_vertex_bound(k: int) -> int:
    """Largest vertex count of a convex polytope with exactly k facets."""
    if k < 3:
        raise ValueError(f"a polytope needs at least 3 facets, got {k}")
    return fibonacci(k + 1)


def mcmullen(k: int, d: int) -> int:
    """Tight vertex bound for a d-dimensional polytope with k facets.

    The dual form of the cyclic-polytope facet count:
    C(k - floor((d+1)/2), k - d) + C(k - floor((d+2)/2), k - d).
    """
    if not 3 <= d < k:
        raise ValueError(f"need 3 <= d < k, got d={d}, k={k}")
    return math.comb(k - (d + 1) // 2, k - d) + math.comb(k - (d + 2) // 2, k - d)


def theorem_bound(n: int) -> int:
    """sigma <= F_{7n+1}: the solution cone has at most 7n facets."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return fibonacci(7 * n + 1)


def hass_bound(n: int) -> int:
    """The older general bound sigma <= 128^n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 128**n


def worst_case_sigma(n: int) -> int | None:
    """Conjectured-maximal sigma among size-n closed triangulations.

    Realised by the extremal block-chain family and its variants; no
    such triangulation exists for n in {1, 2, 3, 5}, where the value is
    None.
    """
    if n < 4 or n == 5:
        return None
    k, r = divmod(n, 4)
    if r == 0:
        return 17**k + k
    if r == 1:
        return 581 * 17 ** (k - 2) + k + 1
    if r == 2:
        return 69 * 17 ** (k - 1) + k
    return 141 * 17 ** (k - 1) + k + 2


@dataclass(frozen=True)
class BoundReport:
    """The bound values at one triangulation size."""

    n: int
    fib_bound: int
    hass_bound: int
    worst_case: int | None

    def display(self) -> str:
        lines = [
            f"n                 {self.n}",
            f"fibonacci bound   {self.fib_bound}",
            f"128^n bound       {self.hass_bound}",
        ]
        if self.worst_case is not None:
            lines.append(f"extremal sigma    {self.worst_case}")
        else:
            lines.append("extremal sigma    undefined at this size")
        return "\n".join(lines)


def bound_report(n: int) -> BoundReport:
    return BoundReport(
        n=n,
        fib_bound=theorem_bound(n),
        hass_bound=hass_bound(n),
        worst_case=worst_case_sigma(n),
    )


def max_mcmullen(k: int) -> int:
    """Largest vertex bound over all dimensions for k facets."""
    return max(mcmullen(k, d) for d in range(3, k))


def mcmullen_growth_base(lo: int = 100, hi: int = 200) -> float:
    """Fitted exponential base of max_d mcmullen(k, d) over lo <= k <= hi.

    Least squares on the logarithms; the slope exponentiates to the
    growth base, a little under the golden ratio.
    """
    ks = list(range(lo, hi + 1))
    logs = [math.log(max_mcmullen(k)) for k in ks]
    count = len(ks)
    mean_k = sum(ks) / count
    mean_log = sum(logs) / count
    slope = sum((k - mean_k) * (l - mean_log) for k, l in zip(ks, logs)) / sum(
        (k - mean_k) ** 2 for k in ks
    )
    return math.exp(slope)
