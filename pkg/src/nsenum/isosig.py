"""Canonical signatures identifying triangulations up to relabelling.

Two triangulations get the same signature exactly when one can be
carried to the other by renaming tetrahedra and relabelling their
vertices.  The signature is the lexicographically smallest serialisation
of the gluing table over all breadth-first canonical relabellings, one
seeded from every (start tetrahedron, start labelling) pair; this makes
it total, deterministic and relabelling-invariant.  The format is this
package's own and is not interoperable with other software.
"""

from __future__ import annotations

from .perm import Perm4
from .triangulation import Triangulation, connected_components

#: Signature of the empty triangulation.
EMPTY_SIGNATURE = "empty"


def _component_serialisation(
    tri: Triangulation, start: int, start_perm: Perm4
) -> str:
    """Serialise the component of ``start`` relabelled canonically.

    Tetrahedra are renumbered in breadth-first discovery order; a newly
    discovered tetrahedron is relabelled so that the discovering gluing
    becomes the identity permutation, making the whole serialisation a
    function of the seed alone.
    """
    new_index = {start: 0}
    perms = {start: start_perm}
    order = [start]
    tokens = []
    pos = 0
    while pos < len(order):
        t = order[pos]
        pos += 1
        q = perms[t]
        q_inv = q.inverse()
        for f_new in range(4):
            entry = tri.gluing(t, q_inv[f_new])
            if entry is None:
                tokens.append("b")
                continue
            t2, f2, p = entry
            if t2 not in new_index:
                new_index[t2] = len(order)
                perms[t2] = q * p.inverse()
                order.append(t2)
            r = perms[t2] * p * q_inv
            tokens.append(f"{new_index[t2]}:{r[f_new]}:{r.string()}")
    return f"{len(order)};" + ",".join(tokens)


def iso_signature(tri: Triangulation) -> str:
    """Canonical string, equal for two triangulations iff isomorphic."""
    if tri.n == 0:
        return EMPTY_SIGNATURE
    parts = []
    for component in connected_components(tri):
        best = None
        for t0 in component:
            for p0 in Perm4.all():
                s = _component_serialisation(tri, t0, p0)
                if best is None or s < best:
                    best = s
        parts.append(best)
    return "|".join(sorted(parts))
