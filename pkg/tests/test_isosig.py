from nsenum.constructions import four_block, pillow, s2xs1, x_k
from nsenum.isosig import EMPTY_SIGNATURE, iso_signature
from nsenum.triangulation import Triangulation, disjoint_union

from test_triangulation import random_relabel

# Stability pins: recorded once from the frozen gluing tables.
X1_SIGNATURE = (
    "4;0:1:1023,0:0:1023,1:2:0123,1:3:0123,2:0:0123,3:1:0123,"
    "0:2:0123,0:3:0123,1:0:0123,2:2:0213,2:1:0213,3:3:0213,"
    "3:2:2103,1:1:0123,3:0:2103,2:3:0213"
)


def test_invariant_under_relabelling():
    for tri in (pillow(), s2xs1(), four_block().triangulation, x_k(1)):
        sig = iso_signature(tri)
        for seed in range(8):
            assert iso_signature(random_relabel(tri, seed)) == sig


def test_one_tetrahedron_census_signatures_distinct(census):
    sigs = [r.iso_signature for r in census.records(1)]
    assert len(sigs) == 4
    assert len(set(sigs)) == 4


def test_x1_signature_stable():
    assert iso_signature(x_k(1)) == X1_SIGNATURE


def test_empty_sentinel():
    assert iso_signature(Triangulation(0, {})) == EMPTY_SIGNATURE


def test_distinguishes_nonisomorphic():
    assert iso_signature(pillow()) != iso_signature(s2xs1())


def test_disconnected_signature_is_component_multiset():
    a, b = pillow(), s2xs1()
    sig_ab = iso_signature(disjoint_union(a, b))
    sig_ba = iso_signature(disjoint_union(b, a))
    assert sig_ab == sig_ba
    assert sig_ab.count("|") == 1
    parts = set(sig_ab.split("|"))
    assert parts == {iso_signature(a), iso_signature(b)}
