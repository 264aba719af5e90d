import pytest

from nsenum.constructions import four_block, pillow, s2xs1, x_k
from nsenum.homology import HomologyGroup, homology_h1, smith_normal_form
from nsenum.triangulation import Triangulation

from test_triangulation import random_relabel


class TestSmithNormalForm:
    def test_diagonal_example(self):
        assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]

    def test_known_matrix(self):
        # SNF of [[2,4,4],[-6,6,12],[10,4,16]] is diag(2, 2, 156)
        assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]

    def test_zero_matrix(self):
        assert smith_normal_form([[0, 0], [0, 0]]) == [0, 0]

    def test_rank_deficient(self):
        assert smith_normal_form([[1, 2], [2, 4]]) == [1, 0]

    def test_divisibility_chain(self):
        diag = smith_normal_form(
            [[6, 0, 0], [0, 10, 0], [0, 0, 15]]
        )
        nonzero = [d for d in diag if d]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0


class TestHomologyGroup:
    def test_invariant_factor_validation(self):
        with pytest.raises(ValueError):
            HomologyGroup(0, (1,))
        with pytest.raises(ValueError):
            HomologyGroup(0, (4, 6))  # 6 not divisible by 4
        assert HomologyGroup(1, (2, 4)).torsion == (2, 4)

    def test_str(self):
        assert str(HomologyGroup(0)) == "0"
        assert str(HomologyGroup(1)) == "Z"
        assert str(HomologyGroup(2, (3,))) == "Z^2 + Z/3"


class TestFirstHomology:
    def test_product_space_has_rank_one(self):
        h = homology_h1(s2xs1())
        assert h.rank == 1
        assert h.torsion == ()

    def test_block_chain_spheres_trivial(self):
        for k in (1, 2, 3):
            assert homology_h1(x_k(k)).is_trivial

    def test_balls_trivial(self):
        assert homology_h1(pillow()).is_trivial
        assert homology_h1(four_block().triangulation).is_trivial

    def test_empty(self):
        assert homology_h1(Triangulation(0, {})).is_trivial

    def test_some_two_tetrahedron_census_entry_has_rank_one(self, census):
        ranks = [homology_h1(t).rank for t in census.tris(2)]
        assert any(r == 1 for r in ranks)

    def test_torsion_appears_in_small_census(self, census):
        # the one-tetrahedron census contains lens-space-like quotients
        groups = [homology_h1(t) for t in census.tris(1)]
        assert any(g.torsion for g in groups)

    def test_relabelling_invariant(self):
        tri = s2xs1()
        h = homology_h1(tri)
        for seed in range(5):
            assert homology_h1(random_relabel(tri, seed)) == h
