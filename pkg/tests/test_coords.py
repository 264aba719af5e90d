import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsenum.constructions import four_block, pillow, s2xs1, x_k
from nsenum.coords import (
    SEP,
    MatchingError,
    boundary_profile,
    edge_weight,
    equalize_boundary_equations,
    euler_char,
    is_admissible,
    matching_matrix,
    quad_coord,
    tri_coord,
    vertex_link,
)
from nsenum.dd import enumerate_vertex_surfaces
from nsenum.triangulation import Triangulation, make_triangulation


def cone_vector(tri, seed, scale=4):
    """A random non-negative integer combination of the vertex surfaces."""
    rng = random.Random(seed)
    rays = enumerate_vertex_surfaces(tri).surfaces
    vec = [0] * (7 * tri.n)
    for ray in rays:
        c = rng.randrange(scale)
        for i, v in enumerate(ray.vector):
            vec[i] += c * v
    return tuple(vec)


class TestSepTable:
    def test_pairs_vertex_with_face(self):
        # the arcs cutting off corner v inside face f come from the quad
        # type separating {v, f} from the other two labels
        partitions = ({0, 1}, {0, 2}, {0, 3})
        for v in range(4):
            for f in range(4):
                if v == f:
                    continue
                q = SEP[v][f]
                side = partitions[q]
                same_side = ({v, f} == side) or ({v, f} == {0, 1, 2, 3} - side)
                assert same_side

    def test_vertex_links_satisfy_matching(self):
        # wrong separation constants would break these immediately
        for tri in (pillow(), s2xs1(), four_block().triangulation, x_k(1)):
            system = matching_matrix(tri)
            for idx in range(tri.skeleton.vertex_count):
                assert system.satisfied_by(vertex_link(tri, idx))


class TestMatchingMatrix:
    def test_closed_has_six_rows_per_tetrahedron(self):
        for tri in (s2xs1(), x_k(1)):
            assert len(matching_matrix(tri).rows) == 6 * tri.n

    def test_lone_tetrahedron_has_no_rows(self):
        assert matching_matrix(make_triangulation(1, [])).rows == ()

    def test_block_row_count_tracks_internal_faces(self):
        tri = four_block().triangulation
        internal = sum(1 for b in tri.skeleton.face_is_boundary if not b)
        assert len(matching_matrix(tri).rows) == 3 * internal

    def test_row_coefficient_structure(self):
        for tri in (s2xs1(), four_block().triangulation):
            for row in matching_matrix(tri).rows:
                assert set(row) <= {-1, 0, 1}
                assert sum(1 for c in row if c == 1) <= 2
                assert sum(c for c in row) == 0

    def test_zero_vector_satisfies(self):
        tri = s2xs1()
        assert matching_matrix(tri).satisfied_by([0] * 14)

    def test_solutions_closed_under_addition(self):
        tri = four_block().triangulation
        system = matching_matrix(tri)
        u = cone_vector(tri, seed=1)
        v = cone_vector(tri, seed=2)
        assert system.satisfied_by(u)
        assert system.satisfied_by(v)
        assert system.satisfied_by([a + b for a, b in zip(u, v)])

    def test_enumerated_block_surfaces_satisfy(self, block):
        b, result = block
        system = matching_matrix(b.triangulation)
        for ray in result.surfaces:
            assert system.satisfied_by(ray.vector)


class TestAdmissibility:
    def test_zero_vector(self):
        assert is_admissible([0] * 7)

    def test_two_quads_in_one_tetrahedron(self):
        vec = [0] * 7
        vec[4] = vec[5] = 1
        assert not is_admissible(vec)

    def test_enumerated_surfaces_admissible(self):
        for tri in (s2xs1(), x_k(1)):
            for ray in enumerate_vertex_surfaces(tri).surfaces:
                assert is_admissible(ray.vector)

    @given(st.data())
    def test_support_monotone(self, data):
        n = data.draw(st.integers(1, 3))
        vec = data.draw(
            st.lists(st.integers(0, 5), min_size=7 * n, max_size=7 * n)
        )
        # force admissibility by zeroing all but one quad per tetrahedron
        for t in range(n):
            keep = data.draw(st.integers(0, 2))
            for j in range(3):
                if j != keep:
                    vec[quad_coord(t, j)] = 0
        assert is_admissible(vec)
        mask = data.draw(
            st.lists(st.booleans(), min_size=7 * n, max_size=7 * n)
        )
        sub = [v if m else 0 for v, m in zip(vec, mask)]
        assert is_admissible(sub)


class TestEdgeWeight:
    def test_vertex_link_weight_counts_endpoints(self):
        for tri in (pillow(), s2xs1(), four_block().triangulation):
            sk = tri.skeleton
            for ci, cls in enumerate(sk.vertex_classes):
                link = vertex_link(tri, ci)
                members = set(cls)
                for ei, ecls in enumerate(sk.edge_classes):
                    t, a, b = ecls[0]
                    expected = ((t, a) in members) + ((t, b) in members)
                    assert edge_weight(link, tri, ei) == expected

    def test_zero_vector_weight_zero(self):
        tri = pillow()
        for ei in range(tri.skeleton.edge_count):
            assert edge_weight([0] * 14, tri, ei) == 0

    def test_weight_independent_of_member(self):
        # evaluating the defining formula on every member of each class
        # must agree for any vector in the solution cone
        for tri in (s2xs1(), four_block().triangulation):
            for seed in range(4):
                vec = cone_vector(tri, seed)
                for ei in range(tri.skeleton.edge_count):
                    edge_weight(vec, tri, ei)  # raises on disagreement

    def test_rejects_non_matching_vector(self):
        tri = s2xs1()
        vec = [0] * 14
        vec[0] = 1  # a lone triangle cannot satisfy the closed matching system
        with pytest.raises(MatchingError):
            edge_weight(vec, tri, 0)

    def test_sphere_around_internal_vertex_weights(self, block):
        # frozen expectation for the frozen block table: the linking
        # sphere meets each edge once per endpoint at the internal vertex
        b, result = block
        tri = b.triangulation
        sk = tri.skeleton
        internal = next(
            i for i, bd in enumerate(sk.vertex_is_boundary) if not bd
        )
        link = vertex_link(tri, internal)
        members = set(sk.vertex_classes[internal])
        weights = [
            edge_weight(link, tri, ei) for ei in range(sk.edge_count)
        ]
        expected = [
            ((t, a) in members) + ((t, b2) in members)
            for (t, a, b2) in (cls[0] for cls in sk.edge_classes)
        ]
        assert weights == expected
        assert sorted(weights) == [0, 0, 0, 0, 1, 1, 1, 1]


class TestVertexLink:
    def test_lone_tetrahedron_unit_vector(self):
        tri = make_triangulation(1, [])
        link = vertex_link(tri, tri.skeleton.vertex_class_of(0, 0))
        assert link == (1, 0, 0, 0, 0, 0, 0)

    def test_product_space_link_is_sphere(self):
        tri = s2xs1()
        link = vertex_link(tri, 0)
        assert euler_char(link, tri) == 2

    def test_block_chain_internal_link_is_vertex_surface(self):
        tri = x_k(1)
        sk = tri.skeleton
        surfaces = {r.vector for r in enumerate_vertex_surfaces(tri).surfaces}
        for idx in range(sk.vertex_count):
            link = vertex_link(tri, idx)
            assert all(link[quad_coord(t, j)] == 0 for t in range(tri.n) for j in range(3))
            assert link in surfaces


class TestEulerChar:
    def test_internal_vertex_links_are_spheres(self, block):
        b, _ = block
        tri = b.triangulation
        sk = tri.skeleton
        for idx, bd in enumerate(sk.vertex_is_boundary):
            expected = 1 if bd else 2
            assert euler_char(vertex_link(tri, idx), tri) == expected

    def test_six_piece_sphere(self):
        # the classic picture: four triangles and two quadrilaterals
        # closing up into a sphere in the two-tetrahedron product space
        tri = s2xs1()
        spheres = [
            r.vector
            for r in enumerate_vertex_surfaces(tri).surfaces
            if sum(r.vector) == 6 and euler_char(r.vector, tri) == 2
        ]
        assert spheres

    def test_block_alpha_surface_chis(self, block):
        # the five surfaces bounded by one curve around the doubled
        # vertex: three discs and two once-punctured tori attached
        b, result = block
        tri = b.triangulation
        sk = tri.skeleton
        p_class = max(
            sk.boundary_vertex_classes, key=lambda i: len(sk.vertex_classes[i])
        )
        others = [i for i in sk.boundary_vertex_classes if i != p_class]
        chis = []
        for ray in result.surfaces:
            prof = boundary_profile(ray.vector, tri).multiplicity
            if prof[p_class] == 1 and all(prof[i] == 0 for i in others):
                chis.append(euler_char(ray.vector, tri))
        assert sorted(chis) == [-1, -1, 1, 1, 1]

    def test_additive_on_cone_vectors(self):
        # every cell count is linear in the coordinates
        tri = s2xs1()
        u = cone_vector(tri, 1)
        v = cone_vector(tri, 2)
        total = [a + b for a, b in zip(u, v)]
        assert euler_char(total, tri) == euler_char(u, tri) + euler_char(v, tri)

    def test_census_vertex_links_are_spheres(self, census):
        for n in (1, 2):
            for tri in census.tris(n):
                for idx in range(tri.skeleton.vertex_count):
                    assert euler_char(vertex_link(tri, idx), tri) == 2


class TestBoundaryProfile:
    def test_zero_vector_profile(self):
        tri = pillow()
        prof = boundary_profile([0] * 14, tri)
        assert prof.consistent
        assert set(prof.multiplicity.values()) == {0}

    def test_block_disc_profiles(self, block):
        b, result = block
        tri = b.triangulation
        sk = tri.skeleton
        p_class = max(
            sk.boundary_vertex_classes, key=lambda i: len(sk.vertex_classes[i])
        )
        link = vertex_link(tri, p_class)
        prof = boundary_profile(link, tri)
        assert prof.consistent
        assert prof.multiplicity[p_class] == 1
        assert all(
            prof.multiplicity[i] == 0
            for i in sk.boundary_vertex_classes
            if i != p_class
        )

    def test_forked_tube_profile_exists(self, block):
        b, result = block
        tri = b.triangulation
        all_ones = [
            r
            for r in result.surfaces
            if set(boundary_profile(r.vector, tri).multiplicity.values()) == {1}
        ]
        assert len(all_ones) == 2  # the forked tube and its torus variant

    def test_closed_triangulation_gives_empty_profile(self):
        tri = s2xs1()
        prof = boundary_profile([0] * 14, tri)
        assert prof.multiplicity == {}
        assert prof.consistent


class TestEqualizeBoundary:
    def test_block_has_two_rows(self, block):
        b, _ = block
        system = equalize_boundary_equations(b.triangulation)
        assert len(system.rows) == 2

    def test_pillow_has_two_rows(self):
        assert len(equalize_boundary_equations(pillow()).rows) == 2

    def test_closed_has_none(self):
        assert equalize_boundary_equations(s2xs1()).rows == ()
