import json

import numpy as np
import pytest

from homothetics import Container, InvalidContainer, gauge, pointset_to_json, reflect
from homothetics.instances import (
    InstanceSpec,
    box_ambiguity_instance,
    random_pointset,
    regular_simplex,
    simplex_cap_neg,
    simplex_vertices,
    standard_container,
    symmetric_counterexample,
    vertex_enumeration,
)


class TestRegularSimplex:
    @pytest.mark.parametrize("d", range(1, 9))
    def test_gram_conditions(self, d):
        X = simplex_vertices(d)
        G = X @ X.T
        assert np.allclose(np.diag(G), d, atol=1e-9)
        off = G[~np.eye(d + 1, dtype=bool)]
        assert np.allclose(off, -1.0, atol=1e-9)
        assert np.allclose(X.sum(axis=0), 0.0, atol=1e-9)

    def test_d2_coordinates(self):
        X = simplex_vertices(2)
        expect = np.array(
            [[np.sqrt(2), 0], [-np.sqrt(2) / 2, np.sqrt(6) / 2], [-np.sqrt(2) / 2, -np.sqrt(6) / 2]]
        )
        assert np.allclose(X, expect, atol=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_normal_vertex_pairing(self, d):
        P, T = regular_simplex(d)
        rel = T.normals @ P.points.T
        assert np.allclose(np.diag(rel), -d, atol=1e-9)
        assert np.allclose(rel[~np.eye(d + 1, dtype=bool)], 1.0, atol=1e-9)

    def test_container_is_own_hull(self):
        P, T = regular_simplex(3)
        for v in P.points:
            assert gauge(T, v) == pytest.approx(1.0, abs=1e-9)


class TestCap:
    def test_hexagon(self):
        C = simplex_cap_neg(2)
        assert len(C.vertices) == 6
        assert len(C.normals) == 6

    def test_octahedron_count_d3(self):
        assert len(simplex_cap_neg(3).vertices) == 6

    def test_symmetric(self):
        for d in (2, 3, 4):
            C = simplex_cap_neg(d)
            assert C.is_symmetric()

    def test_large_dim_hpoly_only(self):
        C = simplex_cap_neg(7)
        assert C.vertices is None and len(C.normals) == 16


class TestPrism:
    def test_k_equals_d_is_cap(self):
        a = symmetric_counterexample(3, 3)
        b = simplex_cap_neg(3)
        assert np.allclose(sorted(a.vertices.tolist()), sorted(b.vertices.tolist()))

    def test_hexagon_prism(self):
        C = symmetric_counterexample(3, 2)
        assert len(C.vertices) == 12
        assert C.is_symmetric()

    def test_padding_shape(self):
        C = symmetric_counterexample(5, 2)
        assert C.dim == 5
        assert len(C.normals) == 6 + 2 * 3  # hexagon rows plus box rows

    def test_bad_k(self):
        with pytest.raises(ValueError):
            symmetric_counterexample(3, 0)


class TestStandardContainers:
    def test_box_counts(self):
        C = standard_container("box", 2)
        assert len(C.normals) == 4 and len(C.vertices) == 4

    def test_cross_counts(self):
        C = standard_container("cross", 3)
        assert len(C.normals) == 8 and len(C.vertices) == 6

    def test_ball(self):
        assert standard_container("ball", 5).kind.value == "ball"

    def test_unknown(self):
        with pytest.raises(ValueError):
            standard_container("egg", 3)


class TestBoxAmbiguity:
    def test_tau_zero_d2(self):
        P = box_ambiguity_instance(2, 0.0)
        assert sorted(P.points.tolist()) == [[-1, 0], [0, -1], [0, 1], [1, 0]]

    def test_point_count(self):
        assert len(box_ambiguity_instance(5, 0.3)) == 2 * 4 + 2

    def test_tau_bounds(self):
        with pytest.raises(ValueError):
            box_ambiguity_instance(3, 1.5)


class TestRandomPointset:
    def test_seed_reproducible_bytes(self):
        a = json.dumps(pointset_to_json(random_pointset(20, 3, seed=123)))
        b = json.dumps(pointset_to_json(random_pointset(20, 3, seed=123)))
        assert a == b
        c = json.dumps(pointset_to_json(random_pointset(20, 3, seed=124)))
        assert a != c

    def test_sphere_support(self):
        P = random_pointset(50, 4, seed=1, distribution="sphere")
        assert np.allclose(np.linalg.norm(P.points, axis=1), 1.0, atol=1e-9)

    def test_ball_support(self):
        P = random_pointset(50, 3, seed=2, distribution="ball-uniform")
        assert np.all(np.linalg.norm(P.points, axis=1) <= 1.0 + 1e-12)

    def test_simplex_hull_support(self):
        P = random_pointset(50, 3, seed=3, distribution="simplex-hull")
        _, T = regular_simplex(3)
        assert all(gauge(T, p) <= 1.0 + 1e-9 for p in P.points)

    def test_unknown_distribution(self):
        with pytest.raises(ValueError):
            random_pointset(5, 2, seed=0, distribution="donut")


class TestVertexEnumeration:
    def test_box_round_trip(self):
        hrep = Container.from_normals(standard_container("box", 2).normals)
        C = vertex_enumeration(hrep)
        assert sorted(C.vertices.tolist()) == [[-1, -1], [-1, 1], [1, -1], [1, 1]]

    def test_simplex_round_trip(self):
        P, T = regular_simplex(3)
        C = vertex_enumeration(Container.from_normals(T.normals))
        assert len(C.vertices) == 4
        got = sorted(np.round(C.vertices, 9).tolist())
        want = sorted(np.round(P.points, 9).tolist())
        assert np.allclose(got, want, atol=1e-7)

    def test_hexagon(self):
        X = simplex_vertices(2)
        C = vertex_enumeration(Container.from_normals(np.vstack([-X, X])))
        assert len(C.vertices) == 6

    def test_needs_hrep(self):
        with pytest.raises(InvalidContainer):
            vertex_enumeration(Container.from_vertices(simplex_vertices(2)))

    def test_dimension_cap(self):
        X = simplex_vertices(7)
        with pytest.raises(ValueError):
            vertex_enumeration(Container.from_normals(np.vstack([-X, X])))

    def test_generated_containers_valid(self):
        # every generator output passes container validation on construction;
        # spot-check reflections stay valid too
        for d in (2, 3):
            for C in (
                regular_simplex(d)[1],
                simplex_cap_neg(d),
                standard_container("box", d),
                standard_container("cross", d),
                symmetric_counterexample(max(d, 2) + 1, d),
            ):
                reflect(C)


class TestInstanceSpec:
    def test_build_families(self):
        for family, kw in (
            ("regular-simplex", {}),
            ("cap", {}),
            ("sym-prism", {"k": 2}),
            ("box-ambiguity", {"tau": 0.5}),
            ("random", {"n": 6, "seed": 3}),
            ("box", {}),
        ):
            P, C = InstanceSpec(family=family, dim=3, **kw).build()
            assert P is not None or C is not None

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            InstanceSpec(family="torus", dim=3)
        with pytest.raises(ValueError):
            InstanceSpec(family="sym-prism", dim=3)
        with pytest.raises(ValueError):
            InstanceSpec(family="cap", dim=0)
