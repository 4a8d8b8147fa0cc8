import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homothetics import (
    Container,
    ContainerKind,
    DimensionMismatch,
    InvalidContainer,
    PointSet,
    Tolerance,
    container_from_json,
    container_to_json,
    gauge,
    pointset_from_json,
    pointset_to_json,
    reflect,
    support,
)
from homothetics.instances import regular_simplex, simplex_cap_neg, standard_container


def box2():
    return standard_container("box", 2)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.feas == 1e-7 and tol.pivot == 1e-9 and tol.eq == 1e-6

    @pytest.mark.parametrize(
        "kw",
        [dict(pivot=0.0), dict(pivot=1e-3, feas=1e-5), dict(feas=1e-3, eq=1e-5), dict(eq=1.5)],
    )
    def test_ordering_enforced(self, kw):
        with pytest.raises(ValueError):
            Tolerance(**kw)


class TestPointSet:
    def test_basic(self):
        ps = PointSet([[1.0, 2.0], [3.0, 4.0]])
        assert ps.dim == 2 and len(ps) == 2
        with pytest.raises(ValueError):
            ps.points[0, 0] = 9.0  # frozen

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            PointSet([[np.nan, 0.0]])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PointSet(np.zeros((0, 2)))

    def test_subset_translate_scale(self):
        ps = PointSet([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
        assert np.allclose(ps.subset([2, 0]).points, [[0, 2], [0, 0]])
        assert np.allclose(ps.translate([1, 1]).points[0], [1, 1])
        assert np.allclose(ps.scale(0.5).points[1], [1, 0])


class TestContainerValidation:
    def test_ball_carries_no_arrays(self):
        with pytest.raises(InvalidContainer):
            Container(dim=2, kind=ContainerKind.BALL, normals=np.eye(2))

    def test_unbounded_hpoly_rejected(self):
        # only two half-spaces cannot bound the plane
        with pytest.raises(InvalidContainer):
            Container.from_normals([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])

    def test_slab_rejected(self):
        with pytest.raises(InvalidContainer):
            Container.from_normals([[1.0, 0.0], [-1.0, 0.0]])

    def test_origin_outside_vpoly_rejected(self):
        with pytest.raises(InvalidContainer):
            Container.from_vertices([[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]])

    def test_dual_mismatch_rejected(self):
        box = box2()
        with pytest.raises(InvalidContainer):
            Container.dual_rep(box.normals, 2.0 * box.vertices)

    def test_halfspace_rescaling(self):
        c = Container.from_halfspaces([[2.0, 0.0], [-2.0, 0.0], [0.0, 2.0], [0.0, -2.0]], [4.0] * 4)
        assert gauge(c, [2.0, 0.0]) == pytest.approx(1.0)

    def test_nonpositive_offset_rejected(self):
        with pytest.raises(InvalidContainer):
            Container.from_halfspaces([[1.0], [-1.0]], [1.0, 0.0])


class TestGauge:
    def test_box_gauge(self):
        assert gauge(box2(), [0.5, -0.25]) == pytest.approx(0.5)

    def test_ball_gauge(self):
        assert gauge(Container.ball(3), [1.0, 2.0, 2.0]) == pytest.approx(3.0)

    def test_hexagon_vertex_gauge_one(self):
        # vertex of the body has gauge exactly one, via both representations
        hexagon = simplex_cap_neg(2)
        v = hexagon.vertices[0]
        assert gauge(hexagon, v) == pytest.approx(1.0, abs=1e-9)
        vonly = Container.from_vertices(hexagon.vertices)
        assert gauge(vonly, v) == pytest.approx(1.0, abs=1e-7)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gauge(box2(), [1.0, 2.0, 3.0])

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.floats(-5, 5), min_size=2, max_size=2),
        st.floats(0.0, 7.5),
    )
    def test_positive_homogeneity(self, x, rho):
        c = box2()
        assert gauge(c, np.multiply(rho, x)) == pytest.approx(rho * gauge(c, x), abs=1e-9)

    def test_gauge_at_origin(self):
        assert gauge(simplex_cap_neg(3), np.zeros(3)) == 0.0

    def test_membership_consistency(self):
        rng = np.random.default_rng(11)
        c = simplex_cap_neg(2)
        vonly = Container.from_vertices(c.vertices)
        for _ in range(25):
            x = rng.uniform(-2, 2, size=2)
            g_h = gauge(c, x)
            g_v = gauge(vonly, x)
            assert g_h == pytest.approx(g_v, abs=1e-6)
            inside = g_h <= 1.0
            assert inside == (np.max(c.normals @ x) <= 1.0 + 1e-12)


class TestSupportAndReflect:
    def test_ball_support(self):
        assert support(Container.ball(2), [3.0, 4.0]) == pytest.approx(5.0)

    def test_square_support(self):
        assert support(box2(), [1.0, 0.0]) == pytest.approx(1.0)

    def test_simplex_support(self):
        _, T2 = regular_simplex(2)
        assert support(T2, [1.0, 0.0]) == pytest.approx(np.sqrt(2.0))

    def test_hpoly_support_unavailable(self):
        c = Container.from_normals(regular_simplex(2)[1].normals)
        with pytest.raises(InvalidContainer):
            support(c, [1.0, 0.0])

    def test_reflect_ball_identity(self):
        b = Container.ball(4)
        assert reflect(b) is b

    def test_reflect_involution(self):
        _, T3 = regular_simplex(3)
        back = reflect(reflect(T3))
        assert np.allclose(back.normals, T3.normals)
        assert np.allclose(back.vertices, T3.vertices)

    def test_support_of_reflection(self):
        rng = np.random.default_rng(3)
        _, T3 = regular_simplex(3)
        for _ in range(10):
            a = rng.standard_normal(3)
            assert support(reflect(T3), a) == pytest.approx(support(T3, -a), abs=1e-9)

    def test_simplex_reflection_negates_normals(self):
        _, T2 = regular_simplex(2)
        assert np.allclose(reflect(T2).normals, -T2.normals)


class TestJson:
    def test_pointset_round_trip(self):
        ps = PointSet([[1.0, 2.0], [3.0, 4.0]])
        obj = pointset_to_json(ps)
        assert obj == {"dim": 2, "points": [[1.0, 2.0], [3.0, 4.0]]}
        assert np.allclose(pointset_from_json(json.loads(json.dumps(obj))).points, ps.points)

    def test_container_round_trip(self):
        for c in (box2(), Container.ball(3), simplex_cap_neg(2)):
            back = container_from_json(json.loads(json.dumps(container_to_json(c))))
            assert back.kind == c.kind and back.dim == c.dim

    def test_declared_dim_must_match(self):
        with pytest.raises(DimensionMismatch):
            pointset_from_json({"dim": 3, "points": [[1.0, 2.0]]})
