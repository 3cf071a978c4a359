import numpy as np
import pytest
from numpy.testing import assert_allclose

from hhbounds import (
    BarycentricCoords,
    DegenerateSimplexError,
    DimensionMismatchError,
    PointOutsideSimplexError,
    Simplex,
    SubsimplexEscapesParentError,
    random_simplex,
    standard_simplex,
)


def hit_ratio_volume(simplex, box_lo, box_hi, count, seed):
    """Independent volume oracle: fraction of box points inside the simplex."""
    rng = np.random.default_rng(seed)
    n = simplex.dimension
    pts = rng.uniform(box_lo, box_hi, size=(count, n))
    inside = simplex.solve_weights(pts).min(axis=1) >= 0.0
    box_vol = float(np.prod(np.full(n, box_hi - box_lo)))
    frac = inside.mean()
    sigma = np.sqrt(frac * (1 - frac) / count)
    return frac * box_vol, 4 * sigma * box_vol


class TestVolume:
    def test_triangle_against_hit_ratio(self):
        s = standard_simplex(2)
        oracle, tol = hit_ratio_volume(s, 0.0, 1.0, 200_000, seed=7)
        assert abs(s.volume - oracle) < tol
        assert abs(s.volume - 0.5) < 1e-15

    def test_4d_standard_against_hit_ratio(self):
        s = standard_simplex(4)
        oracle, tol = hit_ratio_volume(s, 0.0, 1.0, 400_000, seed=11)
        assert abs(s.volume - oracle) < tol
        assert abs(s.volume - 1.0 / 24.0) < 1e-15

    def test_interval_length(self):
        assert Simplex([[2.0], [5.0]]).volume == 3.0

    def test_volume_positive_and_cached(self):
        rng = np.random.default_rng(0)
        for dim in range(1, 7):
            s = random_simplex(dim, rng)
            assert s.volume > 0.0

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateSimplexError):
            Simplex([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
        with pytest.raises(DegenerateSimplexError):
            Simplex([[0.0], [0.0]])

    def test_shape_validation(self):
        with pytest.raises(DimensionMismatchError):
            Simplex([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(ValueError):
            Simplex([[0.0], [np.inf]])


class TestBarycentricSolve:
    def test_centroid_gets_equal_weights(self):
        rng = np.random.default_rng(1)
        for dim in range(1, 7):
            s = random_simplex(dim, rng)
            w = s.barycentric_solve(s.centroid).weights
            assert_allclose(w, np.full(dim + 1, 1.0 / (dim + 1)), atol=1e-12)

    def test_vertices_get_unit_weights(self):
        rng = np.random.default_rng(2)
        s = random_simplex(3, rng)
        for j in range(4):
            w = s.barycentric_solve(s.vertices[j]).weights
            expected = np.zeros(4)
            expected[j] = 1.0
            assert_allclose(w, expected, atol=1e-12)

    def test_2d_point_and_reconstruction(self):
        s = standard_simplex(2)
        x = np.array([0.2, 0.3])
        coords = s.barycentric_solve(x)
        assert_allclose(coords.weights, [0.5, 0.2, 0.3], atol=1e-14)
        # substitution oracle: the weights must reproduce the point
        assert_allclose(coords.reconstruct(s), x, atol=1e-14)

    def test_outside_point_keeps_negative_weight(self):
        s = standard_simplex(2)
        w = s.solve_weights(np.array([0.6, 0.6]))
        assert_allclose(w[0], -0.2, atol=1e-14)

    def test_weight_clamping(self):
        c = BarycentricCoords([1.0 + 5e-10, -5e-10])
        assert c.min_weight == 0.0
        assert abs(c.weights.sum() - 1.0) < 1e-15
        assert c.is_inside


class TestBarycentricVolumes:
    def test_centroid_ratios(self):
        rng = np.random.default_rng(3)
        for dim in (1, 2, 4):
            s = random_simplex(dim, rng)
            w = s.barycentric_volumes(s.centroid).weights
            assert_allclose(w, np.full(dim + 1, 1.0 / (dim + 1)), atol=1e-12)

    def test_vertex_gives_indicator(self):
        s = standard_simplex(3)
        w = s.barycentric_volumes(s.vertices[2]).weights
        expected = np.zeros(4)
        expected[2] = 1.0
        assert_allclose(w, expected, atol=1e-12)

    def test_outside_point_rejected(self):
        s = standard_simplex(2)
        with pytest.raises(PointOutsideSimplexError):
            s.barycentric_volumes(np.array([0.6, 0.6]))

    def test_cross_method_agreement_random_3d(self):
        rng = np.random.default_rng(4)
        s = random_simplex(3, rng)
        x = rng.dirichlet(np.ones(4)) @ s.vertices
        w_solve = s.barycentric_solve(x).weights
        w_vol = s.barycentric_volumes(x).weights
        assert np.abs(w_solve - w_vol).max() < 1e-10


class TestInvariants:
    def test_cross_method_agreement_campaign(self):
        # 25 interior points per dimension 1..8, both routes within 1e-9
        rng = np.random.default_rng(5)
        for dim in range(1, 9):
            s = random_simplex(dim, rng)
            for _ in range(25):
                x = rng.dirichlet(np.ones(dim + 1)) @ s.vertices
                diff = s.barycentric_solve(x).weights - s.barycentric_volumes(x).weights
                assert np.abs(diff).max() < 1e-9

    def test_partition_of_volume(self):
        rng = np.random.default_rng(6)
        for dim in range(1, 7):
            s = random_simplex(dim, rng)
            p = rng.dirichlet(np.full(dim + 1, 2.0)) @ s.vertices
            total = sum(s.replace_vertex(i, p).volume for i in range(dim + 1))
            assert abs(total - s.volume) < 1e-10 * s.volume

    def test_weights_are_affine(self):
        rng = np.random.default_rng(7)
        for dim in (1, 3, 5):
            s = random_simplex(dim, rng)
            for _ in range(20):
                x = rng.dirichlet(np.ones(dim + 1)) @ s.vertices
                y = rng.dirichlet(np.ones(dim + 1)) @ s.vertices
                alpha = rng.uniform()
                mixed = s.solve_weights(alpha * x + (1 - alpha) * y)
                expected = alpha * s.solve_weights(x) + (1 - alpha) * s.solve_weights(y)
                assert np.abs(mixed - expected).max() < 1e-10


class TestReplaceVertex:
    def test_identity_replacement(self):
        s = standard_simplex(2)
        r = s.replace_vertex(1, s.vertices[1])
        assert_allclose(r.vertices, s.vertices)

    def test_centroid_replacement_volume(self):
        s = standard_simplex(2)
        r = s.replace_vertex(0, s.centroid)
        assert abs(r.volume - 1.0 / 6.0) < 1e-15

    def test_volume_matches_weight(self):
        rng = np.random.default_rng(8)
        s = random_simplex(4, rng)
        p = rng.dirichlet(np.full(5, 2.0)) @ s.vertices
        w = s.barycentric_solve(p).weights
        for i in range(5):
            assert abs(s.replace_vertex(i, p).volume - w[i] * s.volume) < 1e-12 * s.volume

    def test_facet_point_degenerate(self):
        s = standard_simplex(2)
        # midpoint of the facet opposite vertex 0
        p = 0.5 * (s.vertices[1] + s.vertices[2])
        with pytest.raises(DegenerateSimplexError):
            s.replace_vertex(0, p)

    def test_outside_point_rejected(self):
        s = standard_simplex(2)
        with pytest.raises(PointOutsideSimplexError):
            s.replace_vertex(0, np.array([2.0, 2.0]))


class TestHomothety:
    def test_identity_at_one(self):
        s = standard_simplex(3)
        assert_allclose(s.homothety_about_centroid(1.0).vertices, s.vertices)

    def test_centroid_preserved(self):
        rng = np.random.default_rng(9)
        s = random_simplex(5, rng)
        for t in np.arange(0.1, 1.01, 0.1):
            sub = s.homothety_about_centroid(float(t))
            assert np.abs(sub.centroid - s.centroid).max() < 1e-12

    def test_interval_half(self):
        s = Simplex([[0.0], [1.0]])
        sub = s.homothety_about_centroid(0.5)
        assert_allclose(np.sort(sub.vertices.ravel()), [0.25, 0.75])

    def test_scale_out_of_range(self):
        s = standard_simplex(2)
        with pytest.raises(ValueError):
            s.homothety_about_centroid(0.0)
        with pytest.raises(ValueError):
            s.homothety_about_centroid(1.5)


class TestCenteredSubsimplex:
    def test_identity_at_centroid_full_scale(self):
        s = standard_simplex(2)
        sub = s.centered_subsimplex(s.centroid, 1.0)
        assert_allclose(sub.vertices, s.vertices, atol=1e-15)

    def test_interval_quarter_scale(self):
        s = Simplex([[0.0], [1.0]])
        p = np.array([0.25])
        assert abs(s.max_centered_scale(p) - 0.5) < 1e-15
        sub = s.centered_subsimplex(p, 0.25)
        assert_allclose(np.sort(sub.vertices.ravel()), [0.125, 0.375])
        assert abs(sub.centroid[0] - 0.25) < 1e-15

    def test_boundary_scale_touches_facet(self):
        s = Simplex([[0.0], [1.0]])
        sub = s.centered_subsimplex(np.array([0.25]), 0.5)
        assert_allclose(np.sort(sub.vertices.ravel()), [0.0, 0.5])
        assert all(s.contains(v) for v in sub.vertices)

    def test_centroid_prescribed(self):
        rng = np.random.default_rng(10)
        for dim in (2, 4, 6):
            s = random_simplex(dim, rng)
            p = rng.dirichlet(np.full(dim + 1, 2.0)) @ s.vertices
            t = 0.8 * s.max_centered_scale(p)
            sub = s.centered_subsimplex(p, t)
            assert np.abs(sub.centroid - p).max() < 1e-12
            assert all(s.contains(v) for v in sub.vertices)

    def test_escape_raises(self):
        s = Simplex([[0.0], [1.0]])
        with pytest.raises(SubsimplexEscapesParentError):
            s.centered_subsimplex(np.array([0.25]), 0.51)

    def test_scale_must_be_positive(self):
        s = standard_simplex(2)
        with pytest.raises(ValueError):
            s.centered_subsimplex(s.centroid, 0.0)


class TestContains:
    def test_vertices_and_centroid(self):
        s = standard_simplex(3)
        assert all(s.contains(v) for v in s.vertices)
        assert s.contains(s.centroid)

    def test_outside(self):
        s = standard_simplex(2)
        assert not s.contains(np.array([0.6, 0.6]))

    def test_dimension_mismatch(self):
        s = standard_simplex(2)
        with pytest.raises(DimensionMismatchError):
            s.contains(np.array([0.1, 0.1, 0.1]))


class TestJson:
    def test_round_trip(self):
        rng = np.random.default_rng(11)
        s = random_simplex(4, rng)
        data = s.to_json_dict()
        assert data["dimension"] == 4
        back = Simplex.from_json_dict(data)
        assert_allclose(back.vertices, s.vertices)

    def test_dimension_mismatch_detected(self):
        s = standard_simplex(2)
        data = s.to_json_dict()
        data["dimension"] = 3
        with pytest.raises(DimensionMismatchError):
            Simplex.from_json_dict(data)
