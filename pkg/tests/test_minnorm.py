import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nsopt.minnorm import certificate_gap, min_norm_in_hull, project_simplex
from oracles import brute_force_min_norm

# k <= 5 vectors of length n <= 4, entries in [-2, 2]
gradient_sets = st.tuples(st.integers(1, 5), st.integers(1, 4)).flatmap(
    lambda kn: arrays(np.float64, kn, elements=st.floats(-2, 2, allow_subnormal=False))
)


def check_invariants(G, sol):
    assert np.all(sol.lam >= 0)
    assert abs(sol.lam.sum() - 1) <= 1e-10
    np.testing.assert_allclose(sol.g_star, sol.lam @ G, atol=1e-14)
    assert sol.norm == pytest.approx(np.linalg.norm(sol.g_star), abs=1e-15)
    nn = sol.norm ** 2
    assert np.all(G @ sol.g_star >= nn - 1e-8 * (1 + nn))


class TestExamples:
    def test_singleton(self):
        g = np.array([3.0, -1.0])
        sol = min_norm_in_hull([g])
        np.testing.assert_array_equal(sol.g_star, g)
        np.testing.assert_array_equal(sol.lam, [1.0])

    def test_opposite_pair(self):
        sol = min_norm_in_hull([[3.0, 4.0], [-3.0, -4.0]])
        assert sol.norm == 0.0
        np.testing.assert_array_equal(sol.g_star, [0.0, 0.0])

    def test_unit_vectors(self):
        sol = min_norm_in_hull([[1.0, 0.0], [0.0, 1.0]])
        np.testing.assert_allclose(sol.g_star, [0.5, 0.5], atol=1e-15)
        np.testing.assert_allclose(sol.lam, [0.5, 0.5], atol=1e-15)
        assert sol.norm == pytest.approx(np.sqrt(2) / 2, abs=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            min_norm_in_hull(np.zeros((0, 3)))

    def test_all_zero(self):
        assert min_norm_in_hull(np.zeros((3, 2))).norm == 0.0

    def test_degenerate_collinear(self):
        G = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [-1.0, -1.0]])
        sol = min_norm_in_hull(G)
        assert sol.norm <= 1e-12
        check_invariants(G, sol)

    def test_near_identical_gradients(self):
        # bundles of a smooth function near a point look like this
        rng = np.random.default_rng(3)
        G = np.array([1.0, -2.0, 0.5]) + 1e-9 * rng.standard_normal((12, 3))
        sol = min_norm_in_hull(G)
        check_invariants(G, sol)
        assert sol.norm == pytest.approx(np.linalg.norm([1.0, -2.0, 0.5]), rel=1e-6)


class TestProjectSimplex:
    @given(arrays(np.float64, st.integers(1, 8), elements=st.floats(-10, 10)))
    def test_lands_on_simplex(self, v):
        p = project_simplex(v)
        assert np.all(p >= 0)
        assert abs(p.sum() - 1) <= 1e-12

    def test_fixed_point(self):
        v = np.array([0.2, 0.3, 0.5])
        np.testing.assert_allclose(project_simplex(v), v)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(gradient_sets)
    def test_invariants(self, G):
        sol = min_norm_in_hull(G)
        check_invariants(G, sol)
        assert certificate_gap(G, sol.lam) <= 1e-8

    @settings(max_examples=100, deadline=None)
    @given(gradient_sets, st.data())
    def test_duplicate_does_not_change_norm(self, G, data):
        i = data.draw(st.integers(0, G.shape[0] - 1))
        a = min_norm_in_hull(G).norm
        b = min_norm_in_hull(np.vstack([G, G[i]])).norm
        assert abs(a - b) <= 1e-10

    @settings(max_examples=100, deadline=None)
    @given(gradient_sets)
    def test_not_above_any_vertex(self, G):
        assert min_norm_in_hull(G).norm <= np.min(np.linalg.norm(G, axis=1)) + 1e-12

    @settings(max_examples=40, deadline=None)
    @given(gradient_sets)
    def test_matches_brute_force(self, G):
        ref, _ = brute_force_min_norm(G)
        assert abs(min_norm_in_hull(G).norm - ref) <= 1e-5

    @settings(max_examples=50, deadline=None)
    @given(gradient_sets, st.floats(1e-6, 1e6))
    def test_scale_equivariant(self, G, s):
        a = min_norm_in_hull(G).norm
        b = min_norm_in_hull(s * G).norm
        assert b == pytest.approx(s * a, rel=1e-6, abs=1e-9 * s)
