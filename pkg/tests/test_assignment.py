import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpiso import (
    Permutation,
    WeightedGraph,
    frucht,
    hungarian_nearest_permutation,
    random_permute,
    verify_permutation,
)

from helpers import path


def brute_force_nearest(P):
    """Exhaustive Frobenius-nearest permutation, the small-n reference."""
    n = P.shape[0]
    best, best_dist = None, np.inf
    for perm in itertools.permutations(range(n)):
        Q = np.zeros((n, n))
        Q[list(perm), range(n)] = 1.0
        d = np.linalg.norm(Q - P)
        if d < best_dist - 1e-12:
            best, best_dist = perm, d
    return best, best_dist


class TestHungarian:
    def test_fixes_permutation_matrices(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            m = rng.permutation(n)
            Q = np.zeros((n, n))
            Q[m, np.arange(n)] = 1.0
            assert np.array_equal(hungarian_nearest_permutation(Q).map, m)

    def test_uniform_ties_break_to_identity(self):
        for n in (1, 2, 5, 8):
            p = hungarian_nearest_permutation(np.ones((n, n)) / n)
            assert p.map.tolist() == list(range(n))

    def test_soft_cycle_snaps_to_identity(self):
        shift = np.roll(np.eye(4), 1, axis=0)
        P = 0.6 * np.eye(4) + 0.4 * shift
        assert hungarian_nearest_permutation(P).map.tolist() == [0, 1, 2, 3]
        # exhaustive check over all 24 assignments agrees
        perm, _ = brute_force_nearest(P)
        assert list(perm) == [0, 1, 2, 3]

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 10_000))
    def test_matches_exhaustive_argmin(self, n, seed):
        rng = np.random.default_rng(seed)
        P = rng.standard_normal((n, n))
        got = hungarian_nearest_permutation(P)
        Q = got.as_matrix()
        _, best_dist = brute_force_nearest(P)
        assert np.linalg.norm(Q - P) <= best_dist + 1e-9

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            hungarian_nearest_permutation(np.array([[np.inf]]))

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError, match="square"):
            hungarian_nearest_permutation(np.zeros((2, 3)))


class TestVerify:
    def test_identity_self_pair(self):
        g = frucht()
        assert verify_permutation(Permutation.identity(12), g, g)

    def test_random_permute_output_verifies(self):
        g = frucht()
        h, q = random_permute(g, 17)
        assert verify_permutation(q, g, h)

    def test_center_moved_fails(self):
        # relabel the 3-path so the center moves: not an isomorphism
        a = path(3)
        b = WeightedGraph(np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]))
        assert not verify_permutation(Permutation.identity(3), a, b)

    def test_inverse_symmetry(self):
        g = frucht()
        h, q = random_permute(g, 23)
        assert verify_permutation(q, g, h)
        assert verify_permutation(q.inverse(), h, g)

    def test_tolerance_modes(self):
        a = WeightedGraph(np.array([[0.0, 1.0], [1.0, 0.0]]))
        b = WeightedGraph(np.array([[0.0, 1.0 + 1e-9], [1.0 + 1e-9, 0.0]]))
        p = Permutation.identity(2)
        assert not verify_permutation(p, a, b, tol=0.0)
        assert verify_permutation(p, a, b, tol=1e-8)

    def test_size_mismatch_raises(self):
        with pytest.raises(ValueError):
            verify_permutation(Permutation.identity(2), path(2), path(3))
