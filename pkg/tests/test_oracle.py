import numpy as np
import pytest

from lpiso import (
    WeightedGraph,
    all_isomorphisms,
    brute_force_isomorphism,
    frucht,
    petersen,
    random_permute,
    verify_permutation,
)

from helpers import cycle, disjoint_union, star


def test_self_pair_returns_identity_first():
    g = cycle(5)
    p = brute_force_isomorphism(g, g)
    assert p is not None
    assert p.map.tolist() == [0, 1, 2, 3, 4]


def test_permuted_pair_found_and_verifies():
    g = WeightedGraph(np.array([[0, 1, 0, 0, 0, 1],
                                [1, 0, 1, 0, 0, 0],
                                [0, 1, 0, 1, 0, 0],
                                [0, 0, 1, 0, 1, 0],
                                [0, 0, 0, 1, 0, 0],
                                [1, 0, 0, 0, 0, 0]], dtype=float))
    h, _ = random_permute(g, 3)
    p = brute_force_isomorphism(g, h)
    assert p is not None
    assert verify_permutation(p, g, h)


def test_cospectral_non_isomorphic_pair():
    assert brute_force_isomorphism(star(4), disjoint_union(cycle(4), WeightedGraph(np.zeros((1, 1))))) is None


def test_limit_enforced():
    g = frucht()
    with pytest.raises(ValueError, match="limit"):
        brute_force_isomorphism(g, g)
    assert brute_force_isomorphism(g, g, limit=12) is not None


def test_all_isomorphisms_singleton():
    g = WeightedGraph(np.zeros((1, 1)))
    isos = all_isomorphisms(g, g)
    assert len(isos) == 1 and isos[0].map.tolist() == [0]


def test_triangle_has_six_automorphisms():
    isos = all_isomorphisms(cycle(3), cycle(3))
    assert len(isos) == 6
    maps = {tuple(p.map.tolist()) for p in isos}
    assert len(maps) == 6  # all of S_3


def test_petersen_has_120_automorphisms():
    g = petersen()
    isos = all_isomorphisms(g, g)
    assert len(isos) == 120
    assert all(verify_permutation(p, g, g) for p in isos)


def test_frucht_automorphism_group_trivial():
    g = frucht()
    isos = all_isomorphisms(g, g, limit=12)
    assert len(isos) == 1


def test_weighted_graphs_distinguished():
    a = WeightedGraph(np.array([[0.0, 2.0], [2.0, 0.0]]))
    b = WeightedGraph(np.array([[0.0, 3.0], [3.0, 0.0]]))
    assert brute_force_isomorphism(a, b) is None
