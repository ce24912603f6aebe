"""Small graph builders shared across the test modules."""

from __future__ import annotations

import heapq

import numpy as np

from lpiso import WeightedGraph
from lpiso.graphs import make_rng


def cycle(n: int) -> WeightedGraph:
    A = np.zeros((n, n))
    for i in range(n):
        j = (i + 1) % n
        A[i, j] = A[j, i] = 1.0
    return WeightedGraph(A)


def path(n: int) -> WeightedGraph:
    A = np.zeros((n, n))
    for i in range(n - 1):
        A[i, i + 1] = A[i + 1, i] = 1.0
    return WeightedGraph(A)


def star(leaves: int) -> WeightedGraph:
    """Hub-and-spokes graph on leaves + 1 vertices, hub first."""
    n = leaves + 1
    A = np.zeros((n, n))
    A[0, 1:] = 1.0
    A[1:, 0] = 1.0
    return WeightedGraph(A)


def complete(n: int) -> WeightedGraph:
    A = np.ones((n, n)) - np.eye(n)
    return WeightedGraph(A)


def disjoint_union(*graphs: WeightedGraph) -> WeightedGraph:
    n = sum(g.n for g in graphs)
    A = np.zeros((n, n))
    at = 0
    for g in graphs:
        A[at : at + g.n, at : at + g.n] = g.adj
        at += g.n
    return WeightedGraph(A)


def random_tree(n: int, seed: int) -> WeightedGraph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n == 1:
        return WeightedGraph(np.zeros((1, 1)))
    if n == 2:
        return path(2)
    rng = make_rng(seed)
    seq = rng.integers(0, n, size=n - 2)
    deg = np.ones(n, dtype=int)
    for v in seq:
        deg[v] += 1
    A = np.zeros((n, n))
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        A[leaf, v] = A[v, leaf] = 1.0
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    A[u, w] = A[w, u] = 1.0
    return WeightedGraph(A)


def friendly_graph(n: int, seed: int, min_gap: float = 1e-2, min_overlap: float = 1e-2) -> WeightedGraph:
    """Random symmetric matrix with well-separated eigenvalues, none of whose
    eigenvectors is orthogonal to the all-ones vector; resamples until both
    margins hold."""
    rng = make_rng(seed)
    one = np.ones(n)
    while True:
        M = rng.standard_normal((n, n))
        A = (M + M.T) / 2.0
        w, V = np.linalg.eigh(A)
        if np.diff(w).min() > min_gap and np.abs(V.T @ one).min() > min_overlap:
            return WeightedGraph(A)
