"""Exhaustive isomorphism search for small graphs.

This is deliberately simple test-support machinery: backtracking in
lexicographic order with degree-sequence filtering only, so its failure modes
do not correlate with the solver's.
"""

from __future__ import annotations

import numpy as np

from ._validation import check_equal_order
from .graphs import Permutation, WeightedGraph

__all__ = ["brute_force_isomorphism", "all_isomorphisms"]

DEFAULT_LIMIT = 10


def _candidates(a: WeightedGraph, b: WeightedGraph, tol: float) -> list[list[int]] | None:
    """Per-vertex candidate images filtered by weighted degree and self-loop."""
    da, db = a.degrees(), b.degrees()
    la, lb = np.diag(a.adj), np.diag(b.adj)
    if not np.allclose(np.sort(da), np.sort(db), rtol=0.0, atol=tol):
        return None
    cands = []
    for j in range(a.n):
        imgs = [
            i
            for i in range(b.n)
            if abs(da[j] - db[i]) <= tol and abs(la[j] - lb[i]) <= tol
        ]
        if not imgs:
            return None
        cands.append(imgs)
    return cands


def _search(a: WeightedGraph, b: WeightedGraph, limit: int, tol: float, find_all: bool):
    check_equal_order(a.n, b.n)
    if a.n > limit:
        raise ValueError(f"graph order {a.n} exceeds brute-force limit {limit}")
    A, B = a.adj, b.adj
    n = a.n
    cands = _candidates(a, b, tol)
    found: list[Permutation] = []
    if cands is None:
        return found
    image = np.full(n, -1, dtype=np.intp)
    used = np.zeros(n, dtype=bool)

    def extend(j: int) -> bool:
        if j == n:
            found.append(Permutation(image.copy()))
            return not find_all
        for i in cands[j]:
            if used[i]:
                continue
            ok = True
            for u in range(j):
                if abs(B[i, image[u]] - A[j, u]) > tol:
                    ok = False
                    break
            if ok:
                image[j] = i
                used[i] = True
                if extend(j + 1):
                    return True
                used[i] = False
        image[j] = -1
        return False

    extend(0)
    return found


def brute_force_isomorphism(
    a: WeightedGraph, b: WeightedGraph, limit: int = DEFAULT_LIMIT, tol: float = 0.0
) -> Permutation | None:
    """First isomorphism from ``a`` to ``b`` in lexicographic order, or None."""
    found = _search(a, b, limit, tol, find_all=False)
    return found[0] if found else None


def all_isomorphisms(
    a: WeightedGraph, b: WeightedGraph, limit: int = DEFAULT_LIMIT, tol: float = 0.0
) -> list[Permutation]:
    """Every isomorphism from ``a`` to ``b``, in lexicographic order."""
    return _search(a, b, limit, tol, find_all=True)
