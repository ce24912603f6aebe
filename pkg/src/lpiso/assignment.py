"""Rounding a relaxed solution to a permutation, and exact verification."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._validation import check_equal_order
from .graphs import Permutation, WeightedGraph

__all__ = ["hungarian_nearest_permutation", "verify_permutation"]


def hungarian_nearest_permutation(P: np.ndarray) -> Permutation:
    """Frobenius-nearest permutation matrix to ``P`` via linear assignment.

    For permutation matrices Q, ||Q - P||_F^2 = const - 2 Tr(Q^T P), so the
    nearest permutation maximizes the assignment profit P.  Ties resolve
    deterministically (lowest row index first); a constant matrix yields the
    identity.
    """
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {P.shape}")
    if not np.isfinite(P).all():
        raise ValueError("matrix contains non-finite entries")
    rows, cols = linear_sum_assignment(P, maximize=True)
    mapping = np.empty(P.shape[0], dtype=np.intp)
    mapping[cols] = rows
    return Permutation(mapping)


def verify_permutation(
    p: Permutation, a: WeightedGraph, b: WeightedGraph, tol: float = 0.0
) -> bool:
    """True iff relabelling ``a`` by ``p`` reproduces ``b`` within ``tol``.

    With integral weights and tol=0 the check is exact.
    """
    check_equal_order(a.n, b.n)
    if p.n != a.n:
        raise ValueError("permutation size does not match the graphs")
    m = p.map
    relabelled = b.adj[np.ix_(m, m)]
    if tol == 0.0:
        return bool(np.array_equal(relabelled, a.adj))
    return bool(np.abs(relabelled - a.adj).max() <= tol)
