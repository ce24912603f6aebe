"""Input validation helpers for adjacency matrices."""

from __future__ import annotations

import numpy as np


def check_adjacency(X, *, symmetry_tol: float = 1e-8) -> np.ndarray:
    """Validate an array-like as a weighted adjacency matrix.

    Accepts anything convertible to a square float matrix, requires finite
    entries and symmetry up to ``symmetry_tol`` (relative to the magnitude of
    the largest entry), and returns an exactly symmetric float64 copy.
    """
    A = np.asarray(X, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValueError("adjacency matrix must have at least one vertex")
    if not np.isfinite(A).all():
        raise ValueError("adjacency matrix contains non-finite entries")
    scale = 1.0 + np.abs(A).max()
    asym = np.abs(A - A.T).max()
    if asym > symmetry_tol * scale:
        raise ValueError(
            f"adjacency matrix is not symmetric (max |A - A.T| = {asym:.3e})"
        )
    # (A + A.T) / 2 is bitwise symmetric because IEEE addition commutes.
    return (A + A.T) / 2.0


def check_equal_order(n_a: int, n_b: int) -> None:
    """Raise if two graphs do not have the same number of vertices."""
    if n_a != n_b:
        raise ValueError(f"graphs must have the same order, got {n_a} and {n_b}")
