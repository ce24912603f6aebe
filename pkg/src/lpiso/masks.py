"""Forbidden-entry masks from vertex invariants.

A mask records which entries of the sought permutation matrix are provably
zero: ``allowed[i, j]`` is False when no isomorphism can send vertex j of the
first graph to vertex i of the second.  Any vector equality ``P a = b`` that
every valid permutation must satisfy forbids the pairs with ``a[j] != b[i]``.
Two invariant families are used: walk counts (with the self-loop vector) and
eigenspace projector statistics.  An arc-consistency pass can then prune
pairs whose neighbourhoods cannot be matched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_equal_order
from .graphs import Spectrum, WeightedGraph
from .oracle import all_isomorphisms

__all__ = [
    "ORIGIN_DEGREE",
    "ORIGIN_SPECTRAL",
    "ORIGIN_PRUNING",
    "SparsityMask",
    "MaskOptions",
    "degree_mask",
    "spectral_mask",
    "prune",
    "construct_K",
    "max_mask_oracle",
]

ORIGIN_ALLOWED = 0
ORIGIN_DEGREE = 1
ORIGIN_SPECTRAL = 2
ORIGIN_PRUNING = 3

REASON_WALK_NORM = "walk_norm_mismatch"


@dataclass
class SparsityMask:
    """Boolean matrix of permitted permutation entries with per-entry origin
    tags recording which invariant forbade each entry."""

    allowed: np.ndarray
    origin: np.ndarray | None = None
    reason: str | None = None

    def __post_init__(self):
        self.allowed = np.ascontiguousarray(self.allowed, dtype=bool)
        if self.origin is None:
            self.origin = np.zeros(self.allowed.shape, dtype=np.uint8)

    @classmethod
    def all_allowed(cls, n: int) -> "SparsityMask":
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def none_allowed(cls, n: int, origin_tag: int, reason: str | None = None) -> "SparsityMask":
        return cls(
            np.zeros((n, n), dtype=bool),
            np.full((n, n), origin_tag, dtype=np.uint8),
            reason,
        )

    @property
    def n(self) -> int:
        return self.allowed.shape[0]

    @property
    def allowed_count(self) -> int:
        return int(self.allowed.sum())

    @property
    def sparsity_ratio(self) -> float:
        """Fraction of entries that may be nonzero (1 means no constraint)."""
        return self.allowed_count / float(self.n * self.n)

    def infeasible(self) -> bool:
        """True iff some row or column permits nothing."""
        return bool((~self.allowed.any(axis=0)).any() or (~self.allowed.any(axis=1)).any())

    def copy(self) -> "SparsityMask":
        return SparsityMask(self.allowed.copy(), self.origin.copy(), self.reason)

    def forbid(self, kill: np.ndarray, origin_tag: int) -> None:
        """Disallow the entries where ``kill`` is True, tagging new ones."""
        new = self.allowed & kill
        self.origin[new] = origin_tag
        self.allowed &= ~kill

    def intersect(self, other: "SparsityMask") -> "SparsityMask":
        """Union of the forbidden sets; earlier origin tags win."""
        allowed = self.allowed & other.allowed
        origin = self.origin.copy()
        take = (origin == ORIGIN_ALLOWED) & ~other.allowed
        origin[take] = other.origin[take]
        return SparsityMask(allowed, origin, self.reason or other.reason)

    def to_text(self) -> str:
        """0/1 matrix dump with a summary line, for diagnostics."""
        lines = [" ".join("1" if v else "0" for v in row) for row in self.allowed]
        lines.append(f"allowed={self.allowed_count} ratio={self.sparsity_ratio:.6f}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MaskOptions:
    degree: bool = True
    spectral: bool = True
    pruning: bool = True
    tol: float = 1e-6
    max_power: int | None = None  # walk-count powers; defaults to n


def _allowed_by_values(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """allowed[i, j] iff a[j] matches b[i] within a relative tolerance."""
    scale = 1.0 + np.maximum(np.abs(b)[:, None], np.abs(a)[None, :])
    return np.abs(b[:, None] - a[None, :]) <= tol * scale


def degree_mask(
    a: WeightedGraph,
    b: WeightedGraph,
    tol: float = 1e-6,
    max_power: int | None = None,
) -> SparsityMask:
    """Mask from self-loop weights and walk-count vectors A^k 1, k = 1..n.

    Higher powers add nothing (each A^k is a linear combination of the first
    n powers), so the loop stops at ``max_power`` (default n).  Walk vectors
    are built by repeated matrix-vector products and the pair is jointly
    rescaled each step so weighted graphs cannot overflow; if the rescaled
    vectors' magnitudes drift apart the graphs cannot be isomorphic (a
    permutation preserves the multiset of entries) and the mask is closed
    with reason ``walk_norm_mismatch``.
    """
    check_equal_order(a.n, b.n)
    n = a.n
    kmax = n if max_power is None else max_power
    mask = SparsityMask.all_allowed(n)
    mask.forbid(~_allowed_by_values(np.diag(a.adj), np.diag(b.adj), tol), ORIGIN_DEGREE)
    if mask.infeasible():
        return mask
    one = np.ones(n)
    va = a.adj @ one
    vb = b.adj @ one
    for _ in range(kmax):
        na = np.abs(va).max()
        nb = np.abs(vb).max()
        s = max(na, nb, 1.0)
        va /= s
        vb /= s
        mask.forbid(~_allowed_by_values(va, vb, tol), ORIGIN_DEGREE)
        if mask.infeasible():
            return mask
        if abs(na - nb) > tol * max(na, nb, 1.0):
            return SparsityMask.none_allowed(n, ORIGIN_DEGREE, REASON_WALK_NORM)
        va = a.adj @ va
        vb = b.adj @ vb
    return mask


def spectral_mask(sa: Spectrum, sb: Spectrum, tol: float = 1e-6) -> SparsityMask:
    """Mask from eigenspace projectors, one aligned eigenvalue group at a time.

    For each group with basis V the diagonal of V V^T and the row sums
    V V^T 1 are invariant vectors.  Powers of projectors are idempotent, so
    only the first power carries information.
    """
    check_equal_order(sa.n, sb.n)
    if sa.multiplicities() != sb.multiplicities():
        raise ValueError(
            f"mismatched eigenvalue group structure: "
            f"{sa.multiplicities()} vs {sb.multiplicities()}"
        )
    mask = SparsityMask.all_allowed(sa.n)
    for ga, gb in zip(sa.groups, sb.groups):
        Va, Vb = ga.basis, gb.basis
        diag_a = (Va * Va).sum(axis=1)
        diag_b = (Vb * Vb).sum(axis=1)
        mask.forbid(~_allowed_by_values(diag_a, diag_b, tol), ORIGIN_SPECTRAL)
        rows_a = Va @ Va.sum(axis=0)
        rows_b = Vb @ Vb.sum(axis=0)
        mask.forbid(~_allowed_by_values(rows_a, rows_b, tol), ORIGIN_SPECTRAL)
        if mask.infeasible():
            break
    return mask


def _weight_classes(a: WeightedGraph, b: WeightedGraph, tol: float) -> list[float]:
    """Distinct nonzero edge weights of both graphs, merged within tolerance."""
    vals = np.concatenate([a.adj[a.adj != 0.0].ravel(), b.adj[b.adj != 0.0].ravel()])
    if vals.size == 0:
        return []
    vals = np.unique(vals)
    reps = [float(vals[0])]
    for w in vals[1:]:
        if abs(w - reps[-1]) > tol * (1.0 + abs(w)):
            reps.append(float(w))
    return reps


def prune(
    mask: SparsityMask, a: WeightedGraph, b: WeightedGraph, tol: float = 1e-6
) -> SparsityMask:
    """Arc-consistency refinement of a mask.

    Pair (i, j) survives only if every neighbour of j in the first graph has
    some allowed image among the equal-weight neighbours of i in the second,
    and symmetrically every neighbour of i has some allowed preimage.  The
    pass repeats until a fixpoint; the result is always a subset of the
    input.
    """
    check_equal_order(a.n, b.n)
    out = mask.copy()
    if out.infeasible():
        return out
    classes = _weight_classes(a, b, tol)
    nbr_a = [
        (np.abs(a.adj - w) <= tol * (1.0 + abs(w))).astype(float) for w in classes
    ]
    nbr_b = [
        (np.abs(b.adj - w) <= tol * (1.0 + abs(w))).astype(float) for w in classes
    ]
    changed = True
    while changed:
        changed = False
        F = out.allowed.astype(float)
        for Na, Nb in zip(nbr_a, nbr_b):
            support = Nb @ F  # support[i, j'] = count of allowed (i', j') with i' ~ i
            dead_fwd = ((support == 0.0).astype(float) @ Na) > 0.0
            backing = F @ Na  # backing[i', j] = count of allowed (i', j') with j' ~ j
            dead_bwd = (Nb @ (backing == 0.0).astype(float)) > 0.0
            kill = out.allowed & (dead_fwd | dead_bwd)
            if kill.any():
                out.forbid(kill, ORIGIN_PRUNING)
                if out.infeasible():
                    return out
                F = out.allowed.astype(float)
                changed = True
    return out


def construct_K(
    a: WeightedGraph,
    b: WeightedGraph,
    spectra: tuple[Spectrum, Spectrum] | None = None,
    options: MaskOptions = MaskOptions(),
) -> SparsityMask:
    """Combined mask: walk-count and projector invariants, optionally pruned.

    Callers are expected to have already confirmed that the two spectra
    agree; the spectral part is skipped if ``spectra`` is None.
    """
    check_equal_order(a.n, b.n)
    mask = SparsityMask.all_allowed(a.n)
    if options.degree:
        mask = mask.intersect(degree_mask(a, b, options.tol, options.max_power))
        if mask.infeasible():
            return mask
    if options.spectral and spectra is not None:
        mask = mask.intersect(spectral_mask(spectra[0], spectra[1], options.tol))
        if mask.infeasible():
            return mask
    if options.pruning:
        mask = prune(mask, a, b, options.tol)
    return mask


def max_mask_oracle(a: WeightedGraph, b: WeightedGraph, limit: int = 10) -> SparsityMask:
    """Exact maximal mask by enumerating all isomorphisms (small n only).

    ``allowed[i, j]`` iff some isomorphism sends j to i; all-False when the
    graphs are not isomorphic.
    """
    isos = all_isomorphisms(a, b, limit=limit)
    allowed = np.zeros((a.n, a.n), dtype=bool)
    cols = np.arange(a.n)
    for p in isos:
        allowed[p.map, cols] = True
    return SparsityMask(allowed)
