"""Consensus ADMM for the masked doubly-stochastic commutant program.

The program solved is

    minimize    Tr(W^T P)
    subject to  P A = B P,  P 1 = 1,  P^T 1 = 1,  P >= 0,
                P[i, j] = 0 for forbidden entries,

split into three blocks (row sums, column sums, nonnegativity plus the
mask) that are consensus-coupled through a variable Z constrained to the
commutant subspace {Z : Z A = B Z}.  With orthonormal eigenbases
A = V L V^T and B = V~ L V~^T sharing the eigenvalue ordering, the
projection onto that subspace is V~ ((V~^T M V) o R) V^T where R keeps the
blocks of equal eigenvalues.  Every update is closed-form; the projection
is the only O(n^3) step.

The penalty parameter is fixed at 1: rescaling it is equivalent to
rescaling W, and W is normalized so that |W| averages to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Spectrum, WeightedGraph, make_rng
from .masks import SparsityMask

__all__ = [
    "Direction",
    "AdmmParams",
    "AdmmState",
    "RelaxedSolution",
    "sample_direction",
    "commutant_projector_mask",
    "CommutantProjector",
    "project_commutant",
    "admm_solve",
]

# Residuals must stay under tolerance this many consecutive iterations
# before convergence is declared, guarding against oscillation.
CONVERGENCE_STREAK = 5


@dataclass(frozen=True)
class Direction:
    """Random objective matrix, normalized so mean |entry| is 1."""

    matrix: np.ndarray
    seed: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if abs(np.abs(m).mean() - 1.0) > 1e-12:
            raise ValueError("direction must be scaled to unit mean absolute entry")
        object.__setattr__(self, "matrix", m)


def sample_direction(n: int, seed: int) -> Direction:
    """Gaussian direction scaled so the absolute entries average to 1."""
    if n < 1:
        raise ValueError("n must be positive")
    W = make_rng(seed).standard_normal((n, n))
    W /= np.abs(W).mean()
    return Direction(W, seed)


@dataclass(frozen=True)
class AdmmParams:
    """Iteration and stopping controls.

    Tolerances are Frobenius-norm thresholds scaled by n at runtime.  Zero
    tolerances are accepted and make the solver run to ``max_iter``, which
    the timing harness uses to pin iteration counts.  The penalty parameter
    is fixed at 1 by construction.
    """

    max_iter: int = 5000
    eps_primal: float = 1e-7
    eps_dual: float = 1e-7
    rho: float = 1.0

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.eps_primal < 0 or self.eps_dual < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.rho != 1.0:
            raise ValueError("the penalty parameter is fixed at 1; rescale W instead")


@dataclass
class AdmmState:
    """The seven iterates plus residual history."""

    P1: np.ndarray
    P2: np.ndarray
    P3: np.ndarray
    Z: np.ndarray
    Y1: np.ndarray
    Y2: np.ndarray
    Y3: np.ndarray
    iterations: int = 0
    primal_residuals: list[float] = field(default_factory=list)
    dual_residuals: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class RelaxedSolution:
    """Converged (or last) consensus iterate and solve metadata."""

    P: np.ndarray
    converged: bool
    iterations: int
    primal_residual: float
    dual_residual: float
    history: tuple[tuple[int, float, float], ...] | None = None


def commutant_projector_mask(sa: Spectrum, sb: Spectrum) -> np.ndarray:
    """Boolean matrix keeping coefficient (i, j) iff eigenvalues i and j of
    the ordered eigenbasis fall in the same multiplicity group."""
    if sa.multiplicities() != sb.multiplicities():
        raise ValueError("spectra must share the same group structure")
    gid = np.concatenate(
        [np.full(g.multiplicity, k) for k, g in enumerate(sa.groups)]
    )
    return gid[:, None] == gid[None, :]


class CommutantProjector:
    """Orthogonal projector onto {Z : Z A = B Z}, reusable across solves.

    Holds the assembled eigenbases of both graphs; instances are read-only
    and safe to share between concurrent solves.
    """

    def __init__(self, sa: Spectrum, sb: Spectrum):
        self.keep = commutant_projector_mask(sa, sb).astype(np.float64)
        self.basis_a = np.hstack([g.basis for g in sa.groups])
        self.basis_b = np.hstack([g.basis for g in sb.groups])
        self.n = sa.n

    def project(self, M: np.ndarray) -> np.ndarray:
        C = (self.basis_b.T @ M @ self.basis_a) * self.keep
        return self.basis_b @ C @ self.basis_a.T


def project_commutant(
    M: np.ndarray, sa: Spectrum, sb: Spectrum, keep: np.ndarray | None = None
) -> np.ndarray:
    """One-shot orthogonal projection of M onto {Z : Z A = B Z}."""
    proj = CommutantProjector(sa, sb)
    if keep is not None:
        proj.keep = np.asarray(keep, dtype=np.float64)
    return proj.project(M)


def _balanced_start(S: np.ndarray, iters: int = 50, imbalance_tol: float = 1e-3) -> np.ndarray:
    """Sinkhorn-balance the mask support toward a doubly stochastic start.

    Falls back to S/n when the support admits no balanced scaling.
    """
    M = S.copy()
    for _ in range(iters):
        M /= M.sum(axis=1, keepdims=True)
        M /= M.sum(axis=0, keepdims=True)
    err = max(np.abs(M.sum(axis=1) - 1.0).max(), np.abs(M.sum(axis=0) - 1.0).max())
    if not np.isfinite(err) or err > imbalance_tol:
        return S / S.shape[0]
    return M


def _fnorm(M: np.ndarray) -> float:
    return float(np.sqrt(np.dot(M.ravel(), M.ravel())))


def admm_solve(
    a: WeightedGraph,
    b: WeightedGraph,
    spectra: tuple[Spectrum, Spectrum],
    mask: SparsityMask | None,
    direction,
    params: AdmmParams | None = None,
    projector: CommutantProjector | None = None,
    record_history: bool = False,
) -> RelaxedSolution:
    """Run the consensus iteration until both residuals pass or max_iter.

    ``direction`` may be a :class:`Direction` or a raw matrix (the objective
    scale does not change the minimizer).  ``projector`` lets callers share
    the assembled eigenbases across restarts.  Raises on an infeasible mask;
    hitting ``max_iter`` is reported with ``converged=False``, not raised.
    """
    params = params or AdmmParams()
    n = a.n
    if mask is not None and mask.infeasible():
        raise ValueError("mask is infeasible; the graphs are not isomorphic")
    if projector is None:
        projector = CommutantProjector(*spectra)
    W = direction.matrix if isinstance(direction, Direction) else np.asarray(direction, float)
    if W.shape != (n, n):
        raise ValueError(f"direction shape {W.shape} does not match n={n}")

    S = np.ones((n, n)) if mask is None else mask.allowed.astype(np.float64)
    V = projector.basis_a
    Vt = projector.basis_b
    R = projector.keep
    Wh = W / 2.0
    one = np.ones(n)
    eps_primal = params.eps_primal * n
    eps_dual = params.eps_dual * n

    Z = _balanced_start(S)
    state = AdmmState(
        P1=Z.copy(), P2=Z.copy(), P3=Z.copy(), Z=Z,
        Y1=np.zeros((n, n)), Y2=np.zeros((n, n)), Y3=np.zeros((n, n)),
    )
    P1, P2, P3 = state.P1, state.P2, state.P3
    Y1, Y2, Y3 = state.Y1, state.Y2, state.Y3

    # Contiguous transposes for the GEMM chain, plus reusable work buffers.
    VT = np.ascontiguousarray(V.T)
    VtT = np.ascontiguousarray(Vt.T)
    T = np.empty((n, n))
    U1 = np.empty((n, n))
    U2 = np.empty((n, n))
    Znew = np.empty((n, n))

    history: list[tuple[int, float, float]] = []
    streak = 0
    converged = False
    it = 0
    prim = dual = float("inf")
    for it in range(1, params.max_iter + 1):
        # Row-sum block: shift by the objective and dual, then restore row sums.
        np.subtract(Z, Wh, out=T)
        np.subtract(T, Y1, out=P1)
        r = P1 @ one
        r -= 1.0
        r /= n
        P1 -= r[:, None]
        # Column-sum block, symmetric to the above.
        np.subtract(T, Y2, out=P2)
        c = one @ P2
        c -= 1.0
        c /= n
        P2 -= c[None, :]
        # Nonnegativity and mask block.
        np.subtract(Z, Y3, out=P3)
        np.maximum(P3, 0.0, out=P3)
        P3 *= S
        # Consensus: average the blocks and project onto the commutant.
        np.add(P1, P2, out=T)
        T += P3
        T /= 3.0
        np.matmul(VtT, T, out=U1)
        np.matmul(U1, V, out=U2)
        U2 *= R
        np.matmul(Vt, U2, out=U1)
        np.matmul(U1, VT, out=Znew)
        # Dual ascent; P blocks double as residual scratch afterwards.
        P1 -= Znew
        Y1 += P1
        P2 -= Znew
        Y2 += P2
        P3 -= Znew
        Y3 += P3
        prim = max(_fnorm(P1), _fnorm(P2), _fnorm(P3))
        np.subtract(Znew, Z, out=T)
        dual = _fnorm(T)
        Z[:] = Znew
        if record_history:
            history.append((it, prim, dual))
        if prim == 0.0 and dual == 0.0:
            converged = True
            break
        if prim <= eps_primal and dual <= eps_dual:
            streak += 1
            if streak >= CONVERGENCE_STREAK:
                converged = True
                break
        else:
            streak = 0

    state.iterations = it
    state.primal_residuals.append(prim)
    state.dual_residuals.append(dual)
    return RelaxedSolution(
        P=Z.copy(),
        converged=converged,
        iterations=it,
        primal_residual=prim,
        dual_residual=dual,
        history=tuple(history) if record_history else None,
    )
