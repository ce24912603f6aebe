"""Scikit-learn style front end for the isomorphism solver."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_adjacency
from .admm import AdmmParams
from .graphs import WeightedGraph
from .pipeline import SolveConfig, solve_gip

__all__ = ["IsomorphismSolver"]


def _as_graph(X) -> WeightedGraph:
    if isinstance(X, WeightedGraph):
        return X
    return WeightedGraph(check_adjacency(X))


class IsomorphismSolver(BaseEstimator):
    """Randomized LP heuristic for weighted graph isomorphism.

    Follows the estimator protocol: construction only stores parameters,
    :meth:`fit` takes the two adjacency matrices and exposes the outcome via
    trailing-underscore attributes, and ``get_params``/``set_params`` make
    the solver clonable and grid-searchable.

    Parameters mirror :class:`~lpiso.pipeline.SolveConfig`.

    Attributes
    ----------
    verdict_ : str
        "isomorphic", "not_isomorphic", or "unknown".
    permutation_ : numpy.ndarray or None
        Vertex mapping (``permutation_[j] = i`` sends j of the first graph
        to i of the second) when an isomorphism was found and verified.
    reason_ : str or None
        Certificate behind a "not_isomorphic" verdict.
    report_ : SolveReport
        Full per-restart diagnostics.
    """

    def __init__(
        self,
        restarts: int = 50,
        seed: int = 0,
        use_mask: bool = True,
        use_pruning: bool = True,
        max_iter: int = 5000,
        eps_primal: float = 1e-7,
        eps_dual: float = 1e-7,
        spectra_tol: float = 1e-6,
        mask_tol: float = 1e-6,
        verify_tol: float | None = None,
    ):
        self.restarts = restarts
        self.seed = seed
        self.use_mask = use_mask
        self.use_pruning = use_pruning
        self.max_iter = max_iter
        self.eps_primal = eps_primal
        self.eps_dual = eps_dual
        self.spectra_tol = spectra_tol
        self.mask_tol = mask_tol
        self.verify_tol = verify_tol

    def _config(self) -> SolveConfig:
        return SolveConfig(
            restarts=self.restarts,
            seed=self.seed,
            use_mask=self.use_mask,
            use_pruning=self.use_pruning,
            admm=AdmmParams(
                max_iter=self.max_iter,
                eps_primal=self.eps_primal,
                eps_dual=self.eps_dual,
            ),
            spectra_tol=self.spectra_tol,
            mask_tol=self.mask_tol,
            verify_tol=self.verify_tol,
        )

    def fit(self, A, B):
        """Solve the instance (A, B); returns self."""
        a = _as_graph(A)
        b = _as_graph(B)
        report = solve_gip(a, b, self._config())
        self.report_ = report
        self.verdict_ = report.verdict
        self.reason_ = report.reason
        self.permutation_ = (
            None if report.permutation is None else np.array(report.permutation.map)
        )
        return self

    def fit_predict(self, A, B) -> np.ndarray | None:
        """Solve and return the vertex mapping, or None if none was found."""
        return self.fit(A, B).permutation_
