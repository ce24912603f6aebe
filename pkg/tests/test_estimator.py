import numpy as np
import pytest
from sklearn.base import clone

from lpiso import IsomorphismSolver, frucht, random_permute, solve_gip
from lpiso.pipeline import SolveConfig

from helpers import cycle, disjoint_union


def test_params_round_trip():
    est = IsomorphismSolver(restarts=7, seed=5, use_mask=False)
    params = est.get_params()
    assert params["restarts"] == 7 and params["seed"] == 5 and not params["use_mask"]
    est2 = IsomorphismSolver().set_params(**params)
    assert est2.get_params() == params


def test_clone_preserves_params():
    est = IsomorphismSolver(restarts=3, eps_primal=1e-6)
    assert clone(est).get_params() == est.get_params()


def test_fit_sets_attributes():
    g = frucht()
    h, _ = random_permute(g, 2)
    est = IsomorphismSolver(restarts=5, seed=1).fit(g.adj, h.adj)
    assert est.verdict_ == "isomorphic"
    assert est.reason_ is None
    relabelled = h.adj[np.ix_(est.permutation_, est.permutation_)]
    assert np.array_equal(relabelled, g.adj)
    assert est.report_.wall_time_s > 0


def test_fit_accepts_graph_objects():
    g = frucht()
    h, _ = random_permute(g, 2)
    est = IsomorphismSolver(restarts=5, seed=1).fit(g, h)
    assert est.verdict_ == "isomorphic"


def test_fit_predict_none_for_non_isomorphic():
    a = cycle(6)
    b = disjoint_union(cycle(3), cycle(3))
    est = IsomorphismSolver(restarts=2, seed=0)
    assert est.fit_predict(a.adj, b.adj) is None
    assert est.verdict_ == "not_isomorphic"
    assert est.reason_ == "spectra_mismatch"


def test_matches_functional_path():
    g = frucht()
    h, _ = random_permute(g, 7)
    est = IsomorphismSolver(restarts=4, seed=9).fit(g, h)
    rep = solve_gip(g, h, SolveConfig(restarts=4, seed=9))
    assert est.verdict_ == rep.verdict
    assert np.array_equal(est.permutation_, rep.permutation.map)


def test_validation_rejects_asymmetric_input():
    with pytest.raises(ValueError, match="symmetric"):
        IsomorphismSolver().fit(np.array([[0.0, 1.0], [2.0, 0.0]]), np.zeros((2, 2)))
