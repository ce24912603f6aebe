"""Weighted graphs, symmetric eigendecompositions, and benchmark generators.

All randomness is drawn from numpy's counter-based Philox generator, keyed
explicitly by the caller-supplied seed, so every generator below is
reproducible across platforms for a fixed numpy version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_adjacency, check_equal_order

__all__ = [
    "WeightedGraph",
    "Permutation",
    "EigenGroup",
    "Spectrum",
    "make_rng",
    "spectrum",
    "default_grouping_tol",
    "spectra_equal",
    "apply_permutation",
    "random_permute",
    "erdos_renyi",
    "grid2d",
    "frucht",
    "petersen",
]


def make_rng(seed) -> np.random.Generator:
    """Counter-based generator (Philox) keyed by an int or SeedSequence."""
    return np.random.Generator(np.random.Philox(seed))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph stored as a symmetric dense matrix.

    ``adj[i, j]`` is the weight of edge {i, j}; zero means no edge.  Nonzero
    diagonal entries are self-loops.  The matrix must be exactly symmetric
    and finite; use :meth:`from_array` to symmetrize nearly symmetric input.
    """

    adj: np.ndarray

    def __post_init__(self):
        A = np.ascontiguousarray(self.adj, dtype=np.float64)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
            raise ValueError(f"adjacency must be square and non-empty, got {A.shape}")
        if not np.isfinite(A).all():
            raise ValueError("adjacency contains non-finite entries")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be exactly symmetric; see from_array()")
        object.__setattr__(self, "adj", _freeze(A))

    @classmethod
    def from_array(cls, X, *, symmetry_tol: float = 1e-8) -> "WeightedGraph":
        """Build a graph from array-like input, symmetrizing within tolerance."""
        return cls(check_adjacency(X, symmetry_tol=symmetry_tol))

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def num_edges(self) -> int:
        """Number of edges, counting self-loops once."""
        off = int(np.count_nonzero(np.triu(self.adj, 1)))
        loops = int(np.count_nonzero(np.diag(self.adj)))
        return off + loops

    def degrees(self) -> np.ndarray:
        """Weighted degree vector ``adj @ 1``."""
        return self.adj @ np.ones(self.n)

    def is_integral(self) -> bool:
        return bool(np.array_equal(self.adj, np.round(self.adj)))


@dataclass(frozen=True)
class Permutation:
    """Vertex bijection; ``map[j] = i`` sends vertex j of the first graph
    to vertex i of the second (matrix entry P[i, j] = 1)."""

    map: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.map, dtype=np.intp)
        if m.ndim != 1 or not np.array_equal(np.sort(m), np.arange(m.size)):
            raise ValueError("permutation map must be a bijection on 0..n-1")
        object.__setattr__(self, "map", _freeze(m))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return self.map.size

    def inverse(self) -> "Permutation":
        return Permutation(np.argsort(self.map))

    def as_matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n))
        P[self.map, np.arange(self.n)] = 1.0
        return P


@dataclass(frozen=True)
class EigenGroup:
    """One eigenvalue with its multiplicity and an orthonormal eigenbasis."""

    value: float
    multiplicity: int
    basis: np.ndarray  # n x multiplicity, orthonormal columns


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues grouped by numerical multiplicity, sorted ascending."""

    groups: tuple[EigenGroup, ...]
    grouping_tol: float

    @property
    def n(self) -> int:
        return sum(g.multiplicity for g in self.groups)

    def values(self) -> np.ndarray:
        return np.array([g.value for g in self.groups])

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(g.multiplicity for g in self.groups)

    def spectral_radius(self) -> float:
        return float(np.abs(self.values()).max())


def default_grouping_tol(eigenvalues: np.ndarray) -> float:
    """Gap below which adjacent eigenvalues are merged into one group."""
    return 1e-6 * max(1.0, float(np.abs(eigenvalues).max()))


def spectrum(g: WeightedGraph, grouping_tol: float | None = None) -> Spectrum:
    """Symmetric eigendecomposition with multiplicity grouping.

    Eigenvalues are sorted ascending; a chain of consecutive eigenvalues whose
    gaps are all at most ``grouping_tol`` forms a single group.  The group
    value is the mean of its members and the basis is the corresponding slice
    of the orthonormal eigenvector matrix.
    """
    w, V = np.linalg.eigh(g.adj)
    if grouping_tol is None:
        grouping_tol = default_grouping_tol(w)
    groups = []
    start = 0
    for i in range(1, w.size + 1):
        if i == w.size or w[i] - w[i - 1] > grouping_tol:
            basis = _freeze(np.ascontiguousarray(V[:, start:i]))
            groups.append(EigenGroup(float(w[start:i].mean()), i - start, basis))
            start = i
    return Spectrum(tuple(groups), grouping_tol)


def spectra_equal(sa: Spectrum, sb: Spectrum, tol: float = 1e-6) -> bool:
    """True iff eigenvalues match group by group within ``tol`` and
    multiplicities match exactly."""
    check_equal_order(sa.n, sb.n)
    if len(sa.groups) != len(sb.groups):
        return False
    for ga, gb in zip(sa.groups, sb.groups):
        if ga.multiplicity != gb.multiplicity:
            return False
        if abs(ga.value - gb.value) > tol:
            return False
    return True


def apply_permutation(g: WeightedGraph, perm: Permutation) -> WeightedGraph:
    """Relabel vertices: returns the graph with adjacency P A P^T, exactly."""
    inv = perm.inverse().map
    return WeightedGraph(g.adj[np.ix_(inv, inv)])


def random_permute(g: WeightedGraph, seed) -> tuple[WeightedGraph, Permutation]:
    """Relabel ``g`` by a uniformly random permutation drawn from ``seed``."""
    q = Permutation(make_rng(seed).permutation(g.n))
    return apply_permutation(g, q), q


def erdos_renyi(n: int, p: float, seed) -> WeightedGraph:
    """G(n, p) random graph with 0/1 weights; deterministic for fixed seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = make_rng(seed)
    A = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    hit = rng.random(iu[0].size) < p
    A[iu[0][hit], iu[1][hit]] = 1.0
    return WeightedGraph(A + A.T)


def grid2d(rows: int, cols: int) -> WeightedGraph:
    """Open rows x cols grid with unit weights (4-neighbour mesh)."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    n = rows * cols
    A = np.zeros((n, n))
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                A[v, v + 1] = A[v + 1, v] = 1.0
            if r + 1 < rows:
                A[v, v + cols] = A[v + cols, v] = 1.0
    return WeightedGraph(A)


# LCF notation of the Frucht graph: a Hamiltonian cycle on 12 vertices plus
# one chord per vertex.
_FRUCHT_LCF = (-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2)


def frucht() -> WeightedGraph:
    """The Frucht graph: cubic, 12 vertices, 18 edges, no nontrivial
    automorphisms."""
    n = 12
    A = np.zeros((n, n))
    for i in range(n):
        j = (i + 1) % n
        A[i, j] = A[j, i] = 1.0
        k = (i + _FRUCHT_LCF[i]) % n
        A[i, k] = A[k, i] = 1.0
    return WeightedGraph(A)


def petersen() -> WeightedGraph:
    """The Petersen graph: cubic, 10 vertices, 15 edges, girth 5."""
    A = np.zeros((10, 10))
    for i in range(5):
        j = (i + 1) % 5
        A[i, j] = A[j, i] = 1.0  # outer cycle
        A[5 + i, 5 + (i + 2) % 5] = A[5 + (i + 2) % 5, 5 + i] = 1.0  # pentagram
        A[i, 5 + i] = A[5 + i, i] = 1.0  # spokes
    return WeightedGraph(A)
