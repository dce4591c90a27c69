"""scikit-learn style wrappers.

Both estimators take the graph as a square 0/1 adjacency matrix (dense or
scipy sparse), the same convention as ``affinity="precomputed"`` elsewhere in
scikit-learn. A :class:`~absorbclust.graph.Graph` is accepted too.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .classify import CLASSIFIERS, METHODS, classify_scores, score_vector
from .descent import DescentParams, default_params
from .graph import Graph, require_connected


def check_graph(X) -> Graph:
    """Validate an adjacency matrix and convert it to a :class:`Graph`."""
    if isinstance(X, Graph):
        return X
    a = check_array(X, accept_sparse="csr", dtype=np.float64, ensure_min_samples=2,
                    ensure_min_features=2)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    a = sp.csr_matrix(a)
    if (a != a.T).nnz:
        raise ValueError("adjacency matrix must be symmetric")
    if a.diagonal().any():
        raise ValueError("adjacency matrix must have a zero diagonal")
    if np.any(a.data != 1):
        raise ValueError("adjacency matrix entries must be 0 or 1")
    a.sort_indices()
    adjacency = tuple(tuple(a.indices[a.indptr[i]:a.indptr[i + 1]].tolist())
                      for i in range(a.shape[0]))
    return Graph(a.shape[0], adjacency)


def _check_seed(seed, n: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed < n:
        raise ValueError(f"seed must be a vertex index in [0, {n}), got {seed!r}")
    return int(seed)


class _SeedScoreMixin:
    def _descent_params(self, g: Graph) -> DescentParams:
        base = default_params(self.avg_degree or g.avg_degree)
        return DescentParams(
            c=self.c if self.c is not None else base.c,
            delta=self.delta if self.delta is not None else base.delta,
            epsilon=self.epsilon if self.epsilon is not None else base.epsilon,
            max_iters=self.max_iters,
        )

    def _scores(self, g: Graph) -> np.ndarray:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        require_connected(g)
        seed = _check_seed(self.seed, g.n)
        params = self._descent_params(g) if self.method == "local-descent" else None
        return score_vector(g, seed, self.method, cutoff=self.cutoff, params=params,
                            lazy_walk=self.lazy_walk)


class AbsorptionTimes(_SeedScoreMixin, TransformerMixin, BaseEstimator):
    """Per-vertex absorption-time scores towards a seed vertex.

    ``transform`` returns an ``(n_vertices, 1)`` column with 0 at the seed.

    Parameters
    ----------
    seed : int
        Index of the absorbing vertex.
    method : {"exact-absorption", "rank1", "series", "local-descent"}
    cutoff : int
        Number of series terms for ``method="series"``.
    lazy_walk : bool
        Use the lazy walk ``(I + P) / 2``.
    c, delta, epsilon, avg_degree, max_iters
        Local descent settings; unset values follow the average-degree
        heuristic.
    """

    def __init__(self, seed=0, method="exact-absorption", cutoff=100, lazy_walk=False,
                 c=None, delta=None, epsilon=None, avg_degree=None, max_iters=100_000):
        self.seed = seed
        self.method = method
        self.cutoff = cutoff
        self.lazy_walk = lazy_walk
        self.c = c
        self.delta = delta
        self.epsilon = epsilon
        self.avg_degree = avg_degree
        self.max_iters = max_iters

    def fit(self, X, y=None):
        g = check_graph(X)
        self.graph_ = g
        self.n_features_in_ = g.n
        self.scores_ = self._scores(g)
        return self

    def transform(self, X):
        check_is_fitted(self, "scores_")
        g = check_graph(X)
        if g.n != self.n_features_in_:
            raise ValueError(f"X has {g.n} vertices, estimator was fitted on {self.n_features_in_}")
        scores = self.scores_ if g == self.graph_ else self._scores(g)
        return scores.reshape(-1, 1)


class LocalClusterer(_SeedScoreMixin, ClusterMixin, BaseEstimator):
    """Two-class local clustering around a seed vertex.

    After ``fit``, ``labels_[i]`` is 1 for vertices in the seed's cluster and
    0 otherwise; ``cut_`` holds the :class:`~absorbclust.classify.CutResult`.
    """

    def __init__(self, seed=0, method="exact-absorption", classifier="kmeans", cutoff=100,
                 lazy_walk=False, c=None, delta=None, epsilon=None, avg_degree=None,
                 max_iters=100_000, max_ncut=0.5):
        self.seed = seed
        self.method = method
        self.classifier = classifier
        self.cutoff = cutoff
        self.lazy_walk = lazy_walk
        self.c = c
        self.delta = delta
        self.epsilon = epsilon
        self.avg_degree = avg_degree
        self.max_iters = max_iters
        self.max_ncut = max_ncut

    def fit(self, X, y=None):
        if self.classifier not in CLASSIFIERS:
            raise ValueError(f"classifier must be one of {CLASSIFIERS}, got {self.classifier!r}")
        g = check_graph(X)
        self.n_features_in_ = g.n
        self.scores_ = self._scores(g)
        self.cut_ = classify_scores(g, self.seed, self.scores_, self.classifier,
                                    self.max_ncut, method=self.method)
        labels = np.zeros(g.n, dtype=int)
        labels[list(self.cut_.in_cluster)] = 1
        self.labels_ = labels
        return self
