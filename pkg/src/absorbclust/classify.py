"""Bipartitions from score vectors, cut quality, and the local clustering pipeline."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .approx import absorption_rank1, absorption_series
from .descent import DescentParams, descend
from .graph import Graph, require_connected
from .markov import absorbing_chain, absorption_exact
from .spectral import dirichlet_fiedler_from_chain

METHODS = ("exact-absorption", "rank1", "series", "local-descent")
CLASSIFIERS = ("kmeans", "median")


class DegenerateScoresError(ValueError):
    """Scores carry no information to split on."""


@dataclass(frozen=True)
class CutResult:
    in_cluster: frozenset[int]
    capacity: int
    vol_s: float
    vol_sbar: float
    ncut: float
    threshold: float
    seed: int | None = None
    method: str | None = None
    classifier: str | None = None
    low_quality: bool = False

    def to_json_dict(self, g: Graph) -> dict:
        out = asdict(self)
        out.pop("in_cluster")
        out["members"] = sorted(g.label_of(v) for v in self.in_cluster)
        if self.seed is not None:
            out["seed"] = g.label_of(self.seed)
        return out


def two_means_1d(scores) -> tuple[np.ndarray, float]:
    """Optimal two-cluster k-means on the real line.

    Scans every split of the sorted values, so the result is the global
    optimum. Returns a boolean mask of the low-valued class and the midpoint
    threshold between the two classes.
    """
    x = np.asarray(scores, dtype=float)
    if x.size < 2 or np.ptp(x) == 0:
        raise DegenerateScoresError("need at least two distinct values")
    order = np.argsort(x, kind="stable")
    xs = x[order]
    n = xs.size
    csum = np.cumsum(xs)
    csq = np.cumsum(xs * xs)
    k = np.arange(1, n)
    left = csq[:-1] - csum[:-1] ** 2 / k
    right = (csq[-1] - csq[:-1]) - (csum[-1] - csum[:-1]) ** 2 / (n - k)
    cost = left + right
    cost[xs[:-1] == xs[1:]] = np.inf  # never split between equal values
    split = int(np.argmin(cost)) + 1
    low = np.zeros(n, dtype=bool)
    low[order[:split]] = True
    return low, 0.5 * (xs[split - 1] + xs[split])


def cut_capacity(g: Graph, s_set) -> int:
    s = _as_mask(g, s_set)
    return sum(1 for i, j in g.edges() if s[i] != s[j])


def _as_mask(g: Graph, s_set) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    mask[list(s_set)] = True
    if not mask.any() or mask.all():
        raise ValueError("cut side must be a nonempty proper subset")
    return mask


def normalized_cut(g: Graph, s_set) -> float:
    mask = _as_mask(g, s_set)
    cap = cut_capacity(g, s_set)
    return cap / g.degrees[mask].sum() + cap / g.degrees[~mask].sum()


def make_cut(g: Graph, s_set, threshold: float, **meta) -> CutResult:
    mask = _as_mask(g, s_set)
    cap = cut_capacity(g, s_set)
    vol_s = float(g.degrees[mask].sum())
    vol_sbar = float(g.degrees[~mask].sum())
    return CutResult(frozenset(np.flatnonzero(mask).tolist()), cap, vol_s, vol_sbar,
                     cap / vol_s + cap / vol_sbar, float(threshold), **meta)


def _median_split(scores: np.ndarray) -> tuple[np.ndarray, float]:
    theta = float(np.median(scores))
    above = scores > theta
    below = scores < theta
    ties = ~(above | below)
    # the whole tie group joins the smaller side, the low side on equality
    if above.sum() < below.sum():
        above |= ties
    return above, theta


def bipartition_by_median(g: Graph, fiedler) -> CutResult:
    """Vertices above the median go to S; values at the median join the smaller side."""
    x = np.asarray(fiedler, dtype=float)
    if x.size != g.n or x.size < 2:
        raise ValueError("need one value per vertex and at least two vertices")
    above, theta = _median_split(x)
    if not above.any() or above.all():
        raise DegenerateScoresError("median split leaves one side empty")
    return make_cut(g, np.flatnonzero(above), theta)


def score_vector(g: Graph, seed: int, method: str = "exact-absorption", *,
                 cutoff: int = 100, params: DescentParams | None = None,
                 lazy_walk: bool = False) -> np.ndarray:
    """Per-vertex proximity scores for ``seed``; the seed itself scores 0."""
    if method == "local-descent":
        return descend(g, seed, params).v_tilde.copy()
    chain = absorbing_chain(g, seed, lazy_walk)
    if method == "exact-absorption":
        vals = absorption_exact(chain).m
    elif method == "rank1":
        vals = absorption_rank1(dirichlet_fiedler_from_chain(chain), chain.degrees).estimate
    elif method == "series":
        vals = absorption_series(chain, cutoff).partial
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    out = np.zeros(g.n)
    out[chain.index] = vals
    return out


def classify_scores(g: Graph, seed: int, scores, classifier: str = "kmeans",
                    max_ncut: float = 0.5, **meta) -> CutResult:
    scores = np.asarray(scores, dtype=float)
    rest = np.delete(scores, seed)
    if rest.size == 0 or np.ptp(rest) == 0:
        raise DegenerateScoresError("all non-seed vertices have the same score")
    if classifier == "kmeans":
        low, threshold = two_means_1d(scores)
    elif classifier == "median":
        high, threshold = _median_split(scores)
        low = ~high
    else:
        raise ValueError(f"unknown classifier {classifier!r}; expected one of {CLASSIFIERS}")
    low[seed] = True
    if low.all():
        raise DegenerateScoresError("classification put every vertex in the cluster")
    cut = make_cut(g, np.flatnonzero(low), threshold, seed=seed, classifier=classifier, **meta)
    flag = len(cut.in_cluster) < 2 or cut.ncut > max_ncut
    return replace(cut, low_quality=flag)


def local_cluster(g: Graph, seed: int, method: str = "exact-absorption",
                  classifier: str = "kmeans", *, cutoff: int = 100,
                  params: DescentParams | None = None, lazy_walk: bool = False,
                  max_ncut: float = 0.5) -> CutResult:
    """Cluster of ``seed``: low-score class of the chosen score vector.

    ``low_quality`` is set when the cluster is the seed alone or its
    normalised cut exceeds ``max_ncut``.
    """
    require_connected(g)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    scores = score_vector(g, seed, method, cutoff=cutoff, params=params, lazy_walk=lazy_walk)
    return classify_scores(g, seed, scores, classifier, max_ncut, method=method)
