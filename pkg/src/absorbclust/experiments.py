"""Multi-seed comparisons used by the CLI and the acceptance suite."""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from .approx import absorption_rank1, absorption_series, compare, iter_absorption_series
from .descent import default_params, descend, estimate_absorption_from_local
from .graph import Graph
from .markov import absorbing_chain, absorption_exact
from .spectral import dirichlet_fiedler_from_chain

ESTIMATORS = ("rank1", "series", "local")
WORKERS_ENV = "ABSORBCLUST_WORKERS"


def map_ordered(fn: Callable, items: Sequence) -> list:
    """``map`` over a thread pool sized by ``ABSORBCLUST_WORKERS``; order is preserved."""
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def estimate(g: Graph, seed: int, estimator: str, cutoff: int = 100,
             lazy_walk: bool = False) -> np.ndarray:
    """Estimated absorption times over non-seed vertices (increasing id order)."""
    chain = absorbing_chain(g, seed, lazy_walk)
    if estimator == "rank1":
        return absorption_rank1(dirichlet_fiedler_from_chain(chain), chain.degrees).estimate
    if estimator == "series":
        return absorption_series(chain, cutoff).partial
    if estimator == "local":
        fe = descend(g, seed, default_params(g.avg_degree))
        return estimate_absorption_from_local(fe)
    raise ValueError(f"unknown estimator {estimator!r}; expected one of {ESTIMATORS}")


def compare_rows(g: Graph, seeds: Iterable[int], estimators: Sequence[str],
                 cutoff: int = 100, lazy_walk: bool = False) -> list[tuple]:
    """Rows ``(seed, estimator, pearson, sse_per_vertex, max_abs_diff)``."""

    def one(seed):
        exact = absorption_exact(absorbing_chain(g, seed, lazy_walk)).m
        out = []
        for name in estimators:
            rep = compare(exact, estimate(g, seed, name, cutoff, lazy_walk))
            out.append((seed, name, rep.pearson, rep.sse_per_vertex, rep.max_abs_diff))
        return out

    return [row for rows in map_ordered(one, list(seeds)) for row in rows]


def rank1_pearsons(g: Graph, seeds: Iterable[int]) -> np.ndarray:
    return np.array([r[2] for r in compare_rows(g, seeds, ["rank1"])])


def series_trace(g: Graph, seeds: Sequence[int], t_max: int) -> dict[str, np.ndarray]:
    """Per-cutoff SSE (divided by n) and Pearson of series partial sums, mean and std over seeds.

    Also returns the mean SSE and Pearson of the rank-one estimate.
    """

    def one(seed):
        chain = absorbing_chain(g, seed)
        exact = absorption_exact(chain).m
        sse = np.empty(t_max + 1)
        pear = np.empty(t_max + 1)
        for t, partial in iter_absorption_series(chain, t_max):
            rep = compare(exact, partial)
            sse[t], pear[t] = rep.sse_per_vertex, rep.pearson
        r1 = compare(exact, absorption_rank1(dirichlet_fiedler_from_chain(chain),
                                             chain.degrees).estimate)
        return sse, pear, r1.sse_per_vertex, r1.pearson

    res = map_ordered(one, list(seeds))
    sse = np.array([r[0] for r in res])
    pear = np.array([r[1] for r in res])
    with warnings.catch_warnings():
        # Pearson is undefined (NaN) at T = 0 where the partial sum is constant
        warnings.simplefilter("ignore", RuntimeWarning)
        pear_mean = np.nanmean(pear, axis=0)
        pear_std = np.nanstd(pear, axis=0)
    return {
        "T": np.arange(t_max + 1),
        "sse": sse.mean(axis=0),
        "sse_std": sse.std(axis=0),
        "pearson": pear_mean,
        "pearson_std": pear_std,
        "sse_per_seed": sse,
        "rank1_sse": float(np.mean([r[2] for r in res])),
        "rank1_pearson": float(np.mean([r[3] for r in res])),
    }
