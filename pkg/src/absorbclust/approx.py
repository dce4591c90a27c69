"""Spectral approximations of absorption times and comparison metrics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .markov import AbsorbingChain, AbsorptionVector
from .spectral import DirichletFiedler


@dataclass(frozen=True)
class SeriesEstimate:
    seed: int
    cutoff: int
    partial: np.ndarray
    index: np.ndarray


@dataclass(frozen=True)
class Rank1Estimate:
    seed: int
    lambda1: float
    estimate: np.ndarray
    c_prime: float
    index: np.ndarray


@dataclass(frozen=True)
class CompareReport:
    pearson: float
    sse_per_vertex: float
    max_abs_diff: float
    constant_exact: bool = False


def iter_absorption_series(chain: AbsorbingChain, cutoff: int):
    """Yield ``(T, sum_{t<=T} Q^t 1)`` for T = 0..cutoff.

    Each step is one sparse mat-vec; the yielded array is a fresh copy.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    term = np.ones(chain.size)
    total = term.copy()
    yield 0, total.copy()
    for t in range(1, cutoff + 1):
        term = chain.q @ term
        total += term
        yield t, total.copy()


def absorption_series(chain: AbsorbingChain, cutoff: int) -> SeriesEstimate:
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    term = np.ones(chain.size)
    total = term.copy()
    for _ in range(cutoff):
        term = chain.q @ term
        total += term
    return SeriesEstimate(chain.seed, cutoff, total, chain.index)


def absorption_rank1(df: DirichletFiedler, degrees: np.ndarray) -> Rank1Estimate:
    """Keep only the principal term of the spectral expansion of ``m``.

    ``degrees`` is either the full degree vector or the one restricted to
    the non-seed vertices.
    """
    lam = df.lambda1
    if lam >= 1 - 1e-12:
        raise ValueError(f"principal eigenvalue {lam} is not below 1: chain is not absorbing")
    d = np.asarray(degrees, dtype=float)
    if d.shape[0] == len(df.v) + 1:
        d = d[df.index]
    c1 = float(df.v @ d)
    c_prime = lam / (1.0 - lam) * c1
    return Rank1Estimate(df.seed, lam, 1.0 + c_prime * df.v, c_prime, df.index)


def compare(exact, est) -> CompareReport:
    """Pearson correlation, SSE per vertex and max deviation of ``est`` from ``exact``."""
    if isinstance(exact, AbsorptionVector):
        exact = exact.m
    x = np.asarray(exact, dtype=float)
    y = np.asarray(est, dtype=float)
    if x.shape != y.shape:
        raise ValueError("exact and estimate must have equal length")
    if x.size < 2:
        raise ValueError("need at least two values")
    diff = y - x
    sse = float(diff @ diff / x.size)
    maxdiff = float(np.max(np.abs(diff)))
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return CompareReport(float("nan"), sse, maxdiff, constant_exact=bool(np.ptp(x) == 0))
    r = float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))
    return CompareReport(r, sse, maxdiff)


def spectrum_profile(chain: AbsorbingChain) -> np.ndarray:
    """Eigenvalues of the absorbing transition matrix, decreasing."""
    return np.sort(np.linalg.eigvals(chain.p_hat()).real)[::-1]


def largest_gap_position(values: np.ndarray, top: int = 10) -> int:
    """1-based k such that ``values[k-1] - values[k]`` is the largest gap among the first ``top``."""
    gaps = -np.diff(np.asarray(values)[:top])
    return int(np.argmax(gaps)) + 1
