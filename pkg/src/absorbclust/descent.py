"""Local gradient descent on the soft-constrained Dirichlet-Fiedler objective.

Each update reads only a vertex's own value and its neighbours' values, and
only vertices next to a below-one value are ever updated. Starting from the
all-ones vector with the seed pinned at zero, the set of touched vertices
grows outward from the seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, require_connected

DIVERGENCE_BOUND = 1e3


@dataclass(frozen=True)
class DescentParams:
    c: float
    delta: float
    epsilon: float
    max_iters: int = 100_000

    def __post_init__(self):
        if not (self.c > 0 and self.delta > 0 and self.epsilon > 0 and self.max_iters > 0):
            raise ValueError("descent parameters must all be positive")


@dataclass
class FiedlerEstimate:
    seed: int
    v_tilde: np.ndarray
    touched: frozenset[int]
    iterations: int
    final_objective: float
    max_change: float
    converged: bool
    diverged: bool = False
    trace: list[tuple[int, float, int, float]] = field(default_factory=list, repr=False)


def default_params(avg_degree: float, max_iters: int = 100_000) -> DescentParams:
    """``c = 1/avg_degree``, step ``c/10``, stopping threshold ``step/10``."""
    if avg_degree <= 0:
        raise ValueError("average degree must be positive")
    c = 1.0 / avg_degree
    delta = c / 10
    return DescentParams(c, delta, delta / 10, max_iters)


def _check_pinned(v: np.ndarray, seed: int) -> None:
    if v[seed] != 0:
        raise ValueError("seed value must be 0")


def objective(g: Graph, seed: int, v, c: float) -> float:
    v = np.asarray(v, dtype=float)
    _check_pinned(v, seed)
    edges = np.array(g.edges(), dtype=int).reshape(-1, 2)
    smooth = 0.5 * np.sum((v[edges[:, 0]] - v[edges[:, 1]]) ** 2)
    return float(smooth + 0.5 * c * (g.n - v @ v))


def _neighbour_sums(g: Graph, v: np.ndarray) -> np.ndarray:
    return np.array([v[list(nbrs)].sum() if nbrs else 0.0 for nbrs in g.adjacency])


def gradient(g: Graph, seed: int, v, c: float) -> np.ndarray:
    """Partial derivatives of the objective; the pinned seed gets 0."""
    v = np.asarray(v, dtype=float)
    _check_pinned(v, seed)
    grad = -_neighbour_sums(g, v) + (g.degrees - c) * v
    grad[seed] = 0.0
    return grad


def plain_rayleigh_quotient(g: Graph, seed: int, v) -> float:
    """Unweighted quotient ``sum_edges (v_i - v_j)^2 / sum_i v_i^2`` with the seed pinned."""
    v = np.asarray(v, dtype=float)
    _check_pinned(v, seed)
    num = sum((v[i] - v[j]) ** 2 for i, j in g.edges())
    return float(num / (v @ v))


def local_step(g: Graph, seed: int, v, c: float, delta: float,
               _a=None) -> tuple[np.ndarray, np.ndarray]:
    """One synchronous update; returns the new vector and the active-vertex mask."""
    v = np.asarray(v, dtype=float)
    a = g.adjacency_matrix() if _a is None else _a
    active = (a @ (v < 1).astype(float)) > 0
    active[seed] = False
    new = v.copy()
    new[active] += delta * (a @ v - (g.degrees - c) * v)[active]
    return new, active


def descend(g: Graph, seed: int, params: DescentParams | None = None,
            record_trace: bool = False) -> FiedlerEstimate:
    """Synchronous sweeps of the local update until every change is below epsilon.

    A vertex is active at step t when some neighbour held a value below 1
    after step t-1. Vertices never activated keep their initial value 1.
    """
    require_connected(g)
    if not 0 <= seed < g.n:
        raise ValueError(f"seed {seed} is not a vertex")
    if params is None:
        params = default_params(g.avg_degree)
    a = g.adjacency_matrix()
    c, delta = params.c, params.delta

    v = np.ones(g.n)
    v[seed] = 0.0
    touched = np.zeros(g.n, dtype=bool)
    trace = []
    change = np.inf
    converged = diverged = False
    t = 0
    while t < params.max_iters:
        new, active = local_step(g, seed, v, c, delta, _a=a)
        change = float(np.max(np.abs(new - v)))
        v = new
        touched |= active
        t += 1
        if record_trace:
            trace.append((t, change, int(touched.sum()), objective(g, seed, v, c)))
        if np.max(np.abs(v)) > DIVERGENCE_BOUND:
            diverged = True
            break
        if change < params.epsilon:
            converged = True
            break
    return FiedlerEstimate(
        seed=seed,
        v_tilde=v,
        touched=frozenset(np.flatnonzero(touched).tolist()),
        iterations=t,
        final_objective=objective(g, seed, v, c),
        max_change=change,
        converged=converged,
        diverged=diverged,
        trace=trace,
    )


def estimate_absorption_from_local(fe: FiedlerEstimate, degrees=None,
                                   lambda1: float | None = None,
                                   c_prime: float | None = None) -> np.ndarray:
    """Affine map ``1 + c' * v`` over the non-seed vertices.

    With ``lambda1`` and ``degrees`` the local vector is rescaled to unit
    degree-weighted norm and ``c'`` is formed as in the rank-one
    approximation. An explicit ``c_prime`` is used as given. With neither,
    ``c' = 1``: the result then only preserves ordering and affine-invariant
    statistics, which is all classification needs.
    """
    v = np.delete(fe.v_tilde, fe.seed)
    if lambda1 is not None:
        if degrees is None:
            raise ValueError("degrees are needed to form c' from lambda1")
        d = np.delete(np.asarray(degrees, dtype=float), fe.seed)
        norm = np.sqrt(np.sum(d * v * v))
        if norm == 0:
            return np.ones_like(v)
        vhat = v / norm
        return 1.0 + lambda1 / (1.0 - lambda1) * (vhat @ d) * vhat
    if c_prime is None:
        c_prime = 1.0
    return 1.0 + c_prime * v
