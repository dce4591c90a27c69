"""Random-walk transition matrices, absorbing chains and absorption times."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .graph import Graph, require_connected

RESIDUAL_TOL = 1e-8
_WALK_BATCH = 16384


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix stored as CSR."""

    matrix: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()


@dataclass(frozen=True)
class AbsorbingChain:
    """Transient block ``q`` of the walk with ``seed`` made absorbing.

    Row ``r`` of ``q`` corresponds to graph vertex ``index[r]``.
    """

    seed: int
    q: sp.csr_matrix
    index: np.ndarray
    degrees: np.ndarray  # degrees of the non-seed vertices, aligned with index

    @property
    def size(self) -> int:
        return len(self.index)

    def row_of(self, vertex: int) -> int:
        pos = int(np.searchsorted(self.index, vertex))
        if pos >= len(self.index) or self.index[pos] != vertex:
            raise KeyError(f"vertex {vertex} is the seed or out of range")
        return pos

    def p_hat(self) -> np.ndarray:
        """Dense full transition matrix with the seed row replaced by e_seed."""
        n = self.size + 1
        full = np.zeros((n, n))
        full[np.ix_(self.index, self.index)] = self.q.toarray()
        full[self.index, self.seed] = 1.0 - np.asarray(self.q.sum(axis=1)).ravel()
        full[self.seed, self.seed] = 1.0
        return full


@dataclass(frozen=True)
class AbsorptionVector:
    """Expected steps to absorption at ``seed`` for each vertex in ``index``."""

    seed: int
    m: np.ndarray
    index: np.ndarray

    def full(self) -> np.ndarray:
        """Length-n vector with a zero inserted at the seed."""
        out = np.zeros(len(self.m) + 1)
        out[self.index] = self.m
        return out


def transition_matrix(g: Graph) -> TransitionMatrix:
    if np.any(g.degrees == 0):
        raise ValueError("isolated vertex: transition probabilities undefined")
    a = g.adjacency_matrix()
    return TransitionMatrix(sp.csr_matrix(sp.diags(1.0 / g.degrees) @ a))


def lazy(p: TransitionMatrix) -> TransitionMatrix:
    m = 0.5 * (sp.identity(p.n, format="csr") + p.matrix)
    return TransitionMatrix(sp.csr_matrix(m))


def absorbing_chain(g: Graph, seed: int, lazy_walk: bool = False) -> AbsorbingChain:
    if not 0 <= seed < g.n:
        raise ValueError(f"seed {seed} is not a vertex")
    require_connected(g)
    p = transition_matrix(g)
    if lazy_walk:
        p = lazy(p)
    index = np.delete(np.arange(g.n), seed)
    q = p.matrix[index][:, index].tocsr()
    return AbsorbingChain(seed, q, index, g.degrees[index].copy())


def absorption_exact(chain: AbsorbingChain) -> AbsorptionVector:
    """Solve ``(I - Q) m = 1`` by sparse LU."""
    k = chain.size
    system = (sp.identity(k, format="csc") - chain.q).tocsc()
    ones = np.ones(k)
    with warnings.catch_warnings():
        warnings.simplefilter("error", spla.MatrixRankWarning)
        try:
            m = np.atleast_1d(spla.spsolve(system, ones))
        except (spla.MatrixRankWarning, RuntimeError) as exc:
            raise np.linalg.LinAlgError("absorbing system is singular") from exc
    if not np.all(np.isfinite(m)):
        raise np.linalg.LinAlgError("absorbing system is singular")
    residual = np.max(np.abs(system @ m - ones))
    if residual > RESIDUAL_TOL:
        raise np.linalg.LinAlgError(f"solver residual {residual:.3g} exceeds {RESIDUAL_TOL}")
    return AbsorptionVector(chain.seed, m, chain.index)


def absorption_residual(chain: AbsorbingChain, av: AbsorptionVector) -> float:
    return float(np.max(np.abs(av.m - chain.q @ av.m - 1.0)))


def absorption_matrix(g: Graph, lazy_walk: bool = False) -> np.ndarray:
    """Column ``j`` holds absorption times to seed ``j``; the diagonal is zero."""
    out = np.zeros((g.n, g.n))
    for j in range(g.n):
        out[:, j] = absorption_exact(absorbing_chain(g, j, lazy_walk)).full()
    return out


@dataclass(frozen=True)
class SimulationResult:
    mean: float
    stderr: float
    truncated: int
    completed: int


def simulate_absorption(g: Graph, seed: int, start: int, walks: int,
                        max_steps: int = 10**6, rng_seed: int = 0) -> SimulationResult:
    """Monte-Carlo estimate of the absorption time from ``start`` to ``seed``.

    Walks run in fixed-size batches; batch ``b`` draws from
    ``SeedSequence([rng_seed, b])`` so results do not depend on scheduling.
    Walks that exceed ``max_steps`` are counted as truncated and excluded.
    """
    if start == seed:
        raise ValueError("start vertex must differ from the seed")
    if walks < 1:
        raise ValueError("walks must be >= 1")
    if np.any(g.degrees == 0):
        raise ValueError("isolated vertex: random walk undefined")
    a = g.adjacency_matrix()
    indptr, indices = a.indptr, a.indices
    deg = np.diff(indptr)

    lengths = []
    truncated = 0
    for b, lo in enumerate(range(0, walks, _WALK_BATCH)):
        size = min(_WALK_BATCH, walks - lo)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([rng_seed, b])))
        pos = np.full(size, start)
        steps = np.zeros(size, dtype=np.int64)
        alive = np.ones(size, dtype=bool)
        for t in range(1, max_steps + 1):
            idx = np.flatnonzero(alive)
            if idx.size == 0:
                break
            cur = pos[idx]
            pick = (rng.random(idx.size) * deg[cur]).astype(np.int64)
            nxt = indices[indptr[cur] + pick]
            pos[idx] = nxt
            hit = nxt == seed
            steps[idx[hit]] = t
            alive[idx[hit]] = False
        truncated += int(alive.sum())
        lengths.append(steps[~alive])
    done = np.concatenate(lengths)
    if done.size == 0:
        return SimulationResult(float("nan"), float("nan"), truncated, 0)
    mean = float(done.mean())
    stderr = float(done.std(ddof=1) / np.sqrt(done.size)) if done.size > 1 else 0.0
    return SimulationResult(mean, stderr, truncated, int(done.size))
