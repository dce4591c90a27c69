"""Laplacians, symmetric eigendecomposition and (Dirichlet-)Fiedler vectors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, require_connected
from .markov import AbsorbingChain, absorbing_chain

SYMMETRY_TOL = 1e-10
DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class SpectralPair:
    value: float
    vector: np.ndarray
    matrix_tag: str = ""


@dataclass(frozen=True)
class DirichletFiedler:
    """Principal eigenpair of the seed-deleted walk.

    ``u`` is the unit eigenvector of the symmetrised block, ``v = u / sqrt(d)``
    the matching eigenvector of the walk block. Both are indexed like
    ``index`` (all vertices except the seed).
    """

    seed: int
    lambda1: float
    v: np.ndarray
    u: np.ndarray
    index: np.ndarray
    degenerate: bool = False

    def full_v(self) -> np.ndarray:
        out = np.zeros(len(self.v) + 1)
        out[self.index] = self.v
        return out


def laplacian(g: Graph) -> np.ndarray:
    a = g.adjacency_matrix().toarray()
    return np.diag(g.degrees) - a


def normalized_transition(g: Graph) -> np.ndarray:
    if np.any(g.degrees == 0):
        raise ValueError("isolated vertex: normalised matrices undefined")
    s = 1.0 / np.sqrt(g.degrees)
    return g.adjacency_matrix().toarray() * np.outer(s, s)


def normalized_laplacian(g: Graph) -> np.ndarray:
    return np.identity(g.n) - normalized_transition(g)


def curly_q(chain: AbsorbingChain) -> np.ndarray:
    """Symmetrised transient block ``D^(1/2) Q D^(-1/2)``."""
    root = np.sqrt(chain.degrees)
    return chain.q.toarray() * np.outer(root, 1.0 / root)


def eig_symmetric(m, tag: str = "") -> list[SpectralPair]:
    """Eigenpairs of a dense symmetric matrix, largest eigenvalue first."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    if asym > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    w, u = np.linalg.eigh(0.5 * (m + m.T))
    order = np.argsort(-w, kind="stable")
    return [SpectralPair(float(w[k]), u[:, k].copy(), tag) for k in order]


def _first_nonzero_positive(x: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    nz = np.flatnonzero(np.abs(x) > tol)
    if nz.size and x[nz[0]] < 0:
        return -x
    return x


@dataclass(frozen=True)
class SpectrumReport:
    p_hat: np.ndarray
    q: np.ndarray
    max_discrepancy: float
    unmatched: np.ndarray
    max_eigvec_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return (self.max_discrepancy <= self.tol and self.max_eigvec_residual <= self.tol
                and self.unmatched.size == 1 and abs(self.unmatched[0] - 1.0) <= self.tol)


def spectrum_identity_check(g: Graph, seed: int, tol: float = 1e-7) -> SpectrumReport:
    """Compare the spectrum of the absorbing chain with that of its transient block.

    Each eigenvalue of the transient block is greedily matched to the
    nearest unmatched eigenvalue of the full absorbing matrix; exactly one
    eigenvalue (the unit one) should be left over. Eigenvectors of the
    block, padded with a zero at the seed, are checked against the full
    matrix as well.
    """
    chain = absorbing_chain(g, seed)
    p_hat = chain.p_hat()
    p_vals = np.sort(np.linalg.eigvals(p_hat).real)[::-1]
    pairs = eig_symmetric(curly_q(chain), "curly-Q")
    q_vals = np.array([p.value for p in pairs])

    remaining = list(p_vals)
    worst = 0.0
    for lam in q_vals:
        k = int(np.argmin([abs(lam - r) for r in remaining]))
        worst = max(worst, abs(lam - remaining.pop(k)))

    inv_root = 1.0 / np.sqrt(chain.degrees)
    worst_vec = 0.0
    for pair in pairs:
        padded = np.zeros(g.n)
        padded[chain.index] = inv_root * pair.vector
        padded /= np.linalg.norm(padded)
        worst_vec = max(worst_vec, float(np.linalg.norm(p_hat @ padded - pair.value * padded)))
    return SpectrumReport(p_vals, q_vals, worst, np.array(remaining), worst_vec, tol)


def global_fiedler(g: Graph, normalized: bool = False) -> np.ndarray:
    """Eigenvector of the smallest nonzero Laplacian eigenvalue.

    Sign is fixed so that the first nonzero component is positive.
    """
    require_connected(g)
    mat = normalized_laplacian(g) if normalized else laplacian(g)
    pairs = eig_symmetric(mat)[::-1]
    if pairs[1].value < 1e-10:
        raise ValueError("zero Laplacian eigenvalue is repeated: graph is disconnected")
    return _first_nonzero_positive(pairs[1].vector)


def dirichlet_fiedler_exact(g: Graph, seed: int, lazy_walk: bool = False) -> DirichletFiedler:
    chain = absorbing_chain(g, seed, lazy_walk)
    return dirichlet_fiedler_from_chain(chain)


def dirichlet_fiedler_from_chain(chain: AbsorbingChain) -> DirichletFiedler:
    root = np.sqrt(chain.degrees)
    w, vecs = np.linalg.eigh(curly_q(chain))
    lam = float(w[-1])
    top = w >= lam - DEGENERATE_TOL
    degenerate = bool(top.sum() > 1 or abs(lam) <= DEGENERATE_TOL)
    if top.sum() > 1:
        # Repeated Perron root: project a positive vector onto the eigenspace,
        # which yields an entrywise nonnegative eigenvector.
        basis = vecs[:, top]
        u = basis @ (basis.T @ root)
        u /= np.linalg.norm(u)
    else:
        u = vecs[:, -1]
        if u.sum() < 0:
            u = -u
    return DirichletFiedler(chain.seed, lam, u / root, u, chain.index, degenerate)


def dirichlet_rayleigh_quotient(g: Graph, seed: int, v: np.ndarray) -> float:
    """Degree-weighted quotient ``sum_edges (v_i - v_j)^2 / sum_i d_i v_i^2``.

    ``v`` covers the non-seed vertices in increasing id order; the seed
    value is pinned to zero.
    """
    full = np.insert(np.asarray(v, dtype=float), seed, 0.0)
    num = sum((full[i] - full[j]) ** 2 for i, j in g.edges())
    return float(num / np.sum(g.degrees * full ** 2))
