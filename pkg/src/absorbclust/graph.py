"""Undirected simple graphs, edge-list I/O and the bundled experiment graphs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

RNG_ALGORITHM = "numpy.random.PCG64"


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input. Carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph over vertices ``0..n-1``.

    ``adjacency[i]`` is the sorted tuple of neighbours of ``i``. ``labels``
    maps internal ids to the external labels used in files and CLI output.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None
    _degrees: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length must equal n")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal n")
        for i, nbrs in enumerate(self.adjacency):
            if i in nbrs:
                raise ValueError(f"self-loop at vertex {i}")
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbour list of {i} must be sorted and unique")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise ValueError(f"neighbour {j} of {i} out of range")
                if i not in self.adjacency[j]:
                    raise ValueError(f"asymmetric edge {i}-{j}")
        degrees = np.fromiter((len(a) for a in self.adjacency), dtype=float, count=self.n)
        degrees.flags.writeable = False
        object.__setattr__(self, "_degrees", degrees)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[int] | None = None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs),
                   None if labels is None else tuple(labels))

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def n_edges(self) -> int:
        return int(self._degrees.sum()) // 2

    @property
    def avg_degree(self) -> float:
        return float(self._degrees.mean())

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def label_of(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def external_labels(self) -> list[int]:
        return list(range(self.n)) if self.labels is None else list(self.labels)

    def index_of(self, label: int) -> int:
        """Internal id of an external label."""
        if self.labels is None:
            if 0 <= label < self.n:
                return label
        else:
            try:
                return self.labels.index(label)
            except ValueError:
                pass
        raise KeyError(f"no vertex labelled {label}")

    def adjacency_matrix(self) -> sp.csr_matrix:
        rows = np.repeat(np.arange(self.n), self._degrees.astype(int))
        cols = np.fromiter((j for nbrs in self.adjacency for j in nbrs), dtype=int,
                           count=len(rows))
        data = np.ones(len(rows))
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


@dataclass(frozen=True)
class GroundTruth:
    labels: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (0, 1) for x in self.labels):
            raise ValueError("ground-truth classes must be 0 or 1")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=int)


def load_edge_list(text: TextIO | str) -> Graph:
    """Parse a whitespace-separated edge list.

    Blank lines and lines starting with ``#`` are skipped. Labels are
    compacted to ``0..n-1`` in order of first appearance; repeated edges
    collapse to one.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    ids: dict[int, int] = {}
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two labels, got {len(tokens)}", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"non-integer label in {line!r}", lineno) from None
        if a == b:
            raise GraphFormatError(f"self-loop {a}-{b}", lineno)
        for lab in (a, b):
            ids.setdefault(lab, len(ids))
        edges.append((ids[a], ids[b]))
    if not ids:
        raise GraphFormatError("no edges found")
    return Graph.from_edges(len(ids), edges, labels=list(ids))


def write_edge_list(g: Graph, out: TextIO, header: str | None = None) -> None:
    if header:
        for line in header.splitlines():
            out.write(f"# {line}\n")
    for i, j in g.edges():
        out.write(f"{g.label_of(i)} {g.label_of(j)}\n")


def gen_caveman(caves: int, cave_size: int) -> Graph:
    """Ring of near-cliques.

    Each cave is a clique with the edge between its first two vertices
    removed; the second vertex of cave ``i`` is then joined to the first
    vertex of cave ``i+1`` (mod ``caves``).
    """
    if caves < 2:
        raise ValueError("caves must be >= 2")
    if cave_size < 3:
        raise ValueError("cave_size must be >= 3")
    edges = []
    for c in range(caves):
        base = c * cave_size
        for a in range(cave_size):
            for b in range(a + 1, cave_size):
                if (a, b) != (0, 1):
                    edges.append((base + a, base + b))
        edges.append((base + 1, ((c + 1) % caves) * cave_size))
    return Graph.from_edges(caves * cave_size, edges)


def gen_gnp(n: int, p: float, rng_seed: int) -> Graph:
    """Erdos-Renyi G(n, p) drawn with a seeded PCG64 generator."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


# Zachary's karate club, 78-edge variant, 1-based labels.
_KARATE_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
    (1, 12), (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3),
    (2, 4), (2, 8), (2, 14), (2, 18), (2, 20), (2, 22), (2, 31), (3, 4),
    (3, 8), (3, 9), (3, 10), (3, 14), (3, 28), (3, 29), (3, 33), (4, 8),
    (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17), (7, 17),
    (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34),
    (16, 33), (16, 34), (19, 33), (19, 34), (20, 34), (21, 33), (21, 34),
    (23, 33), (23, 34), (24, 26), (24, 28), (24, 30), (24, 33), (24, 34),
    (25, 26), (25, 28), (25, 32), (26, 32), (27, 30), (27, 34), (28, 34),
    (29, 32), (29, 34), (30, 33), (30, 34), (31, 33), (31, 34), (32, 33),
    (32, 34), (33, 34),
)
# members who followed the club officer (vertex 34); the rest stayed with vertex 1
_KARATE_OFFICER = frozenset(
    (10, 15, 16, 19, 21, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34))


def builtin_karate() -> tuple[Graph, GroundTruth]:
    g = Graph.from_edges(34, ((a - 1, b - 1) for a, b in _KARATE_EDGES),
                         labels=range(1, 35))
    truth = GroundTruth(tuple(int(v + 1 in _KARATE_OFFICER) for v in range(34)))
    return g, truth


def _bfs_colour(g: Graph) -> tuple[int, bool]:
    """Return (number of components, bipartite?) via breadth-first search."""
    colour = [-1] * g.n
    components = 0
    bipartite = True
    for root in range(g.n):
        if colour[root] != -1:
            continue
        components += 1
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    bipartite = False
    return components, bipartite


def is_connected(g: Graph) -> bool:
    return _bfs_colour(g)[0] == 1


def is_bipartite(g: Graph) -> bool:
    return _bfs_colour(g)[1]


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if g.n < 2:
        raise ValueError("graph must have at least two vertices")
