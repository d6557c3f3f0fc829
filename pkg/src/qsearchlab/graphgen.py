"""Erdos-Renyi G(n, p) sampling and the matrix/degree structure of a graph.

The sampler draws one uniform variate per vertex pair, in row-major order
over the upper triangle, from NumPy's PCG64 generator seeded with an
explicit 64-bit seed.  Identical (n, p, seed) therefore reproduce the same
edge set on any platform.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "graph_from_edges",
    "sample_gnp",
    "adjacency",
    "laplacian",
    "degree_profile",
    "isolated_vertices",
    "is_connected",
    "to_edgelist_text",
    "from_edgelist_text",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` stores each edge once as a row ``(u, v)`` with ``u < v``, in
    lexicographic order.  ``p_nominal`` and ``seed`` record the sampling
    provenance so that every derived quantity can be traced back to
    ``(n, p, seed)``.
    """

    n: int
    edges: np.ndarray  # shape (m, 2), int64, u < v per row
    p_nominal: float
    seed: int

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        m = self.edges
        return bool(np.any((m[:, 0] == a) & (m[:, 1] == b)))


def _make_graph(n: int, edges: np.ndarray, p_nominal: float, seed: int) -> Graph:
    edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
    edges.setflags(write=False)
    return Graph(n=int(n), edges=edges, p_nominal=float(p_nominal), seed=int(seed))


def graph_from_edges(n: int, pairs, p_nominal: float = 0.0, seed: int = 0) -> Graph:
    """Graph from an explicit edge collection; rejects self-loops and bad ids."""
    canonical = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        canonical.add((u, v) if u < v else (v, u))
    edges = np.array(sorted(canonical), dtype=np.int64).reshape(-1, 2)
    return _make_graph(n, edges, p_nominal, seed)


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p): each of the n(n-1)/2 pairs kept independently with probability p.

    Deterministic for fixed (n, p, seed).  The pair order is the row-major
    upper triangle: (0,1), (0,2), ..., (0,n-1), (1,2), ...
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    edges = np.column_stack((iu[keep], ju[keep]))
    return _make_graph(n, edges, p, seed)


def adjacency(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency matrix; symmetric with zero diagonal."""
    a = np.zeros((g.n, g.n))
    if g.edge_count:
        u, v = g.edges[:, 0], g.edges[:, 1]
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian L = D - A.  Rows sum to zero; positive semi-definite."""
    a = adjacency(g)
    l = -a
    degrees = a.sum(axis=1)
    l[np.diag_indices(g.n)] = degrees
    return l


def degree_profile(g: Graph) -> tuple[np.ndarray, int, int]:
    """Per-vertex degrees plus the (min, max) degree extremes."""
    degrees = np.bincount(g.edges.ravel(), minlength=g.n).astype(np.int64)
    return degrees, int(degrees.min()), int(degrees.max())


def isolated_vertices(g: Graph) -> list[int]:
    """Vertices of degree zero, ascending."""
    degrees, _, _ = degree_profile(g)
    return [int(v) for v in np.flatnonzero(degrees == 0)]


def _neighbor_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """CSR-like neighbor layout: (offsets, targets) with targets[offsets[v]:offsets[v+1]]."""
    if g.edge_count == 0:
        return np.zeros(g.n + 1, dtype=np.int64), np.empty(0, dtype=np.int64)
    both = np.concatenate((g.edges, g.edges[:, ::-1]))
    order = np.argsort(both[:, 0], kind="stable")
    both = both[order]
    counts = np.bincount(both[:, 0], minlength=g.n)
    offsets = np.concatenate(([0], np.cumsum(counts)))
    return offsets, np.ascontiguousarray(both[:, 1])


def is_connected(g: Graph) -> bool:
    """Breadth-first reachability of every vertex from vertex 0."""
    if g.n == 1:
        return True
    offsets, targets = _neighbor_arrays(g)
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue: deque[int] = deque([0])
    reached = 1
    while queue:
        v = queue.popleft()
        for u in targets[offsets[v] : offsets[v + 1]]:
            if not seen[u]:
                seen[u] = True
                reached += 1
                queue.append(int(u))
    return reached == g.n


def to_edgelist_text(g: Graph) -> str:
    """Edge-list dump: header line ``n p seed`` then one ``u v`` line per edge."""
    lines = [f"{g.n} {g.p_nominal!r} {g.seed}"]
    lines.extend(f"{int(u)} {int(v)}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def from_edgelist_text(text: str) -> Graph:
    """Parse the edge-list dump format written by :func:`to_edgelist_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, p, seed = int(head[0]), float(head[1]), int(head[2])
    pairs = []
    for ln in lines[1:]:
        u, v = (int(tok) for tok in ln.split())
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"bad edge line: {ln!r}")
        pairs.append((u, v) if u < v else (v, u))
    edges = np.array(sorted(set(pairs)), dtype=np.int64).reshape(-1, 2)
    if edges.shape[0] != len(pairs):
        raise ValueError("duplicate edges in edge-list text")
    return _make_graph(n, edges, p, seed)
