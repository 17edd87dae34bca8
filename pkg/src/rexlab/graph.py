"""Finite simple graphs with separately tracked loops, plus the edge-list format."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "Graph",
    "EdgeListError",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "petersen_graph",
    "perfect_matching",
    "read_edgelist",
    "write_edgelist",
]


class EdgeListError(ValueError):
    """Malformed edge-list text."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected graph on vertices ``0..n-1``.

    ``adjacency`` never has a true diagonal; self-loops live in ``loops`` and
    count once towards a vertex's degree.  ``absolute_points`` marks vertices
    whose self-sum lands in the connection set (they may or may not carry loops).
    """

    adjacency: np.ndarray
    loops: frozenset = frozenset()
    labels: Optional[tuple] = None
    part_sizes: Optional[tuple] = None
    absolute_points: frozenset = frozenset()
    name: str = ""
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("self-adjacency must be recorded in loops, not the matrix")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        n = adj.shape[0]
        for attr in ("loops", "absolute_points"):
            vs = frozenset(int(v) for v in getattr(self, attr))
            if any(not 0 <= v < n for v in vs):
                raise ValueError(f"{attr} out of range")
            object.__setattr__(self, attr, vs)
        if self.part_sizes is not None:
            ps = tuple(int(x) for x in self.part_sizes)
            if sum(ps) != n:
                raise ValueError("part_sizes must sum to n")
            object.__setattr__(self, "part_sizes", ps)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise ValueError("one label per vertex")
            object.__setattr__(self, "labels", labels)

    # construction helpers
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], loops: Iterable[int] = (), **kw) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("use loops= for self-loops")
            adj[u, v] = adj[v, u] = True
        return cls(adj, loops=frozenset(loops), **kw)

    def replace(self, **changes) -> "Graph":
        return replace(self, **changes)

    # basic queries
    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        if self.loops:
            d[list(self.loops)] += 1
        return d

    def degree(self, v: int) -> int:
        return int(self.adjacency[v].sum()) + (v in self.loops)

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbours of ``v`` excluding ``v`` itself."""
        return np.flatnonzero(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    @property
    def edge_count(self) -> int:
        """Number of non-loop edges."""
        return int(self.adjacency.sum()) // 2

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def edges(self) -> list[tuple[int, int]]:
        """Non-loop edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        u, v = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(u.tolist(), v.tolist()))

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees.tolist()).items()))

    def adjacency_matrix(self, loops: bool = True) -> np.ndarray:
        """0/1 integer matrix; loops become 1 on the diagonal when ``loops``."""
        A = self.adjacency.astype(np.int64)
        if loops and self.loops:
            idx = list(self.loops)
            A[idx, idx] = 1
        return A

    def laplacian(self) -> np.ndarray:
        # a loop adds 1 to both D and A, so it cancels
        A = self.adjacency.astype(np.int64)
        return np.diag(A.sum(axis=1)) - A

    def components(self) -> list[list[int]]:
        seen = np.zeros(self.n, dtype=bool)
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(int(w))
                        comp.append(int(w))
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    # derived graphs
    def without_loops(self) -> "Graph":
        return self.replace(loops=frozenset())

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = self.adjacency.copy()
        for u, v in edges:
            if not adj[u, v]:
                raise ValueError(f"edge ({u}, {v}) is not present")
            adj[u, v] = adj[v, u] = False
        return self.replace(adjacency=adj)

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = self.adjacency.copy()
        for u, v in edges:
            if u == v or adj[u, v]:
                raise ValueError(f"cannot add edge ({u}, {v})")
            adj[u, v] = adj[v, u] = True
        return self.replace(adjacency=adj)

    def induced_subgraph(self, vertices: Sequence[int], name: str = "") -> "Graph":
        vs = [int(v) for v in vertices]
        pos = {v: i for i, v in enumerate(vs)}
        return Graph(
            self.adjacency[np.ix_(vs, vs)],
            loops=frozenset(pos[v] for v in self.loops if v in pos),
            labels=None if self.labels is None else tuple(self.labels[v] for v in vs),
            absolute_points=frozenset(pos[v] for v in self.absolute_points if v in pos),
            name=name,
        )

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    # serialisation
    def to_edgelist(self) -> str:
        lines = [f"n {self.n} loops {self.loop_count}"]
        lines += [f"L {v}" for v in sorted(self.loops)]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise EdgeListError("empty edge list")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "n" or head[2] != "loops":
            raise EdgeListError(f"bad header: {lines[0]!r}")
        try:
            n, k = int(head[1]), int(head[3])
        except ValueError as exc:
            raise EdgeListError(f"bad header: {lines[0]!r}") from exc
        if n < 0 or k < 0 or len(lines) < 1 + k:
            raise EdgeListError("header counts inconsistent with body")
        loops, edges = set(), set()
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            try:
                if i <= k + 1:
                    if len(parts) != 2 or parts[0] != "L":
                        raise EdgeListError(f"line {i}: expected loop line")
                    v = int(parts[1])
                    if not 0 <= v < n or v in loops:
                        raise EdgeListError(f"line {i}: bad loop vertex")
                    loops.add(v)
                else:
                    if len(parts) != 2:
                        raise EdgeListError(f"line {i}: expected 'u v'")
                    u, v = int(parts[0]), int(parts[1])
                    if not (0 <= u < v < n) or (u, v) in edges:
                        raise EdgeListError(f"line {i}: bad edge {u} {v}")
                    edges.add((u, v))
            except ValueError as exc:
                if isinstance(exc, EdgeListError):
                    raise
                raise EdgeListError(f"line {i}: {ln!r}") from exc
        return cls.from_edges(n, sorted(edges), loops=loops)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Graph{tag} n={self.n} edges={self.edge_count} loops={self.loop_count}>"


def write_edgelist(G: Graph, path) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(G.to_edgelist())


def read_edgelist(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return Graph.from_edgelist(fh.read())


# small named graphs
def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool), name=f"K{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def perfect_matching(n: int) -> Graph:
    if n % 2:
        raise ValueError("n must be even")
    return Graph.from_edges(n, [(i, i + 1) for i in range(0, n, 2)], name=f"M{n}")


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, name="Petersen")
