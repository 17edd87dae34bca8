"""Degree equalisation: 2-factors, Hamilton cycles, and cross-component matchings."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from .graph import Graph

__all__ = [
    "EdgeSubset",
    "SearchBudgetExceeded",
    "InfeasibleError",
    "default_budget",
    "two_factor",
    "strip_two_factors",
    "hamilton_cycle",
    "equalize_norm_component",
    "cross_matching",
]

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """Hamilton search budget; REXLAB_BUDGET overrides the default."""
    raw = os.environ.get("REXLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class SearchBudgetExceeded(RuntimeError):
    pass


class InfeasibleError(ValueError):
    """A construction cannot be carried out at this size.

    ``constraints`` is a list of dicts naming each failed condition with the
    numbers involved; it is what the CLI dumps as JSON.
    """

    def __init__(self, message: str, constraints: Optional[list] = None):
        super().__init__(message)
        self.constraints = constraints or []

    def to_dict(self) -> dict:
        return {"infeasible": True, "reason": str(self), "constraints": self.constraints}


@dataclass(frozen=True)
class EdgeSubset:
    edges: tuple
    kind: str  # two_factor | hamilton_cycle | matching

    def __len__(self) -> int:
        return len(self.edges)

    def is_valid(self, host: Graph) -> bool:
        if not all(host.has_edge(u, v) for u, v in self.edges):
            return False
        deg = np.zeros(host.n, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        if self.kind == "matching":
            return bool((deg <= 1).all())
        if self.kind == "two_factor":
            return bool((deg == 2).all()) and len(set(map(frozenset, self.edges))) == len(self.edges)
        if self.kind == "hamilton_cycle":
            if len(self.edges) != host.n or not (deg == 2).all():
                return False
            walk = [self.edges[0][0]]
            for u, v in self.edges:
                if u != walk[-1]:
                    return False
                walk.append(v)
            return walk[0] == walk[-1] and len(set(walk[:-1])) == host.n
        raise ValueError(f"unknown kind {self.kind!r}")


# --- Petersen 2-factors -------------------------------------------------------

def two_factor(G: Graph) -> EdgeSubset:
    """A spanning 2-regular subgraph of an even-degree graph.

    Orient every component along an Euler circuit, then take a perfect matching
    between out-copies and in-copies of the vertices; each vertex keeps one
    outgoing and one incoming matched edge.
    """
    if G.loops:
        raise ValueError("two_factor needs a loopless graph")
    deg = G.adjacency.sum(axis=1)
    if (deg == 0).any():
        raise ValueError(f"isolated vertex {int(np.flatnonzero(deg == 0)[0])}")
    if (deg % 2).any():
        raise ValueError(f"odd degree at vertex {int(np.flatnonzero(deg % 2)[0])}")
    g = G.to_networkx()
    B = nx.Graph()
    out_nodes = [("out", v) for v in range(G.n)]
    B.add_nodes_from(out_nodes)
    B.add_nodes_from(("in", v) for v in range(G.n))
    for comp in G.components():
        for u, v in nx.eulerian_circuit(g.subgraph(comp), source=comp[0]):
            B.add_edge(("out", u), ("in", v))
    matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=out_nodes)
    edges = []
    for v in range(G.n):
        mate = matching.get(("out", v))
        if mate is None:
            raise ValueError("graph has no 2-factor (derived bipartite graph lacks a perfect matching)")
        edges.append((v, mate[1]))
    return EdgeSubset(tuple(edges), "two_factor")


def strip_two_factors(G: Graph, k: int) -> Graph:
    """Remove ``k`` successive 2-factors from a regular even-degree graph."""
    if k < 0:
        raise ValueError("k must be non-negative")
    d = int(G.degrees.max()) if G.n else 0
    if k and 2 * k > d:
        raise ValueError(f"cannot remove {k} 2-factors from a {d}-regular graph")
    for _ in range(k):
        G = G.remove_edges(two_factor(G).edges)
    return G


# --- Hamilton cycles ------------------------------------------------------------

def _cycle_subset(order: Sequence[int]) -> EdgeSubset:
    n = len(order)
    return EdgeSubset(tuple((order[i], order[(i + 1) % n]) for i in range(n)), "hamilton_cycle")


def _posa(adj: list[set], n: int, rng: random.Random, budget: int) -> tuple[Optional[list], int]:
    """Rotation-extension heuristic; returns (cycle or None, expansions used)."""
    used = 0
    while used < budget:
        start = rng.randrange(n)
        path = [start]
        pos = {start: 0}
        stale = 0
        while used < budget and stale < 4 * n:
            used += 1
            end = path[-1]
            fresh = [w for w in adj[end] if w not in pos]
            if fresh:
                w = min(fresh, key=lambda x: (sum(1 for y in adj[x] if y not in pos), rng.random()))
                pos[w] = len(path)
                path.append(w)
                stale = 0
                continue
            if len(path) == n and path[0] in adj[end]:
                return path, used
            # rotate: pick a path neighbour of the end and reverse the tail after it
            pivots = [pos[w] for w in adj[end] if pos[w] < len(path) - 2]
            if not pivots:
                break
            i = rng.choice(pivots)
            path[i + 1 :] = path[:i:-1]
            for j in range(i + 1, len(path)):
                pos[path[j]] = j
            stale += 1
    return None, used


def _backtrack(adj: list[set], n: int, order_key: list, budget: int) -> tuple[Optional[list], int, bool]:
    """Exhaustive DFS from vertex 0.  Returns (cycle, expansions, exhausted)."""
    start = 0
    visited = [False] * n
    visited[start] = True
    free_deg = [len(a) for a in adj]  # unvisited neighbours
    for w in adj[start]:
        free_deg[w] -= 1
    path = [start]
    used = 0

    def candidates(v):
        cs = [w for w in adj[v] if not visited[w]]
        cs.sort(key=lambda w: (free_deg[w], order_key[w]))
        return iter(cs)

    def feasible(u, v):
        # every unvisited neighbour of the old end u still needs two usable neighbours
        for w in adj[u]:
            if not visited[w]:
                avail = free_deg[w] + (start in adj[w]) + (v in adj[w])
                if avail < 2:
                    return False
        return len(path) == n or free_deg[start] > 0

    stack = [candidates(start)]
    while stack:
        if used >= budget:
            return None, used, False
        v = next(stack[-1], None)
        if v is None:
            stack.pop()
            last = path.pop()
            if path:
                visited[last] = False
                for w in adj[last]:
                    free_deg[w] += 1
            continue
        used += 1
        u = path[-1]
        visited[v] = True
        for w in adj[v]:
            free_deg[w] -= 1
        path.append(v)
        if len(path) == n:
            if start in adj[v]:
                return list(path), used, False
        elif feasible(u, v):
            stack.append(candidates(v))
            continue
        # undo v
        path.pop()
        visited[v] = False
        for w in adj[v]:
            free_deg[w] += 1
    return None, used, True


def hamilton_cycle(G: Graph, budget: Optional[int] = None, seed: int = 0) -> Optional[EdgeSubset]:
    """Find a Hamilton cycle (loops ignored), or ``None``.

    Tries rotation-extension first, then an exhaustive backtracking search with
    neighbours ordered by ascending residual degree.  ``None`` means either a
    proof of non-Hamiltonicity or an exhausted budget.
    """
    budget = default_budget() if budget is None else budget
    n = G.n
    if n < 3:
        return None
    adj = [set(G.neighbors(v).tolist()) for v in range(n)]
    if min(len(a) for a in adj) < 2 or not G.is_connected():
        return None
    rng = random.Random(seed)
    path, used = _posa(adj, n, rng, min(budget // 2, 200 * n * n))
    if path is None:
        order_key = list(range(n))
        rng.shuffle(order_key)
        path, more, _ = _backtrack(adj, n, order_key, budget - used)
    if path is None:
        return None
    return _cycle_subset(path)


def equalize_norm_component(
    N: Graph, k: int, variant: str, budget: Optional[int] = None, seed: int = 0
) -> Graph:
    """Spanning subgraph of a loopless norm graph with two adjacent degree levels.

    Variant ``a`` removes k Hamilton cycles.  Variant ``b`` removes k-1 Hamilton
    cycles and then a matching that covers every vertex except one absolute
    point.  The low-degree vertices are recorded in ``meta['min_degree_vertices']``.
    """
    if N.loops:
        raise ValueError("expects the loopless norm graph")
    if not N.absolute_points:
        raise ValueError("no absolute points recorded")
    if variant not in ("a", "b"):
        raise ValueError("variant must be 'a' or 'b'")
    if k < 1:
        raise ValueError("k must be >= 1")
    if variant == "b" and N.n % 2 == 0:
        raise ValueError("variant b needs an odd number of vertices")
    D = int(N.degrees.max())
    low = D - 2 * k - 1 if variant == "a" else D - 2 * k
    if low < 0:
        raise ValueError(f"degree would go negative (D={D}, k={k})")

    G = N
    removed = []
    cycles = k if variant == "a" else k - 1
    for j in range(cycles):
        hc = hamilton_cycle(G, budget=budget, seed=seed + j)
        if hc is None:
            raise SearchBudgetExceeded(f"no Hamilton cycle found in step {j}")
        G = G.remove_edges(hc.edges)
        removed.append(hc)
    absolute = sorted(N.absolute_points)
    if variant == "a":
        min_vertices = absolute
    else:
        hc = hamilton_cycle(G, budget=budget, seed=seed + cycles)
        if hc is None:
            raise SearchBudgetExceeded("no Hamilton cycle for the near-perfect matching")
        order = [u for u, _ in hc.edges]
        skip = absolute[0]
        i = order.index(skip)
        order = order[i:] + order[:i]
        matching = EdgeSubset(tuple((order[j], order[j + 1]) for j in range(1, len(order) - 1, 2)), "matching")
        G = G.remove_edges(matching.edges)
        removed.append(matching)
        min_vertices = absolute[1:]
    meta = dict(N.meta)
    meta.update({"k": k, "variant": variant, "min_degree_vertices": tuple(min_vertices),
                 "removed": tuple(removed)})
    return G.replace(meta=meta, name=f"{N.name}-{variant}{k}")


# --- cross-component matchings ---------------------------------------------------

def cross_matching(groups: Sequence[Sequence[int]]) -> EdgeSubset:
    """Perfect matching on the union of disjoint groups with no edge inside a group.

    Repeatedly pairs the next vertex of the currently largest group with one from
    the second largest (ties go to the earlier group).
    """
    pools = [list(g) for g in groups]
    sizes = [len(g) for g in pools]
    if len(pools) < 3:
        raise InfeasibleError("need at least 3 groups", [{"constraint": "groups >= 3", "groups": len(pools)}])
    total = sum(sizes)
    biggest = max(sizes)
    if total % 2:
        raise InfeasibleError(f"odd total {total}", [{"constraint": "total even", "total": total}])
    if biggest >= total - biggest:
        raise InfeasibleError(
            f"largest group {biggest} >= sum of the others {total - biggest}",
            [{"constraint": "n_1 < n_2 + ... + n_l", "n_1": biggest, "rest": total - biggest,
              "sizes": sizes}],
        )
    seen = set()
    for g in pools:
        if seen & set(g):
            raise ValueError("groups must be disjoint")
        seen |= set(g)
    edges = []
    while any(pools):
        order = sorted(range(len(pools)), key=lambda i: (-len(pools[i]), i))
        a, b = order[0], order[1]
        u, v = pools[a].pop(0), pools[b].pop(0)
        edges.append((min(u, v), max(u, v)))
    return EdgeSubset(tuple(edges), "matching")
