"""Builders for the algebraic F-free graph families.

Every builder enumerates vertices in coefficient-lexicographic label order, so
two builds with the same parameters produce identical graphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import isprime

from .algebra import gf, norm_values, quad_char
from .graph import Graph
from .numtheory import DifferenceSet

__all__ = [
    "AbelianGroup",
    "ContractError",
    "cayley_sum",
    "bipartite_sum",
    "h_graph",
    "h_star",
    "brown",
    "brown_alpha",
    "norm_graph",
    "er_polarity",
    "disjoint_union",
]


class ContractError(RuntimeError):
    """A constructed object failed its own post-build check."""


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{m_1} x ... x Z_{m_r}; elements are residue tuples, first coordinate most significant."""

    cyclic_orders: tuple

    def __post_init__(self):
        orders = tuple(int(m) for m in self.cyclic_orders)
        if not orders or any(m < 1 for m in orders):
            raise ValueError("cyclic orders must be positive")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = np.ones(len(self.cyclic_orders), dtype=np.int64)
        for i in range(len(self.cyclic_orders) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.cyclic_orders[i + 1]
        return strides

    def element_array(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self._strides) % np.array(self.cyclic_orders)

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.element_array()]

    def normalize(self, g) -> tuple[int, ...]:
        if isinstance(g, (int, np.integer)):
            g = (int(g),)
        g = tuple(int(x) for x in g)
        if len(g) != len(self.cyclic_orders):
            raise ValueError(f"{g} has the wrong number of coordinates")
        return tuple(x % m for x, m in zip(g, self.cyclic_orders))

    def index_array(self, elems: np.ndarray) -> np.ndarray:
        return (np.asarray(elems) % np.array(self.cyclic_orders)) @ self._strides

    def index(self, g) -> int:
        return int(np.dot(self.normalize(g), self._strides))

    def add(self, g, h) -> tuple[int, ...]:
        return self.normalize(tuple(a + b for a, b in zip(self.normalize(g), self.normalize(h))))


def cayley_sum(group: AbelianGroup, S: Iterable, keep_loops: bool = True, name: str = "") -> Graph:
    """x ~ y (x != y) iff x + y in S; x carries a loop iff 2x in S.

    The loop set is always recorded in ``absolute_points``; ``keep_loops``
    decides whether the loops themselves are kept.
    """
    S = sorted({group.normalize(s) for s in S})
    n = group.order
    adj = np.zeros((n, n), dtype=bool)
    elems = group.element_array()
    rows = np.arange(n)
    for s in S:
        partner = group.index_array(np.array(s) - elems)
        adj[rows, partner] = True
    loops = frozenset(np.flatnonzero(adj.diagonal()).tolist())
    np.fill_diagonal(adj, False)
    return Graph(
        adj,
        loops=loops if keep_loops else frozenset(),
        labels=tuple(group.elements()),
        absolute_points=loops,
        name=name or f"CayS({'x'.join(f'Z{m}' for m in group.cyclic_orders)})",
        meta={"connection_set": tuple(S)},
    )


def bipartite_sum(M: int, A: Iterable[int], provenance: DifferenceSet, name: str = "") -> Graph:
    """M x M bipartite graph on X = Y = Z_M with x ~ y iff x + y = a (mod M), a in A.

    ``A`` must be a subset of ``provenance``; residue 0 of the provenance group is
    represented by its modulus, so A sits inside {1, ..., floor(M/2)}.
    """
    A = sorted(set(int(a) for a in A))
    if provenance.modulus > M // 2:
        raise ValueError(f"embedding fails: modulus {provenance.modulus} > floor(M/2) = {M // 2}")
    missing = [a for a in A if a not in provenance]
    if missing:
        raise ValueError(f"{missing} not in the provenance set")
    reps = [a if a else provenance.modulus for a in A]
    adj = np.zeros((2 * M, 2 * M), dtype=bool)
    x = np.arange(M)
    for a in reps:
        y = (a - x) % M
        adj[x, M + y] = True
        adj[M + y, x] = True
    labels = tuple(("X", i) for i in range(M)) + tuple(("Y", i) for i in range(M))
    return Graph(
        adj,
        labels=labels,
        part_sizes=(M, M),
        name=name or f"B(M={M},k={len(A)})",
        meta={"M": M, "A": tuple(reps), "provenance_modulus": provenance.modulus,
              "t_bound": provenance.t_bound},
    )


def _check_pt(p: int, t: int) -> None:
    if p < 3 or not isprime(p):
        raise ValueError(f"p={p} must be an odd prime")
    if t < 1 or (p - 1) % t:
        raise ValueError(f"t={t} does not divide p-1={p - 1}")


def h_graph(p: int, t: int) -> Graph:
    """Cayley sum graph on Z_{(p-1)/t} x F_p with S = {(a mod (p-1)/t, theta^a)}."""
    _check_pt(p, t)
    theta = gf(p).generator.value
    r = (p - 1) // t
    group = AbelianGroup((r, p))
    S = [(a % r, pow(theta, a, p)) for a in range(p - 1)]
    G = cayley_sum(group, S, keep_loops=False, name=f"H({p},{t})")
    return G.replace(meta=dict(G.meta, p=p, t=t, theta=theta))


def h_star(p: int, t: int) -> Graph:
    """h_graph plus an apex vertex (index n-1) joined to every absolute point."""
    H = h_graph(p, t)
    n = H.n + 1
    adj = np.zeros((n, n), dtype=bool)
    adj[:-1, :-1] = H.adjacency
    apex = n - 1
    for v in H.absolute_points:
        adj[v, apex] = adj[apex, v] = True
    return Graph(adj, labels=H.labels + (("apex",),), name=f"H*({p},{t})",
                 meta={"p": p, "t": t, "apex": apex})


def brown_alpha(p: int) -> int:
    """Least alpha in 1..p-1 with eta(alpha) = -eta(-1)."""
    F = gf(p)
    target = -quad_char(F, p - 1)
    return next(a for a in range(1, p) if quad_char(F, a) == target)


def brown(p: int) -> Graph:
    """Vertices F_p^3; (x,y,z) ~ (a,b,c) iff (x-a)^2 + (y-b)^2 + (z-c)^2 = alpha."""
    if p == 2 or not isprime(p):
        raise ValueError(f"p={p} must be an odd prime")
    if p > 13:
        raise ValueError("brown graphs are capped at p <= 13")
    alpha = brown_alpha(p)
    pts = np.array(list(itertools.product(range(p), repeat=3)), dtype=np.int64)
    dist = np.zeros((len(pts), len(pts)), dtype=np.int64)
    for d in range(3):
        diff = pts[:, None, d] - pts[None, :, d]
        dist += diff * diff
    adj = (dist % p) == alpha
    return Graph(adj, labels=tuple(map(tuple, pts.tolist())), name=f"Brown({p})",
                 meta={"p": p, "alpha": alpha})


def norm_graph(p: int, s: int, with_loops: bool = False) -> Graph:
    """a ~ b iff N(a + b) = 1, N the norm from F_{p^s} to F_p.

    Vertex ``v`` is the field element with integer representation ``v``.
    """
    if p == 2:
        raise ValueError("norm graphs over even characteristic are not supported")
    if not isprime(p):
        raise ValueError(f"p={p} must be prime")
    if s < 2:
        raise ValueError("s must be >= 2")
    if p**s > 2000:
        raise ValueError(f"p^s = {p**s} exceeds the size cap 2000")
    F = gf(p, s)
    unit_norm = np.flatnonzero(norm_values(F, s) == 1)
    group = AbelianGroup((p,) * s)
    # group coordinates are the field coefficients, highest degree first
    S = [tuple(F.coeffs(int(v))[::-1]) for v in unit_norm]
    G = cayley_sum(group, S, keep_loops=with_loops, name=f"N{'o' if with_loops else ''}({p},{s})")
    labels = tuple(F.coeffs(v) for v in range(F.q))
    return G.replace(labels=labels, meta=dict(G.meta, q=p, s=s, D=(p**s - 1) // (p - 1)))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    pts = []
    for v in itertools.product(range(q), repeat=3):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def er_polarity(q: int) -> tuple[Graph, Graph, Graph]:
    """The orthogonal polarity graph ER_q and its two Parsons induced subgraphs.

    Non-self-polar points are split by the quadratic character of x.x; the class
    with C(q+1, 2) points gives R1 and the class with C(q, 2) points gives R2.
    Both are checked for regularity and C4-freeness before returning.
    """
    from .verify import check_regular, max_codegree

    if q == 2 or not isprime(q) or q > 31:
        raise ValueError(f"q={q} must be an odd prime <= 31")
    F = gf(q)
    pts = _projective_points(q)
    P = np.array(pts, dtype=np.int64)
    dots = (P @ P.T) % q
    adj = dots == 0
    absolute = frozenset(np.flatnonzero(adj.diagonal()).tolist())
    np.fill_diagonal(adj, False)
    ER = Graph(adj, labels=tuple(pts), absolute_points=absolute, name=f"ER({q})", meta={"q": q})

    classes: dict[int, list[int]] = {1: [], -1: []}
    for i, v in enumerate(pts):
        if i not in absolute:
            classes[quad_char(F, int(dots[i, i]))].append(i)
    by_size = {len(c): c for c in classes.values()}
    big, small = q * (q + 1) // 2, q * (q - 1) // 2
    if set(by_size) != {big, small}:
        raise ContractError(f"class sizes {sorted(by_size)} differ from C(q+1,2), C(q,2)")
    R1 = ER.induced_subgraph(by_size[big], name=f"R1({q})")
    R2 = ER.induced_subgraph(by_size[small], name=f"R2({q})")
    for R, want in ((R1, (q - 1) // 2), (R2, (q + 1) // 2)):
        deg = check_regular(R)
        if deg != want or max_codegree(R, 2) > 1:
            raise ContractError(f"{R.name}: degree {deg} (want {want}) or contains C4")
        object.__setattr__(R, "meta", {"q": q, "source": "ER", "degree": deg})
    return ER, R1, R2


def disjoint_union(graphs: Sequence[Graph], name: str = "") -> Graph:
    graphs = list(graphs)
    if not graphs:
        raise ValueError("need at least one graph")
    if len(graphs) == 1:
        return graphs[0]
    n = sum(g.n for g in graphs)
    adj = np.zeros((n, n), dtype=bool)
    loops, absolute, labels = set(), set(), []
    off = 0
    for i, g in enumerate(graphs):
        adj[off : off + g.n, off : off + g.n] = g.adjacency
        loops |= {v + off for v in g.loops}
        absolute |= {v + off for v in g.absolute_points}
        labels += [(i, g.labels[v] if g.labels is not None else v) for v in range(g.n)]
        off += g.n
    return Graph(
        adj,
        loops=frozenset(loops),
        labels=tuple(labels),
        part_sizes=tuple(g.n for g in graphs),
        absolute_points=frozenset(absolute),
        name=name or " + ".join(g.name or "G" for g in graphs),
    )
