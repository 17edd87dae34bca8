"""End-to-end builders of n-vertex regular F-free graphs.

Each pipeline re-certifies regularity and F-freeness with the codegree oracle
before returning; anything it cannot certify raises instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .constructions import ContractError, bipartite_sum, brown, disjoint_union, er_polarity, h_star, norm_graph
from .graph import Graph
from .numtheory import bose_chowla, prime_power_decompose, primes_up_to, quotient_set
from .regularize import InfeasibleError, cross_matching, equalize_norm_component, strip_two_factors
from .verify import check_regular, max_codegree

__all__ = ["PipelineResult", "pipeline_c4", "pipeline_k2t", "pipeline_k33", "pipeline_kst"]


@dataclass
class PipelineResult:
    graph: Graph
    degree: int
    target_bound: float
    construction_log: list = field(default_factory=list)
    forbidden: tuple = ()  # (s, t) of the certified K_{s,t}-freeness; (2, 2) is C4

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "degree": self.degree,
            "edge_count": self.edge_count,
            "target_bound": float(f"{self.target_bound:.12g}"),
            "forbidden": list(self.forbidden),
            "construction_log": self.construction_log,
        }


def _certify(G: Graph, s: int, t: int) -> int:
    deg = check_regular(G)
    if deg is None:
        raise ContractError(f"not regular: {G.degree_histogram()}")
    worst = max_codegree(G, s)
    if worst > t - 1:
        raise ContractError(f"K_{{{s},{t}}} present: an {s}-set has {worst} common neighbours")
    return deg


def _largest_embeddable(M: int, t: int, need: int) -> Optional[int]:
    """Largest prime p with p = 1 (mod t), (p^2-1)/t <= floor(M/2) and p >= need."""
    half = M // 2
    best = None
    for p in primes_up_to(math.isqrt(t * half + 1)):
        if (p - 1) % t == 0 and (p * p - 1) // t <= half and p >= need:
            if t > 1 and p == 2:
                continue
            best = p
    return best


def _bipartite_block(M: int, k: int, t: int, log: list) -> Graph:
    p = _largest_embeddable(M, t, k)
    if p is None:
        raise InfeasibleError(
            f"no prime p >= {k} embeds in Z_{M}",
            [{"constraint": "(p^2-1)/t <= floor(M/2) and p >= k", "M": M, "floor_M_2": M // 2, "k": k, "t": t}],
        )
    A = bose_chowla(p) if t == 1 else quotient_set(p, t)
    subset = A.elements[:k]
    log.append({"step": "bipartite_sum", "M": M, "prime": p, "t": t, "modulus": A.modulus, "k": k,
                "A": list(subset)})
    return bipartite_sum(M, subset, A)


def pipeline_c4(n: int) -> PipelineResult:
    """Regular C4-free graph on n vertices.

    Even n: one bipartite Cayley-sum block with the largest embeddable Sidon set.
    Odd n: a Parsons graph (R1 when p = 1 mod 4, R2 when p = 3 mod 4) plus a
    bipartite block of the same degree; primes are tried from the largest down.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    log: list = []
    if n % 2 == 0:
        M = n // 2
        p = _largest_embeddable(M, 1, 1)
        if p is None:
            raise InfeasibleError(
                f"no Sidon set embeds at n={n}",
                [{"constraint": "p^2-1 <= floor(M/2)", "M": M, "floor_M_2": M // 2}],
            )
        G = _bipartite_block(M, p, 1, log)
        target = math.sqrt(M // 2 + 1) - (M // 2 + 1) ** 0.2625
    else:
        tried = []
        G = None
        for p in reversed(primes_up_to(math.isqrt(2 * n) + 1)):
            if p == 2:
                continue
            size = p * (p + 1) // 2 if p % 4 == 1 else p * (p - 1) // 2
            if size > n - 2 or p > 31:
                continue
            deg = (p - 1) // 2 if p % 4 == 1 else (p + 1) // 2
            N = n - size
            sub: list = []
            try:
                block = _bipartite_block(N // 2, deg, 1, sub)
            except InfeasibleError as exc:
                tried.append({"p": p, "parsons_vertices": size, "degree": deg, "N": N,
                              "failed": exc.constraints})
                continue
            _, R1, R2 = er_polarity(p)
            R = R1 if p % 4 == 1 else R2
            log.append({"step": "parsons", "prime": p, "graph": R.name, "vertices": R.n, "degree": deg})
            log += sub
            G = disjoint_union([R, block], name=f"C4-free({n})")
            break
        if G is None:
            raise InfeasibleError(
                f"no feasible (p, p') pair at n={n}",
                [{"constraint": "Parsons graph + embeddable bipartite block", "n": n, "tried": tried}],
            )
        target = math.sqrt(n / 6)
    deg = _certify(G, 2, 2)
    return PipelineResult(G.replace(name=G.name or f"C4-free({n})"), deg, target, log, (2, 2))


def pipeline_k2t(n: int, t: int) -> PipelineResult:
    """Regular K_{2,2t+1}-free graph on n vertices.

    Even n uses one bipartite block from the quotient set.  Odd n (t even) takes
    H*_{p,t} with p = 1 (mod 2t), so H* has an odd number of vertices, plus a
    (p-1)-regular bipartite block on the remaining n - |H*| vertices.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    log: list = []
    if n % 2 == 0:
        M = n // 2
        p = _largest_embeddable(M, t, 1)
        if p is None or p == 2:
            raise InfeasibleError(
                f"no odd prime p = 1 (mod {t}) embeds at n={n}",
                [{"constraint": "(p^2-1)/t <= floor(M/2), p = 1 mod t", "M": M, "t": t}],
            )
        G = _bipartite_block(M, p, t, log)
        target = math.sqrt(t * n / 4)
    else:
        if t % 2:
            raise ValueError("odd n needs an even t")
        tried = []
        G = None
        for p in reversed(primes_up_to(math.isqrt(t * n) + 2)):
            if p % (2 * t) != 1:
                continue
            size = p * (p - 1) // t + 1
            N = n - size
            if N < 2:
                continue
            sub: list = []
            try:
                block = _bipartite_block(N // 2, p - 1, t, sub)
            except InfeasibleError as exc:
                tried.append({"p": p, "h_star_vertices": size, "N": N, "failed": exc.constraints})
                continue
            H = h_star(p, t)
            log.append({"step": "h_star", "prime": p, "t": t, "vertices": H.n, "degree": p - 1})
            log += sub
            G = disjoint_union([H, block], name=f"K2,{2 * t + 1}-free({n})")
            break
        if G is None:
            raise InfeasibleError(
                f"no feasible (p, p') pair at n={n}, t={t}",
                [{"constraint": "H*_{p,t} + embeddable bipartite block", "n": n, "t": t, "tried": tried}],
            )
        target = math.sqrt(t * n / 5)
    deg = _certify(G, 2, 2 * t + 1)
    return PipelineResult(G, deg, target, log, (2, 2 * t + 1))


def pipeline_k33(n: int, max_parts: int = 20) -> PipelineResult:
    """Regular K_{3,3}-free graph: Brown graphs on p_i^3 vertices, each stripped
    of k_i 2-factors down to the smallest component's degree."""
    dec = prime_power_decompose(n, 3, max_parts, balance=True, min_prime=3)
    if dec is None:
        raise InfeasibleError(
            f"{n} is not a sum of at most {max_parts} odd-prime cubes",
            [{"constraint": "n = sum of odd prime cubes", "n": n, "max_parts": max_parts}],
        )
    if dec.primes[0] > 13:
        raise InfeasibleError(
            f"component prime {dec.primes[0]} exceeds the Brown-graph cap 13",
            [{"constraint": "p <= 13", "primes": list(dec.primes)}],
        )
    p_min = dec.primes[-1]
    target_deg = p_min * p_min - p_min
    log: list = [{"step": "decompose", "primes": list(dec.primes), "spread": dec.spread}]
    parts = []
    for p in dec.primes:
        k = (p * p - p - target_deg) // 2
        B = strip_two_factors(brown(p), k)
        log.append({"step": "brown", "prime": p, "degree": p * p - p, "two_factors_removed": k})
        parts.append(B)
    G = disjoint_union(parts, name=f"K33-free({n})")
    deg = _certify(G, 3, 3)
    target = (n / (13 if n % 2 else 14)) ** (2 / 3)
    return PipelineResult(G, deg, target, log, (3, 3))


def pipeline_kst(n: int, s: int, t: int, max_parts: int = 20, budget: Optional[int] = None,
                 seed: int = 0) -> PipelineResult:
    """Regular K_{s,t}-free graph from at least three norm graphs.

    Components are equalised with variant a (n or s even) or b (both odd), then
    the minimum-degree vertices are matched across components.
    """
    if s < 3:
        raise ValueError("s must be >= 3")
    if t <= math.factorial(s):
        raise ValueError(f"t must exceed s! = {math.factorial(s)}")
    dec = prime_power_decompose(n, s, max_parts, balance=True, min_prime=3, min_parts=3)
    if dec is None:
        fewer = prime_power_decompose(n, s, max_parts, balance=True, min_prime=3)
        if fewer is not None and fewer.parts < 3:
            raise InfeasibleError(
                f"{n} splits into only {fewer.parts} odd-prime powers with exponent {s}; need at least 3",
                [{"constraint": "components >= 3", "n": n, "primes": list(fewer.primes)}],
            )
        raise InfeasibleError(
            f"{n} is not a sum of 3..{max_parts} odd-prime powers with exponent {s}",
            [{"constraint": "n = sum of >= 3 odd prime s-th powers", "n": n, "s": s}],
        )
    if dec.primes[0] ** s > 2000:
        raise InfeasibleError(
            f"component {dec.primes[0]}^{s} exceeds the norm-graph cap 2000",
            [{"constraint": "p^s <= 2000", "primes": list(dec.primes), "s": s}],
        )
    variant = "b" if (n % 2 and s % 2) else "a"
    D = [(p**s - 1) // (p - 1) for p in dec.primes]
    D_min = D[-1]
    ks = [(d - D_min) // 2 + (1 if variant == "b" else 0) for d in D]
    # minimum-degree vertex counts per component after equalisation
    low_counts = list(D) if variant == "a" else [d - 1 for d in D]
    total = sum(low_counts)
    if max(low_counts) >= total - max(low_counts) or total % 2:
        raise InfeasibleError(
            "minimum-degree groups violate the multipartite matching condition",
            [{"constraint": "n_1 < n_2 + ... + n_l and total even", "sizes": low_counts,
              "primes": list(dec.primes), "variant": variant}],
        )
    log: list = [{"step": "decompose", "primes": list(dec.primes), "spread": dec.spread, "variant": variant}]
    parts = []
    for p, k in zip(dec.primes, ks):
        N = norm_graph(p, s)
        if k == 0:
            E = N.replace(meta=dict(N.meta, min_degree_vertices=tuple(sorted(N.absolute_points))))
        else:
            E = equalize_norm_component(N, k, variant, budget=budget, seed=seed)
        log.append({"step": "equalize", "prime": p, "k": k, "variant": variant,
                    "min_degree_vertices": len(E.meta["min_degree_vertices"])})
        parts.append(E)
    G = disjoint_union(parts, name=f"K{s},{t}-free({n})")
    groups, off = [], 0
    for E in parts:
        groups.append([v + off for v in E.meta["min_degree_vertices"]])
        off += E.n
    matching = cross_matching(groups)
    G = G.add_edges(matching.edges)
    log.append({"step": "cross_matching", "edges": len(matching)})
    deg = _certify(G, s, t)
    target = (n / dec.parts) ** (1 - 1 / s)
    return PipelineResult(G, deg, target, log, (s, t))
