"""
Regular K_{s,t}-free graphs from several norm graphs
====================================================

Split n into prime powers, peel Hamilton cycles off each norm graph until the
degrees line up, then add a matching across components.
"""

from rexlab.constructions import brown, norm_graph
from rexlab.numtheory import prime_power_decompose
from rexlab.pipelines import pipeline_k33, pipeline_kst
from rexlab.regularize import equalize_norm_component, hamilton_cycle, strip_two_factors
from rexlab.verify import check_regular, max_codegree

N = norm_graph(3, 3)
print("loopless N(3,3):", N.degree_histogram())

hc = hamilton_cycle(N)
print("Hamilton cycle found:", hc is not None and hc.is_valid(N))

# variant a removes k cycles, variant b removes k-1 cycles and a near-perfect matching
for variant in "ab":
    E = equalize_norm_component(N, 1, variant)
    print(f"variant {variant}:", E.degree_histogram(), "low-degree vertices:", len(E.meta["min_degree_vertices"]))

# 179 = 5^3 + 3^3 + 3^3 as a sum of odd prime cubes
print("179 =", " + ".join(f"{p}^3" for p in prime_power_decompose(179, 3, balance=True, min_prime=3).primes))

# Brown graphs lose 2-factors until they match the smallest one
B = strip_two_factors(brown(5), 7)
print("brown(5) minus 7 two-factors:", check_regular(B), "-regular")

res = pipeline_k33(179)
print("K33-free on 179 vertices:", res.degree, "-regular,", res.edge_count, "edges")

res = pipeline_kst(81, 3, 7)
print("K_{3,7}-free on 81 vertices:", res.degree, "-regular,", res.edge_count, "edges,",
      "max triple codegree", max_codegree(res.graph, 3))
