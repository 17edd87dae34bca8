"""
Regular C4-free graphs on any number of vertices
================================================

Even n: one bipartite Cayley sum graph from a Bose-Chowla Sidon set.
Odd n: a Parsons subgraph of the polarity graph plus a bipartite block.
"""

from rexlab.numtheory import bose_chowla
from rexlab.pipelines import pipeline_c4
from rexlab.regularize import InfeasibleError

# a Sidon set: all pairwise sums distinct mod p^2 - 1
A = bose_chowla(7)
print("Bose-Chowla set for p=7:", A.elements, "mod", A.modulus)

for n in (60, 71, 101, 200, 301):
    try:
        res = pipeline_c4(n)
    except InfeasibleError as exc:
        print(f"n={n}: infeasible ({exc})")
        continue
    print(f"n={n}: {res.degree}-regular, {res.edge_count} edges, target degree {res.target_bound:.2f}")
    for step in res.construction_log:
        print("   ", {k: v for k, v in step.items() if k != "A"})

# too small for any block
try:
    pipeline_c4(5)
except InfeasibleError as exc:
    print("n=5:", exc.to_dict()["reason"])
