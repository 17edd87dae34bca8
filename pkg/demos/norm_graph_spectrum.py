"""
Norm graphs and their spectra
=============================

Build the norm graph on GF(27), look at its absolute points, and compare the
eigenvalues from additive characters with a dense numerical solve.
"""

import numpy as np

from rexlab.constructions import AbelianGroup, norm_graph
from rexlab.verify import adjacency_spectrum, cayley_spectrum, laplacian_spectrum, max_codegree

# a ~ b iff N(a + b) = 1; vertices are the 27 field elements
N = norm_graph(3, 3, with_loops=True)
print(N, "degrees:", N.degree_histogram())
print("absolute points (loops):", len(N.absolute_points))

# K_{3,7}-free: no three vertices share 7 neighbours
print("max triple codegree:", max_codegree(N, 3))

# the numeric spectrum
numeric = adjacency_spectrum(N).eigenvalues
print("largest eigenvalue:", round(numeric[-1], 9))
print("largest nontrivial |lambda|:", round(np.abs(numeric[:-1]).max(), 6), "<= sqrt(27) =", round(27**0.5, 6))

# the same numbers from character sums over the connection set
chars = cayley_spectrum(AbelianGroup((3, 3, 3)), N.meta["connection_set"]).eigenvalues
print("character sums agree:", np.allclose(chars, numeric, atol=1e-9))

# loops add the same amount to D and A, so D - A does not see them
same = np.allclose(laplacian_spectrum(N).eigenvalues, laplacian_spectrum(N.without_loops()).eigenvalues)
print("Laplacian unchanged by dropping loops:", same)
