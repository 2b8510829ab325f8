"""
Counting marker-delimited blocks
================================

Irreducible strings over q symbols are walks in a graph on irreducible
5-tuples.  Blocks of length m that sit between two copies of a marker sigma,
with no other copy of sigma, are walks that leave sigma and return after
m + 5 steps.  Their number grows like lambda^m, where lambda is the largest
eigenvalue of the graph with sigma removed.
"""

# %%
import math

import numpy as np

from tdsub import best_sigma, build_graph, count_blocks, dominant_eigenvalue

g = build_graph(4)
print(f"{len(g)} vertices, {g.adjacency.nnz} edges")
degrees = np.bincount([g.out_degree(v) for v in g.vertices])
print("out-degree histogram:", dict(enumerate(degrees)))

# %%
sigma, lam = best_sigma(g)
full = dominant_eigenvalue(g).value
print(f"best marker {''.join(map(str, sigma))}: lambda = {lam:.4f}")
print(f"whole graph: lambda = {full:.4f}")
print(f"rate loss from reserving the marker: {math.log2(full) - math.log2(lam):.4f} bits/symbol")

# %%
for m in (18, 24, 30, 60):
    M = count_blocks(g, sigma, m)
    print(f"m={m:3d}  M={M:>30d}  log2(M)/m={math.log2(M) / m:.4f}")

# %%
# Block index <-> block string, in lexicographic order
from tdsub import BlockCounter

bc = BlockCounter(g, sigma, 18)
for r in (0, 1, bc.count - 1):
    print(r, "".join(map(str, bc.unrank(r))))
