# coding: utf-8

# # Graphs that meet the bound

# In[1]:

import numpy as np
from spectral_moore import graphs


# A handful of classical graphs have exactly the largest order allowed by
# their second eigenvalue.

# In[2]:

for name, kind in [("petersen", "general"), ("heawood", "bipartite"), ("cube3", "bipartite"),
                   ("oddGraph(4)", "general"), ("hoffmanSingleton", "general")]:
    g = graphs.build_named(name)
    rep = graphs.check_witness(g, kind)
    print(f"{name:18s} n={g.n:3d} r={g.degree} lambda2={rep.lambda2:.6f} bound={rep.bound.floor_bound} extremal={rep.extremal}")


# Non-backtracking walk counts are polynomials in the adjacency matrix.

# In[3]:

g = graphs.build_named("petersen")
for ell in range(5):
    table = graphs.nonbacktracking_counts(g, ell)
    assert np.array_equal(table.counts, graphs.enumerate_nonbacktracking_walks(g, ell))
    print(ell, table.counts[0])


# Ramanujan check and the cycle/girth data.

# In[4]:

for name in ("petersen", "heawood", "pappus", "hsSecondSubconstituent"):
    g = graphs.build_named(name)
    diam, girth = graphs.diameter_and_girth(g)
    print(f"{name:24s} diameter={diam} girth={girth} ramanujan={bool(graphs.is_ramanujan(g))}")
