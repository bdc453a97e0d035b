# coding: utf-8

# # How big can a regular graph with a small second eigenvalue be?

# In[1]:

import numpy as np
import spectral_moore as sm


# For a fixed degree r, a smaller second eigenvalue forces a smaller graph.
# Sweep theta across the admissible range for r = 3 and record the order bound.

# In[2]:

r = 3
thetas = np.linspace(-0.9, 2 * np.sqrt(r - 1) - 0.05, 12)
for theta in thetas:
    res = sm.v_upper(r, theta)
    print(f"theta={theta:7.4f}  t={res.t}  c={res.c:.4f}  bound={res.bound:10.3f}  floor={res.floor_bound}")


# The bipartite bound sits below the general one at every theta.

# In[3]:

for theta in (0.0, 0.5, 1.0, np.sqrt(2), 2.0, 2.5):
    v = sm.v_upper(r, theta).bound
    b = sm.b_upper(r, theta).bound
    print(f"theta={theta:.4f}  general={v:9.3f}  bipartite={b:9.3f}")


# Exact arithmetic: integer or Fraction arguments give exact orders.

# In[4]:

from fractions import Fraction

print(sm.general_bound(3, 3, 1), sm.general_bound(5, 4, Fraction(1, 2)))
print(sm.bipartite_bound(3, 4, 2), sm.moore_bound(7, 2))


# The second eigenvalue of the extremal quotient is the largest root of a
# combination of orthogonal polynomials.

# In[5]:

q = sm.build_quotient(sm.QuotientMatrixSpec(4, 3, 1.0))
print(np.round(q, 3))
print(sm.spectrum(sm.QuotientMatrixSpec(4, 3, 1.0)).lambda2, (-1 + np.sqrt(13)) / 2)
