# coding: utf-8

# # Eigenvalue windows for the record degree-diameter orders

# In[1]:

import spectral_moore as sm


# A graph beating a record order must have its second eigenvalue in a window.

# In[2]:

for row in sm.reproduce_table1():
    flag = "" if not row.mismatches else "  <- differs from the published " + ", ".join(row.mismatches)
    print(f"r={row.r:2d} D={row.D} known={row.known:4d} defect={row.defect:3d} "
          f"[{row.lower}, {row.upper}] moore={row.moore}{flag}")


# The same window for a hypothetical record.

# In[3]:

w = sm.search_window(8, 2, 57)
print(w.as_dict())
