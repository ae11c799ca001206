"""
Two-sided bounds through the weight g
=====================================

The weight g(x) = x^(2-s) f''(x) decides how the triangular and symmetric
chi-square divergences compare with the relative information of type s.
"""

# %%
import numpy as np

from divbound import RatioRange, extrema_g, g_function, proposition_chain, theorem32_chain

x = np.geomspace(0.1, 10, 7)
for s in (-1, 0.5, 2):
    print(s, np.round(g_function("delta", s, x), 4))

# %%
rng = RatioRange(2 / 3, 2)
for s in (-1, 0, 0.5, 1, 2):
    ext = extrema_g("delta", s, rng)
    print(f"s={s:>4}  m={ext.m:.6f} at {ext.attained_at_m:.4f}   M={ext.M:.6f} at {ext.attained_at_M:.4f}")

# %% [markdown]
# Over all of (0, inf) the triangular weight peaks at 32/27, 1 and 32/27 for
# s = 0, 1/2 and 1; those peaks give the fixed-constant comparisons.

# %%
print(extrema_g("delta", 0), extrema_g("psi", 0.5), sep="\n")

# %%
P, Q = [0.5, 0.5], [0.25, 0.75]
rep = theorem32_chain("delta", 2, P, Q)
for link in rep.links:
    print(f"{link.label:<36} {link.lhs:.6f} <= {link.rhs:.6f}")

# %%
rep = proposition_chain("P4.4", P, Q)
print(rep.link("Delta <= 4h"))
