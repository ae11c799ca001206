"""
Divergence measures on a small pair
===================================

Evaluate every closed-form measure on one two-point pair and check a few of
the identities that tie them together.
"""

# %%
import numpy as np

from divbound import Distribution, MeasureKind, divergence, phi_s, power_mean

P = Distribution([0.5, 0.5])
Q = Distribution([0.25, 0.75])

for kind in MeasureKind:
    print(f"{kind.value:>14}  {divergence(kind, P, Q):.9f}")

# %% [markdown]
# The triangular discrimination is twice the distance of the harmonic mean
# divergence from 1, and the symmetric chi-square is the sum of both
# directed chi-square divergences.

# %%
delta = divergence("triangular", P, Q)
w = divergence("harmonic_mean", P, Q)
print(delta, 2 * (1 - w))
print(divergence("sym_chi2", P, Q), divergence("chi2", P, Q) + divergence("chi2", Q, P))

# %% [markdown]
# The relative information of type s passes through the familiar measures:
# half the reverse chi-square at s = -1, the two KL directions at s = 0 and
# s = 1, four times Hellinger at s = 1/2 and half the chi-square at s = 2.

# %%
for s in (-1, 0, 0.5, 1, 2):
    print(f"s={s:>4}  phi_s={phi_s(s, P, Q):.9f}")
print("4h =", 4 * divergence("hellinger", P, Q))

# %%
# the p-logarithmic means increase with p
a, b = 1.0, np.e
for p in (-2, -1, 0, 1, 2):
    print(p, power_mean(p, a, b))
