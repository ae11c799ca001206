"""
Csiszar f-divergences and their generic upper bounds
====================================================

A generator carries f, f' and f''. From it we get C_f, the rho functional
and the (alpha, beta, gamma) bound set over any ratio range.
"""

# %%
from divbound import (
    SYMMETRIC_CHI2,
    TRIANGULAR,
    bound_set,
    c_f,
    check_generator,
    phi_generator,
    ratio_range,
    rho_c_f,
)

P, Q = [0.2, 0.3, 0.5], [0.4, 0.3, 0.3]
rng = ratio_range(P, Q)
print(rng)

# %%
for gen in (TRIANGULAR, SYMMETRIC_CHI2, phi_generator(0.5), phi_generator(3)):
    bs = bound_set(gen, rng)
    print(f"{gen.name:>10}  C={c_f(gen, P, Q):.6f}  rho={rho_c_f(gen, P, Q):.6f}  "
          f"beta={bs.beta:.6f}  alpha={bs.alpha:.6f}")

# %% [markdown]
# Each generator is checked for normalization, convexity and agreement of
# its derivatives with finite differences.

# %%
for gen in (TRIANGULAR, SYMMETRIC_CHI2, phi_generator(-3)):
    rep = check_generator(gen)
    print(gen.name, rep.passed, f"{rep.max_rel_err_f1:.1e}", f"{rep.max_rel_err_f2:.1e}")
