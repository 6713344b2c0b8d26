"""
Gamma matrices and the Kustaanheimo-Stiefel map
===============================================

The KS map sends u in R^{2n} to x in R^{n+1} with |x| = |u|^2.  It exists
only for n = 1, 2, 4, 8, where a set of n+1 real symmetric, traceless,
mutually anticommuting 2n x 2n matrices squaring to the identity can be
built.  Here we build the sets, verify them and push random points
through the map.
"""

# %%
import numpy as np

from ksduality.geometry import (
    GeometryError, build_gamma_set, chart_from_cartesian, chart_to_cartesian, ks_map, verify_gamma_set,
)

# %% [markdown]
# The sets come from Cayley-Dickson doubling; the last matrix is always
# diag(I_n, -I_n), so x_{n+1} = |u_a|^2 - |u_b|^2 for the two n-blocks.

# %%
for n in (1, 2, 4, 8):
    g = build_gamma_set(n)
    print(f"n={n}: {len(g.matrices)} matrices of size {g.matrices[0].shape}, "
          f"violations={verify_gamma_set(g)}")

try:
    build_gamma_set(3)
except GeometryError as err:
    print("n=3:", err)

# %% [markdown]
# The norm identity x.x = (u.u)^2 holds to rounding for random points.

# %%
rng = np.random.default_rng(0)
g = build_gamma_set(4)
worst = 0.0
for u in rng.standard_normal((1000, 8)):
    x = ks_map(g, u).x
    worst = max(worst, abs(x @ x - (u @ u) ** 2) / (u @ u) ** 2)
print(f"largest relative deviation over 1000 points: {worst:.2e}")

# %% [markdown]
# Charts on the target space: hyperspherical, spherical (r, theta, ...) and
# parabolic (u = r + x_{n+1}, v = r - x_{n+1}, ...).

# %%
x = ks_map(g, rng.standard_normal(8)).x
for kind in ("hyperspherical", "spherical", "parabolic"):
    ch = chart_from_cartesian(kind, x)
    back = chart_to_cartesian(ch)
    print(f"{kind:15s} radial={np.round(ch.radial, 4)}  round trip error={np.abs(back - x).max():.1e}")
