"""
Exact certification of the hidden symmetry algebras
===================================================

The 2n-dimensional oscillator carries two commuting structures: the
metaplectic SU(1,1) generators built from squares of ladder operators and
the commutant of O(n) x O(n) inside U(2n).  The latter closes into a cubic
Higgs algebra, which is isomorphic to the quadratic Hahn algebra of two
coupled SU(1,1) factors.  All relations are checked with exact arithmetic
on truncated Fock spaces, restricted to states far enough from the cutoff.
"""

# %%
from ksduality import algebra
from ksduality.fock import FockSpace, build_commutant_generators

# %% [markdown]
# Ladder matrices act on monomials a^dag^k |0>, so every entry is an
# integer or a dyadic rational and float64 arithmetic is exact.

# %%
space = FockSpace(4, 8)
gens = build_commutant_generators(space)
print(space, "| generators:", sorted(gens))
print("all entries exact:", all(g.is_exact() for g in gens.values()))

# %% [markdown]
# One family at a time at 2n = 4 ...

# %%
for fam in algebra.FAMILIES:
    rep = algebra.verify_family(fam, 4)
    print(f"{fam:12s} {len(rep.checks):3d} checks  passed={rep.passed}")

# %% [markdown]
# ... and the full certificate, with sampled interior columns at 2n = 8, 16.

# %%
for modes, rep in algebra.certify_standard(seed=0, samples=50).items():
    info = sum(c.informational for c in rep.checks)
    print(f"2n={modes:2d}: {len(rep.checks)} checks ({info} informational), passed={rep.passed}")

# %% [markdown]
# A perturbed structure constant is caught immediately.

# %%
fr = algebra.FockRealization(4)
c = fr.commutant()
bad = algebra.verify_higgs(c["D"], c["A+"], c["A-"], c["alpha1"] + 1, c["alpha2"], fr.probe)
print("failures with alpha1 + 1:", bad.failures)

# %% [markdown]
# On joint eigenspaces the operator-valued constants reduce to scalars.

# %%
for row in algebra.higgs_sector_constants(fr)[:6]:
    print({k: row[k] for k in ("H", "S_a", "S_b", "alpha1", "alpha2", "deviation")})
