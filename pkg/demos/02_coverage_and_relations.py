"""
Bounded-exponent coverage and zero relations
============================================

T_L is the set of residues sum(i_j g_j) with every exponent at most L.
Once T_L is full the diameter is at most kL; once it covers more than half
of Z_q, T_{2L} is already full.  A short zero relation among the generators
forces collisions and pushes the diameter up.
"""

# %%
import numpy as np

from randcayley import (GroupSpec, RandomSource, coverage_report, distance_profile,
                        find_zero_relation, hit_counts, sample_generators)

group = GroupSpec(10007)
gens = sample_generators(group, 2, rng=RandomSource(7))
diam = distance_profile(group, gens).diameter
print("generators", gens.gens, "diameter", diam)

# %%
# Growth of |T_L| against the trivial bound (L+1)^2.
for L in (10, 25, 50, 75, 100, 150, 200):
    rep = coverage_report(group, gens, L)
    print(f"L={L:4d}  |T_L|={rep.covered_count:6d}  (L+1)^2={(L + 1) ** 2:6d}  full={rep.full}")

# %%
# The doubling step: find the first L with |T_L| > q/2 and check T_{2L}.
L = next(L for L in range(1, diam + 1) if coverage_report(group, gens, L).covered_count > group.q / 2)
print(f"|T_{L}| > q/2, and T_{2 * L} full: {coverage_report(group, gens, 2 * L).full}")

# %%
# Hit counts: how many exponent vectors land on each residue.  They always
# sum to (L+1)^k, so their mean is (L+1)^k / q.
table = hit_counts(group, gens, 100)
print("mean hits", table.counts.mean(), "expected", 101 ** 2 / group.q)
print("residues with zero hits", int(np.count_nonzero(table.counts == 0)))

# %%
# Zero relations.  Search small boxes for the lexicographically first
# nonzero exponent vector summing to 0 mod q.
for L in (5, 20, 50, 100):
    w = find_zero_relation(group, gens, L)
    print(f"L={L:3d}: {w.index_vector if w else None}")
