"""
Diameters of random circulant graphs
====================================

Sample k generators of Z_q, run one BFS from 0 and read off the diameter.
Vertex-transitivity makes that single BFS enough.
"""

# %%
# A hand-picked example first: {1, 11} in Z_101.  Eleven-steps get you close,
# single steps finish the job.
from randcayley import GeneratorSet, GroupSpec, RandomSource, distance_profile, sample_generators

group = GroupSpec(101)
prof = distance_profile(group, GeneratorSet((1, 11)))
print("diameter of Cay(Z_101, {1, 11}):", prof.diameter)
print("ball sizes:", prof.ball_sizes.tolist())

# %%
# Shifting the generators by a constant changes the diameter a lot:
# {0, 10} behaves like the single generator 10.
print("diameter with {0, 10}:", distance_profile(group, GeneratorSet((0, 10))).diameter)

# %%
# Random generators, directed versus symmetric.  Adding inverses can only
# shrink distances.
group = GroupSpec(100003)
for stream in range(5):
    gens = sample_generators(group, 3, "directed", RandomSource(2024, stream))
    directed = distance_profile(group, gens).diameter
    symmetric = distance_profile(group, GeneratorSet(gens.gens, "symmetric")).diameter
    print(f"gens={gens.gens}  directed={directed}  symmetric={symmetric}  "
          f"q^(1/3)={group.q ** (1 / 3):.1f}")

# %%
# Large moduli are fine: ten million vertices take a fraction of a second.
import time

group = GroupSpec(10_000_019)
gens = sample_generators(group, 3, rng=RandomSource(1))
t0 = time.perf_counter()
prof = distance_profile(group, gens)
print(f"q={group.q}: diameter {prof.diameter} in {time.perf_counter() - t0:.2f}s")
