"""
Counting identities behind the second-moment argument
=====================================================

Exhaustive enumeration over all generator tuples in (Z_q)^k: single events
have probability 1/q, independent pairs 1/q^2, dependent pairs never fire
together away from 0.  Then the coprime-pair density that sizes the
pairwise independent family.
"""

# %%
from randcayley.oracle import event_statistics, family_moments
from randcayley.coverage import coprime_fraction, independent_family, independent_family_count

for i, j in [((1, 0, 2), (0, 1, 1)), ((1, 2, 3), (2, 4, 6)), ((1, 2, 3), (1, 2, 3))]:
    st = event_statistics(11, 3, i, j, 1)
    print(f"{i} {j}: {st.classification.value:11s} count_i={st.count_i} joint={st.count_joint} "
          f"cov={st.covariance:+.5f}")

# %%
# First and second moments of X = number of family members hitting 0.
fam = list(independent_family(3, 2))
m1, m2 = family_moments(13, fam)
print(f"|I|={len(fam)}  E(X)={m1}  E(X^2)={m2}  P(X>0) >= E(X)^2/E(X^2) = {float(m1 ** 2 / m2):.4f}")

# %%
# The coprime fraction hovers around 6/pi^2 ~ 0.6079 but is not always above
# it: L = 820 dips just below.
import math

for L in (10, 100, 819, 820, 821, 1000):
    f = coprime_fraction(L)
    print(f"L={L:5d}  fraction={float(f):.7f}  above 6/pi^2: {f > 6 / math.pi ** 2}")
print("family size for L=100, k=3:", independent_family_count(100, 3), ">= L^3/2 =", 100 ** 3 // 2)
