"""Naive reference implementations used as ground truth in tests.

Nothing here is optimized and nothing is shared with the fast paths in
``diameter`` and ``coverage``.  Enumeration sizes are capped by the
constants below.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coverage import CoverageReport
from .diameter import UNREACHABLE, DistanceProfile
from .model import CapacityError, GeneratorSet, GroupSpec, Mode, is_prime

MAX_ORACLE_VERTICES = 10**4
MAX_ORACLE_VECTORS = 10**7
MAX_ORACLE_TUPLES = 10**7


def oracle_diameter(group: GroupSpec, gens: GeneratorSet) -> DistanceProfile:
    """Adjacency-list BFS from 0."""
    q = group.q
    if q > MAX_ORACLE_VERTICES:
        raise CapacityError(f"oracle_diameter is limited to q <= {MAX_ORACLE_VERTICES}, got {q}")
    steps = list(gens.gens)
    if gens.mode is Mode.SYMMETRIC:
        steps += [-g for g in gens.gens]
    adjacency = [[(v + s) % q for s in steps] for v in range(q)]

    dist = [None] * q
    dist[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)

    finite = [d for d in dist if d is not None]
    ecc = max(finite)
    per_level = [0] * (ecc + 1)
    for d in finite:
        per_level[d] += 1
    ball_sizes = list(itertools.accumulate(per_level))
    distances = np.array([UNREACHABLE if d is None else d for d in dist], dtype=np.uint32)
    return DistanceProfile(q=q, distances=distances, eccentricity=ecc,
                           reachable_count=len(finite), ball_sizes=np.array(ball_sizes, dtype=np.int64))


def oracle_coverage(group: GroupSpec, gens: GeneratorSet, L: int) -> CoverageReport:
    """Enumerate every exponent vector in the box and mark where it lands."""
    q = group.q
    exps = range(L + 1) if gens.mode is Mode.DIRECTED else range(-L, L + 1)
    if len(exps) ** gens.k > MAX_ORACLE_VECTORS:
        raise CapacityError(f"oracle_coverage is limited to {MAX_ORACLE_VECTORS} vectors")
    hit = set()
    for vec in itertools.product(exps, repeat=gens.k):
        hit.add(sum(i * g for i, g in zip(vec, gens.gens)) % q)
    covered = np.zeros(q, dtype=bool)
    covered[sorted(hit)] = True
    return CoverageReport(L=L, covered=covered, covered_count=len(hit), full=len(hit) == q, mode=gens.mode)


def oracle_hit_counts(q: int, gens, L: int) -> list[int]:
    counts = [0] * q
    for vec in itertools.product(range(L + 1), repeat=len(gens)):
        counts[sum(i * g for i, g in zip(vec, gens)) % q] += 1
    return counts


def oracle_zero_relation(q: int, gens, L: int):
    """First nonzero vector of {0..L}^k (lex order) with sum(i_j g_j) = 0 mod q."""
    for vec in itertools.product(range(L + 1), repeat=len(gens)):
        if any(vec) and sum(i * g for i, g in zip(vec, gens)) % q == 0:
            return vec
    return None


class Classification(enum.Enum):
    INDEPENDENT = "independent"
    DEPENDENT = "dependent"
    EQUAL = "equal"


@dataclass(frozen=True)
class EventStatistics:
    q: int
    k: int
    x: int
    i_vec: tuple[int, ...]
    j_vec: tuple[int, ...]
    count_i: int
    count_joint: int
    classification: Classification

    @property
    def p_i(self) -> float:
        return self.count_i / self.q ** self.k

    @property
    def p_joint(self) -> float:
        return self.count_joint / self.q ** self.k

    @property
    def covariance(self) -> float:
        # Both events have the same marginal when i is nonzero mod q.
        return self.p_joint - self.p_i ** 2


def classify(q: int, i_vec, j_vec) -> Classification:
    """Linear (in)dependence of two vectors over the field Z_q, by brute force."""
    i_vec = [a % q for a in i_vec]
    j_vec = [b % q for b in j_vec]
    if i_vec == j_vec:
        return Classification.EQUAL
    for lam in range(q):
        if [lam * a % q for a in i_vec] == j_vec or [lam * b % q for b in j_vec] == i_vec:
            return Classification.DEPENDENT
    return Classification.INDEPENDENT


def event_statistics(q: int, k: int, i_vec, j_vec, x: int) -> EventStatistics:
    """Count generator tuples in (Z_q)^k satisfying i.g = x and both i.g = x, j.g = x."""
    if not is_prime(q):
        raise ValueError(f"event_statistics needs a prime modulus, got {q}")
    if q ** k > MAX_ORACLE_TUPLES:
        raise CapacityError(f"event_statistics is limited to q^k <= {MAX_ORACLE_TUPLES}")
    i_vec, j_vec = tuple(i_vec), tuple(j_vec)
    if len(i_vec) != k or len(j_vec) != k:
        raise ValueError("index vectors must have length k")
    if all(a % q == 0 for a in i_vec):
        raise ValueError("i_vec must be nonzero mod q")
    x %= q
    count_i = count_joint = 0
    for g in itertools.product(range(q), repeat=k):
        hit_i = sum(a * b for a, b in zip(i_vec, g)) % q == x
        if hit_i:
            count_i += 1
            if sum(a * b for a, b in zip(j_vec, g)) % q == x:
                count_joint += 1
    return EventStatistics(q, k, x, i_vec, j_vec, count_i, count_joint, classify(q, i_vec, j_vec))


def family_moments(q: int, family, x: int = 0) -> tuple[Fraction, Fraction]:
    """E(X) and E(X^2) for X = #{i in family : i.g = x}, over all g in (Z_q)^k."""
    family = [tuple(v) for v in family]
    k = len(family[0])
    if q ** k * len(family) > 50 * MAX_ORACLE_TUPLES:
        raise CapacityError("family too large for exhaustive moments")
    s1 = s2 = 0
    for g in itertools.product(range(q), repeat=k):
        X = sum(1 for v in family if sum(a * b for a, b in zip(v, g)) % q == x)
        s1 += X
        s2 += X * X
    n = q ** k
    return Fraction(s1, n), Fraction(s2, n)
