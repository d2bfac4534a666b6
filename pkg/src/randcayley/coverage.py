"""Bounded-exponent coverage sets, hit counts and zero relations.

For a generator set g_1..g_k and a bound L, the coverage set T_L holds every
residue sum(i_j * g_j) with each exponent i_j in {0..L} (directed) or
{-L..L} (symmetric).  Hit counts record how many exponent vectors land on
each residue.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .model import CapacityError, GeneratorSet, GroupSpec, Mode

#: Guard on k * L * q for coverage_report.
COVERAGE_BUDGET = 10**12
#: Guard on the table size (L+1)**ceil(k/2) for find_zero_relation.
RELATION_BUDGET = 2 * 10**7

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True, eq=False)
class CoverageReport:
    L: int
    covered: np.ndarray  # bool membership map over [0, q)
    covered_count: int
    full: bool
    mode: Mode

    @property
    def q(self) -> int:
        return self.covered.size

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.covered)

    def __contains__(self, x: int) -> bool:
        return bool(self.covered[x % self.q])

    def same_as(self, other: "CoverageReport") -> bool:
        return (self.L == other.L and self.mode is other.mode and self.full == other.full
                and self.covered_count == other.covered_count
                and np.array_equal(self.covered, other.covered))


@dataclass(frozen=True, eq=False)
class HitCountTable:
    L: int
    counts: np.ndarray  # int64, counts[x] = B^x_L

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class RelationWitness:
    index_vector: tuple[int, ...]

    def evaluate(self, gens, q: int) -> int:
        return sum(i * g for i, g in zip(self.index_vector, gens)) % q

    def __str__(self):
        return ",".join(map(str, self.index_vector))


def _translate_sum(arr: np.ndarray, step: int, start: int, count: int, combine) -> np.ndarray:
    """Combine ``arr`` shifted by start, start+step, ..., start+(count-1)*step.

    Uses binary doubling, so it costs O(log count) full-array passes.
    """
    q = arr.size
    block = np.roll(arr, start % q)   # offsets {start}
    block_len = 1
    result = None
    result_len = 0
    n = count
    while n:
        if n & 1:
            shifted = np.roll(block, (result_len * step) % q)
            result = shifted if result is None else combine(result, shifted)
            result_len += block_len
        n >>= 1
        if n:
            block = combine(block, np.roll(block, (block_len * step) % q))
            block_len *= 2
    return result


def coverage_report(group: GroupSpec, gens: GeneratorSet, L: int,
                    budget: int = COVERAGE_BUDGET) -> CoverageReport:
    """The reachable set T_L as a boolean map, built generator by generator."""
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")
    gens.validate(group)
    q = group.q
    if gens.k * L * q > budget:
        raise CapacityError(f"coverage work k*L*q = {gens.k * L * q} exceeds budget {budget}")
    covered = np.zeros(q, dtype=bool)
    covered[0] = True
    if L > 0:
        for g in gens.gens:
            if gens.mode is Mode.DIRECTED:
                covered = _translate_sum(covered, g, 0, L + 1, np.logical_or)
            else:
                covered = _translate_sum(covered, g, -L * g, 2 * L + 1, np.logical_or)
    n = int(np.count_nonzero(covered))
    return CoverageReport(L=L, covered=covered, covered_count=n, full=n == q, mode=gens.mode)


def hit_counts(group: GroupSpec, gens: GeneratorSet, L: int) -> HitCountTable:
    """Exact number of exponent vectors in {0..L}^k hitting each residue.

    Computed as k successive cyclic convolutions of a count array with the
    indicator of {0, g, 2g, ..., Lg}.
    """
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")
    if gens.mode is not Mode.DIRECTED:
        raise ValueError("hit counts are defined for directed mode only")
    gens.validate(group)
    if (L + 1) ** gens.k > _INT64_MAX:
        raise CapacityError(f"(L+1)^k = {(L + 1) ** gens.k} does not fit a 64-bit count")
    counts = np.zeros(group.q, dtype=np.int64)
    counts[0] = 1
    if L > 0:
        for g in gens.gens:
            counts = _translate_sum(counts, g, 0, L + 1, np.add)
    return HitCountTable(L=L, counts=counts)


def _block_sums(gens: tuple[int, ...], L: int, q: int) -> np.ndarray:
    # All sums over {0..L}^len(gens), in lexicographic order of the exponents.
    sums = np.zeros(1, dtype=np.int64)
    for g in gens:
        mult = (np.arange(L + 1, dtype=np.int64) * (g % q)) % q
        sums = ((sums[:, None] + mult[None, :]) % q).ravel()
    return sums


def find_zero_relation(group: GroupSpec, gens: GeneratorSet, L: int,
                       budget: int = RELATION_BUDGET) -> RelationWitness | None:
    """Lexicographically smallest nonzero i in {0..L}^k with sum(i_j g_j) = 0 mod q.

    Meet in the middle: the exponent vector is split into a head of
    floor(k/2) coordinates and a tail of ceil(k/2).  For each tail residue
    the lexicographically first tail is kept, and heads are scanned in
    lexicographic order for a complementary residue.
    """
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")
    gens.validate(group)
    if L == 0:
        return None
    q, k = group.q, gens.k
    h = k // 2
    table = (L + 1) ** (k - h)
    if table > budget:
        raise CapacityError(f"relation table size (L+1)^ceil(k/2) = {table} exceeds budget {budget}")
    head_shape = (L + 1,) * h
    tail_shape = (L + 1,) * (k - h)
    head = _block_sums(gens.gens[:h], L, q)
    tail = _block_sums(gens.gens[h:], L, q)

    def vector(hi: int, ti: int) -> RelationWitness:
        hv = np.unravel_index(hi, head_shape) if h else ()
        tv = np.unravel_index(ti, tail_shape)
        return RelationWitness(tuple(int(v) for v in (*hv, *tv)))

    # Head = 0 needs a nonzero tail summing to 0: the second zero in lex order.
    tail_zeros = np.flatnonzero(tail == 0)
    if tail_zeros.size > 1:
        return vector(0, int(tail_zeros[1]))

    residues, first = np.unique(tail, return_index=True)
    need = (-head[1:]) % q
    pos = np.minimum(np.searchsorted(residues, need), residues.size - 1)
    hit = np.flatnonzero(residues[pos] == need)
    if hit.size == 0:
        return None
    hi = int(hit[0])
    return vector(hi + 1, int(first[pos[hi]]))


@lru_cache(maxsize=8)
def _totients(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def coprime_pair_count(L: int) -> int:
    """#{(i, j) in {1..L}^2 : gcd(i, j) = 1} = 2 * sum(phi(n), n <= L) - 1."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    return 2 * int(_totients(L)[1:].sum()) - 1


def coprime_fraction(L: int) -> Fraction:
    return Fraction(coprime_pair_count(L), L * L)


def coprime_fractions(L_max: int) -> np.ndarray:
    """coprime_fraction(L) as floats for every L in 1..L_max (index L-1)."""
    phi = _totients(L_max)[1:]
    n = np.arange(1, L_max + 1, dtype=np.float64)
    return (2 * np.cumsum(phi) - 1) / (n * n)


def independent_family_count(L: int, k: int) -> int:
    """Size of the family {i in {0..L}^k : i_1, i_2 >= 1 coprime}.

    When L < sqrt(q) any two members are linearly independent over Z_q.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    n = coprime_pair_count(L) * (L + 1) ** (k - 2)
    if n >= 2**64:
        raise OverflowError(f"family size {n} overflows 64 bits")
    return n


def independent_family(L: int, k: int):
    """Iterate the vectors counted by independent_family_count, in lex order."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    rest = list(itertools.product(range(L + 1), repeat=k - 2))
    for a in range(1, L + 1):
        for b in range(1, L + 1):
            if gcd(a, b) == 1:
                for r in rest:
                    yield (a, b, *r)
