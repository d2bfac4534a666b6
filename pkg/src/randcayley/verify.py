"""Verification suites run by ``randcayley verify`` and by the acceptance tests.

Each suite returns a list of :class:`Check` results; a suite passes when
every check does.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .coverage import (coprime_fraction, coverage_report, hit_counts, independent_family,
                       independent_family_count)
from .diameter import distance_profile
from .harness import SweepConfig, bound_checks, root, run_trials, scaled_distribution, tail_estimates
from .model import GeneratorSet, GroupSpec, Mode, RandomSource, is_prime, sample_generators
from .oracle import Classification, classify, event_statistics, family_moments, oracle_coverage, oracle_diameter

DEFAULT_SEED = 20071  # any fixed value; recorded in every sweep summary

SUITES = ("oracle", "events", "coprime", "coverage-links", "ub", "lb")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if is_prime(n)]


def counting_bound_check(records, label: str) -> Check:
    bad = [r for r in records if r.mode is Mode.DIRECTED and r.diameter is not None
           and r.diameter < root(r.q, r.k) - r.k]
    n = sum(1 for r in records if r.mode is Mode.DIRECTED and r.diameter is not None)
    return Check(f"counting lower bound ({label})", not bad,
                 f"{len(bad)} of {n} directed diameters below q^(1/k) - k")


def diameter_oracle_checks(seed: int = DEFAULT_SEED, q_max: int = 1999, seeds: int = 20) -> list[Check]:
    mismatches = total = below = directed = 0
    for q in primes_between(5, q_max):
        group = GroupSpec(q)
        for k in (1, 2, 3):
            for stream in range(seeds):
                base = sample_generators(group, k, "directed", RandomSource(seed, stream))
                for mode in Mode:
                    gens = GeneratorSet(base.gens, mode)
                    total += 1
                    prof = distance_profile(group, gens)
                    if not prof.same_as(oracle_diameter(group, gens)):
                        mismatches += 1
                    if mode is Mode.DIRECTED and prof.diameter is not None:
                        directed += 1
                        below += prof.diameter < root(q, k) - k
    return [Check("diameter engine matches oracle BFS", mismatches == 0,
                  f"{mismatches} mismatches in {total} profiles (primes 5..{q_max}, k<=3, both modes)"),
            Check("counting lower bound (oracle)", below == 0,
                  f"{below} of {directed} directed diameters below q^(1/k) - k")]


def coverage_oracle_check(seed: int = DEFAULT_SEED, q_max: int = 200, L_max: int = 12,
                          seeds: int = 10) -> Check:
    mismatches = bad_sums = total = 0
    for q in primes_between(2, q_max):
        group = GroupSpec(q)
        for k in (1, 2, 3):
            for stream in range(seeds):
                base = sample_generators(group, k, "directed", RandomSource(seed, stream))
                for mode in Mode:
                    gens = GeneratorSet(base.gens, mode)
                    for L in range(L_max + 1):
                        total += 1
                        fast = coverage_report(group, gens, L)
                        if not fast.same_as(oracle_coverage(group, gens, L)):
                            mismatches += 1
                        if mode is Mode.DIRECTED:
                            table = hit_counts(group, gens, L)
                            if table.total != (L + 1) ** k or not ((table.counts > 0) == fast.covered).all():
                                bad_sums += 1
    return Check("coverage matches oracle enumeration; hit counts sum to (L+1)^k",
                 mismatches == 0 and bad_sums == 0,
                 f"{mismatches} coverage mismatches, {bad_sums} bad hit tables in {total} cases")


def oracle_suite(seed: int = DEFAULT_SEED) -> list[Check]:
    return [*diameter_oracle_checks(seed), coverage_oracle_check(seed)]


def _event_pools(q: int, k: int, rng: random.Random, size: int = 10):
    """Ten independent and ten dependent pairs of nonzero vectors in Z_q^k."""
    def nonzero():
        while True:
            v = tuple(rng.randrange(q) for _ in range(k))
            if any(v):
                return v

    indep, dep = [], []
    while len(indep) < size:
        i, j = nonzero(), nonzero()
        if classify(q, i, j) is Classification.INDEPENDENT:
            indep.append((i, j))
    while len(dep) < size:
        i, lam = nonzero(), rng.randrange(2, q)
        dep.append((i, tuple(lam * a % q for a in i)))
    return indep, dep


def events_suite(seed: int = DEFAULT_SEED) -> list[Check]:
    rng = random.Random(seed)
    marg_bad = indep_bad = dep_bad = n_indep = n_dep = 0
    for q in (5, 7, 11, 13):
        for k in (2, 3):
            indep, dep = _event_pools(q, k, rng)
            for x in (1, 2):
                for (i, j) in indep:
                    st = event_statistics(q, k, i, j, x)
                    n_indep += 1
                    marg_bad += st.count_i != q ** (k - 1)
                    indep_bad += st.classification is not Classification.INDEPENDENT or st.count_joint != q ** (k - 2)
                for (i, j) in dep:
                    st = event_statistics(q, k, i, j, x)
                    n_dep += 1
                    marg_bad += st.count_i != q ** (k - 1)
                    dep_bad += st.classification is not Classification.DEPENDENT or st.count_joint != 0
    checks = [
        Check("single-event count is q^(k-1)", marg_bad == 0, f"{marg_bad} of {n_indep + n_dep} wrong"),
        Check("independent pairs: joint count q^(k-2)", indep_bad == 0, f"{indep_bad} of {n_indep} wrong"),
        Check("dependent pairs, x != 0: joint count 0", dep_bad == 0, f"{dep_bad} of {n_dep} wrong"),
    ]
    # Second moment of a pairwise independent family, exhaustively over g.
    moment_bad = 0
    cases = [(13, 2, 3), (11, 2, 3), (7, 3, 2), (5, 3, 2)]
    for q, k, L in cases:
        fam = list(independent_family(L, k))
        m1, m2 = family_moments(q, fam, x=0)
        n = len(fam)
        moment_bad += m1 != Fraction(n, q) or m2 != Fraction(n, q) + Fraction(n * (n - 1), q * q)
    checks.append(Check("E(X) = |I|/q and E(X^2) = |I|/q + |I|(|I|-1)/q^2", moment_bad == 0,
                        f"{moment_bad} of {len(cases)} families wrong"))
    return checks


def coprime_suite(seed: int = DEFAULT_SEED) -> list[Check]:
    threshold = Fraction("0.60792")
    fractions = {L: coprime_fraction(L) for L in range(1, 1001)}
    below = [(L, f) for L, f in fractions.items() if not f > threshold]
    detail = "all above" if not below else "; ".join(
        f"L={L}: {f.numerator}/{f.denominator} = {float(f):.9f}" for L, f in below)
    checks = [Check(f"coprime fraction > {float(threshold)} for L in 1..1000", not below, detail)]
    gap = abs(float(fractions[1000]) - 6 / math.pi ** 2)
    checks.append(Check("|coprime fraction(1000) - 6/pi^2| < 0.01", gap < 0.01, f"gap {gap:.6f}"))
    short = [(L, k) for L in range(1, 101) for k in (2, 3, 4)
             if independent_family_count(L, k) < Fraction(L ** k, 2)]
    checks.append(Check("independent family size >= L^k/2 for L <= 100, k in 2..4", not short,
                        f"{len(short)} failures"))
    return checks


def coverage_links_suite(seed: int = DEFAULT_SEED, q: int = 10007, k: int = 2, trials: int = 50) -> list[Check]:
    group = GroupSpec(q)
    r = math.sqrt(q)
    violations = {"full(L) => diam <= kL": 0, "not full(L) => diam >= L+1": 0,
                  "B_L > q/2 => full(2L)": 0, "full(diam)": 0}
    diameters = []
    for t in range(trials):
        gens = sample_generators(group, k, "directed", RandomSource(seed, t))
        diam = distance_profile(group, gens).diameter
        if diam is None:
            continue
        diameters.append(diam)
        for L in (math.floor(0.5 * r), math.floor(r), math.floor(2 * r), diam):
            rep = coverage_report(group, gens, L)
            if rep.full and diam > k * L:
                violations["full(L) => diam <= kL"] += 1
            if not rep.full and diam < L + 1:
                violations["not full(L) => diam >= L+1"] += 1
            if rep.covered_count > q / 2 and not coverage_report(group, gens, 2 * L).full:
                violations["B_L > q/2 => full(2L)"] += 1
            if L == diam and not rep.full:
                violations["full(diam)"] += 1
    checks = [Check(f"coverage link: {name}", n == 0, f"{n} violations over {trials} trials")
              for name, n in violations.items()]
    bad = sum(1 for d in diameters if d < r - k)
    checks.append(Check("counting lower bound (coverage-links)", bad == 0,
                        f"{bad} of {len(diameters)} diameters below sqrt(q) - k"))
    return checks


UB_C_GRID = (1, 1.5, 2, 3, 4, 8, 16, 20, 24)


def ub_config(seed: int = DEFAULT_SEED, threads: int = 1) -> SweepConfig:
    return SweepConfig(q_list=(99991,), k_list=(2,), modes=(Mode.DIRECTED,), trials=500,
                       c_grid=UB_C_GRID, l_probes=(), lb_pairs=(), master_seed=seed, threads=threads)


def lb_config(seed: int = DEFAULT_SEED, threads: int = 1) -> SweepConfig:
    return SweepConfig(q_list=(99991,), k_list=(2,), modes=(Mode.DIRECTED,), trials=2000,
                       c_grid=(2, 3), l_probes=(), lb_pairs=((4, 0.1), (2, 0.125)),
                       master_seed=seed, threads=threads)


def ub_suite(seed: int = DEFAULT_SEED, threads: int = 1) -> list[Check]:
    cfg = ub_config(seed, threads)
    records = run_trials(cfg)
    tails = tail_estimates(records, cfg.c_grid)
    checks = []
    for t in tails:
        if t.C in (16, 20, 24):
            checks.append(Check(f"upper bound surrogate C={t.C:g}", t.wilson_lo <= t.paper_upper,
                                f"wilson_lo {t.wilson_lo:.5f} <= 2/(C/2k)^k = {t.paper_upper:.5f} "
                                f"({t.count}/{t.N} exceed)"))
    mono = all(a.estimate >= b.estimate for a, b in zip(tails, tails[1:]))
    checks.append(Check("empirical tail non-increasing in C", mono,
                        " ".join(f"{t.C:g}:{t.estimate:.4f}" for t in tails)))
    checks.append(counting_bound_check(records, "ub"))
    return checks


def lb_suite(seed: int = DEFAULT_SEED, threads: int = 1) -> list[Check]:
    cfg = lb_config(seed, threads)
    records = run_trials(cfg)
    report = bound_checks(records, cfg.c_grid, cfg.lb_pairs)
    checks = []
    for entry in report.lower:
        checks.append(Check(f"lower bound surrogate C={entry['C']:g}", entry["verdict"] == "PASS",
                            f"wilson_hi {entry['wilson_hi']:.5f} >= D^k/3 = {entry['bound']:.6f}"))
    dist = scaled_distribution(records)
    checks.append(Check("scaled diameter IQR > 0", dist["iqr"] > 0, f"IQR {dist['iqr']:.5f}"))
    for entry in report.lemma:
        checks.append(Check(f"zero relation at L={entry['L']} => diam > {entry['C']:g} sqrt(q)",
                            entry["violations"] == 0,
                            f"{entry['violations']} violations among {entry['fired']} fired "
                            f"(C={entry['C']:g}, D={entry['D']:g})"))
    checks.append(counting_bound_check(records, "lb"))
    return checks


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Check]:
    suites = {"oracle": oracle_suite, "events": events_suite, "coprime": coprime_suite,
              "coverage-links": coverage_links_suite, "ub": ub_suite, "lb": lb_suite}
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return suites[name](seed)
