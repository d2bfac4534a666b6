"""Seeded Monte Carlo sweeps over random Cayley graphs of Z_q.

Each trial draws k generators from its own stream, keyed only by the master
seed and the trial index, so results do not depend on scheduling.  The
aggregation helpers turn trial records into tail probabilities with Wilson
intervals, quantile summaries of Diam / q^(1/k), and checks against the
explicit constants of the upper and lower diameter bounds.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .coverage import COVERAGE_BUDGET, RELATION_BUDGET, coverage_report, find_zero_relation
from .diameter import distance_profile
from .model import CapacityError, GroupSpec, Mode, RandomSource, sample_generators

Z95 = NormalDist().inv_cdf(0.975)


@dataclass(frozen=True)
class SweepConfig:
    q_list: tuple[int, ...]
    k_list: tuple[int, ...]
    modes: tuple[Mode, ...] = (Mode.DIRECTED,)
    trials: int = 100
    c_grid: tuple[float, ...] = (1.0, 2.0, 4.0)
    # L probes given as multiples f of q^(1/k): L = floor(f * q^(1/k)).
    l_probes: tuple[float, ...] = ()
    # (C, D) pairs for the zero-relation implication; None means derive
    # D = 1/(2 k C^(k-1)) for every C in c_grid.
    lb_pairs: tuple[tuple[float, float], ...] | None = None
    master_seed: int = 0
    budget: int = COVERAGE_BUDGET
    relation_budget: int = RELATION_BUDGET
    threads: int = 1
    nonzero: bool = False
    distinct: bool = False
    theorem_checks: bool = True

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(Mode.parse(m) for m in self.modes))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.q_list or not self.k_list or not self.modes:
            raise ValueError("q_list, k_list and modes must be non-empty")
        if any(c <= 0 for c in self.c_grid):
            raise ValueError("C grid values must be > 0")
        if any(k < 1 for k in self.k_list):
            raise ValueError("k values must be >= 1")
        for q in self.q_list:
            group = GroupSpec(q)
            if self.theorem_checks and not group.is_prime:
                raise ValueError(f"theorem checks require prime moduli; {q} is composite")
        if self.theorem_checks and (self.nonzero or self.distinct):
            raise ValueError("nonzero/distinct sampling is excluded from theorem checks")

    def pairs_for(self, k: int) -> list[tuple[float, float]]:
        if self.lb_pairs is not None:
            return [tuple(p) for p in self.lb_pairs]
        return [(c, lemma_d(c, k)) for c in self.c_grid]

    def probe_factors(self, k: int) -> list[float]:
        return sorted(set(self.l_probes) | {d for _, d in self.pairs_for(k)})


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    q: int
    k: int
    mode: Mode
    seed: int
    gens: tuple[int, ...]
    diameter: int | None
    scaled_diameter: float | None
    L_used: tuple[int, ...] = ()
    relation_fired: tuple[bool, ...] = ()
    coverage_count: tuple[int, ...] = ()
    error: str | None = None

    @property
    def cell(self):
        return (self.q, self.k, self.mode)

    def fired_at(self, L: int) -> bool | None:
        for l, f in zip(self.L_used, self.relation_fired):
            if l == L:
                return f
        return None


def root(q: int, k: int) -> float:
    return q ** (1.0 / k)


def lemma_d(C: float, k: int) -> float:
    """The D paired with C in the lower-bound argument, 1 / (2 k C^(k-1))."""
    return 1.0 / (2 * k * C ** (k - 1))


def paper_upper_bound(C: float, k: int) -> float:
    """Upper bound 2 / (C/2k)^k on P(Diam > C q^(1/k))."""
    return 2.0 / (C / (2 * k)) ** k


def paper_lower_bound(C: float, k: int) -> float:
    """Lower bound D^k / 3 with D = 1/(2 k C^(k-1))."""
    return lemma_d(C, k) ** k / 3.0


def probe_L(factor: float, q: int, k: int) -> int:
    return math.floor(factor * root(q, k))


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n <= 0:
        raise ValueError("Wilson interval needs n >= 1")
    p = successes / n
    denom = 1 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return max(0.0, center - half), min(1.0, center + half)


def run_trial(config: SweepConfig, q: int, k: int, mode: Mode, trial_index: int) -> TrialRecord:
    rng = RandomSource(config.master_seed, trial_index)
    group = GroupSpec(q)
    gens = sample_generators(group, k, mode, rng, nonzero=config.nonzero, distinct=config.distinct)
    base = dict(trial_index=trial_index, q=q, k=k, mode=mode, seed=rng.stream_seed, gens=gens.gens)
    try:
        diam = distance_profile(group, gens).diameter
        Ls, fired, counts = [], [], []
        for f in config.probe_factors(k):
            L = probe_L(f, q, k)
            if L in Ls:
                continue
            Ls.append(L)
            fired.append(find_zero_relation(group, gens, L, config.relation_budget) is not None)
            counts.append(coverage_report(group, gens, L, config.budget).covered_count)
    except (CapacityError, ValueError) as exc:
        return TrialRecord(diameter=None, scaled_diameter=None, error=str(exc), **base)
    scaled = None if diam is None else diam / root(q, k)
    return TrialRecord(diameter=diam, scaled_diameter=scaled, L_used=tuple(Ls),
                       relation_fired=tuple(fired), coverage_count=tuple(counts), **base)


def run_trials(config: SweepConfig, threads: int | None = None) -> list[TrialRecord]:
    """All trials of every (q, k, mode) cell, sorted by (q, k, mode, trial_index)."""
    threads = config.threads if threads is None else threads
    if threads == 0:
        threads = os.cpu_count() or 1
    jobs = [(q, k, m, t) for q in config.q_list for k in config.k_list
            for m in config.modes for t in range(config.trials)]
    if threads == 1:
        records = [run_trial(config, *job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda job: run_trial(config, *job), jobs))
    order = {m: i for i, m in enumerate(Mode)}
    records.sort(key=lambda r: (r.q, r.k, order[r.mode], r.trial_index))
    return records


def group_cells(records) -> dict:
    cells: dict = {}
    for r in records:
        cells.setdefault(r.cell, []).append(r)
    return cells


def _single_cell(records) -> tuple[int, int, Mode]:
    if not records:
        raise ValueError("no trial records")
    cells = {r.cell for r in records}
    if len(cells) != 1:
        raise ValueError(f"records span several (q, k, mode) cells: {sorted(cells, key=str)}")
    return cells.pop()


@dataclass(frozen=True)
class TailEstimate:
    C: float
    count: int
    N: int
    estimate: float
    wilson_lo: float
    wilson_hi: float
    paper_upper: float
    paper_lower: float
    excluded: int = 0

    def as_dict(self) -> dict:
        return {"C": self.C, "count": self.count, "N": self.N, "estimate": self.estimate,
                "wilson_lo": self.wilson_lo, "wilson_hi": self.wilson_hi,
                "paper_upper": self.paper_upper, "paper_lower": self.paper_lower}


def tail_estimates(records, c_grid) -> list[TailEstimate]:
    """Empirical P(Diam > C q^(1/k)) for each C, with 95% Wilson intervals.

    Trials without a finite diameter (unreachable vertices or per-trial
    errors) are left out and counted in ``excluded``.
    """
    q, k, _ = _single_cell(records)
    finite = [r.diameter for r in records if r.diameter is not None]
    excluded = len(records) - len(finite)
    if not finite:
        raise ValueError("no finite diameters to estimate from")
    n = len(finite)
    diam = np.asarray(finite, dtype=np.float64)
    out = []
    for C in c_grid:
        count = int(np.count_nonzero(diam > C * root(q, k)))
        lo, hi = wilson_interval(count, n)
        out.append(TailEstimate(C=float(C), count=count, N=n, estimate=count / n, wilson_lo=lo,
                                wilson_hi=hi, paper_upper=paper_upper_bound(C, k),
                                paper_lower=paper_lower_bound(C, k), excluded=excluded))
    return out


@dataclass
class BoundCheckReport:
    q: int
    k: int
    mode: Mode
    upper: list[dict] = field(default_factory=list)
    lower: list[dict] = field(default_factory=list)
    lemma: list[dict] = field(default_factory=list)
    counting_bound_violations: int = 0
    monotone_tail: bool = True

    @property
    def passed(self) -> bool:
        return (all(c["verdict"] != "FAIL" for c in self.upper + self.lower)
                and all(c["violations"] == 0 for c in self.lemma)
                and self.counting_bound_violations == 0 and self.monotone_tail)

    def as_dict(self) -> dict:
        return {"upper_bound": self.upper,
                "lower_bound_surrogate": self.lower,
                "zero_relation_implication": self.lemma,
                "counting_bound_violations": self.counting_bound_violations,
                "monotone_tail": self.monotone_tail,
                "passed": self.passed,
                "note": "finite-q surrogates of limit statements"}


def bound_checks(records, c_grid, lb_pairs=None) -> BoundCheckReport:
    """Compare empirical tails with the explicit upper and lower bounds.

    * upper: Wilson lower limit <= 2/(C/2k)^k, only where that bound is < 1;
    * lower: Wilson upper limit >= D^k/3 with D = 1/(2 k C^(k-1));
    * zero-relation implication: for each (C, D) with k D C^(k-1) < 1, any
      trial whose relation search fired at L = floor(D q^(1/k)) must have
      diameter > C q^(1/k);
    * counting bound (directed only): diameter >= q^(1/k) - k.
    """
    q, k, mode = _single_cell(records)
    GroupSpec(q).require_prime("bound checks")
    if k < 2:
        raise ValueError("bound checks need k >= 2")
    report = BoundCheckReport(q, k, mode)
    tails = tail_estimates(records, sorted(c_grid))
    report.monotone_tail = all(a.estimate >= b.estimate for a, b in zip(tails, tails[1:]))
    for t in tails:
        if t.paper_upper >= 1:
            verdict = "VACUOUS"
        else:
            verdict = "PASS" if t.wilson_lo <= t.paper_upper else "FAIL"
        report.upper.append({"C": t.C, "wilson_lo": t.wilson_lo, "bound": t.paper_upper, "verdict": verdict})
        verdict = "PASS" if t.wilson_hi >= t.paper_lower else "FAIL"
        report.lower.append({"C": t.C, "D": lemma_d(t.C, k), "wilson_hi": t.wilson_hi,
                             "bound": t.paper_lower, "verdict": verdict})

    pairs = lb_pairs if lb_pairs is not None else [(c, lemma_d(c, k)) for c in c_grid]
    for C, D in pairs:
        if k * D * C ** (k - 1) >= 1:
            continue
        L = probe_L(D, q, k)
        probed = fired = violations = 0
        for r in records:
            f = r.fired_at(L)
            if f is None or r.diameter is None:
                continue
            probed += 1
            if f:
                fired += 1
                if r.diameter <= C * root(q, k):
                    violations += 1
        report.lemma.append({"C": C, "D": D, "L": L, "probed": probed, "fired": fired,
                             "violations": violations})

    if mode is Mode.DIRECTED:
        floor_bound = root(q, k) - k
        report.counting_bound_violations = sum(
            1 for r in records if r.diameter is not None and r.diameter < floor_bound)
    return report


def scaled_distribution(records, min_count: int = 20) -> dict:
    """Order statistics of Diam / q^(1/k) over the finite trials."""
    vals = np.asarray([r.scaled_diameter for r in records if r.scaled_diameter is not None],
                      dtype=np.float64)
    if vals.size < min_count:
        raise ValueError(f"need at least {min_count} finite diameters, got {vals.size}")
    return summarize(vals)


def summarize(vals) -> dict:
    vals = np.asarray(vals, dtype=np.float64)
    deciles = np.quantile(vals, np.linspace(0.1, 0.9, 9))
    q1, median, q3 = np.quantile(vals, [0.25, 0.5, 0.75])
    return {"n": int(vals.size), "min": float(vals.min()), "max": float(vals.max()),
            "mean": float(vals.mean()), "sd": float(vals.std(ddof=1)) if vals.size > 1 else 0.0,
            "median": float(median), "q1": float(q1), "q3": float(q3), "iqr": float(q3 - q1),
            "deciles": [float(d) for d in deciles]}
