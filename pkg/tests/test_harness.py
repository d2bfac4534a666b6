import math

import numpy as np
import pytest

from randcayley import Mode, SweepConfig, run_trials, scaled_distribution, tail_estimates, wilson_interval
from randcayley.harness import (TrialRecord, bound_checks, lemma_d, paper_lower_bound,
                                paper_upper_bound, summarize)


def fake_records(scaled, q=10007, k=2):
    r = math.sqrt(q) if k == 2 else q ** (1 / k)
    out = []
    for i, s in enumerate(scaled):
        d = None if s is None else s * r
        out.append(TrialRecord(trial_index=i, q=q, k=k, mode=Mode.DIRECTED, seed=0, gens=(1, 2),
                               diameter=d, scaled_diameter=s))
    return out


def wilson_reference(x, n, z=1.959963984540054):
    # Closed form from the score-test inversion, written independently.
    p = x / n
    a = 2 * n * p + z * z
    b = z * math.sqrt(z * z + 4 * n * p * (1 - p))
    c = 2 * (n + z * z)
    return (a - b) / c, (a + b) / c


@pytest.mark.parametrize("x, n", [(0, 100), (1, 500), (37, 50), (50, 50), (3, 2000)])
def test_wilson_matches_closed_form(x, n):
    lo, hi = wilson_interval(x, n)
    rlo, rhi = wilson_reference(x, n)
    assert lo == pytest.approx(max(rlo, 0.0), abs=1e-12)
    assert hi == pytest.approx(min(rhi, 1.0), abs=1e-12)


def test_wilson_zero_exceedances():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0.0
    assert hi == pytest.approx(0.037, abs=5e-4)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_wilson_against_statsmodels():
    sm = pytest.importorskip("statsmodels.stats.proportion")
    for x, n in [(0, 100), (7, 40), (500, 500)]:
        lo, hi = sm.proportion_confint(x, n, alpha=0.05, method="wilson")
        assert wilson_interval(x, n) == pytest.approx((lo, hi), abs=1e-12)


def test_tail_estimates_examples():
    recs = fake_records([0.5, 1.5, 2.5])
    t1, t3 = tail_estimates(recs, [1, 3])
    assert t1.estimate == pytest.approx(2 / 3) and t1.count == 2 and t1.N == 3
    assert t3.estimate == 0
    assert t1.wilson_lo <= t1.estimate <= t1.wilson_hi


def test_tail_estimates_exclude_unreachable():
    recs = fake_records([0.5, None, 2.5])
    (t,) = tail_estimates(recs, [1])
    assert t.N == 2 and t.excluded == 1 and t.estimate == 0.5
    with pytest.raises(ValueError):
        tail_estimates([], [1])
    with pytest.raises(ValueError):
        tail_estimates(fake_records([1.0]) + fake_records([1.0], q=101), [1])


def test_paper_bound_constants():
    assert paper_upper_bound(20, 2) == pytest.approx(0.08)
    assert paper_upper_bound(16, 2) == pytest.approx(0.125)
    assert paper_upper_bound(24, 2) == pytest.approx(2 / 36)
    assert lemma_d(2, 2) == pytest.approx(1 / 8)
    assert paper_lower_bound(2, 2) == pytest.approx(1 / 192)
    assert paper_lower_bound(3, 2) == pytest.approx(1 / 432)
    # the implication hypothesis k D C^(k-1) < 1 for (C, D) = (4, 0.1)
    assert 2 * 0.1 * 4 == pytest.approx(0.8)


def test_scaled_distribution_examples():
    s = scaled_distribution(fake_records([2.0] * 50))
    assert s["min"] == s["max"] == s["median"] == 2.0
    assert all(d == 2.0 for d in s["deciles"])
    assert s["sd"] == 0.0
    s = summarize(np.arange(1, 11))
    assert s["median"] == 5.5 and s["min"] == 1 and s["max"] == 10
    with pytest.raises(ValueError):
        scaled_distribution(fake_records([1.0] * 19))


def test_run_trials_deterministic_and_thread_independent():
    cfg = SweepConfig(q_list=(101, 211), k_list=(2, 3), modes=("directed", "symmetric"), trials=8,
                      l_probes=(0.5, 1.0), master_seed=77)
    a = run_trials(cfg, threads=1)
    b = run_trials(cfg, threads=1)
    c = run_trials(cfg, threads=4)
    assert a == b == c
    keys = [(r.q, r.k, r.mode.value, r.trial_index) for r in a]
    assert keys == sorted(keys, key=lambda t: (t[0], t[1], t[2] != "directed", t[3]))
    assert all(len(r.L_used) == len(r.relation_fired) == len(r.coverage_count) for r in a)


def test_k1_directed_cycle():
    cfg = SweepConfig(q_list=(101,), k_list=(1,), trials=10, c_grid=(1,), lb_pairs=(),
                      nonzero=True, theorem_checks=False)
    assert {r.diameter for r in run_trials(cfg)} == {100}


def test_large_q_nondegenerate():
    cfg = SweepConfig(q_list=(99991,), k_list=(2,), trials=200, lb_pairs=(), master_seed=5)
    recs = run_trials(cfg)
    scaled = [r.scaled_diameter for r in recs]
    assert all(s is not None and s > 0 for s in scaled)
    assert len(set(scaled)) > 1


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(q_list=(100,), k_list=(2,))
    SweepConfig(q_list=(100,), k_list=(2,), theorem_checks=False)
    with pytest.raises(ValueError):
        SweepConfig(q_list=(101,), k_list=(2,), trials=0)
    with pytest.raises(ValueError):
        SweepConfig(q_list=(101,), k_list=(2,), nonzero=True)


def test_per_trial_errors_do_not_abort():
    cfg = SweepConfig(q_list=(10007,), k_list=(2,), trials=3, lb_pairs=(), l_probes=(1.0,),
                      budget=10, theorem_checks=False)
    recs = run_trials(cfg)
    assert len(recs) == 3 and all(r.error and r.diameter is None for r in recs)


def test_bound_checks_report():
    cfg = SweepConfig(q_list=(10007,), k_list=(2,), trials=100, c_grid=(1, 2, 3, 16),
                      lb_pairs=((4, 0.1), (2, 0.125)), master_seed=1)
    recs = run_trials(cfg)
    rep = bound_checks(recs, cfg.c_grid, cfg.lb_pairs)
    verdicts = {e["C"]: e["verdict"] for e in rep.upper}
    assert verdicts[1] == "VACUOUS" and verdicts[16] in ("PASS", "FAIL")
    assert [e["L"] for e in rep.lemma] == [10, 12]
    assert rep.monotone_tail
    assert rep.counting_bound_violations == 0
    assert rep.passed


def test_bound_checks_refuse_composite():
    with pytest.raises(ValueError):
        bound_checks(fake_records([1.0, 2.0], q=10000), [1])
