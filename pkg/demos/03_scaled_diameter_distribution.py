"""
The distribution of Diam / q^(1/k)
==================================

Across moduli of very different sizes the scaled diameter keeps a stable,
spread-out distribution.  Tail probabilities come with Wilson intervals and
are set against the explicit constants of the upper and lower bounds.
"""

# %%
from randcayley import Mode, SweepConfig, run_trials, scaled_distribution, tail_estimates
from randcayley.harness import bound_checks, group_cells

config = SweepConfig(q_list=(10007, 99991, 999983), k_list=(2,), modes=(Mode.DIRECTED,),
                     trials=300, c_grid=(1.5, 2, 3, 4, 8, 16), master_seed=11, threads=0)
records = run_trials(config)

# %%
# Quantiles of the scaled diameter per modulus.
for (q, k, mode), recs in group_cells(records).items():
    s = scaled_distribution(recs)
    print(f"q={q:7d}  median={s['median']:.3f}  IQR={s['iqr']:.3f}  "
          f"deciles={[round(d, 2) for d in s['deciles']]}")

# %%
# Tail table for the largest modulus.
recs = group_cells(records)[(999983, 2, Mode.DIRECTED)]
print(f"{'C':>5} {'P(Diam > C sqrt q)':>20} {'95% Wilson':>20} {'upper':>8} {'lower':>9}")
for t in tail_estimates(recs, config.c_grid):
    print(f"{t.C:5g} {t.estimate:20.4f} {f'[{t.wilson_lo:.4f}, {t.wilson_hi:.4f}]':>20} "
          f"{t.paper_upper:8.3f} {t.paper_lower:9.2e}")

# %%
# The same comparisons as pass/fail verdicts, plus the zero-relation
# implication for D = 1/(2kC).
report = bound_checks(recs, config.c_grid)
for row in report.upper:
    print("upper", row["C"], row["verdict"])
for row in report.lemma:
    print("relation implication", row)
