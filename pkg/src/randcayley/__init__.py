"""Exact diameters, coverage sets and Monte Carlo experiments for random Cayley graphs of Z_q."""

__version__ = "0.1.0"

from .coverage import (CoverageReport, HitCountTable, RelationWitness, coprime_fraction,
                       coprime_pair_count, coverage_report, find_zero_relation, hit_counts,
                       independent_family, independent_family_count)
from .diameter import UNREACHABLE, DistanceProfile, distance_profile
from .harness import (SweepConfig, TailEstimate, TrialRecord, bound_checks, run_trials,
                      scaled_distribution, tail_estimates, wilson_interval)
from .model import (CapacityError, GeneratorSet, GroupSpec, Mode, RandomSource, is_prime,
                    next_prime, sample_generators)
