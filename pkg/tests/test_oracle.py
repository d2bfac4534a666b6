from fractions import Fraction

import pytest

from randcayley import GroupSpec
from randcayley.coverage import independent_family
from randcayley.model import CapacityError
from randcayley.oracle import (Classification, classify, event_statistics, family_moments,
                               oracle_coverage, oracle_diameter)

from conftest import gs


def test_oracle_diameter_examples():
    assert oracle_diameter(GroupSpec(101), gs(1, 11)).eccentricity == 18
    assert oracle_diameter(GroupSpec(13), gs(1, mode="symmetric")).eccentricity == 6
    assert oracle_diameter(GroupSpec(7), gs(1, 2)).eccentricity == 3
    with pytest.raises(CapacityError):
        oracle_diameter(GroupSpec(10007), gs(1))


def test_oracle_coverage_examples():
    rep = oracle_coverage(GroupSpec(5), gs(1, 2), 2)
    assert rep.covered_count == 5 and rep.full
    assert oracle_coverage(GroupSpec(7), gs(1, 2), 1).covered_count == 4
    assert oracle_coverage(GroupSpec(7), gs(3, 5), 0).members().tolist() == [0]


def test_event_statistics_independent():
    st = event_statistics(5, 2, (1, 0), (0, 1), 1)
    assert st.count_i == 5 and st.count_joint == 1
    assert st.classification is Classification.INDEPENDENT
    assert st.p_i == pytest.approx(1 / 5)
    assert st.covariance == pytest.approx(0.0)


def test_event_statistics_dependent():
    st = event_statistics(5, 2, (1, 2), (2, 4), 1)
    assert st.count_joint == 0
    assert st.classification is Classification.DEPENDENT
    assert st.covariance == pytest.approx(-1 / 25)


def test_event_statistics_dependent_at_zero():
    st = event_statistics(5, 2, (1, 2), (2, 4), 0)
    assert st.count_i == st.count_joint == 5


def test_event_statistics_guards():
    with pytest.raises(ValueError):
        event_statistics(6, 2, (1, 0), (0, 1), 1)
    with pytest.raises(ValueError):
        event_statistics(5, 2, (0, 5), (0, 1), 1)
    with pytest.raises(CapacityError):
        event_statistics(101, 4, (1, 0, 0, 0), (0, 1, 0, 0), 1)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
@pytest.mark.parametrize("k", [2, 3])
def test_exhaustive_identities(q, k):
    pool = [(1,) + (0,) * (k - 1), (0, 1) + (0,) * (k - 2), (1, 1) + (0,) * (k - 2),
            (2, 3) + (1,) * (k - 2), (q - 1,) * k]
    for i in pool:
        for j in pool:
            for lam in (1, 2, q - 1):
                jj = tuple(lam * a % q for a in j)
                for x in (1, 3):
                    st = event_statistics(q, k, i, jj, x)
                    assert st.count_i == q ** (k - 1)
                    if st.classification is Classification.INDEPENDENT:
                        assert st.count_joint == q ** (k - 2)
                    elif st.classification is Classification.DEPENDENT:
                        assert st.count_joint == 0


def test_classify():
    assert classify(7, (1, 2), (1, 2)) is Classification.EQUAL
    assert classify(7, (1, 2), (3, 6)) is Classification.DEPENDENT
    assert classify(7, (1, 2), (2, 1)) is Classification.INDEPENDENT


@pytest.mark.parametrize("q, k, L", [(13, 2, 3), (11, 3, 2), (5, 2, 2)])
def test_second_moment_identity(q, k, L):
    fam = list(independent_family(L, k))
    n = len(fam)
    for x in (0, 1):
        m1, m2 = family_moments(q, fam, x)
        assert m1 == Fraction(n, q)
        assert m2 == Fraction(n, q) + Fraction(n * (n - 1), q * q)
