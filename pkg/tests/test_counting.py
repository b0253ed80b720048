from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dioph.contfrac import ConvergentTable
from dioph.counting import NormCache, count_hom, count_inhom
from dioph.errors import DomainError
from dioph.gamma import Gamma, parse_gamma, resolve_gamma
from dioph.realnum import parse_real

from . import oracles

NAMES = ["golden", "surd:(0+1*sqrt2)/1", "e"]
TABLES = {n: ConvergentTable(parse_real(n)) for n in NAMES}
CACHES = {n: NormCache(TABLES[n], None, 2000) for n in NAMES}


@settings(max_examples=80, deadline=None)
@given(name=st.sampled_from(NAMES), j=st.integers(3, 10), N=st.integers(1, 2000))
def test_hom_count_matches_oracle(name, j, N):
    eps = Fraction(1, 2 ** j)
    rep = count_hom(TABLES[name], eps, N, CACHES[name])
    assert rep.count == oracles.count_brute(oracles.value(name, 40), 0, eps, N)
    assert rep.ok


def test_golden_example():
    rep = count_hom(TABLES["golden"], Fraction(1, 20), 200, CACHES["golden"])
    assert rep.count == 20
    assert rep.ok and rep.flags["ghj"]


def test_strict_inequality_at_exact_tie():
    # gamma = alpha - 1/4 gives ||1 alpha - gamma|| = 1/4 exactly
    for name in NAMES:
        t = TABLES[name]
        cache = NormCache(t, Gamma.linear(1, Fraction(-1, 4)), 10)
        assert not cache.member(1, Fraction(1, 4))
        assert cache.member(1, Fraction(1, 4) + Fraction(1, 10 ** 30))


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("gamma", ["absD1", "1/3", "lin:3,-1/7"])
def test_inhom_count_and_transfers(name, gamma):
    t = TABLES[name]
    g = resolve_gamma(parse_gamma(gamma), t)
    cache = NormCache(t, g, 1000)
    gv = oracles.value(name, 40) * g.u + mpmath.mpf(g.r.numerator) / g.r.denominator
    for j in (3, 5, 7, 9):
        eps = Fraction(1, 2 ** j)
        rep = count_inhom(t, g, eps, 1000, cache, CACHES[name])
        assert rep.count == oracles.count_brute(oracles.value(name, 40), gv, eps, 1000)
        assert rep.ok
        assert rep.verdicts[0].name == "vbv1" and rep.verdicts[0].status == "pass"


def test_bad_arguments():
    with pytest.raises(DomainError):
        count_hom(TABLES["golden"], 0, 10)
    with pytest.raises(DomainError):
        CACHES["golden"].members(Fraction(1, 4), 5000)


def test_hypothesis_flags_block_verdicts():
    # 2 eps >= ||q_2 alpha||: the eps N bounds are not claimed
    rep = count_hom(TABLES["golden"], Fraction(1, 4), 100, CACHES["golden"])
    names = {v.name: v.status for v in rep.verdicts}
    assert names["vbe"] == "hypothesis-not-met"
    assert names["vbp"] == "hypothesis-not-met"
