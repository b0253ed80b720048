import random

import pytest
from hypothesis import given, settings, strategies as st

from dioph.contfrac import ConvergentTable
from dioph.errors import DigitError
from dioph.gapsets import (DigitPrefix, count_bounds, enumerate_A, enumerate_cases,
                           harmonic_sum_A, parse_prefix, random_prefix, verify_gaps)
from dioph.realnum import parse_real

from . import oracles

NAMES = ["golden", "surd:(0+1*sqrt2)/1", "surd:(0+1*sqrt3)/1", "e", "surd:(-1+1*sqrt2)/1"]
TABLES = {n: ConvergentTable(parse_real(n)) for n in NAMES}


def members_oracle(t, digits, N):
    q = [t.q(k) for k in range(t.K_of(N) + 2)]
    out = []
    for n in range(1, N + 1):
        d = oracles.greedy_ostrowski(n, q)
        if all(d.get(k, 0) == v for k, v in enumerate(digits)):
            out.append(n)
    return out


@settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(NAMES), m=st.integers(0, 5), seed=st.integers(0, 10 ** 6))
def test_enumeration_matches_scan(name, m, seed):
    t = TABLES[name]
    pre = random_prefix(t, m, random.Random(seed))
    N = 3000
    got = enumerate_A(pre, t, N)
    assert got == members_oracle(t, pre.digits, N)
    rep = verify_gaps(got, pre, t)
    assert rep.ok, rep.violations[:3]


def test_sqrt2_minus_1_prefix_one():
    t = TABLES["surd:(-1+1*sqrt2)/1"]
    mem = enumerate_A(DigitPrefix((1,)), t, 50)
    assert mem[0] == 1
    gaps = {b - a for a, b in zip(mem, mem[1:])}
    assert gaps <= {2, 3}
    assert verify_gaps(mem, DigitPrefix((1,)), t).case == "i"


def test_zero_prefix_golden():
    t = TABLES["golden"]
    pre = DigitPrefix((0, 0))
    mem = enumerate_A(pre, t, 100)
    assert mem[0] == t.q(2)
    rep = verify_gaps(mem, pre, t)
    assert rep.ok and rep.case == "ii" and set(rep.gaps) <= {t.q(1), t.q(2)}


def test_cases_cover_every_step():
    t = TABLES["e"]
    steps = enumerate_cases(DigitPrefix((0, 1, 0)), t, 5000)
    assert steps[0][1] is None
    assert {c for _, c in steps[1:]} <= {1, 2, 3}


def test_corrupted_members_flagged():
    t = TABLES["golden"]
    pre = DigitPrefix((0, 0, 0))
    mem = enumerate_A(pre, t, 500)
    bad = mem[:5] + [mem[5] + 1] + mem[6:]
    rep = verify_gaps(bad, pre, t)
    assert not rep.ok and rep.violations[0]["index"] == 4


def test_invalid_prefix():
    t = TABLES["surd:(0+1*sqrt2)/1"]
    with pytest.raises(DigitError):
        enumerate_A(DigitPrefix((2,)), t, 10)
    with pytest.raises(DigitError):
        enumerate_A(DigitPrefix((1, 2)), t, 10)
    assert parse_prefix("1, 0,2").digits == (1, 0, 2)


@pytest.mark.parametrize("name,digits,N", [("golden", (0, 0, 0), 1000),
                                           ("surd:(0+1*sqrt2)/1", (1,), 10000)])
def test_count_bounds(name, digits, N):
    t = TABLES[name]
    pre = DigitPrefix(digits)
    rep = count_bounds(enumerate_A(pre, t, N), pre, t, N)
    assert rep.ok and rep.status("gaps2_lower") == "pass"


@pytest.mark.parametrize("name,digits", [("golden", (0, 0)), ("surd:(0+1*sqrt2)/1", (1,))])
def test_harmonic_bound(name, digits):
    t = TABLES[name]
    pre = DigitPrefix(digits)
    mem = enumerate_A(pre, t, 1000)
    rep = harmonic_sum_A(mem, pre.n_prime(t), 1000, t, pre.m)
    assert rep.ok


def test_harmonic_empty_after_exclusion():
    t = TABLES["golden"]
    rep = harmonic_sum_A([5], 5, 10, t, 2)
    assert rep.ok and rep.values["sum"].hi == 0


def test_empty_set_is_hypothesis_not_met():
    t = TABLES["golden"]
    rep = count_bounds([], DigitPrefix((0, 0, 0, 0, 0, 0)), t, 5)
    assert rep.verdicts[0].status == "hypothesis-not-met"
