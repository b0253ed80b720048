from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dioph.contfrac import ConvergentTable
from dioph.errors import DigitError, DomainError
from dioph.gamma import Gamma, parse_gamma, resolve_gamma
from dioph.ostrowski import (delta_of, expand_int, expand_real, from_digits, real_from_digits,
                             reconstruct_int, resummation_defect, validate_digits)
from dioph.realnum import parse_real, to_interval

from . import oracles

NAMES = ["golden", "surd:(0+1*sqrt2)/1", "surd:(0+1*sqrt3)/1", "e"]
TABLES = {n: ConvergentTable(parse_real(n)) for n in NAMES}


@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(NAMES), n=st.integers(1, 10 ** 15))
def test_expand_matches_greedy_oracle(name, n):
    t = TABLES[name]
    t.ensure_q_above(n, extra=1)
    q = [t.q(k) for k in range(t.K_of(n) + 1)]
    d = expand_int(t, n)
    assert d.as_dict() == oracles.greedy_ostrowski(n, q)
    assert reconstruct_int(d, t) == n
    a = [t.a(k) for k in range(t.K_of(n) + 3)]
    assert oracles.admissible(d.as_dict(), a)
    assert validate_digits(d.digits, t).valid


def test_golden_is_zeckendorf():
    t = TABLES["golden"]
    # golden q_k are Fibonacci numbers; digits are 0/1 with no two adjacent ones above k=0
    for n in range(1, 2000):
        d = expand_int(t, n).as_dict()
        assert set(d.values()) <= {1}
        ks = sorted(d)
        assert all(b - a >= 2 for a, b in zip(ks, ks[1:]))


def test_validate_reports_first_violation():
    t = TABLES["surd:(0+1*sqrt2)/1"]   # a_k = 2 for k >= 1
    v = validate_digits({0: 1, 1: 2}, t)
    assert not v.valid and v.k == 1
    assert not validate_digits({0: 2}, t).valid
    assert validate_digits({1: 2, 3: 2}, t).valid


def test_from_digits_rejects_nothing_silently():
    t = TABLES["golden"]
    assert from_digits({2: 1, 4: 1}, t).n == t.q(2) + t.q(4)
    with pytest.raises(DigitError):
        real_from_digits(t, {2: 1, 3: 1})


@pytest.mark.parametrize("name", NAMES)
def test_real_expansion_resums(name):
    t = TABLES[name]
    for g in ("1/3", "2/7", "-1/5", "D3") + (("absD1",) if name != "e" else ()):
        gamma = resolve_gamma(parse_gamma(g), t)
        b = expand_real(t, gamma, 30)
        assert validate_digits(b.digits, t).valid
        defect = to_interval(resummation_defect(t, b), 200)
        bound = to_interval(t.absD(29) + t.absD(30), 200)
        assert abs(defect).hi <= bound.hi


@pytest.mark.parametrize("name", NAMES)
def test_finite_expansion_roundtrip(name):
    t = TABLES[name]
    b = real_from_digits(t, {1: 1, 4: 1, 7: t.a(8)})
    again = expand_real(t, b.gamma, 12)
    assert again.as_dict() == b.as_dict() and again.terminated


def test_expand_real_value_against_mpmath():
    t = TABLES["surd:(0+1*sqrt3)/1"]
    b = expand_real(t, Gamma.rational(Fraction(3, 10)), 40)
    alpha = oracles.value("surd:(0+1*sqrt3)/1", 60)
    a = oracles.quotients(alpha, 45, 60)
    p, q = oracles.convergents(a)
    with mpmath.workdps(60):
        s = sum(c * (q[k] * alpha - p[k]) for k, c in b.digits)
        # the neglected tail is at most |D_39| + |D_40| < 2/q_40
        assert abs(s + b.shift - mpmath.mpf(3) / 10) < mpmath.mpf(2) / q[40]


def test_boundary_gamma_uses_infinite_tail():
    # gamma = -{alpha} is the left end of the normalised range
    t = TABLES["golden"]
    b = expand_real(t, resolve_gamma(parse_gamma("absD1"), t), 12)
    assert b.shift == 1 and not b.terminated
    assert b.as_dict() == {1: 1, 3: 1, 5: 1, 7: 1, 9: 1, 11: 1}


def test_boundary_gamma_undecidable_for_streams():
    # |D_1| = 1 - {e} sits exactly on the range boundary; an enclosure of e cannot decide it
    t = TABLES["e"]
    with pytest.raises(DomainError):
        expand_real(t, resolve_gamma(parse_gamma("absD1"), t), 8)


def test_delta_digits_first_difference():
    t = TABLES["golden"]
    b = real_from_digits(t, {2: 1, 5: 1})
    c = expand_int(t, t.q(2) + t.q(7))
    d = delta_of(c, b)
    assert d.m == 5 and d.get(5) == -1 and d.get(7) == 1


def test_depth_must_be_positive():
    with pytest.raises(DomainError):
        expand_real(TABLES["golden"], Gamma.rational(Fraction(1, 3)), 0)


def test_uniqueness_small_range():
    # every admissible digit string with value <= 300 is hit exactly once
    t = TABLES["e"]
    K = t.K_of(300)
    a = [t.a(k) for k in range(K + 2)]
    seen = {}

    def rec(k, digits, val):
        if k < 0:
            if 1 <= val <= 300 and oracles.admissible(digits, a):
                seen[val] = seen.get(val, 0) + 1
            return
        top = a[k + 1] if k else a[1] - 1
        for c in range(top + 1):
            v = val + c * t.q(k)
            if v > 300:
                break
            if c:
                digits[k] = c
            rec(k - 1, digits, v)
            digits.pop(k, None)

    rec(K, {}, 0)
    assert sorted(seen) == list(range(1, 301)) and set(seen.values()) == {1}
