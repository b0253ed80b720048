from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dioph.errors import DomainError, ParseError
from dioph.psi import PsiSpec, block_upper_bounds, parse_psi

from . import oracles


@pytest.mark.parametrize("text,spec", [
    ("0", PsiSpec(c=Fraction(0))),
    ("1/n", PsiSpec()),
    ("3/n", PsiSpec(c=Fraction(3))),
    ("n^-2", PsiSpec(tau=Fraction(2))),
    ("1/2*n^-3/2", PsiSpec(c=Fraction(1, 2), tau=Fraction(3, 2))),
    ("1/(n log^2(n+2) loglog(n+16))", PsiSpec(a=Fraction(2), b=Fraction(1))),
    ("2/(n^2 log(n+3))", PsiSpec(c=Fraction(2), tau=Fraction(2), a=Fraction(1), s=3)),
    ("c=1,tau=1,a=1,s=5", PsiSpec(a=Fraction(1), s=5)),
])
def test_parse_forms(text, spec):
    assert parse_psi(text) == spec


@pytest.mark.parametrize("text", ["", "1/m", "1/(n sin(n))", "x=1", "c=1,tau", "1/(n log(n+q))"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_psi(text)


def test_validation():
    with pytest.raises(DomainError):
        PsiSpec(c=Fraction(-1))
    with pytest.raises(DomainError):
        PsiSpec(a=Fraction(1), s=0)
    with pytest.raises(DomainError):
        PsiSpec(b=Fraction(1), t=1)
    with pytest.raises(DomainError):
        PsiSpec().interval(0)


def test_describe_roundtrips():
    for spec in (PsiSpec(), PsiSpec(c=Fraction(0)), PsiSpec(a=Fraction(2), b=Fraction(1)),
                 PsiSpec(c=Fraction(3), tau=Fraction(2), a=Fraction(1), s=4)):
        assert parse_psi(spec.describe()) == spec


def test_monotonicity_flags():
    assert PsiSpec().n_psi_decreasing
    assert not PsiSpec(tau=Fraction(1, 2)).n_psi_decreasing
    assert PsiSpec(tau=Fraction(1, 2)).decreasing
    assert not PsiSpec(a=Fraction(-1)).decreasing


@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 10 ** 9), tau=st.sampled_from([0, 1, 2, Fraction(3, 2)]),
       a=st.sampled_from([0, 1, 2, Fraction(1, 2)]), b=st.sampled_from([0, 1]),
       c=st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50))
def test_interval_encloses_oracle(n, tau, a, b, c):
    spec = PsiSpec(c=c, tau=Fraction(tau), a=Fraction(a), b=Fraction(b))
    iv = spec.interval(n, 96)
    with mpmath.workdps(50):
        ref = oracles.psi_value(n, mpmath.mpf(c.numerator) / c.denominator,
                                mpmath.mpf(Fraction(tau).numerator) / Fraction(tau).denominator,
                                mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator, 2, b, 16)
        lo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
        hi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
        assert lo <= ref <= hi
        assert hi - lo <= ref * mpmath.mpf(2) ** -80
    assert abs(spec.value_float(n) - float(ref)) <= 1e-12 * float(ref)


def test_block_bounds_cover_and_dominate():
    spec = PsiSpec(a=Fraction(2), b=Fraction(1))
    blocks = block_upper_bounds(spec, 5000)
    assert blocks[0][0] == 1 and blocks[-1][1] == 5001
    assert all(x[1] == y[0] for x, y in zip(blocks, blocks[1:]))
    for n0, n1, ub in blocks:
        for n in (n0, n1 - 1):
            assert spec.interval(n).hi <= ub
    with pytest.raises(DomainError):
        block_upper_bounds(PsiSpec(a=Fraction(-1)), 10)
