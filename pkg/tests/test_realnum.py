from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dioph.errors import DomainError, ParseError, PrecisionError, Undecided
from dioph.realnum import (ExplicitQuotients, Interval, Surd, dist_to_int, enclose,
                           exact_value, floor_of, format_real, frac_part, lt, parse_real,
                           refine_until)

from . import oracles


@pytest.mark.parametrize("text", [
    "golden", "e", "surd:(0+1*sqrt2)/1", "surd:(-1+1*sqrt5)/2", "surd:(3-2*sqrt7)/5",
    "quotients:[0;1,2,3,4]", "quotients:[1;2,2,2]...", "periodic:[1;|2]", "periodic:[0;1,3|1,2]",
])
def test_format_parse_roundtrip(text):
    x = parse_real(text)
    assert parse_real(format_real(x)) == x


@pytest.mark.parametrize("text", ["", "pi", "surd:(1+1*sqrt)", "periodic:[1;2]", "quotients:[1;x]",
                                  "interval:1"])
def test_parse_errors(text):
    with pytest.raises((ParseError, DomainError)):
        parse_real(text)


@pytest.mark.parametrize("text", ["surd:(1+1*sqrt9)/1", "surd:(1+0*sqrt2)/1", "surd:(1+1*sqrt2)/0",
                                  "interval:2,1", "quotients:[1;0,2]"])
def test_domain_errors(text):
    with pytest.raises(DomainError):
        parse_real(text)


def test_sqrt_alias():
    assert parse_real("sqrt:(0+1*sqrt2)/1") == parse_real("surd:(0+1*sqrt2)/1")


@pytest.mark.parametrize("name", ["golden", "e", "surd:(0+1*sqrt2)/1", "surd:(0+1*sqrt3)/1"])
def test_enclosure_contains_reference(name):
    ref = oracles.value(name, 80)
    for bits in (32, 100, 200):
        iv = enclose(parse_real(name), bits)
        assert iv.width <= Fraction(1, 2 ** bits)
        with mpmath.workdps(80):
            lo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
            hi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
            assert lo - mpmath.mpf(10) ** -70 <= ref <= hi + mpmath.mpf(10) ** -70


def test_periodic_matches_surd():
    # [1; 2, 2, 2, ...] = sqrt 2
    assert exact_value(parse_real("periodic:[1;|2]")) == exact_value(parse_real("surd:(0+1*sqrt2)/1"))
    # [1; 1, 1, ...] = golden
    assert exact_value(parse_real("periodic:[1;|1]")) == exact_value(parse_real("golden"))


def test_truncated_stream_has_no_exact_value():
    x = parse_real("quotients:[0;3,2,8]...")
    assert isinstance(x, ExplicitQuotients) and x.truncated
    assert exact_value(x) is None


def test_interval_basic():
    a = Interval(1, 2)
    b = Interval(Fraction(-1, 2), Fraction(1, 2))
    assert a + b == Interval(Fraction(1, 2), Fraction(5, 2))
    assert a * b == Interval(-1, 1)
    assert (a - a).contains(0)
    with pytest.raises(Undecided):
        b.reciprocal()
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_interval_with_surd_operand():
    s = exact_value(parse_real("golden"))
    v = Interval(0, 1) + s
    assert Fraction(1618, 1000) < v.lo < Fraction(1619, 1000) and v.width > 1


def test_surd_arithmetic_exact():
    r5 = Surd(0, 1, 5, 1)
    phi = (1 + r5) / 2
    assert phi * phi - phi - 1 == 0
    assert floor_of(phi) == 1
    assert frac_part(phi) == phi - 1
    assert dist_to_int(phi) == 2 - phi


@settings(max_examples=200, deadline=None)
@given(a=st.integers(-50, 50), b=st.integers(-50, 50).filter(bool), c=st.integers(1, 30),
       d=st.sampled_from([2, 3, 5, 6, 7, 10, 11]), n=st.integers(-40, 40))
def test_surd_floor_and_sign_match_floats(a, b, c, d, n):
    x = Surd(a, b, d, c)
    with mpmath.workdps(50):
        ref = (a + b * mpmath.sqrt(d)) / c
        assert floor_of(x) == int(mpmath.floor(ref))
        assert (x.sign() > 0) == (ref > 0)
        assert lt(x, n) == (ref < n)


@settings(max_examples=100, deadline=None)
@given(a=st.integers(-20, 20), b=st.integers(1, 20), d=st.sampled_from([2, 3, 5, 7]),
       c=st.integers(1, 9), bits=st.integers(8, 300))
def test_surd_enclosure_width(a, b, d, c, bits):
    x = Surd(a, b, d, c)
    iv = x.enclose(bits)
    assert iv.width <= Fraction(1, 2 ** bits)
    assert (iv.lo * c - a) ** 2 <= b * b * d or iv.lo * c - a < 0
    assert (iv.hi * c - a) ** 2 >= b * b * d


def test_refine_until_gives_up_at_cap(monkeypatch):
    monkeypatch.setenv("DIOPH_PRECISION_CAP", "256")
    calls = []

    def never(bits):
        calls.append(bits)
        raise Undecided("never decides")

    with pytest.raises(PrecisionError):
        refine_until(never, 64)
    assert calls == [64, 128, 256]


def test_refine_until_returns_once_decided():
    assert refine_until(lambda b: b if b >= 200 else (_ for _ in ()).throw(Undecided("x")), 50) == 200
