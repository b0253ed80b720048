"""Exact and enclosed real numbers.

Three kinds of value circulate through the package:

* ``Fraction`` for rationals,
* ``Surd`` for exact elements (a + b*sqrt(d))/c of a real quadratic field,
* ``Interval`` for a closed rational enclosure of a value known only approximately.

Real inputs are described by the ``RealSpec`` variants below and turned into
partial quotient streams or enclosures on demand.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

from mpmath import iv

from .errors import DepthError, DomainError, ParseError, PrecisionError, Undecided

DEFAULT_CAP = 4096


def precision_cap() -> int:
    raw = os.environ.get("DIOPH_PRECISION_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"DIOPH_PRECISION_CAP is not an integer: {raw!r}") from None
    if cap < 16:
        raise DomainError("DIOPH_PRECISION_CAP must be at least 16")
    return cap


def refine_until(fn: Callable[[int], object], bits: int = 128, what: str = "comparison"):
    """Call fn(bits) with doubling precision until it stops raising Undecided."""
    cap = precision_cap()
    bits = min(bits, cap)
    while True:
        try:
            return fn(bits)
        except Undecided as exc:
            if bits >= cap:
                raise PrecisionError(f"{what}: {exc}", bits) from None
            bits = min(2 * bits, cap)


# ---------------------------------------------------------------- intervals

def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _fr(lo)
        hi = lo if hi is None else _fr(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def _lift(self, o):
        # exact surds are enclosed finely enough not to dominate the width
        if isinstance(o, Surd):
            w = self.width
            bits = 128 if w == 0 else max(128, w.denominator.bit_length()
                                          - w.numerator.bit_length() + 32)
            return o.enclose(bits)
        return o

    def __add__(self, o):
        o = self._lift(o)
        if isinstance(o, Interval):
            return Interval(self.lo + o.lo, self.hi + o.hi)
        if isinstance(o, (int, Fraction)):
            return Interval(self.lo + o, self.hi + o)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        o = self._lift(o)
        if isinstance(o, Interval):
            return Interval(self.lo - o.hi, self.hi - o.lo)
        if isinstance(o, (int, Fraction)):
            return Interval(self.lo - o, self.hi - o)
        return NotImplemented

    def __rsub__(self, o):
        return (-self) + self._lift(o)

    def __mul__(self, o):
        o = self._lift(o)
        if isinstance(o, Interval):
            ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
            return Interval(min(ps), max(ps))
        if isinstance(o, (int, Fraction)):
            if o >= 0:
                return Interval(self.lo * o, self.hi * o)
            return Interval(self.hi * o, self.lo * o)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise Undecided("reciprocal of an interval containing zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o):
        o = self._lift(o)
        if isinstance(o, Interval):
            return self * o.reciprocal()
        if isinstance(o, (int, Fraction)):
            return self * (1 / _fr(o))
        return NotImplemented

    def __rtruediv__(self, o):
        return self.reciprocal() * self._lift(o)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise Undecided("sign of an interval straddling zero")

    def round_out(self, bits: int) -> "Interval":
        """Outward rounding to dyadic endpoints with denominator 2**bits."""
        s = 1 << bits
        lo = Fraction(math.floor(self.lo * s), s)
        hi = Fraction(-math.floor(-self.hi * s), s)
        return Interval(lo, hi)

    def scaled_ints(self, bits: int) -> tuple[int, int]:
        """Integers L, H with [lo, hi] inside [L, H] / 2**bits."""
        lo, hi = self.lo, self.hi
        return ((lo.numerator << bits) // lo.denominator,
                -((-hi.numerator << bits) // hi.denominator))


# ------------------------------------------------------------ quadratic field

def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, e) with d = s*s*e and e free of small square factors."""
    s = 1
    e = d
    p = 2
    limit = 1 << 20
    while p * p <= e and p < limit:
        while e % (p * p) == 0:
            e //= p * p
            s *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(e)
    if r * r == e:
        s *= r
        e = 1
    return s, e


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


class Surd:
    """Exact number (a + b*sqrt(d))/c with integers, c > 0 and d squarefree > 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, d: int, c: int = 1, _raw: bool = False):
        if not _raw:
            if c == 0:
                raise DomainError("zero denominator in surd")
            if d <= 1:
                raise DomainError(f"surd radicand must exceed 1, got {d}")
            s, e = _squarefree_split(d)
            if e == 1:
                raise DomainError(f"radicand {d} is a perfect square")
            b *= s
            d = e
            if c < 0:
                a, b, c = -a, -b, -c
            g = math.gcd(math.gcd(a, b), c)
            if g > 1:
                a //= g
                b //= g
                c //= g
        self.a, self.b, self.c, self.d = a, b, c, d

    @staticmethod
    def _make(a: int, b: int, c: int, d: int) -> "Surd":
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        return Surd(a, b, d, c, _raw=True)

    def __repr__(self) -> str:
        return f"Surd(({self.a} + {self.b}*sqrt{self.d})/{self.c})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Surd):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.c) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, o) -> "Surd":
        if isinstance(o, Surd):
            if o.d != self.d and o.b != 0 and self.b != 0:
                raise DomainError(f"cannot mix sqrt{self.d} and sqrt{o.d}")
            return o
        if isinstance(o, int):
            return Surd(o, 0, self.d, 1, _raw=True)
        if isinstance(o, Fraction):
            return Surd(o.numerator, 0, self.d, o.denominator, _raw=True)
        raise TypeError(type(o))

    def __add__(self, o):
        if isinstance(o, Interval):
            return NotImplemented
        o = self._coerce(o)
        d = self.d if self.b else o.d
        return Surd._make(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c,
                          self.c * o.c, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d, self.c, _raw=True)

    def __sub__(self, o):
        if isinstance(o, Interval):
            return NotImplemented
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Interval):
            return NotImplemented
        o = self._coerce(o)
        d = self.d if self.b else o.d
        return Surd._make(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a,
                          self.c * o.c, d)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d, self.c, _raw=True)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d, self.c * self.c)

    def __truediv__(self, o):
        if isinstance(o, Interval):
            return NotImplemented
        o = self._coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * o.conjugate() * (1 / n)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def sign(self) -> int:
        a, b = self.a, self.b
        sa, sb = _sgn(a), _sgn(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa * _sgn(a * a - b * b * self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def floor(self) -> int:
        if self.b == 0:
            return self.a // self.c
        r = math.isqrt(self.b * self.b * self.d)
        t = r if self.b > 0 else -r - 1
        return (self.a + t) // self.c

    def enclose(self, bits: int) -> Interval:
        """Dyadic enclosure of width at most 2**-bits; nested in bits."""
        if self.b == 0:
            q = Fraction(self.a, self.c)
            return Interval(q, q)
        s = (1 << bits) * self.c
        # floor(x * s) where x*s = a*2^bits + b*sqrt(d)*2^bits
        r = math.isqrt(self.b * self.b * self.d << (2 * bits))
        t = r if self.b > 0 else -r - 1
        lo = (self.a << bits) + t
        return Interval(Fraction(lo, s), Fraction(lo + 1, s))

    def __float__(self) -> float:
        return float(self.enclose(64).lo)


Exact = Union[int, Fraction, Surd]
Num = Union[int, Fraction, Surd, Interval]


def to_interval(x: Num, bits: int = 128) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, Surd):
        return x.enclose(bits)
    return Interval(x, x)


def is_exact(x: Num) -> bool:
    return not isinstance(x, Interval)


def sign_of(x: Num) -> int:
    if isinstance(x, (Surd, Interval)):
        return x.sign()
    return _sgn(x)


def lt(x: Num, y: Num) -> bool:
    """Certified x < y; raises Undecided when enclosures overlap."""
    if is_exact(x) and is_exact(y):
        if isinstance(x, Surd) or isinstance(y, Surd):
            return sign_of(x - y) < 0
        return x < y
    a, b = to_interval(x), to_interval(y)
    if a.hi < b.lo:
        return True
    if a.lo >= b.hi:
        return False
    raise Undecided("interval comparison")


def le(x: Num, y: Num) -> bool:
    if is_exact(x) and is_exact(y):
        if isinstance(x, Surd) or isinstance(y, Surd):
            return sign_of(x - y) <= 0
        return x <= y
    a, b = to_interval(x), to_interval(y)
    if a.hi <= b.lo:
        return True
    if a.lo > b.hi:
        return False
    raise Undecided("interval comparison")


def floor_of(x: Num) -> int:
    if isinstance(x, Surd):
        return x.floor()
    if isinstance(x, Interval):
        f = math.floor(x.lo)
        if math.floor(x.hi) != f:
            raise Undecided("floor of an interval straddling an integer")
        return f
    return math.floor(x)


def dist_to_int(x: Num) -> Num:
    """||x||, the distance to the nearest integer."""
    if isinstance(x, Interval):
        f = math.floor(x.lo)
        lo, hi = x.lo - f, x.hi - f
        if hi - lo >= 1:
            return Interval(0, Fraction(1, 2))

        def g(t):
            return t if t <= Fraction(1, 2) else (1 - t if t <= Fraction(3, 2) and t <= 1
                                                  else (t - 1 if t <= Fraction(3, 2) else 2 - t))
        top = max(g(lo), g(hi))
        if lo <= Fraction(1, 2) <= hi or lo <= Fraction(3, 2) <= hi:
            top = Fraction(1, 2)
        bottom = 0 if lo <= 1 <= hi else min(g(lo), g(hi))
        return Interval(bottom, top)
    f = x - floor_of(x)
    if le(f, Fraction(1, 2)):
        return f
    return 1 - f


def frac_part(x: Num) -> Num:
    return x - floor_of(x)


# --------------------------------------------------------- log enclosures

def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man) << exp) if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -v if sign else v


def _iv_interval(v) -> Interval:
    lo, hi = v._mpi_
    return Interval(_mpf_to_fraction(lo), _mpf_to_fraction(hi))


class _ivprec:
    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.bits

    def __exit__(self, *exc):
        iv.prec = self.saved


def _to_iv(x: Num):
    i = to_interval(x, iv.prec + 8)
    lo = iv.mpf(i.lo.numerator) / i.lo.denominator
    hi = iv.mpf(i.hi.numerator) / i.hi.denominator
    return iv.mpf([lo.a, hi.b])


def log_enclosure(x: Num, bits: int = 96) -> Interval:
    """Rigorous enclosure of log x for x > 0 (via mpmath interval arithmetic)."""
    with _ivprec(bits + 16):
        return _iv_interval(iv.log(_to_iv(x)))


def iv_eval(fn: Callable, *args: Num, bits: int = 96) -> Interval:
    """Evaluate fn on mpmath intervals built from args and return a rational enclosure."""
    with _ivprec(bits + 16):
        return _iv_interval(fn(iv, *[_to_iv(a) for a in args]))


# ------------------------------------------------------------- real specs

@dataclass(frozen=True)
class QuadraticSurd:
    """(a + b*sqrt(d))/c."""
    a: int
    b: int
    d: int
    c: int

    def surd(self) -> Surd:
        return Surd(self.a, self.b, self.d, self.c)


@dataclass(frozen=True)
class ExplicitQuotients:
    """[a0; tail...]. With truncated=False this is the rational number itself;
    with truncated=True it is a finite prefix of an irrational's expansion."""
    a0: int
    tail: tuple
    truncated: bool = False


@dataclass(frozen=True)
class PeriodicQuotients:
    """[a0; pre..., (period...) repeated]."""
    a0: int
    pre: tuple
    period: tuple

    def surd(self) -> Surd:
        return periodic_to_surd(self.a0, self.pre, self.period)


@dataclass(frozen=True)
class RuleStream:
    rule: str


@dataclass(frozen=True)
class LiteralEnclosure:
    lo: Fraction
    hi: Fraction


RealSpec = Union[QuadraticSurd, ExplicitQuotients, PeriodicQuotients, RuleStream,
                 LiteralEnclosure]

RULES = ("e",)


def _e_quotient(k: int) -> int:
    if k == 0:
        return 2
    return 2 * (k + 1) // 3 if k % 3 == 2 else 1


def periodic_to_surd(a0: int, pre, period) -> Surd:
    if not period:
        raise DomainError("empty period")
    if any(x < 1 for x in list(pre) + list(period)):
        raise DomainError("partial quotients after a0 must be positive")
    # purely periodic part y = [period; y] satisfies y = (P y + P')/(Q y + Q')
    p_, p, q_, q = 1, period[0], 0, 1
    for a in period[1:]:
        p_, p = p, a * p + p_
        q_, q = q, a * q + q_
    # q y^2 + (q_ - p) y - p_ = 0, positive root
    A, B, C = q, q_ - p, -p_
    disc = B * B - 4 * A * C
    y = Surd(-B, 1, disc, 2 * A)
    # x = [a0; pre, y]
    x = y
    for a in reversed(list(pre)):
        x = a + 1 / x
    return a0 + 1 / x


_TOKEN = re.compile(r"\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*?\s*sqrt\s*(\d+)\s*")


def _int(tok: str) -> int:
    try:
        return int(tok.strip())
    except ValueError:
        raise ParseError("expected an integer", tok.strip()) from None


def _frac(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("expected a rational number", tok.strip()) from None


def _quotient_list(body: str, src: str) -> tuple[int, list[int]]:
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("expected [a0;a1,...]", src)
    inner = body[1:-1]
    if ";" in inner:
        head, rest = inner.split(";", 1)
    else:
        head, rest = inner, ""
    a0 = _int(head)
    tail = [_int(t) for t in rest.split(",") if t.strip()]
    for t in tail:
        if t < 1:
            raise DomainError(f"partial quotient {t} must be positive")
    return a0, tail


def parse_real(text: str) -> RealSpec:
    """Parse golden | e | surd:(A+B*sqrtD)/C | quotients:[a0;a1,...] |
    periodic:[a0;pre|period] | interval:LO,HI."""
    s = text.strip()
    if s in ("golden", "phi"):
        return QuadraticSurd(1, 1, 5, 2)
    if s in RULES:
        return RuleStream(s)
    if ":" not in s:
        raise ParseError("unknown real", s)
    kind, body = s.split(":", 1)
    kind = kind.strip()
    body = body.strip()
    if kind in ("surd", "sqrt"):
        m = re.fullmatch(r"\((.*)\)\s*/\s*(.+)", body)
        if not m:
            m2 = re.fullmatch(r"\((.*)\)", body)
            if not m2:
                raise ParseError("expected (A+B*sqrtD)/C", body)
            inner, den = m2.group(1), "1"
        else:
            inner, den = m.group(1), m.group(2)
        t = _TOKEN.fullmatch(inner)
        if not t:
            raise ParseError("expected A+B*sqrtD", inner)
        a = int(t.group(1))
        b = int(t.group(3)) * (-1 if t.group(2) == "-" else 1)
        d = int(t.group(4))
        c = _int(den)
        if c == 0:
            raise DomainError("zero denominator")
        r = math.isqrt(d)
        if r * r == d:
            raise DomainError(f"radicand {d} is a perfect square, the number is rational")
        if b == 0:
            raise DomainError("B = 0 gives a rational number")
        return QuadraticSurd(a, b, d, c)
    if kind == "quotients":
        truncated = body.endswith("...")
        if truncated:
            body = body[:-3].rstrip().rstrip(",")
            if not body.endswith("]"):
                body = body + "]"
            body = body.replace(",]", "]")
        a0, tail = _quotient_list(body, s)
        return ExplicitQuotients(a0, tuple(tail), truncated)
    if kind == "periodic":
        if not (body.startswith("[") and body.endswith("]")) or ";" not in body:
            raise ParseError("expected [a0;pre|period]", body)
        head, rest = body[1:-1].split(";", 1)
        if "|" not in rest:
            raise ParseError("missing '|' before the period", rest)
        pre_s, per_s = rest.split("|", 1)
        pre = tuple(_int(t) for t in pre_s.split(",") if t.strip())
        per = tuple(_int(t) for t in per_s.split(",") if t.strip())
        if not per:
            raise ParseError("empty period", rest)
        spec = PeriodicQuotients(_int(head), pre, per)
        spec.surd()  # validates
        return spec
    if kind == "interval":
        parts = body.split(",")
        if len(parts) != 2:
            raise ParseError("expected LO,HI", body)
        lo, hi = _frac(parts[0]), _frac(parts[1])
        if lo > hi:
            raise DomainError(f"interval endpoints out of order: {lo} > {hi}")
        return LiteralEnclosure(lo, hi)
    raise ParseError("unknown real kind", kind)


def _short_int(v: int) -> str:
    # huge quotients (Liouville streams) are abbreviated in labels
    return str(v) if v.bit_length() <= 256 else f"<{v.bit_length()}-bit>"


def format_real(x: RealSpec) -> str:
    if isinstance(x, QuadraticSurd):
        if (x.a, x.b, x.d, x.c) == (1, 1, 5, 2):
            return "golden"
        sign = "+" if x.b >= 0 else "-"
        return f"surd:({x.a}{sign}{abs(x.b)}*sqrt{x.d})/{x.c}"
    if isinstance(x, RuleStream):
        return x.rule
    if isinstance(x, ExplicitQuotients):
        body = f"[{x.a0};{','.join(map(_short_int, x.tail))}]"
        return f"quotients:{body}{'...' if x.truncated else ''}"
    if isinstance(x, PeriodicQuotients):
        return f"periodic:[{x.a0};{','.join(map(str, x.pre))}|{','.join(map(str, x.period))}]"
    return f"interval:{x.lo},{x.hi}"


def exact_value(x: RealSpec):
    """Exact Surd or Fraction when available, else None."""
    if isinstance(x, QuadraticSurd):
        return x.surd()
    if isinstance(x, PeriodicQuotients):
        return x.surd()
    if isinstance(x, ExplicitQuotients) and not x.truncated:
        v = Fraction(0)
        seq = [x.a0] + list(x.tail)
        v = Fraction(seq[-1])
        for a in reversed(seq[:-1]):
            v = a + 1 / v
        return v
    if isinstance(x, LiteralEnclosure) and x.lo == x.hi:
        return x.lo
    return None


# ---------------------------------------------------------- quotient streams

def _surd_quotients(z: Surd) -> Iterator[int]:
    # (P + sqrt(D))/Q with Q | D - P^2
    a, b, c, d = z.a, z.b, z.c, z.d
    if b < 0:
        a, b, c = -a, -b, -c
    P, Q, D = a, c, b * b * d
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    s = math.isqrt(D)
    while True:
        if Q > 0:
            q = (P + s) // Q
        else:
            q = (P + s + 1) // Q
        yield q
        P = q * Q - P
        Q = (D - P * P) // Q


def _rational_quotients(v: Fraction) -> Iterator[int]:
    n, m = v.numerator, v.denominator
    while m:
        q = n // m
        yield q
        n, m = m, n - q * m


class QuotientStream:
    """Memoised partial quotients a_0, a_1, ... of a real."""

    def __init__(self, x: RealSpec):
        self.spec = x
        self._cache: list[int] = []
        self.length: int | None = None  # None means unbounded
        self.rational = False
        if isinstance(x, (QuadraticSurd, PeriodicQuotients)):
            self._it = _surd_quotients(x.surd())
        elif isinstance(x, ExplicitQuotients):
            self._cache = [x.a0] + list(x.tail)
            self.length = len(self._cache)
            self.rational = not x.truncated
            self._it = None
        elif isinstance(x, RuleStream):
            if x.rule != "e":
                raise DomainError(f"unknown rule {x.rule!r}")
            self._it = (_e_quotient(k) for k in range(10 ** 18))
        elif isinstance(x, LiteralEnclosure):
            self._cache = _common_prefix(x.lo, x.hi)
            self.length = len(self._cache)
            self._it = None
        else:
            raise TypeError(type(x))

    def get(self, k: int) -> int:
        while len(self._cache) <= k:
            if self._it is None:
                raise DepthError(f"quotient a_{k} requested", len(self._cache) - 1)
            self._cache.append(next(self._it))
        return self._cache[k]

    def available(self, k: int) -> bool:
        try:
            self.get(k)
            return True
        except DepthError:
            return False


def _common_prefix(lo: Fraction, hi: Fraction) -> list[int]:
    out = []
    if lo == hi:
        return out
    a, b = _rational_quotients(lo), _rational_quotients(hi)
    # quotients agree while both endpoints lie in the same cylinder; the last
    # quotient of a rational can be written two ways, so stop one short of it
    la, lb = list(a), list(b)
    for i in range(min(len(la), len(lb)) - 1):
        if la[i] != lb[i]:
            break
        out.append(la[i])
    return out


def enclose(x: RealSpec, bits: int) -> Interval:
    """Enclosure of width <= 2**-bits. Repeated calls at larger bits nest."""
    ex = exact_value(x)
    if isinstance(ex, Surd):
        return ex.enclose(bits)
    if isinstance(ex, Fraction):
        return Interval(ex, ex)
    if isinstance(x, LiteralEnclosure):
        iv_ = Interval(x.lo, x.hi)
        if iv_.width > Fraction(1, 1 << bits):
            raise DepthError(f"literal enclosure wider than 2^-{bits}", 0)
        return iv_
    st = QuotientStream(x)
    target = Fraction(1, 1 << bits)
    p_, p, q_, q = 1, st.get(0), 0, 1
    k = 0
    while True:
        try:
            a = st.get(k + 1)
        except DepthError:
            if isinstance(x, ExplicitQuotients) and x.truncated:
                # any continuation: between p/q and (p+p_)/(q+q_)
                w = Fraction(1, q * (q + q_))
                if w <= target:
                    e = Fraction(p + p_, q + q_)
                    c = Fraction(p, q)
                    return Interval(min(c, e), max(c, e))
            raise
        pn, qn = a * p + p_, a * q + q_
        if Fraction(1, q * qn) <= target:
            c1, c2 = Fraction(p, q), Fraction(pn, qn)
            return Interval(min(c1, c2), max(c1, c2))
        p_, p, q_, q = p, pn, q, qn
        k += 1
