"""Approximation functions psi(n) = c n^-tau log(n+s)^-a loglog(n+t)^-b."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError
from .realnum import Interval, iv_eval


@dataclass(frozen=True)
class PsiSpec:
    c: Fraction = Fraction(1)
    tau: Fraction = Fraction(1)
    a: Fraction = Fraction(0)
    s: int = 2
    b: Fraction = Fraction(0)
    t: int = 16

    def __post_init__(self):
        if self.c < 0:
            raise DomainError("psi needs c >= 0")
        if self.a and self.s < 1:
            raise DomainError("log(n+s) must be positive for n >= 1: need s >= 1")
        if self.b and self.t < 2:
            raise DomainError("loglog(n+t) must be positive for n >= 1: need t >= 2")

    @property
    def is_zero(self) -> bool:
        return self.c == 0

    @property
    def decreasing(self) -> bool:
        return self.tau >= 0 and self.a >= 0 and self.b >= 0

    @property
    def n_psi_decreasing(self) -> bool:
        """n -> n psi(n) is non-increasing."""
        return self.tau >= 1 and self.a >= 0 and self.b >= 0

    def describe(self) -> str:
        parts = []
        if self.tau:
            parts.append("n" if self.tau == 1 else f"n^{self.tau}")
        if self.a:
            parts.append(("log" if self.a == 1 else f"log^{self.a}") + f"(n+{self.s})")
        if self.b:
            parts.append(("loglog" if self.b == 1 else f"loglog^{self.b}") + f"(n+{self.t})")
        if self.is_zero:
            return "0"
        return f"{self.c}/({' '.join(parts) or '1'})"

    def _fn(self):
        tau, a, b = (_ivexp(e) for e in (self.tau, self.a, self.b))
        c = self.c
        s, t = self.s, self.t
        use_a, use_b, use_tau = bool(self.a), bool(self.b), bool(self.tau)

        def f(m, x):
            den = m.mpf(1)
            if use_tau:
                den = den * x ** tau
            if use_a:
                den = den * m.log(x + s) ** a
            if use_b:
                den = den * m.log(m.log(x + t)) ** b
            return m.mpf(c.numerator) / c.denominator / den
        return f

    def interval(self, n: int, bits: int = 96) -> Interval:
        if n < 1:
            raise DomainError("psi is defined for n >= 1")
        if self.is_zero:
            return Interval(0, 0)
        return iv_eval(self._fn(), n, bits=bits)

    def value_float(self, n: int) -> float:
        if self.is_zero:
            return 0.0
        v = float(self.c) / n ** float(self.tau)
        if self.a:
            v /= math.log(n + self.s) ** float(self.a)
        if self.b:
            v /= math.log(math.log(n + self.t)) ** float(self.b)
        return v


def _ivexp(e: Fraction):
    if e.denominator == 1:
        return int(e)
    from mpmath import iv
    return iv.mpf(e.numerator) / e.denominator


def block_upper_bounds(psi: PsiSpec, N: int, ratio: int = 64, bits: int = 64):
    """Blocks [n0, n1) covering 1..N with a certified upper bound psi(n0) on each.

    Valid for decreasing psi only.  Blocks grow geometrically (n1 ~ n0 (1 + 1/ratio)).
    """
    if not psi.decreasing:
        raise DomainError("block bounds need a decreasing psi")
    out = []
    n0 = 1
    while n0 <= N:
        n1 = min(N + 1, max(n0 + 1, n0 + n0 // ratio))
        out.append((n0, n1, psi.interval(n0, bits).hi))
        n0 = n1
    return out


_NUM = r"[0-9]+(?:/[0-9]+)?(?:\.[0-9]+)?"


def _fr(tok: str, src: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {tok!r} in psi", src) from None


def parse_psi(text: str) -> PsiSpec:
    """Accepts 0, c/n, n^-tau, c*n^-tau, c/(n^tau log^a(n+s) loglog^b(n+t)) and key=value lists."""
    src = text
    s = text.strip()
    if s in ("0", "zero"):
        return PsiSpec(c=Fraction(0))
    if "=" in s:
        kw = {}
        for part in s.split(","):
            if "=" not in part:
                raise ParseError("expected key=value", src)
            k, v = (x.strip() for x in part.split("=", 1))
            if k not in ("c", "tau", "a", "s", "b", "t"):
                raise ParseError(f"unknown psi key {k!r}", src)
            kw[k] = int(_fr(v, src)) if k in ("s", "t") else _fr(v, src)
        return PsiSpec(**kw)
    m = re.fullmatch(rf"(?:({_NUM})\s*\*\s*)?n\^\{{?-({_NUM})\}}?", s)
    if m:
        return PsiSpec(c=_fr(m.group(1) or "1", src), tau=_fr(m.group(2), src))
    m = re.fullmatch(rf"({_NUM})\s*/\s*n", s)
    if m:
        return PsiSpec(c=_fr(m.group(1), src))
    m = re.fullmatch(rf"({_NUM})\s*/\s*\((.*)\)", s)
    if not m:
        raise ParseError("unrecognised psi", src)
    c = _fr(m.group(1), src)
    tau = Fraction(0)
    a = b = Fraction(0)
    sh, th = 2, 16
    for tok in re.split(r"[\s*]+", m.group(2).strip()):
        if not tok:
            continue
        mm = re.fullmatch(rf"n(?:\^\{{?({_NUM})\}}?)?", tok)
        if mm:
            tau = _fr(mm.group(1) or "1", src)
            continue
        mm = re.fullmatch(rf"(loglog|log)(?:\^\{{?({_NUM})\}}?)?\(n\+([0-9]+)\)", tok)
        if not mm:
            raise ParseError(f"unrecognised psi factor {tok!r}", src)
        e = _fr(mm.group(2) or "1", src)
        if mm.group(1) == "log":
            a, sh = e, int(mm.group(3))
        else:
            b, th = e, int(mm.group(3))
    return PsiSpec(c=c, tau=tau, a=a, s=sh, b=b, t=th)
