"""Inhomogeneous shifts gamma.

Most shifts used in practice are integer combinations of alpha and a rational,
e.g. gamma = D_k = q_k alpha - p_k or any finite Ostrowski sum.  Keeping them
in the form u*alpha + r keeps every downstream computation exact when alpha is
a quadratic surd, and lets hits n*alpha - gamma in Z be detected exactly for
any alpha.  A nonzero ``rho`` widens the value to [v - rho, v + rho] for shifts
whose expansion is only known to a finite depth.  Shifts that are unrelated to
alpha are carried as a RealSpec and only ever enclosed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError
from .realnum import (Interval, RealSpec, Surd, enclose, exact_value, parse_real, format_real,
                      to_interval)


@dataclass(frozen=True)
class Gamma:
    u: int = 0
    r: Fraction = Fraction(0)
    rho: Fraction = Fraction(0)
    spec: RealSpec | None = None
    label: str = ""

    @staticmethod
    def rational(r) -> "Gamma":
        r = Fraction(r)
        return Gamma(0, r, Fraction(0), None, str(r))

    @staticmethod
    def D(table, k: int) -> "Gamma":
        return Gamma(table.q(k), Fraction(-table.p(k)), Fraction(0), None, f"D{k}")

    @staticmethod
    def linear(u: int, r, rho=0, label: str = "") -> "Gamma":
        return Gamma(u, Fraction(r), Fraction(rho), None, label or f"lin:{u},{Fraction(r)}")

    @staticmethod
    def from_spec(x: RealSpec) -> "Gamma":
        return Gamma(0, Fraction(0), Fraction(0), x, format_real(x))

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.r == 0 and self.rho == 0 and self.spec is None

    @property
    def exact_linear(self) -> bool:
        return self.spec is None and self.rho == 0

    def shifted(self, s: int) -> "Gamma":
        """gamma - s."""
        if self.spec is not None:
            return Gamma(self.u, self.r - s, self.rho, self.spec, self.label)
        return Gamma(self.u, self.r - s, self.rho, None, self.label)

    def value(self, table, bits: int = 128):
        """Exact value when possible, else an enclosure of width about 2**-bits."""
        base = None
        if self.spec is not None:
            ex = exact_value(self.spec)
            if ex is not None and (not isinstance(ex, Surd) or table.exact is not None
                                   and ex.d == table.exact.d):
                base = ex
            else:
                base = enclose(self.spec, bits)
        lin = self._linear_value(table, bits)
        if base is None:
            v = lin
        elif isinstance(base, Interval) or isinstance(lin, Interval):
            v = to_interval(base, bits + 2) + to_interval(lin, bits + 2)
        else:
            v = base + lin
        if self.rho:
            return to_interval(v, bits) + Interval(-self.rho, self.rho)
        return v

    def _linear_value(self, table, bits: int):
        if self.u == 0:
            return self.r
        if table.exact is not None:
            return self.u * table.exact + self.r
        extra = abs(self.u).bit_length() + 2
        return self.u * table.alpha_interval(bits + extra) + self.r

    def minus_n_alpha(self, table, n: int, bits: int = 128):
        """n*alpha - gamma, exact when possible."""
        if self.spec is None:
            c = n - self.u
            if table.exact is not None:
                v = c * table.exact - self.r
            elif c == 0:
                v = -self.r
            else:
                v = c * table.alpha_interval(bits + abs(c).bit_length() + 2) - self.r
            if self.rho:
                return to_interval(v, bits) + Interval(-self.rho, self.rho)
            return v
        g = self.value(table, bits + 2)
        if table.exact is not None and not isinstance(g, Interval):
            return n * table.exact - g
        return n * table.alpha_interval(bits + n.bit_length() + 2) - to_interval(g, bits + 2)

    def describe(self) -> str:
        return self.label or (format_real(self.spec) if self.spec else f"lin:{self.u},{self.r}")


def parse_gamma(text: str | None) -> Gamma:
    """0 | p/q | D<k> | absD<k> | lin:u,r | any real accepted by parse_real."""
    if text is None:
        return Gamma()
    s = text.strip()
    if s == "":
        return Gamma()
    if s.startswith("absD") and s[4:].isdigit():
        return Gamma(0, Fraction(0), Fraction(0), None, s)
    if s.startswith("D") and s[1:].isdigit():
        return Gamma(0, Fraction(0), Fraction(0), None, s)  # resolved by resolve_gamma
    if s.startswith("lin:"):
        parts = s[4:].split(",")
        if len(parts) != 2:
            raise ParseError("expected lin:u,r", s)
        try:
            return Gamma.linear(int(parts[0]), Fraction(parts[1]))
        except ValueError:
            raise ParseError("expected lin:u,r", s) from None
    try:
        return Gamma.rational(Fraction(s))
    except (ValueError, ZeroDivisionError):
        pass
    return Gamma.from_spec(parse_real(s))


def resolve_gamma(g: Gamma, table) -> Gamma:
    """Fill in shifts that depend on alpha (D<k>, absD<k>)."""
    if g.label.startswith("absD") and g.label[4:].isdigit() and g.u == 0 and g.r == 0 \
            and g.spec is None:
        k = int(g.label[4:])
        sg = -1 if k % 2 else 1
        return Gamma(sg * table.q(k), Fraction(-sg * table.p(k)), Fraction(0), None, g.label)
    if g.label.startswith("D") and g.label[1:].isdigit() and g.u == 0 and g.r == 0 \
            and g.spec is None:
        return Gamma.D(table, int(g.label[1:]))
    return g


def normalization_shift(g: Gamma, table, bits: int = 128) -> int:
    """The integer s with gamma - s in [-{alpha}, 1 - {alpha})."""
    from .realnum import floor_of, refine_until

    def run(b):
        return floor_of(g.value(table, b) + table.frac_alpha(b))

    if g.is_zero:
        return 0
    try:
        return refine_until(run, bits, "normalising gamma")
    except Exception as exc:
        raise DomainError(f"cannot normalise gamma: {exc}") from None
