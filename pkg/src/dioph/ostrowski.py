"""Ostrowski numeration.

Integers are written n = sum c_{k+1} q_k and reals gamma = sum b_{k+1} D_k.
Digits are stored sparsely as sorted tuples of (k, digit) pairs, where the
pair (k, c) is the coefficient of q_k (or D_k), i.e. c_{k+1} in the usual
indexing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .contfrac import ConvergentTable
from .errors import DegenerateError, DepthError, DigitError, DomainError, Undecided
from .gamma import Gamma, normalization_shift
from .realnum import Interval, floor_of, format_real, le, lt, refine_until, to_interval


def _sparse(d: Mapping[int, int] | Iterable) -> tuple:
    items = d.items() if isinstance(d, Mapping) else d
    return tuple(sorted((int(k), int(v)) for k, v in items if v))


@dataclass(frozen=True)
class OstrowskiInt:
    n: int
    digits: tuple  # ((k, c_{k+1}), ...) ascending in k
    K: int

    def digit(self, k: int) -> int:
        for j, c in self.digits:
            if j == k:
                return c
        return 0

    def as_dict(self) -> dict:
        return dict(self.digits)

    def dense(self, upto: int | None = None) -> list[int]:
        top = self.K if upto is None else upto
        d = self.as_dict()
        return [d.get(k, 0) for k in range(top + 1)]


@dataclass(frozen=True)
class OstrowskiReal:
    digits: tuple  # ((k, b_{k+1}), ...)
    depth: int     # digits b_1..b_depth are determined
    shift: int     # gamma_input - shift is the expanded value
    terminated: bool  # remainder exactly zero: all digits beyond depth vanish
    gamma: Gamma | None = None

    def digit(self, k: int) -> int:
        if k >= self.depth and not self.terminated:
            raise DepthError(f"digit b_{k + 1} beyond expansion depth", self.depth)
        for j, c in self.digits:
            if j == k:
                return c
        return 0

    def as_dict(self) -> dict:
        return dict(self.digits)

    def known(self, k: int) -> bool:
        return self.terminated or k < self.depth


@dataclass(frozen=True)
class DigitVerdict:
    valid: bool
    k: int | None = None
    rule: str = ""


@dataclass(frozen=True)
class DeltaDigits:
    delta: tuple  # sparse ((k, delta_{k+1}), ...)
    m: int | None
    degenerate: bool
    known_to: int | None  # None when all digits are known

    def get(self, k: int) -> int:
        if self.known_to is not None and k >= self.known_to:
            raise DepthError(f"delta_{k + 1} beyond known digits", self.known_to)
        for j, c in self.delta:
            if j == k:
                return c
        return 0


# ------------------------------------------------------------ integers

def validate_digits(digits: Mapping[int, int] | Iterable, quotients) -> DigitVerdict:
    """Check 0 <= c_1 < a_1, c_{k+1} <= a_{k+1} and c_k = 0 when c_{k+1} = a_{k+1}.

    ``quotients`` is a ConvergentTable or a sequence a_0, a_1, ...
    """
    d = dict(_sparse(digits)) if not isinstance(digits, Mapping) else {
        int(k): int(v) for k, v in digits.items() if v}
    a = quotients.a if isinstance(quotients, ConvergentTable) else (lambda k: quotients[k])
    for k in sorted(d):
        c = d[k]
        if c < 0:
            return DigitVerdict(False, k, "negative digit")
        if k < 0:
            return DigitVerdict(False, k, "negative index")
        try:
            ak1 = a(k + 1)
        except (IndexError, DepthError):
            return DigitVerdict(False, k, "index beyond known quotients")
        if k == 0 and c >= ak1:
            return DigitVerdict(False, 0, "c_1 < a_1")
        if c > ak1:
            return DigitVerdict(False, k, "c_{k+1} <= a_{k+1}")
        if k >= 1 and c == ak1 and d.get(k - 1, 0) != 0:
            return DigitVerdict(False, k, "c_k = 0 when c_{k+1} = a_{k+1}")
    return DigitVerdict(True)


def expand_int(t: ConvergentTable, n: int) -> OstrowskiInt:
    """Greedy expansion n = sum c_{k+1} q_k."""
    if n <= 0:
        raise DomainError(f"Ostrowski expansion needs n >= 1, got {n}")
    top = t.ensure_q_above(n, extra=0)
    K = top - 1
    r = n
    out = []
    for k in range(K, -1, -1):
        qk = t.q(k)
        c, r = divmod(r, qk)
        if c:
            out.append((k, c))
    assert r == 0
    return OstrowskiInt(n, tuple(reversed(out)), K)


def reconstruct_int(d: OstrowskiInt | Mapping[int, int], t: ConvergentTable) -> int:
    digits = d.digits if isinstance(d, OstrowskiInt) else _sparse(d)
    v = validate_digits(digits, t)
    if not v.valid:
        raise DigitError(f"invalid digits at k={v.k}: {v.rule}")
    n = sum(c * t.q(k) for k, c in digits)
    if n <= 0:
        raise DigitError("empty expansion: n must be >= 1")
    return n


def from_digits(digits: Mapping[int, int] | Iterable, t: ConvergentTable) -> OstrowskiInt:
    sp = _sparse(digits)
    n = reconstruct_int(sp, t)
    K = max(k for k, _ in sp)
    return OstrowskiInt(n, sp, K)


# ---------------------------------------------------------------- reals

def expand_real(t: ConvergentTable, gamma: Gamma, depth: int, bits: int | None = None
                ) -> OstrowskiReal:
    """Digits b_1..b_depth of gamma (after an integer shift into [-{alpha}, 1-{alpha})).

    Greedy on the alternating basis: with s = (-1)^k r_k the current signed
    remainder, b_{k+1} is the least b >= 0 with s - b|D_k| < |D_{k+1}|.  The
    remainder then stays inside the range reachable by admissible tails.
    """
    if depth < 1:
        raise DomainError("expansion depth must be positive")
    bits = t.bits if bits is None else bits
    shift = normalization_shift(gamma, t, bits)
    g = gamma.shifted(shift) if shift else gamma

    def run(b: int) -> OstrowskiReal:
        tt = t.refined(b)
        return _expand(tt, g, depth, shift, b)

    return refine_until(run, bits, "Ostrowski digit of gamma")


def _remainder(t: ConvergentTable, g: Gamma, U: int, V: int, acc, bits: int):
    """gamma - sum b D_j, given U = sum b q_j, V = sum b p_j and the D-sum acc."""
    if g.spec is None:
        u = g.u - U
        r = g.r + V
        if t.exact is not None:
            v = u * t.exact + r
        elif u == 0:
            v = r
        else:
            v = u * t.alpha_interval(bits + 2 * max(abs(u), 1).bit_length() + 8) + r
        if g.rho:
            v = to_interval(v) + Interval(-g.rho, g.rho)
        return v
    return g.value(t, bits + 8) - acc


def _is_zero(v) -> bool:
    return not isinstance(v, Interval) and v == 0


def _expand(t: ConvergentTable, g: Gamma, depth: int, shift: int, bits: int) -> OstrowskiReal:
    digits = []
    U = V = 0
    acc = 0
    terminated = False
    prev = 0
    for k in range(depth):
        r = _remainder(t, g, U, V, acc, bits)
        if _is_zero(r):
            terminated = True
            break
        s = r if k % 2 == 0 else -r
        dk, dk1 = t.absD(k), t.absD(k + 1)
        # estimate then correct with certified comparisons
        est = to_interval(s - dk1) / to_interval(dk)
        b = max(0, floor_of(Interval(est.lo, est.lo)) + 1)
        while not lt(s - b * dk, dk1):
            b += 1
        while b > 0 and lt(s - (b - 1) * dk, dk1):
            b -= 1
        ak1 = t.a(k + 1)
        if b > 0 and (b > ak1 or (k == 0 and b >= ak1) or (b == ak1 and prev != 0)) \
                and le(s - (b - 1) * dk, dk1):
            # boundary point: the remainder sits exactly on |D_{k+1}| and only
            # the non-terminating tail is admissible
            b -= 1
        if b > ak1 or (k == 0 and b >= ak1) or (b == ak1 and prev != 0) or b < 0:
            raise DomainError(f"gamma is outside [-alpha, 1-alpha) or digit logic failed at k={k}")
        if b:
            digits.append((k, b))
            U += b * t.q(k)
            V += b * t.p(k)
            acc = acc + b * t.D(k)
        prev = b
    else:
        r = _remainder(t, g, U, V, acc, bits)
        terminated = _is_zero(r)
    res = OstrowskiReal(tuple(digits), depth, shift, terminated, g)
    defect = resummation_defect(t, res)
    bound = t.absD(depth - 1) + t.absD(depth)
    if not le(abs(defect) if not isinstance(defect, Interval) else abs(defect), bound):
        raise Undecided("resummation defect above the tail bound")
    return res


def resummation_defect(t: ConvergentTable, b: OstrowskiReal, bits: int | None = None):
    """gamma - sum_{k<depth} b_{k+1} D_k (exact when possible)."""
    bits = t.bits if bits is None else bits
    U = sum(c * t.q(k) for k, c in b.digits)
    V = sum(c * t.p(k) for k, c in b.digits)
    acc = 0
    for k, c in b.digits:
        acc = acc + c * t.D(k)
    return _remainder(t, b.gamma, U, V, acc, bits)


def real_from_digits(t: ConvergentTable, digits: Mapping[int, int] | Iterable) -> OstrowskiReal:
    """A finite expansion and its value gamma = sum b_{k+1} D_k as an exact linear shift."""
    sp = _sparse(digits)
    v = validate_digits(sp, t)
    if not v.valid:
        raise DigitError(f"invalid digits at k={v.k}: {v.rule}")
    U = sum(c * t.q(k) for k, c in sp)
    V = sum(c * t.p(k) for k, c in sp)
    depth = (max(k for k, _ in sp) + 1) if sp else 1
    g = Gamma.linear(U, Fraction(-V), label="digits")
    return OstrowskiReal(sp, depth, 0, True, g)


# ---------------------------------------------------------------- delta

def delta_of(c: OstrowskiInt, b: OstrowskiReal) -> DeltaDigits:
    """delta_{k+1} = c_{k+1} - b_{k+1} and the first index m with delta_{m+1} != 0."""
    cd, bd = c.as_dict(), b.as_dict()
    if not b.terminated and b.depth <= c.K:
        raise DepthError("real expansion shallower than the integer expansion", b.depth)
    keys = sorted(set(cd) | set(bd))
    delta = tuple((k, cd.get(k, 0) - bd.get(k, 0)) for k in keys
                  if cd.get(k, 0) != bd.get(k, 0))
    known_to = None if b.terminated else b.depth
    m = delta[0][0] if delta else None
    degenerate = m is None and b.terminated
    if m is None and not b.terminated:
        raise DepthError("delta vanishes on all known digits; expand gamma deeper", b.depth)
    return DeltaDigits(delta, m, degenerate, known_to)


# ---------------------------------------------------------------- export

def int_json(t: ConvergentTable, d: OstrowskiInt) -> str:
    return json.dumps({"schema": 1, "alpha": format_real(t.spec), "n": d.n,
                       "digits": [list(x) for x in d.digits]})


def real_json(t: ConvergentTable, b: OstrowskiReal) -> str:
    return json.dumps({"schema": 1, "alpha": format_real(t.spec),
                       "gamma": b.gamma.describe() if b.gamma else None,
                       "digits": [list(x) for x in b.digits], "depth": b.depth,
                       "terminated": b.terminated, "shift": b.shift})
