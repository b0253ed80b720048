"""Convergent tables and the standard relations between their entries.

Notation: D_k = q_k*alpha - p_k, so D_0 = {alpha} and D_k = (-1)^k ||q_k alpha||
for k >= 1.  The values D_k do not change when alpha is shifted by an integer,
which is why every consumer may work with alpha itself rather than {alpha}.
"""
from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DepthError, DomainError, Undecided
from .realnum import (Interval, QuotientStream, RealSpec, Surd, exact_value, format_real,
                      le, log_enclosure, lt, refine_until, to_interval)

Value = Union[Surd, Interval]


@dataclass(frozen=True)
class Row:
    k: int
    a: int
    p: int
    q: int
    sign_D: int
    absD: Value
    A: int  # a_1 + ... + a_k


@dataclass(frozen=True)
class RelationCheck:
    name: str
    k: int
    ok: bool
    detail: str = ""


class ConvergentTable:
    """Append-only table of a_k, p_k, q_k and D_k for one real alpha.

    For quadratic surds D_k is an exact ``Surd``.  For other streams it is an
    ``Interval`` with relative width about 2**-bits, obtained from the cylinder
    of alpha cut out by deeper quotients.
    """

    def __init__(self, x: RealSpec, depth: int = 0, bits: int = 128):
        self.spec = x
        self.stream = QuotientStream(x)
        if self.stream.rational:
            raise DomainError("alpha is rational; continued fraction tables need an irrational")
        ex = exact_value(x)
        if isinstance(ex, Fraction):
            raise DomainError("alpha is rational")
        self.exact: Surd | None = ex
        self.bits = bits
        self._a: list[int] = []
        self._p: list[int] = []
        self._q: list[int] = []
        self._A: list[int] = []
        self._D: dict[int, tuple[int, Value]] = {}
        self._lock = threading.Lock()
        self.extend(depth)

    # ----------------------------------------------------------- growth

    @property
    def depth(self) -> int:
        """Largest materialised row index."""
        return len(self._q) - 1

    @property
    def finite_length(self) -> int | None:
        return self.stream.length

    def extend(self, depth: int) -> None:
        with self._lock:
            while len(self._q) <= depth:
                k = len(self._q)
                a = self.stream.get(k)
                if k == 0:
                    p, q, A = a, 1, 0
                elif k == 1:
                    p, q, A = a * self._p[0] + 1, a, a
                else:
                    p = a * self._p[-1] + self._p[-2]
                    q = a * self._q[-1] + self._q[-2]
                    A = self._A[-1] + a
                self._a.append(a)
                self._p.append(p)
                self._q.append(q)
                self._A.append(A)

    def ensure_q_above(self, N: int, extra: int = 1) -> int:
        """Extend until q_k > N for some k; return that k (plus `extra` rows if possible)."""
        k = 0
        while True:
            self.extend(k)
            if self._q[k] > N:
                break
            k += 1
        try:
            self.extend(k + extra)
        except DepthError:
            pass
        return k

    def a(self, k: int) -> int:
        if k > self.depth:
            self.extend(k)
        return self._a[k]

    def p(self, k: int) -> int:
        if k == -1:
            return 1
        if k > self.depth:
            self.extend(k)
        return self._p[k]

    def q(self, k: int, qm1: str = "zero") -> int:
        if k == -1:
            return q_minus1(qm1)
        if k > self.depth:
            self.extend(k)
        return self._q[k]

    def A(self, k: int) -> int:
        if k > self.depth:
            self.extend(k)
        return self._A[k]

    # ------------------------------------------------------------- D_k

    def _stream_alpha(self, T: int) -> Interval:
        """Cylinder of all reals whose expansion starts with a_0..a_T."""
        p, q = self.p(T), self.q(T)
        pp, qp = self.p(T - 1), self.q(T - 1)
        c1, c2 = Fraction(p, q), Fraction(p + pp, q + qp)
        return Interval(min(c1, c2), max(c1, c2))

    def _last_index(self) -> int | None:
        L = self.stream.length
        return None if L is None else L - 1

    def D(self, k: int, bits: int | None = None) -> Value:
        """Signed D_k = q_k alpha - p_k (k >= -1; D_{-1} = -1)."""
        if k == -1:
            return Fraction(-1) if self.exact is None else Surd(-1, 0, self.exact.d, 1, _raw=True)
        if self.exact is not None:
            hit = self._D.get(k)
            if hit is None:
                v = self.q(k) * self.exact - self.p(k)
                self._D[k] = (10 ** 9, v)
                return v
            return hit[1]
        bits = self.bits if bits is None else bits
        hit = self._D.get(k)
        if hit is not None and hit[0] >= bits:
            return hit[1]
        qk, qk1 = self.q(k), self._safe_q(k + 1)
        need = qk * (qk1 or qk) << (bits + 2)
        T = k + 2
        last = self._last_index()
        while True:
            if last is not None and T > last:
                T = last
                break
            self.extend(T)
            if self._q[T] * self._q[T] >= need:
                break
            T += 1
        if T <= k:
            raise DepthError(f"D_{k} needs quotients beyond a_{k}", T)
        v = self.q(k) * self._stream_alpha(T) - self.p(k)
        v = v.round_out(bits + 2 * (qk1 or qk).bit_length() + 8)
        achieved = bits if self._q[T] * self._q[T] >= need else 0
        self._D[k] = (achieved, v)
        return v

    def _safe_q(self, k: int) -> int | None:
        try:
            return self.q(k)
        except DepthError:
            return None

    def absD(self, k: int, bits: int | None = None) -> Value:
        if k == -1:
            return self.D(-1) * -1
        v = self.D(k, bits)
        s = 1 if k % 2 == 0 else -1
        return v if s > 0 else -v

    def sign_D(self, k: int) -> int:
        return 1 if k % 2 == 0 else -1

    def alpha_value(self, bits: int | None = None) -> Value:
        if self.exact is not None:
            return self.exact
        return self.p(0) + self.D(0, bits)

    def frac_alpha(self, bits: int | None = None) -> Value:
        """{alpha} = D_0."""
        return self.D(0, bits)

    def alpha_interval(self, bits: int) -> Interval:
        """Enclosure of alpha with width <= 2**-bits."""
        if self.exact is not None:
            return self.exact.enclose(bits)
        target = Fraction(1, 1 << bits)
        T = 1
        last = self._last_index()
        while True:
            if last is not None and T > last:
                raise DepthError(f"alpha to 2^-{bits}", last)
            self.extend(T)
            if Fraction(1, self._q[T] * (self._q[T] + self._q[T - 1])) <= target:
                return self._stream_alpha(T)
            T += 1

    def refined(self, bits: int) -> "ConvergentTable":
        """Same alpha with at least `bits` bits of relative precision on D_k."""
        if bits <= self.bits or self.exact is not None:
            return self
        t = ConvergentTable.__new__(ConvergentTable)
        t.__dict__.update(self.__dict__)
        t.bits = bits
        t._D = {}
        return t

    # ---------------------------------------------------------- queries

    def K_of(self, N: int) -> int:
        """Largest K with q_K <= N (N >= 1)."""
        if N < 1:
            raise DomainError("K(N) needs N >= 1")
        k = self.ensure_q_above(N, extra=0)
        return k - 1

    def row(self, k: int) -> Row:
        return Row(k, self.a(k), self.p(k), self.q(k), self.sign_D(k), self.absD(k), self.A(k))

    def rows(self, depth: int) -> list[Row]:
        return [self.row(k) for k in range(depth + 1)]


def q_minus1(convention: str = "zero") -> int:
    """q_{-1} is 0 in the usual recurrence; some bounds prefer q_{-1} = -1."""
    if convention == "zero":
        return 0
    if convention == "minus_one":
        return -1
    raise DomainError(f"unknown q_-1 convention {convention!r}")


def build_table(x: RealSpec, depth: int, bits: int = 128) -> ConvergentTable:
    return ConvergentTable(x, depth, bits)


def partial_quotients(x: RealSpec, count: int) -> list[int]:
    """a_0 .. a_count."""
    st = QuotientStream(x)
    return [st.get(k) for k in range(count + 1)]


def K_of(table: ConvergentTable, N: int) -> int:
    return table.K_of(N)


# ------------------------------------------------------------- relations

def _eq(x: Value, y: Value) -> bool:
    if isinstance(x, Interval) or isinstance(y, Interval):
        return to_interval(x).overlaps(to_interval(y))
    return x == y


def _pow2_half_le(m: int, q: int) -> bool:
    # 2^((m-1)/2) <= q
    return (1 << max(m - 1, 0)) <= q * q if m >= 1 else True


def certify_relations(table: ConvergentTable, depth: int) -> list[RelationCheck]:
    """Check the continued fraction identities and inequalities for rows 0..depth.

    Equalities between enclosures are accepted when the enclosures overlap;
    inequalities must be certified.  Tail sums are checked through their
    telescoped finite forms, which are exact.
    """
    def run(bits: int) -> list[RelationCheck]:
        t = table.refined(bits)
        out: list[RelationCheck] = []
        J = depth + 1
        t.extend(J + 1)
        D = {k: t.D(k) for k in range(-1, J + 2)}
        aD = {k: t.absD(k) for k in range(-1, J + 2)}
        for k in range(depth + 1):
            a, p, q = t.a(k), t.p(k), t.q(k)
            if k >= 1:
                out.append(RelationCheck("recurrence", k,
                                         p == a * t.p(k - 1) + t.p(k - 2)
                                         and q == a * t.q(k - 1) + t.q(k - 2)))
                out.append(RelationCheck("determinant", k,
                                         p * t.q(k - 1) - t.p(k - 1) * q == (-1) ** (k - 1)))
                out.append(RelationCheck("sign", k, D[k].sign() == (-1) ** k))
            else:
                out.append(RelationCheck("D0_is_frac", 0, le(0, D[0]) and lt(D[0], 1)))
            out.append(RelationCheck("three_term", k, _eq(t.a(k + 1) * D[k], D[k + 1] - D[k - 1])))
            qn = t.q(k + 1)
            out.append(RelationCheck("best_approx_bracket", k,
                                     le(Fraction(1, 2), qn * aD[k]) and le(qn * aD[k], 1)))
            out.append(RelationCheck("step", k, _eq(t.a(k + 2) * aD[k + 1] + aD[k + 2], aD[k])
                                     if k + 2 <= J + 1 else True))
            out.append(RelationCheck("decreasing", k, lt(aD[k + 1], aD[k])))
            if k >= 1:
                prod = 1
                for i in range(1, k + 1):
                    prod *= t.a(i)
                out.append(RelationCheck("growth", k,
                                         prod <= q and _pow2_half_le(k, q)
                                         and q <= (1 << (k - 1)) * prod))
        # telescoped tail identities, with J fixed
        suffix = 0
        suf = {}
        for i in range(J, -1, -1):
            suffix = suffix + t.a(i + 1) * aD[i]
            suf[i] = suffix
        for k in range(-1, depth + 1):
            lhs = suf[k + 1] + aD[J] + aD[J + 1] if k + 1 <= J else aD[J] + aD[J + 1]
            name = "tail_sum_total" if k == -1 else "tail_sum"
            out.append(RelationCheck(name, k, _eq(lhs, aD[k] + aD[k + 1])))
        alt = {J + 1: 0, J + 2: 0}
        for j in range(J, -1, -1):
            alt[j] = t.a(j + 1) * aD[j] + alt[j + 2]
        for k in range(0, depth + 1):
            # sum_{i>=1} a_{k+2i} |D_{k+2i-1}| = |D_k|, telescoped at the last index
            last = k + 1 + 2 * ((J - k - 1) // 2)
            lhs = alt[k + 1] - alt[last + 2] + aD[last + 1]
            out.append(RelationCheck("alternating_tail", k, _eq(lhs, aD[k])))
        if depth >= 1:
            out.append(RelationCheck("first_row", 1,
                                     t.p(1) == t.a(0) * t.a(1) + 1 and t.q(1) == t.a(1)
                                     and _eq(aD[1], 1 - t.a(1) * D[0])))
        return out

    return refine_until(run, table.bits, "convergent relations")


# ------------------------------------------------------------ exponents

@dataclass(frozen=True)
class ExponentReport:
    depth: int
    ratios: list  # (k, Interval) for log q_{k+1} / log q_k
    running_max: Interval
    last: Interval


def approx_exponent(table: ConvergentTable, depth: int, bits: int = 64) -> ExponentReport:
    """Enclosures of log q_{k+1}/log q_k for 2 <= k <= depth and their running maximum.

    The running maximum is the finite-depth estimate of the exponent of
    approximation; ``last`` is the ratio at k = depth, which tracks the limit
    for badly approximable numbers.
    """
    ratios = []
    start = 2
    while table.q(start) <= 1:
        start += 1
    best: Interval | None = None
    for k in range(start, depth + 1):
        r = log_enclosure(table.q(k + 1), bits) / log_enclosure(table.q(k), bits)
        ratios.append((k, r))
        if best is None:
            best = r
        else:
            best = Interval(max(best.lo, r.lo), max(best.hi, r.hi))
    if best is None:
        raise DomainError(f"depth {depth} too small for an exponent estimate")
    return ExponentReport(depth, ratios, best, ratios[-1][1])


# ---------------------------------------------------------------- export

COLUMNS = ["k", "a_k", "p_k", "q_k", "sign_Dk", "absDk_lo", "absDk_hi", "A_k"]


def _lohi(v: Value, bits: int = 128) -> tuple[Fraction, Fraction]:
    i = to_interval(v, bits)
    return i.lo, i.hi


def table_records(table: ConvergentTable, depth: int) -> list[dict]:
    out = []
    for r in table.rows(depth):
        lo, hi = _lohi(r.absD)
        out.append({"k": r.k, "a_k": r.a, "p_k": r.p, "q_k": r.q, "sign_Dk": r.sign_D,
                    "absDk_lo": lo, "absDk_hi": hi, "A_k": r.A})
    return out


def export_csv(table: ConvergentTable, depth: int) -> str:
    from .report import fmt_down, fmt_up
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in table_records(table, depth):
        w.writerow([r["k"], r["a_k"], r["p_k"], r["q_k"], r["sign_Dk"],
                    fmt_down(r["absDk_lo"]), fmt_up(r["absDk_hi"]), r["A_k"]])
    return buf.getvalue()


def export_json(table: ConvergentTable, depth: int) -> str:
    from .report import fmt_down, fmt_up
    rows = []
    for r in table_records(table, depth):
        r = dict(r)
        r["absDk_lo"] = fmt_down(r["absDk_lo"])
        r["absDk_hi"] = fmt_up(r["absDk_hi"])
        rows.append(r)
    return json.dumps({"schema": 1, "alpha": format_real(table.spec), "rows": rows},
                      indent=1)
