"""Sets of integers whose Ostrowski expansion starts with a fixed digit prefix.

A(d_1..d_{m+1}) is the set of n >= 1 with c_{k+1}(n) = d_{k+1} for k <= m.
Members are produced in increasing order by an odometer on the free digits
c_{m+2}, c_{m+3}, ...: numeric order of Ostrowski expansions is reverse
lexicographic order of the digit strings, so the successor increments the
lowest digit that can be incremented and clears everything below it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import ConvergentTable
from .errors import DigitError, DomainError
from .ostrowski import expand_int
from .realnum import Interval, log_enclosure
from .report import NOT_MET, BoundReport, Verdict, check_le, verdict


@dataclass(frozen=True)
class DigitPrefix:
    digits: tuple  # d_1, ..., d_{m+1}

    @property
    def m(self) -> int:
        return len(self.digits) - 1

    def d(self, k: int) -> int:
        """d_k, 1-based."""
        return self.digits[k - 1]

    def n_prime(self, t: ConvergentTable) -> int:
        return sum(d * t.q(k) for k, d in enumerate(self.digits))

    def validate(self, t: ConvergentTable) -> None:
        if not self.digits:
            raise DigitError("empty prefix")
        ds = self.digits
        if any(d < 0 for d in ds):
            raise DigitError("prefix digits must be non-negative")
        if ds[0] >= t.a(1):
            raise DigitError(f"d_1 = {ds[0]} must be below a_1 = {t.a(1)}")
        for k in range(1, len(ds)):
            if ds[k] > t.a(k + 1):
                raise DigitError(f"d_{k + 1} = {ds[k]} exceeds a_{k + 1} = {t.a(k + 1)}")
            if ds[k] == t.a(k + 1) and ds[k - 1] != 0:
                raise DigitError(f"d_{k} must vanish since d_{k + 1} = a_{k + 1}")


def parse_prefix(text: str) -> DigitPrefix:
    try:
        return DigitPrefix(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))
    except ValueError:
        from .errors import ParseError
        raise ParseError("prefix must be comma separated integers", text) from None


def random_prefix(t: ConvergentTable, m: int, rng: random.Random) -> DigitPrefix:
    ds = [rng.randrange(t.a(1))]
    for k in range(1, m + 1):
        hi = t.a(k + 1) if ds[-1] == 0 else t.a(k + 1) - 1
        ds.append(rng.randint(0, hi))
    return DigitPrefix(tuple(ds))


def _walk(prefix: DigitPrefix, t: ConvergentTable, N: int):
    """Yield (n, case) in increasing order for members n <= N.

    ``case`` names the proof case of the step that produced n from its
    predecessor (m' is the index of the digit that was incremented):
    1 for m' = m+1, 2 for m' - m even, 3 for m' - m odd and >= 3;
    None for the first member.
    """
    prefix.validate(t)
    m = prefix.m
    t.ensure_q_above(N, extra=2)
    base = m + 1                # free digits are coefficients of q_j, j >= base
    free: list[int] = []        # free[i] is the coefficient of q_{base+i}
    n = prefix.n_prime(t)
    low_top = prefix.digits[-1]

    def above(j: int) -> int:
        i = j - base + 1
        return free[i] if i < len(free) else 0

    first = n > 0
    if first:
        yield n, None
    while True:
        j = base
        while True:
            i = j - base
            c = free[i] if i < len(free) else 0
            aj = t.a(j + 1)
            can = c + 1 <= aj and above(j) != t.a(j + 2)
            # digits below j are cleared, so only the fixed prefix digit can block
            if can and c + 1 == aj and j == base and low_top != 0:
                can = False
            if can:
                break
            j += 1
        # clear digits below j, increment digit j
        i = j - base
        dec = sum(free[k] * t.q(base + k) for k in range(min(i, len(free))))
        while len(free) <= i:
            free.append(0)
        for k in range(i):
            free[k] = 0
        free[i] += 1
        n = n - dec + t.q(j)
        if n > N:
            return
        mp = j
        if mp == m + 1:
            case = 1
        elif (mp - m) % 2 == 0:
            case = 2
        else:
            case = 3
        yield n, case


def enumerate_A(prefix: DigitPrefix, t: ConvergentTable, N: int) -> list[int]:
    """Sorted members of A(prefix) in [1, N]."""
    if N < 1:
        raise DomainError("N must be positive")
    return [n for n, _ in _walk(prefix, t, N)]


def enumerate_cases(prefix: DigitPrefix, t: ConvergentTable, N: int) -> list[tuple]:
    return list(_walk(prefix, t, N))


def members_by_scan(prefix: DigitPrefix, t: ConvergentTable, N: int) -> list[int]:
    """Oracle: filter 1..N by their greedy expansions."""
    prefix.validate(t)
    out = []
    for n in range(1, N + 1):
        d = expand_int(t, n).as_dict()
        if all(d.get(k, 0) == v for k, v in enumerate(prefix.digits)):
            out.append(n)
    return out


@dataclass
class GapReport:
    count: int
    gaps: dict                     # gap length -> multiplicity
    case: str                      # "i" or "ii"
    alphabet: tuple
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_gaps(members: list[int], prefix: DigitPrefix, t: ConvergentTable) -> GapReport:
    """Check gap alphabets and, in case (ii), the run of a_{m+2} gaps q_{m+1} before each q_m gap.

    For the all-zero prefix the run is counted from the virtual element 0
    (the prefix value n' = 0, which is not a positive integer).
    """
    m = prefix.m
    qm, qm1 = t.q(m), t.q(m + 1)
    am2 = t.a(m + 2)
    top = prefix.digits[-1]
    case = "i" if top > 0 else "ii"
    alphabet = (qm1, qm1 + qm) if case == "i" else (qm1, qm)
    n0 = prefix.n_prime(t)
    gaps: dict = {}
    bad: list = []
    for i in range(len(members) - 1):
        g = members[i + 1] - members[i]
        gaps[g] = gaps.get(g, 0) + 1
        if g not in alphabet:
            bad.append({"index": i, "n": members[i], "gap": g, "rule": "alphabet"})
            continue
        if case == "ii" and g == qm and qm != qm1:
            c = expand_int(t, members[i]).digit(m + 1)
            if c != am2:
                bad.append({"index": i, "n": members[i], "gap": g, "rule": "c_{m+2} = a_{m+2}"})
                continue
            chain = [0] + members[:i + 1] if n0 == 0 else members[:i + 1]
            run = chain[-(am2 + 1):]
            if len(run) < am2 + 1 or any(run[k + 1] - run[k] != qm1 for k in range(am2)):
                bad.append({"index": i, "n": members[i], "gap": g, "rule": "run of q_{m+1} gaps"})
    if members and members != sorted(set(members)):
        bad.insert(0, {"index": 0, "rule": "members not strictly increasing"})
    return GapReport(len(members), dict(sorted(gaps.items())), case, alphabet, bad)


def count_bounds(members: list[int], prefix: DigitPrefix, t: ConvergentTable, N: int
                 ) -> BoundReport:
    """N/(3 q_{m+1}) <= #A_N <= 3N/q_{m+1} + 1."""
    qm1 = t.q(prefix.m + 1)
    c = len(members)
    rep = BoundReport("gaps_count")
    lo, hi = Fraction(N, 3 * qm1), Fraction(3 * N, qm1) + 1
    rep.values.update({"N": N, "count": c, "lower": lo, "upper": hi, "q_m+1": qm1})
    if c < 1:
        rep.add(Verdict("gaps2", NOT_MET, {"reason": "empty set"}))
        return rep
    rep.add(verdict("gaps2_lower", lo <= c))
    rep.add(verdict("gaps2_upper", c <= hi))
    return rep


def harmonic_sum_A(members: list[int], n_prime: int, N: int, t: ConvergentTable, m: int,
                   bits: int = 96) -> BoundReport:
    """sum_{n in A_N, n != n'} 1/n against 5 log N / q_{m+1}."""
    if N < 3:
        raise DomainError("harmonic bound needs N >= 3")
    Q = bits
    one = 1 << Q
    lo = hi = 0
    for n in members:
        if n == n_prime or n > N:
            continue
        lo += one // n
        hi += -((-one) // n)
    s = Interval(Fraction(lo, one), Fraction(hi, one))
    bound = 5 * log_enclosure(N, bits) / t.q(m + 1)
    rep = BoundReport("gaps_harmonic")
    rep.values.update({"N": N, "sum": s, "bound": bound})
    rep.add(check_le("harmonic", s, bound))
    return rep
