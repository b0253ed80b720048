"""Sums of reciprocals of fractional parts and the bounds they satisfy.

S_N = sum_{n<=N} 1/(n ||n alpha - gamma||) and R_N = sum_{n<=N} 1/||n alpha - gamma||.

All sums are carried as integers scaled by 2**Q.  Each term contributes
floor(2**Q / hi) and ceil(2**Q / lo) for its norm enclosure [lo, hi], so the
accumulated pair always brackets the true value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import ConvergentTable
from .errors import DegenerateError, DomainError, PrecisionError
from .gamma import Gamma, parse_gamma, resolve_gamma
from .psi import PsiSpec
from .realnum import Interval, Surd, log_enclosure, parse_real, precision_cap, to_interval
from .report import (INFO, NOT_MET, PASS, BoundReport, Verdict, check_le, verdict)
from .scan import exact_norm_interval, fixed_setup, norm_bounds


def as_table(x, depth: int = 0) -> ConvergentTable:
    if isinstance(x, ConvergentTable):
        return x
    if isinstance(x, str):
        x = parse_real(x)
    return ConvergentTable(x, depth)


def as_gamma(g, t: ConvergentTable) -> Gamma:
    if g is None:
        return Gamma()
    if isinstance(g, str):
        g = parse_gamma(g)
    elif not isinstance(g, Gamma):
        g = Gamma.rational(g)
    return resolve_gamma(g, t)


def _iv(lo: int, hi: int, Q: int) -> Interval:
    d = 1 << Q
    return Interval(Fraction(lo, d), Fraction(hi, d))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ------------------------------------------------------------------ sweep

@dataclass
class Sweep:
    """Result of one pass n = 1..N.  Integer fields are scaled by 2**Q."""
    N: int
    P: int
    Q: int
    R_lo: int = 0
    R_hi: int = 0
    S_lo: int = 0
    S_hi: int = 0
    checkpoints: dict = field(default_factory=dict)  # N -> (R_lo, R_hi, S_lo, S_hi)
    prefix: list | None = None  # [(R_lo, R_hi, S_lo, S_hi)] for n = 1..keep, index n-1
    terms: list | None = None   # [(r_lo, r_hi)] for n = 1..keep
    comp: tuple | None = None   # complement of the split residues (lo, hi)

    @property
    def R(self) -> Interval:
        return _iv(self.R_lo, self.R_hi, self.Q)

    @property
    def S(self) -> Interval:
        return _iv(self.S_lo, self.S_hi, self.Q)

    def R_at(self, N: int) -> Interval:
        c = self._at(N)
        return _iv(c[0], c[1], self.Q)

    def S_at(self, N: int) -> Interval:
        c = self._at(N)
        return _iv(c[2], c[3], self.Q)

    def _at(self, N: int) -> tuple:
        if N == self.N:
            return (self.R_lo, self.R_hi, self.S_lo, self.S_hi)
        if N in self.checkpoints:
            return self.checkpoints[N]
        if self.prefix is not None and 1 <= N <= len(self.prefix):
            return self.prefix[N - 1]
        raise KeyError(f"no partial sum recorded at N={N}")


def _special_term(t, gamma, n: int, bits: int, Q: int) -> tuple[int, int]:
    v = exact_norm_interval(t, gamma, n, bits)
    if v is None:
        raise DegenerateError(n)
    num = 1 << Q
    lo = (num * v.hi.denominator) // v.hi.numerator
    hi = _ceil_div(num * v.lo.denominator, v.lo.numerator)
    return lo, hi


def _run(t, gamma, N, P, Q, checkpoints, keep, keep_terms, split, threads) -> Sweep:
    fs = fixed_setup(t, gamma, P)
    NUM = 1 << (P + Q)
    out = Sweep(N, P, Q)
    cps = sorted(c for c in set(checkpoints) if 1 <= c < N)
    cp_iter = iter(cps)
    next_cp = next(cp_iter, None)
    prefix = [] if keep else None
    terms = [] if keep_terms else None
    Rl = Rh = Sl = Sh = 0
    Cl = Ch = 0
    mod, r1 = split if split else (0, -1)
    bits = P - 8
    for n0, los, his, sp in norm_bounds(fs, 1, N + 1, threads):
        sps = set(sp)
        n = n0
        for lo, hi in zip(los, his):
            if n in sps or lo == 0:
                a, b = _special_term(t, gamma, n, bits, Q)
            else:
                a = NUM // hi
                b = _ceil_div(NUM, lo)
            Rl += a
            Rh += b
            Sl += a // n
            Sh += _ceil_div(b, n)
            if mod:
                m = n % mod
                if m != 0 and m != r1:
                    Cl += a
                    Ch += b
            if prefix is not None and n <= keep:
                prefix.append((Rl, Rh, Sl, Sh))
            if terms is not None and n <= keep_terms:
                terms.append((a, b))
            if n == next_cp:
                out.checkpoints[n] = (Rl, Rh, Sl, Sh)
                next_cp = next(cp_iter, None)
            n += 1
    out.R_lo, out.R_hi, out.S_lo, out.S_hi = Rl, Rh, Sl, Sh
    out.prefix = prefix
    out.terms = terms
    if mod:
        out.comp = (Cl, Ch)
    return out


def sweep(x, gamma=None, N: int = 1, precision: int = 64, checkpoints=(), keep: int = 0,
          keep_terms: int = 0, split: tuple | None = None, threads: int = 1) -> Sweep:
    """Certified partial sums of R and S up to N, with width <= 2**-precision at N.

    ``keep`` stores every running pair for n <= keep, ``keep_terms`` every
    single reciprocal term.  ``split=(q, r)`` also accumulates the sum over
    n not congruent to 0 or r mod q.
    """
    t = as_table(x)
    g = as_gamma(gamma, t)
    if N < 1:
        raise DomainError("N must be positive")
    Q = precision + N.bit_length() + 8
    P = precision + 3 * N.bit_length() + 32
    cap = max(precision_cap(), P)
    target = 1 << (Q - precision)
    while True:
        sw = _run(t, g, N, P, Q, checkpoints, keep, keep_terms, split, threads)
        if sw.R_hi - sw.R_lo <= target and sw.S_hi - sw.S_lo <= target:
            return sw
        if P >= cap:
            raise PrecisionError(f"sum to N={N} wider than 2^-{precision} at cap", P)
        P = min(2 * P, cap)


def sum_S(x, gamma=None, N: int = 1, precision: int = 64, threads: int = 1) -> Interval:
    return sweep(x, gamma, N, precision, threads=threads).S


def sum_R(x, gamma=None, N: int = 1, precision: int = 64, threads: int = 1) -> Interval:
    return sweep(x, gamma, N, precision, threads=threads).R


def naive_sums(x, gamma, N: int, dps: int = 30) -> tuple[float, float]:
    """(S_N, R_N) in plain mpmath floats, for cross-checks at low precision."""
    import mpmath
    t = as_table(x)
    g = as_gamma(gamma, t)
    with mpmath.workdps(dps + len(str(N))):
        a = mpmath.mpf(to_interval(t.alpha_value(), 4 * dps + 64).mid.numerator) / \
            to_interval(t.alpha_value(), 4 * dps + 64).mid.denominator
        gv = to_interval(g.value(t, 4 * dps + 64) if not g.is_zero else Fraction(0),
                         4 * dps + 64).mid
        gm = mpmath.mpf(gv.numerator) / gv.denominator
        S = R = mpmath.mpf(0)
        for n in range(1, N + 1):
            y = n * a - gm
            d = abs(y - mpmath.nint(y))
            R += 1 / d
            S += 1 / (n * d)
        return float(S), float(R)


# ------------------------------------------------------------- log helpers

def _log(x, bits: int = 96) -> Interval:
    return log_enclosure(x, bits)


def _sq(i: Interval) -> Interval:
    return i * i


# ------------------------------------------------------------------ split

def residue_indices(t: ConvergentTable, N: int) -> tuple[int, list[int]]:
    """K and the n <= N with n = 0 or q_{K-1} mod q_K."""
    K = t.K_of(N)
    qK, qKm1 = t.q(K), t.q(K - 1)
    ns = set(range(qK, N + 1, qK)) | set(range(qKm1, N + 1, qK))
    return K, sorted(ns)


def _terms_at(t, gamma, ns, P: int, Q: int) -> list[tuple[int, int]]:
    """Scaled reciprocal enclosures for an arbitrary list of n."""
    fs = fixed_setup(t, gamma, P)
    NUM = 1 << (P + Q)
    M = 1 << P
    H = M >> 1
    out = []
    for n in ns:
        xl = n * fs.A_lo - fs.G_hi
        xh = n * fs.A_hi - fs.G_lo
        r = xl & (M - 1)
        e = r + (xh - xl)
        lo = hi = None
        if 0 < r and e < H:
            lo, hi = r, e
        elif H < r and e < M:
            lo, hi = M - e, M - r
        if lo is None:
            out.append(_special_term(t, gamma, n, P - 8, Q))
        else:
            out.append((NUM // hi, _ceil_div(NUM, lo)))
    return out


def _require_q3(t: ConvergentTable, N: int) -> None:
    if N < t.q(3):
        raise DomainError(f"hypothesis N >= q_3 = {t.q(3)} fails for N={N}")


def split_R(x, N: int, precision: int = 64, R: Interval | None = None,
            threads: int = 1) -> BoundReport:
    """The two residue-class sub-sums of R_N(alpha, 0) and their explicit bounds.

    With ``R`` given, the complement is R minus the residue sum; otherwise a
    sweep accumulates the complement on its own and the three sums are
    checked for consistency.
    """
    t = as_table(x)
    _require_q3(t, N)
    K, ns = residue_indices(t, N)
    qK, qK1, q2, q3 = t.q(K), t.q(K + 1), t.q(2), t.q(3)
    Q = precision + N.bit_length() + 8
    P = precision + 3 * N.bit_length() + 32
    tr = _terms_at(t, None, ns, P, Q)
    res = _iv(sum(a for a, _ in tr), sum(b for _, b in tr), Q)
    rep = BoundReport("split_R")
    if R is None:
        sw = sweep(t, None, N, precision, split=(qK, t.q(K - 1)), threads=threads)
        R = sw.R
        comp = _iv(sw.comp[0], sw.comp[1], sw.Q)
        rep.add(verdict("partition", (res + comp).overlaps(R)))
    else:
        comp = R - res
    lqK = _log(qK)
    l1 = _log(1 + Fraction(N, qK))
    lower1 = Fraction(N, 24) * lqK - (_log(q2) / 3 + Fraction(1, 2)) * N
    upper1 = 64 * N * lqK + 2 * q3 * N
    lower4 = qK1 * l1
    upper4 = 4 * qK1 * (1 + l1)
    rep.values.update({"N": N, "K": K, "q_K": qK, "q_K+1": qK1, "R": R, "residue": res,
                       "complement": comp, "residue_count": len(ns),
                       "eq1_lower": lower1, "eq1_upper": upper1,
                       "eq4_lower": lower4, "eq4_upper": upper4, "precision": precision})
    rep.add(check_le("eq1_lower", lower1, comp))
    rep.add(check_le("eq1_upper", comp, upper1))
    rep.add(check_le("eq4_lower", lower4, res))
    rep.add(check_le("eq4_upper", res, upper4))
    return rep


def trimmed_R(x, N: int, c, precision: int = 64) -> BoundReport:
    """sum over the residue classes of min{cN, 1/||n alpha||} against 12 N (c a_{K+1})^(1/2)."""
    t = as_table(x)
    _require_q3(t, N)
    c = Fraction(c)
    if c <= 0:
        raise DomainError("trim parameter c must be positive")
    K, ns = residue_indices(t, N)
    Q = precision + N.bit_length() + 8
    P = precision + 3 * N.bit_length() + 32
    tr = _terms_at(t, None, ns, P, Q)
    cap = c * N
    cl = (cap.numerator << Q) // cap.denominator
    ch = _ceil_div(cap.numerator << Q, cap.denominator)
    lo = sum(min(cl, a) for a, _ in tr)
    hi = sum(min(ch, b) for _, b in tr)
    active = sum(1 for _, b in tr if b > cl)
    value = _iv(lo, hi, Q)
    aK1 = t.a(K + 1)
    # value <= 12 N sqrt(c a) compared through squares
    bound_sq = 144 * N * N * c * aK1
    ok = value.hi * value.hi <= bound_sq
    rep = BoundReport("trimmed_R")
    rep.values.update({"N": N, "K": K, "c": c, "a_K+1": aK1, "value": value,
                       "bound_squared": bound_sq, "trim_active_terms": active,
                       "precision": precision})
    rep.add(verdict("eq2", ok))
    return rep


# --------------------------------------------------------------------- T1

def t1_bounds(t: ConvergentTable, N: int) -> tuple[Interval, Interval, int]:
    K = t.K_of(N)
    A = t.A(K + 1)
    l2 = _sq(_log(N))
    low = l2 * Fraction(1, 2)
    if low.hi < A:
        low = Interval(A, A)
    elif low.lo < A:
        low = Interval(A, max(A, low.hi))
    return low, l2 * 33 + 10 * A, A


def check_T1(x, N: int, S: Interval | None = None, precision: int = 64) -> BoundReport:
    t = as_table(x)
    if S is None:
        S = sum_S(t, None, N, precision)
    low, up, A = t1_bounds(t, N)
    rep = BoundReport("T1")
    rep.values.update({"N": N, "K": t.K_of(N), "A_K+1": A, "S": S, "lower": low, "upper": up})
    rep.flags["asymptotic"] = True
    rep.add(check_le("eq12_lower", low, S))
    rep.add(check_le("eq12_upper", S, up))
    return rep


def t1_threshold(reports: list[BoundReport]) -> int | None:
    """Smallest tested N from which every later tested N passes."""
    ordered = sorted(reports, key=lambda r: r.values["N"])
    best = None
    for r in reversed(ordered):
        if not r.ok:
            break
        best = r.values["N"]
    return best


# ------------------------------------------------------- corollary checks

def corollary_checks(sw: Sweep, upto: int, ratio: int = 256) -> list[Verdict]:
    """R_N >= N log N + N log(e/2) + 2 and S_N >= (log N)^2 / 2 for every 2 <= N <= upto."""
    if sw.prefix is None or len(sw.prefix) < upto:
        raise DomainError("sweep must keep running sums up to the checked N")
    Q = sw.Q
    one = 1 << Q
    c = 1 - _log(2)
    Cu = _ceil_div(c.hi.numerator << Q, c.hi.denominator)

    def log_up(m: int, bits: int = Q + 8) -> int:
        h = _log(m, bits).hi
        return _ceil_div(h.numerator << Q, h.denominator)

    bad_R, bad_S = [], []
    n0 = 2
    while n0 <= upto:
        n1 = min(upto + 1, max(n0 + 1, n0 + n0 // ratio))
        LU = log_up(n1)
        for N in range(n0, n1):
            Rl, _, Sl, _ = sw.prefix[N - 1]
            if Rl < N * LU + N * Cu + 2 * one:
                L1 = log_up(N)
                if Rl < N * L1 + N * Cu + 2 * one:
                    bad_R.append(N)
            if 2 * Sl * one < LU * LU:
                L1 = log_up(N)
                if 2 * Sl * one < L1 * L1:
                    bad_S.append(N)
        n0 = n1
    return [verdict("cor_R_lower", not bad_R, upto=upto, failures=bad_R[:20]),
            verdict("cor_S_lower", not bad_S, upto=upto, failures=bad_S[:20])]


# --------------------------------------------------------- partial summation

def partial_summation_check(x, gamma=None, N: int = 1, precision: int = 64,
                            sw: Sweep | None = None) -> Verdict:
    """S_N against sum_{n<=N} R_n/(n(n+1)) + R_N/(N+1)."""
    if sw is None or sw.prefix is None or len(sw.prefix) < N:
        sw = sweep(x, gamma, N, precision, keep=N)
    lo = hi = 0
    for n in range(1, N + 1):
        Rl, Rh, _, _ = sw.prefix[n - 1]
        d = n * (n + 1)
        lo += Rl // d
        hi += _ceil_div(Rh, d)
    Rl, Rh, Sl, Sh = sw.prefix[N - 1]
    lo += Rl // (N + 1)
    hi += _ceil_div(Rh, N + 1)
    rhs = _iv(lo, hi, sw.Q)
    S = _iv(Sl, Sh, sw.Q)
    return verdict("partial_summation", S.overlaps(rhs), N=N, S=S, rhs=rhs)


# ---------------------------------------------------------- linear forms

@dataclass
class LinearFormSumReport:
    dimension: int
    T: tuple
    T_total: int
    L: Fraction | None
    gamma: Fraction
    theorem: str
    lhs: Interval
    rhs: object  # Interval for T3, growth term for the others
    verdict: Verdict
    precision: int


def t3_rhs(n: int, T: int, L) -> tuple[Fraction, int, Fraction]:
    """RHS = const + T*log(arg), i.e. 2T log min(L,T) + (2^{n+1}-2)T - T log 4 + 4."""
    m = min(Fraction(L), Fraction(T))
    return Fraction((2 ** (n + 1) - 2) * T + 4), T, m * m / 4


def t3_rhs_value(n: int, T: int, L, bits: int = 96):
    const, coef, arg = t3_rhs(n, T, L)
    if arg == 1:
        return const
    return const + coef * _log(arg, bits + coef.bit_length())


def _box(Ts, positive: bool):
    import itertools
    if positive:
        ranges = [range(1, Tj + 1) for Tj in Ts]
    else:
        ranges = [range(-Tj, Tj + 1) for Tj in Ts]
    for q in itertools.product(*ranges):
        if any(q):
            yield q


def _scaled_alpha(spec, P: int) -> tuple[int, int]:
    t = as_table(spec)
    return t.alpha_interval(P + 2).scaled_ints(P)


def linear_forms_sum(A: list, T: list, L=None, gamma=0, theorem: str = "T3",
                     precision: int = 48) -> LinearFormSumReport:
    """Box sums of the linear form q.A - gamma.

    T3: symmetric box without 0, terms min{L, 1/||q.A||}, compared with the
        explicit lower bound.
    T9: 1 <= q_j <= T_j, terms 1/||q.A - gamma||, ratio to T log T_1.
    T10: as T9 with weight 1/(q_1...q_n), ratio to log T_1 prod log T_j.
    kron: symmetric box, weight 1/prod_{q_j != 0}|q_j|, ratio to log T prod log T_j.
    """
    n = len(A)
    if n != len(T) or n == 0:
        raise DomainError("A and T must have the same positive length")
    if any(Tj < 1 for Tj in T):
        raise DomainError("box sizes must be positive integers")
    Ttot = math.prod(T)
    gamma = Fraction(gamma)
    if theorem == "T3":
        if L is None:
            raise DomainError("T3 needs the cap L")
        L = Fraction(L)
        if L < 2 or Ttot < 2:
            raise DomainError("T3 needs L >= 2 and T >= 2")
    elif theorem not in ("T9", "T10", "kron"):
        raise DomainError(f"unknown linear form theorem {theorem!r}")
    positive = theorem in ("T9", "T10")
    weighted = theorem in ("T10", "kron")
    bits = max(precision, 16)
    P = bits + 2 * max(T).bit_length() + 40
    cap = max(precision_cap(), P)
    while True:
        lhs, tight = _lf_lhs(A, T, L, gamma, positive, weighted, P, bits + 16)
        if tight or P >= cap:
            break
        P = min(2 * P, cap)
    if theorem == "T3":
        const, coef, arg = t3_rhs(n, Ttot, L)
        rhs = t3_rhs_value(n, Ttot, L)
        v = check_le("vb+102", rhs, lhs, rhs_const=const, rhs_log_coef=coef, rhs_log_arg=arg)
        if gamma != 0:
            v = Verdict("vb+102", NOT_MET, {"reason": "homogeneous statement; gamma != 0"})
        if v.detail.get("undecided"):
            raise PrecisionError("linear form sum undecided at cap", P)
    else:
        if theorem == "T9":
            growth = Ttot * _log(T[0]) if T[0] > 1 else None
        elif theorem == "T10":
            growth = _log(T[0]) if T[0] > 1 else None
            for Tj in T:
                growth = None if growth is None or Tj < 2 else growth * _log(Tj)
        else:
            growth = _log(Ttot) if Ttot > 1 else None
            for Tj in T:
                growth = None if growth is None or Tj < 2 else growth * _log(Tj)
        ratio = lhs / growth if growth is not None else None
        rhs = growth
        v = Verdict(theorem, INFO, {"ratio": ratio})
    return LinearFormSumReport(n, tuple(T), Ttot, L, gamma, theorem, lhs, rhs, v, precision)


def _lf_lhs(A, T, L, gamma, positive, weighted, P, Q):
    M = 1 << P
    H = M >> 1
    NUM = 1 << (P + Q)
    encl = [_scaled_alpha(a, P) for a in A]
    g_lo = (gamma.numerator << P) // gamma.denominator
    g_hi = _ceil_div(gamma.numerator << P, gamma.denominator)
    if L is not None:
        Ll = (L.numerator << Q) // L.denominator
        Lh = _ceil_div(L.numerator << Q, L.denominator)
    lo_sum = hi_sum = 0
    for q in _box(T, positive):
        xl = -g_hi
        xh = -g_lo
        for qj, (al, ah) in zip(q, encl):
            if qj >= 0:
                xl += qj * al
                xh += qj * ah
            else:
                xl += qj * ah
                xh += qj * al
        r = xl & (M - 1)
        e = r + (xh - xl)
        if 0 < r and e <= H:
            nlo, nhi = r, e
        elif r >= H and e < M:
            nlo, nhi = M - e, M - r
        elif e <= M and r > 0:
            nlo, nhi = min(r, M - e), H
        else:
            nlo, nhi = 0, H
        a = NUM // nhi
        b = _ceil_div(NUM, nlo) if nlo else None
        if L is not None:
            a = min(a, Ll)
            b = Lh if b is None else min(b, Lh)
        if b is None:
            return Interval(Fraction(a, 1 << Q), Fraction(10 ** 30)), False
        if weighted:
            w = math.prod(abs(x) for x in q if x)
            a //= w
            b = _ceil_div(b, w)
        lo_sum += a
        hi_sum += b
    lhs = _iv(lo_sum, hi_sum, Q)
    tight = lhs.width <= max(lhs.lo, Fraction(1)) * Fraction(1, 1 << (Q - 16))
    return lhs, tight


# ------------------------------------------------------- psi transfer sums

@dataclass
class PsiTransferReport:
    N: int
    psi: str
    direct: Interval
    via_R: Interval
    via_S: Interval
    verdicts: list
    kappa: dict  # N -> Interval of partial sum / (log N)^2


def psi_transfer_sums(x, gamma, psi: PsiSpec, N: int, precision: int = 64,
                      trend: tuple = ()) -> PsiTransferReport:
    """sum_{n<=N} psi(n)/||n alpha - gamma|| directly and through both partial summations."""
    t = as_table(x)
    sw = sweep(t, gamma, N, precision, keep=N, keep_terms=N)
    Q = sw.Q
    Qp = precision + 2 * (N + 1).bit_length() + 16
    ps = [psi.interval(n, Qp + 8).scaled_ints(Qp) for n in range(1, N + 2)]
    d_lo = d_hi = 0
    for (a, b), (pl, ph) in zip(sw.terms, ps):
        d_lo += a * pl
        d_hi += b * ph
    r_lo = r_hi = s_lo = s_hi = 0
    for n in range(1, N + 1):
        Rl, Rh, Sl, Sh = sw.prefix[n - 1]
        (pl, ph), (ql, qh) = ps[n - 1], ps[n]
        dl, dh = pl - qh, ph - ql            # psi(n) - psi(n+1)
        r_lo += min(dl * Rl, dl * Rh)
        r_hi += max(dh * Rl, dh * Rh)
        el, eh = n * pl - (n + 1) * qh, n * ph - (n + 1) * ql
        s_lo += min(el * Sl, el * Sh)
        s_hi += max(eh * Sl, eh * Sh)
    Rl, Rh, Sl, Sh = sw.prefix[N - 1]
    ql, qh = ps[N]
    r_lo += ql * Rl
    r_hi += qh * Rh
    s_lo += (N + 1) * ql * Sl
    s_hi += (N + 1) * qh * Sh
    scale = Q + Qp
    direct = _iv(d_lo, d_hi, scale)
    via_R = _iv(r_lo, r_hi, scale)
    via_S = _iv(s_lo, s_hi, scale)
    vs = []
    if psi.decreasing:
        vs.append(verdict("ggg", direct.overlaps(via_R)))
    else:
        vs.append(Verdict("ggg", NOT_MET, {"reason": "psi not decreasing"}))
    if psi.n_psi_decreasing:
        vs.append(verdict("ggg+", direct.overlaps(via_S)))
    else:
        vs.append(Verdict("ggg+", NOT_MET, {"reason": "n psi(n) not decreasing"}))
    kappa = {}
    for M in trend:
        if 2 <= M <= N:
            acc_lo = sum(a * pl for (a, _), (pl, _) in zip(sw.terms[:M], ps[:M]))
            acc_hi = sum(b * ph for (_, b), (_, ph) in zip(sw.terms[:M], ps[:M]))
            kappa[M] = _iv(acc_lo, acc_hi, scale) / _sq(_log(M))
    return PsiTransferReport(N, psi.describe(), direct, via_R, via_S, vs, kappa)
