"""Evaluation of ||n alpha - gamma||.

Two independent routes:

* ``norm_direct`` evaluates n*alpha - gamma and its distance to Z from the
  value of alpha (exact for surds, enclosed otherwise);
* ``norm_via_ostrowski`` works only with digits: with delta_{k+1} = c_{k+1} - b_{k+1}
  and m the first index where delta is nonzero, Sigma = sum_{k>=m} delta_{k+1} D_k
  satisfies ||n alpha - gamma|| = min(|Sigma|, 1 - |Sigma|).  Both decompositions
  of |Sigma| and 1 - |Sigma| into three named terms plus a small remainder are
  recomputed and checked on every call.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import ConvergentTable
from .errors import DegenerateError, DepthError, IdentityError, Undecided
from .gamma import Gamma
from .ostrowski import DeltaDigits, OstrowskiInt, OstrowskiReal, delta_of, expand_int
from .realnum import (Interval, dist_to_int, is_exact, le, lt, refine_until, to_interval)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SigmaDecomposition:
    m: int
    sigma: object          # signed Sigma
    abs_sigma: object
    branch: str            # "|S|" or "1-|S|"
    ell: int
    L: int
    term1: object
    term2: object
    term3: object
    delta_term: object     # Delta
    term0_tilde: object    # (a_1 - 1 - (-1)^m s delta_1)|D_0|
    termL_tilde: object    # (a_{L+1} - (-1)^{L+m} s delta_{L+1})|D_L|
    tilde_delta_term: object
    checks: tuple = ()


@dataclass(frozen=True)
class NormResult:
    n: int
    value: object          # exact Surd/Fraction or Interval
    method: str
    decomposition: SigmaDecomposition | None = None
    degenerate: bool = False
    flags: tuple = ()

    def enclosure(self, bits: int = 128) -> Interval:
        return to_interval(self.value, bits)


# ------------------------------------------------------------------ direct

def norm_direct(t: ConvergentTable, n: int, gamma: Gamma | None = None, bits: int = 96
                ) -> NormResult:
    """||n alpha - gamma|| with enclosure width <= 2**-bits.

    An exactly vanishing norm (n alpha - gamma in Z) is reported through the
    ``degenerate`` flag instead of raising.
    """
    gamma = gamma or Gamma()

    def run(b: int) -> NormResult:
        x = gamma.minus_n_alpha(t, n, b)
        if is_exact(x):
            v = dist_to_int(x)
            return NormResult(n, v, "direct", None, v == 0)
        v = dist_to_int(x)
        if v.lo == 0 or v.width > Fraction(1, 1 << bits):
            raise Undecided("direct norm enclosure too wide")
        return NormResult(n, v, "direct")

    return refine_until(run, bits + 8, f"norm of n={n}")


# --------------------------------------------------------- digit route

def _sum_D(t: ConvergentTable, terms):
    acc = 0
    for coef, k in terms:
        if coef:
            acc = acc + coef * t.absD(k)
    return acc


def _check(name: str, ok: bool, checks: list) -> None:
    checks.append((name, ok))
    if not ok:
        raise IdentityError(f"{name} violated")


def _ieq(x, y) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return to_interval(x).overlaps(to_interval(y))


def norm_via_ostrowski(t: ConvergentTable, c: OstrowskiInt, b: OstrowskiReal,
                       bits: int | None = None) -> NormResult:
    bits = t.bits if bits is None else bits

    def run(bb: int) -> NormResult:
        return _via_ostrowski(t.refined(bb), c, b)

    return refine_until(run, bits, "digit route")


def _via_ostrowski(t: ConvergentTable, c: OstrowskiInt, b: OstrowskiReal) -> NormResult:
    d = delta_of(c, b)
    if d.degenerate:
        raise DegenerateError(c.n)
    m = d.m
    s = 1 if d.get(m) > 0 else -1
    T = d.known_to  # None: all digits known
    checks: list = []

    def e(k: int) -> int:
        # coefficient of |D_k| in |Sigma|
        return (-1) ** (k - m) * s * d.get(k)

    def tail(from_k: int):
        """sum_{k>=from_k} e_k |D_k|, exact if digits are all known."""
        if T is None:
            return _sum_D(t, [(e(k), k) for k, _ in d.delta if k >= from_k])
        acc = _sum_D(t, [(e(k), k) for k, _ in d.delta if from_k <= k < T])
        start = max(from_k, T)
        rad = to_interval(t.absD(start - 1) + t.absD(start)) if start >= 1 else Interval(2)
        return to_interval(acc) + Interval(-rad.hi, rad.hi)

    abs_sigma = tail(m)
    sigma = abs_sigma if s * (-1) ** m > 0 else -abs_sigma
    _check("abs_sigma_positive", lt(0, abs_sigma), checks)
    _check("abs_sigma_at_most_1", le(abs_sigma, 1), checks)
    # sign consistency on the known digits: sum delta D_k = sgn(delta_{m+1} D_m) sum e_k |D_k|
    signed = 0
    for k, dv in d.delta:
        if T is None or k < T:
            signed = signed + dv * t.D(k)
    unsigned = _sum_D(t, [(e(k), k) for k, _ in d.delta if T is None or k < T])
    _check("sign_consistency", _ieq(signed, s * (-1) ** m * unsigned), checks)

    one_minus = 1 - abs_sigma
    branch = "|S|" if le(abs_sigma, HALF) else "1-|S|"
    if branch == "|S|":
        value = abs_sigma
    else:
        if not lt(HALF, abs_sigma):
            raise Undecided("branch")
        value = one_minus

    # ell and the |Sigma| decomposition
    K = c.K
    ell = 1
    while d.get(m + 1 + ell) == (-1) ** ell * s * t.a(m + 2 + ell):
        ell += 1
    _check("ell_bound", ell <= max(2, K - m + 1), checks)
    for i in range(1, ell):
        _check("ell_pattern", d.get(m + 1 + i) == (-1) ** i * s * t.a(m + 2 + i), checks)
    dm1 = d.get(m)
    c1 = abs(dm1) - 1
    c2 = t.a(m + 2) - 1 - s * d.get(m + 1)
    c3 = t.a(m + 2 + ell) - (-1) ** ell * s * d.get(m + 1 + ell)
    term1 = c1 * t.absD(m)
    term2 = c2 * t.absD(m + 1)
    term3 = c3 * t.absD(m + 1 + ell)
    delta_explicit = (t.absD(m + ell + 1) + t.absD(m + ell + 2)) + tail(m + ell + 2)
    _check("three_term_identity", _ieq(term1 + term2 + term3 + delta_explicit, abs_sigma), checks)
    if m == 0:
        _check("range_delta1", 0 <= c1 <= t.a(1) - 2, checks)
    else:
        _check("range_deltam", 0 <= c1 <= t.a(m + 1) - 1, checks)
    _check("range_eta1", 0 <= c2 <= 2 * t.a(m + 2) - 1, checks)
    _check("range_eta2", 1 <= c3 <= 2 * t.a(m + 2 + ell), checks)
    eta_hi = 2 * t.absD(m + 1 + ell) + 2 * t.absD(m + 2 + ell)
    _check("range_eta", le(0, delta_explicit) and le(delta_explicit, eta_hi)
           and lt(eta_hi, 4 * t.absD(m + 1 + ell)), checks)

    # L and the 1 - |Sigma| decomposition
    L = 1
    while d.get(L) == (-1) ** (L + m) * s * t.a(L + 1):
        L += 1
    _check("L_bound", L <= K + 2, checks)
    c0t = t.a(1) - 1 - (-1) ** m * s * d.get(0)
    cLt = t.a(L + 1) - (-1) ** (L + m) * s * d.get(L)
    term0_t = c0t * t.absD(0)
    termL_t = cLt * t.absD(L)
    # sum_{k>=L+1} a_{k+1}|D_k| = |D_L| + |D_{L+1}|; the digit part is -sum e_k |D_k|
    tilde = (t.absD(L) + t.absD(L + 1)) - tail(L + 1)
    _check("tilde_identity", _ieq(term0_t + termL_t + tilde, one_minus), checks)
    _check("range_tilde_coefficients", 0 <= c0t <= 2 * t.a(1) - 2
           and 1 <= cLt <= 2 * t.a(L + 1), checks)
    _check("range_eta_tilde", le(0, tilde) and lt(tilde, 4 * t.absD(L)), checks)

    dec = SigmaDecomposition(m, sigma, abs_sigma, branch, ell, L, term1, term2, term3,
                             delta_explicit, term0_t, termL_t, tilde, tuple(checks))
    return NormResult(c.n, value, "ostrowski", dec)


def norm_digits(t: ConvergentTable, n: int, b: OstrowskiReal) -> NormResult:
    return norm_via_ostrowski(t, expand_int(t, n), b)


# --------------------------------------------------------- homogeneous

@dataclass(frozen=True)
class HomBounds:
    n: int
    m: int
    hypothesis_met: bool
    lower: object = None
    upper: object = None
    bracket_holds: bool | None = None
    status: str = ""


def hom_bounds(c: OstrowskiInt, t: ConvergentTable) -> HomBounds:
    """(c_{m+1}-1)|D_m| + (a_{m+2}-c_{m+2})|D_{m+1}| <= ||n alpha|| <= (c_{m+1}+1)|D_m| for m >= 2."""
    m = c.digits[0][0]
    direct = norm_direct(t, c.n)
    if m < 2:
        # the bracket needs m >= 2, which ||n alpha|| < |D_2| would force
        forced = refine_until(lambda bb: lt(direct.value, t.refined(bb).absD(2)), t.bits)
        if forced:
            raise IdentityError(f"n={c.n}: ||n alpha|| < |D_2| but m = {m}")
        return HomBounds(c.n, m, False, status="hypothesis-not-met")
    cm1, cm2 = c.digit(m), c.digit(m + 1)
    lower = (cm1 - 1) * t.absD(m) + (t.a(m + 2) - cm2) * t.absD(m + 1)
    upper = (cm1 + 1) * t.absD(m)

    def chk(bb):
        tt = t.refined(bb)
        lo = (cm1 - 1) * tt.absD(m) + (tt.a(m + 2) - cm2) * tt.absD(m + 1)
        hi = (cm1 + 1) * tt.absD(m)
        return le(lo, direct.value) and le(direct.value, hi)

    ok = refine_until(chk, t.bits)
    return HomBounds(c.n, m, True, lower, upper, ok, "pass" if ok else "fail")


def hom_formula_value(c: OstrowskiInt, t: ConvergentTable) -> NormResult:
    """sgn(D_m) * sum_{k>=m} c_{k+1} D_k when m >= 2 or (m = 1 and {alpha} < 1/2)."""
    m = c.digits[0][0]
    if m >= 2 or (m == 1 and lt(t.frac_alpha(), HALF)):
        v = 0
        for k, ck in c.digits:
            v = v + ck * t.D(k)
        sgn = 1 if m % 2 == 0 else -1
        return NormResult(c.n, v if sgn > 0 else -v, "ostrowski-homogeneous")
    d = norm_direct(t, c.n)
    return NormResult(c.n, d.value, "direct", None, False, ("digit-route-inapplicable",))


def inhom_upper(d: DeltaDigits, t: ConvergentTable):
    """(|delta_{m+1}| + 2)|D_m|, a strict upper bound for ||n alpha - gamma||."""
    if d.degenerate or d.m is None:
        raise DegenerateError(-1)
    return (abs(d.get(d.m)) + 2) * t.absD(d.m)


# --------------------------------------------------------------- batch

def batch_csv(t: ConvergentTable, ns, b: OstrowskiReal) -> str:
    from .report import fmt_down, fmt_up
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value_lo", "value_hi", "m", "branch", "ell_or_L"])
    for n in ns:
        r = norm_digits(t, n, b)
        dec = r.decomposition
        v = r.enclosure()
        w.writerow([n, fmt_down(v.lo), fmt_up(v.hi), dec.m, dec.branch,
                    dec.ell if dec.branch == "|S|" else dec.L])
    return buf.getvalue()
