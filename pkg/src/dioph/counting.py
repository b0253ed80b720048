"""Counting n <= N with ||n alpha - gamma|| < eps, and the two-sided bounds on the count."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import ConvergentTable
from .errors import DomainError, Undecided
from .gamma import Gamma
from .realnum import Interval, dist_to_int, is_exact, lt, refine_until
from .report import NOT_MET, Verdict, verdict
from .scan import fixed_setup, norm_bounds
from .sums import as_gamma, as_table


def _member_exact(t: ConvergentTable, g: Gamma, n: int, eps: Fraction, bits: int = 96) -> bool:
    def run(b: int) -> bool:
        v = dist_to_int(g.minus_n_alpha(t, n, b))
        if is_exact(v):
            return v < eps
        if v.hi < eps:
            return True
        if v.lo >= eps:
            return False
        raise Undecided(f"||n alpha - gamma|| against eps at n={n}")
    return refine_until(run, bits, f"membership of n={n}")


class NormCache:
    """Fixed-point enclosures of ||n alpha - gamma|| for n <= N_max, reused across eps and N."""

    def __init__(self, x, gamma=None, N_max: int = 1, P: int | None = None, threads: int = 1):
        self.t = as_table(x)
        self.g = as_gamma(gamma, self.t)
        self.N_max = N_max
        self.P = P or 3 * N_max.bit_length() + 96
        fs = fixed_setup(self.t, self.g, self.P)
        self.lo: list[int] = []
        self.hi: list[int] = []
        self.special: set = set()
        for _, lo, hi, sp in norm_bounds(fs, 1, N_max + 1, threads):
            self.lo.extend(lo)
            self.hi.extend(hi)
            self.special.update(sp)

    def member(self, n: int, eps: Fraction) -> bool:
        if n not in self.special:
            lo, hi = self.lo[n - 1], self.hi[n - 1]
            scaled = eps.numerator << self.P
            if hi * eps.denominator < scaled:
                return True
            if lo * eps.denominator >= scaled:
                return False
        return _member_exact(self.t, self.g, n, eps)

    def members(self, eps, N: int) -> list[int]:
        eps = Fraction(eps)
        if N > self.N_max:
            raise DomainError(f"cache holds n <= {self.N_max}, asked for N={N}")
        if eps <= 0:
            return []
        return [n for n in range(1, N + 1) if self.member(n, eps)]

    def count(self, eps, N: int) -> int:
        return len(self.members(eps, N))


@dataclass
class CountReport:
    alpha: str
    gamma: str
    eps: Fraction
    N: int
    count: int
    flags: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(v.failed for v in self.verdicts)


def _norm_q2(t: ConvergentTable):
    return t.absD(2)


def count_hom(x, eps, N: int, cache: NormCache | None = None) -> CountReport:
    """#N(alpha, eps) by certified brute force, with every applicable bound checked."""
    eps = Fraction(eps)
    if eps <= 0 or N < 1:
        raise DomainError("need eps > 0 and N >= 1")
    if cache is None or not cache.g.is_zero:
        cache = NormCache(x, None, N)
    t = cache.t
    from .realnum import format_real
    c = cache.count(eps, N)
    rep = CountReport(format_real(t.spec), "0", eps, N, c)
    K = t.K_of(N)
    qK, qK1 = t.q(K), t.q(K + 1)
    d2 = _norm_q2(t)
    h_small = lt(2 * eps, d2)
    ghj = [l for l in range(0, K + 1) if 2 * eps * t.q(l) >= 1]
    rep.flags.update({"2eps<||q2 alpha||": h_small, "ghj": bool(ghj),
                      "ghj_l": ghj[0] if ghj else None, "1/N<2eps": 2 * eps * N > 1,
                      "K": K})
    floor_eN = (eps * N).__floor__()
    rep.bounds.update({"floor(eps N)": floor_eN, "32 eps N": 32 * eps * N})
    if eps * N >= 1:
        rep.verdicts.append(verdict("vbf", floor_eN <= c))
    else:
        rep.verdicts.append(Verdict("vbf", NOT_MET, {"reason": "eps N < 1"}))
    if h_small and ghj:
        rep.verdicts.append(verdict("vbe_lower", floor_eN <= c))
        rep.verdicts.append(verdict("vbe_upper", c <= 32 * eps * N))
    else:
        rep.verdicts.append(Verdict("vbe", NOT_MET,
                                    {"2eps<||q2 alpha||": h_small, "ghj": bool(ghj)}))
    vbm = min((eps * qK1).__floor__(), N // qK)
    rep.bounds["vbm"] = vbm
    rep.verdicts.append(verdict("vbm", vbm <= c))
    M1 = max(eps * N, min(eps * qK1, Fraction(N, 2 * qK)))
    M = min(eps * qK1, max(eps * N, Fraction(N, 2 * qK)))
    rep.bounds.update({"M": M, "floor(M)": M.__floor__(), "32M": 32 * M})
    if 2 * eps * N > 1 and h_small:
        rep.verdicts.append(verdict("M_minmax", M1 == M))
        rep.verdicts.append(verdict("vbp_lower", M.__floor__() <= c))
        rep.verdicts.append(verdict("vbp_upper", c <= 32 * M))
    else:
        rep.verdicts.append(Verdict("vbp", NOT_MET, {"1/N<2eps": 2 * eps * N > 1,
                                                     "2eps<||q2 alpha||": h_small}))
    return rep


def count_inhom(x, gamma, eps, N: int, cache: NormCache | None = None,
                hom_cache: NormCache | None = None) -> CountReport:
    """#N_gamma(alpha, eps) with both transfer inequalities to the homogeneous counts."""
    eps = Fraction(eps)
    if eps <= 0 or N < 1:
        raise DomainError("need eps > 0 and N >= 1")
    if cache is None:
        cache = NormCache(x, gamma, N)
    t = cache.t
    if hom_cache is None:
        hom_cache = cache if cache.g.is_zero else NormCache(t, None, N)
    from .realnum import format_real
    c = cache.count(eps, N)
    rep = CountReport(format_real(t.spec), cache.g.describe() if not cache.g.is_zero else "0",
                      eps, N, c)
    h2 = hom_cache.count(2 * eps, N)
    Nh, eh = N // 2, eps / 2
    inh_half = cache.count(eh, Nh) if Nh >= 1 else 0
    hom_half = hom_cache.count(eh, Nh) if Nh >= 1 else 0
    rep.bounds.update({"#N(alpha,2eps)+1": h2 + 1, "#N'(alpha,eps')+1": hom_half + 1,
                       "#N'_gamma(alpha,eps')": inh_half})
    rep.verdicts.append(verdict("vbv1", c <= h2 + 1))
    rep.flags["N'_gamma nonempty"] = inh_half > 0
    if inh_half > 0:
        rep.verdicts.append(verdict("vbv2", c >= hom_half + 1))
    else:
        rep.verdicts.append(Verdict("vbv2", NOT_MET, {"reason": "N'_gamma(alpha, eps/2) is empty"}))
    return rep
