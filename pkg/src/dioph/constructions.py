"""Explicit adversarial objects: Liouville-type streams, the shift gamma that keeps
R_N small along checkpoints, the shift that makes S_N spike, and the scanner
for hits of ||n alpha|| ||n beta|| < psi(n).
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .contfrac import ConvergentTable
from .errors import ConstructionError, DomainError, PrecisionError, ResourceError, Undecided
from .gamma import Gamma
from .ostrowski import validate_digits
from .psi import PsiSpec, block_upper_bounds
from .realnum import (ExplicitQuotients, Interval, RealSpec, dist_to_int, format_real,
                      is_exact, le, log_enclosure, lt, parse_real, precision_cap, refine_until,
                      to_interval)
from .report import BoundReport, Verdict, check_le, verdict
from .scan import fixed_setup, norm_chunk, CHUNK
from .sums import as_table, sweep

DEFAULT_BUDGET = 20000


# ------------------------------------------------------------ Liouville

RULES: dict[str, Callable[[int, int, list], int]] = {
    "qk": lambda k, q, hist: q,
    "qk^k": lambda k, q, hist: q ** k if k else 1,
    "one": lambda k, q, hist: 1,
}


def build_liouville_alpha(rule, depth: int, prefix: tuple = (), budget_bits: int = DEFAULT_BUDGET,
                          a0: int = 0) -> ExplicitQuotients:
    """Quotients a_1..a_depth: the given prefix, then a_{k+1} = rule(k, q_k, history).

    The result is a truncated stream: it stands for any irrational whose
    expansion starts this way.  Raises ResourceError once q_k would need more
    than ``budget_bits`` bits.
    """
    fn = RULES.get(rule) if isinstance(rule, str) else rule
    if fn is None:
        raise DomainError(f"unknown growth rule {rule!r}; known: {', '.join(RULES)}")
    if depth < 1:
        raise DomainError("depth must be positive")
    tail: list[int] = []
    q_prev, q = 0, 1  # q_{-1}, q_0
    for k in range(depth):
        a = prefix[k] if k < len(prefix) else fn(k, q, tail)
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"rule produced a_{k + 1} = {a!r}; quotients must be >= 1")
        tail.append(a)
        q_prev, q = q, a * q + q_prev
        if q.bit_length() > budget_bits:
            raise ResourceError(f"q_{k + 1} exceeds the 2^{budget_bits} budget at depth {k + 1}")
    return ExplicitQuotients(a0, tuple(tail), truncated=True)


def liouville_depth_within(rule, budget_bits: int = DEFAULT_BUDGET, prefix: tuple = (),
                           limit: int = 10000) -> int:
    """Largest depth for which the stream stays inside the budget."""
    fn = RULES.get(rule) if isinstance(rule, str) else rule
    q_prev, q = 0, 1
    hist: list[int] = []
    for k in range(limit):
        a = prefix[k] if k < len(prefix) else fn(k, q, hist)
        nq = a * q + q_prev
        if nq.bit_length() > budget_bits:
            return k
        hist.append(a)
        q_prev, q = q, nq
    return limit


# ------------------------------------------------------------------ T8

@dataclass
class T8Plan:
    alpha: str
    r: int
    K: list
    digits: tuple        # sparse ((k, b_{k+1}), ...) for k < depth
    depth: int
    gamma: Gamma
    checkpoints: list    # N_i = floor(a_{K_i+1}/4) q_{K_i}
    valid: bool


# A stream within the default budget with three checkpoints a_{K+1} >= 8:
# the prefix, then a_{k+1} = q_k^k.  [0; 3, ...] keeps {alpha} below 1/3.
T8_DEFAULT_PREFIX = (3, 2, 8, 2, 30, 2, 200, 2)
T8_DEFAULT_K = (2, 4, 6)


def t8_default_alpha(budget_bits: int = DEFAULT_BUDGET) -> ExplicitQuotients:
    d = liouville_depth_within("qk^k", budget_bits, T8_DEFAULT_PREFIX)
    return build_liouville_alpha("qk^k", d, T8_DEFAULT_PREFIX, budget_bits)


def t8_digit(a: int, at_checkpoint: bool) -> int:
    if at_checkpoint:
        return -(-a // 2)
    if a in (1, 2):
        return 0
    return 1


def adversarial_gamma_T8(x, K_indices: list, depth: int | None = None, r: int = 1,
                         tail_bits: int = 400) -> T8Plan:
    """gamma = sum b_{k+1} D_k with the checkpoint digit rule, truncated at ``depth``.

    ``r`` records the multiplier the caller used to bring {alpha} below 1/3.
    """
    t = as_table(x)
    Ks = sorted(set(int(k) for k in K_indices))
    if not Ks:
        raise ConstructionError("no checkpoint indices given")
    if Ks[0] <= 1:
        raise ConstructionError(f"checkpoint index K_1 = {Ks[0]} must exceed 1")
    if not lt(t.frac_alpha(), Fraction(1, 3)):
        raise ConstructionError("{alpha} must be below 1/3; replace alpha by {r alpha} first")
    L = t.finite_length
    if depth is None:
        # shortest truncation whose neglected tail is below 2^-tail_bits
        depth = Ks[-1] + 2
        while t.q(depth).bit_length() <= tail_bits:
            depth += 1
            if L is not None and depth > L - 1:
                raise ConstructionError(f"stream too short for a 2^-{tail_bits} tail")
    if depth <= Ks[-1] + 1:
        raise ConstructionError(f"depth {depth} does not reach past K = {Ks[-1]}")
    for K in Ks:
        if t.a(K + 1) < 8:
            raise ConstructionError(f"a_{K + 1} = {t.a(K + 1)} < 8 at checkpoint index K = {K}")
    kset = set(Ks)
    digits = []
    for k in range(depth):
        b = t8_digit(t.a(k + 1), k in kset)
        if b:
            digits.append((k, b))
    v = validate_digits(digits, t)
    U = sum(b * t.q(k) for k, b in digits)
    V = sum(b * t.p(k) for k, b in digits)
    rho = Fraction(2, t.q(depth))
    g = Gamma.linear(U, -V, rho, label=f"T8[{','.join(map(str, Ks))}]")
    Ns = [(t.a(K + 1) // 4) * t.q(K) for K in Ks]
    return T8Plan(format_real(t.spec), r, Ks, tuple(digits), depth, g, Ns, v.valid)


def t8_decay(plan: T8Plan, x, precision: int = 48, max_N: int = 2 * 10 ** 6) -> BoundReport:
    """R_{N_i}(alpha, gamma) / (N_i log N_i) along the checkpoints, and whether it strictly decreases."""
    t = as_table(x)
    Ns = [N for N in plan.checkpoints if N <= max_N]
    rep = BoundReport("T8_decay")
    rep.values["checkpoints"] = plan.checkpoints
    rep.values["reachable"] = len(Ns)
    if not Ns:
        rep.add(Verdict("decreasing", "hypothesis-not-met", {"reason": "no checkpoint within budget"}))
        return rep
    sw = sweep(t, plan.gamma, Ns[-1], precision, checkpoints=Ns)
    ratios = []
    for N in Ns:
        R = sw.R_at(N)
        ratios.append(R / (N * log_enclosure(N, precision + 16)))
    rep.values["ratios"] = ratios
    dec = all(ratios[i + 1].hi < ratios[i].lo for i in range(len(ratios) - 1))
    rep.add(verdict("digits_valid", plan.valid))
    rep.add(verdict("decreasing", dec and len(Ns) >= 2, count=len(Ns)))
    return rep


# ------------------------------------------------------------------ T5

@dataclass(frozen=True)
class Growth:
    """f(N) = N^theta (theta < 1) or f(N) = log N."""
    kind: str = "power"
    theta: Fraction = Fraction(1, 2)

    def describe(self) -> str:
        if self.kind == "log":
            return "log"
        return "sqrt" if self.theta == Fraction(1, 2) else f"N^{self.theta}"

    def interval(self, N: int, bits: int = 96) -> Interval:
        if self.kind == "log":
            return log_enclosure(N, bits)
        from .realnum import iv_eval
        th = self.theta
        return iv_eval(lambda m, x: x ** (m.mpf(th.numerator) / th.denominator), N, bits=bits)

    def quotient_at_least(self, q: int, target) -> bool:
        """Certified q / f(q) >= target."""
        target = Fraction(target)
        if self.kind == "power":
            r, s = self.theta.numerator, self.theta.denominator
            return q ** (s - r) * target.denominator ** s >= target.numerator ** s
        return refine_until(lambda b: _ge_or_undecided(Fraction(q) / log_enclosure(q, b), target),
                            96, "growth comparison")


def _ge_or_undecided(v: Interval, target: Fraction) -> bool:
    if v.lo >= target:
        return True
    if v.hi < target:
        return False
    raise Undecided("growth comparison")


def parse_growth(text: str) -> Growth:
    s = text.strip()
    if s in ("sqrt", "sqrt(N)", "N^1/2"):
        return Growth("power", Fraction(1, 2))
    if s in ("log", "log(N)"):
        return Growth("log")
    m = re.fullmatch(r"N\^\(?([0-9]+/[0-9]+|0?\.[0-9]+)\)?", s)
    if m:
        th = Fraction(m.group(1))
        if not 0 < th < 1:
            raise DomainError("growth exponent must lie in (0, 1) so that f(N) = o(N)")
        return Growth("power", th)
    from .errors import ParseError
    raise ParseError("growth function must be sqrt, log or N^p/q", text)


@dataclass
class SpikeGammaPlan:
    alpha: str
    f: str
    eps_bits: tuple
    k: list              # k_1, ..., k_{count+extra}
    count: int
    n: list              # n_i = q_{k_1} + ... + q_{k_i}
    gamma: Gamma
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(v.failed for v in self.checks)


def _eps(eps_bits, i: int) -> int:
    return eps_bits[(i - 1) % len(eps_bits)]


def adversarial_gamma_T5(x, f: Growth, eps_bits, count: int, tail_bits: int = 400,
                         search_limit: int = 20000) -> SpikeGammaPlan:
    """Greedy-minimal k_1 < k_2 < ... and gamma = sum D_{k_i}.

    At least count+1 indices are built so that ||n_i alpha - gamma|| is known
    for i <= count; more are added until the neglected tail is below
    2**-tail_bits.
    """
    t = as_table(x)
    if count < 1:
        raise DomainError("count must be positive")
    eps_bits = tuple(int(b) for b in eps_bits)
    if not eps_bits or any(b not in (0, 1) for b in eps_bits):
        raise DomainError("eps_bits must be a non-empty 0/1 sequence")
    a = t.frac_alpha()
    m = a if lt(a, 1 - a) else 1 - a
    k1 = 1
    while not lt(t.absD(k1 - 1) + t.absD(k1), m):
        k1 += 1
        if k1 > search_limit:
            raise ResourceError("no k_1 found")
    ks = [k1]
    checks: list = []

    def build_next():
        i = len(ks)
        kn = ks[-1] + 5
        if (kn - ks[-1]) % 2 != _eps(eps_bits, i):
            kn += 1
        while True:
            if kn - ks[-1] > search_limit:
                raise ResourceError(f"k_{i + 1} not found within the search limit; is f(N) = o(N)?")
            q = t.q(kn + 1)
            ok1 = f.quotient_at_least(q, (i + 1) * t.q(ks[-1] + 1))
            ok2 = True
            if i >= 2:
                # q_{k_i+1}/q_{k_{i-1}+1} <= q_{k_{i+1}+1}/q_{k_i+1}
                ok2 = t.q(ks[-1] + 1) ** 2 <= q * t.q(ks[-2] + 1)
            if ok1 and ok2:
                ks.append(kn)
                return
            kn += 2

    while len(ks) < count + 1:
        build_next()
    while Fraction(2, t.q(ks[-1] + 5)) >= Fraction(1, 1 << tail_bits):
        build_next()
    U = sum(t.q(k) for k in ks)
    V = sum(t.p(k) for k in ks)
    rho = Fraction(2, t.q(ks[-1] + 5))
    g = Gamma.linear(U, -V, rho, label="T5")
    ns = []
    acc = 0
    for k in ks[:count]:
        acc += t.q(k)
        ns.append(acc)
    # invariants, rechecked independently of the search
    checks.append(verdict("c1+", lt(t.absD(ks[0] - 1) + t.absD(ks[0]), m)))
    for i in range(1, len(ks)):
        checks.append(verdict(f"cc2[{i}]", ks[i] >= ks[i - 1] + 5))
        checks.append(verdict(f"cc3[{i}]", (ks[i] - ks[i - 1]) % 2 == _eps(eps_bits, i)))
        checks.append(verdict(f"psieqn1[{i}]",
                              f.quotient_at_least(t.q(ks[i] + 1), (i + 1) * t.q(ks[i - 1] + 1))))
        if i >= 2:
            checks.append(verdict(f"psieqn2[{i}]",
                                  t.q(ks[i - 1] + 1) ** 2 <= t.q(ks[i] + 1) * t.q(ks[i - 2] + 1)))
    # |gamma| <= |D_{k_1 - 1}| + |D_{k_1}| < min{alpha, 1 - alpha}
    checks.append(verdict("gamma_range", lt(t.absD(ks[0] - 1) + t.absD(ks[0]), m)))
    return SpikeGammaPlan(format_real(t.spec), f.describe(), eps_bits, ks, count, ns, g, checks)


def _term_S(t: ConvergentTable, g: Gamma, n: int, bits: int = 128) -> Interval:
    from .normeval import norm_direct
    r = norm_direct(t, n, g, bits)
    return 1 / (n * r.enclosure(bits + 8))


def spike_report(plan: SpikeGammaPlan, x, brute_limit: int = 200000, precision: int = 48
                 ) -> BoundReport:
    """S_{n_i} - max_{n <= n_i} 1/(n ||n alpha - gamma||) against i f(q_{k_i+1}).

    Small n_i are summed outright.  Beyond ``brute_limit`` the quantity is
    bounded below by the smaller of the terms at n_{i-1} and n_i (S minus its
    largest term is at least any second term), which needs i >= 2.
    """
    t = as_table(x)
    f = parse_growth(plan.f) if isinstance(plan.f, str) else plan.f
    rep = BoundReport("T5_spike")
    rows = []
    for i in range(1, plan.count + 1):
        n_i = plan.n[i - 1]
        target = i * f.interval(t.q(plan.k[i - 1] + 1))
        if n_i <= brute_limit:
            sw = sweep(t, plan.gamma, n_i, precision, keep_terms=n_i)
            mx_lo = max(a // n for n, (a, _) in enumerate(sw.terms, 1))
            mx_hi = max(-((-b) // n) for n, (_, b) in enumerate(sw.terms, 1))
            d = 1 << sw.Q
            spike = Interval(Fraction(sw.S_lo - mx_hi, d), Fraction(sw.S_hi - mx_lo, d))
            method = "summed"
        elif i >= 2:
            t1 = _term_S(t, plan.gamma, plan.n[i - 2])
            t2 = _term_S(t, plan.gamma, n_i)
            spike = Interval(min(t1.lo, t2.lo), max(t1.hi, t2.hi))
            method = "two-term lower bound"
        else:
            raise ResourceError("n_1 beyond the brute-force limit")
        v = verdict(f"spike[{i}]", spike.lo > target.hi, method=method)
        rep.add(v)
        rows.append({"i": i, "n_i": n_i, "k_i": plan.k[i - 1], "spike_lower": spike.lo,
                     "target": target, "method": method})
    rep.values["rows"] = rows
    return rep


def plan_json(plan) -> str:
    from .report import dumps
    return dumps({"plan": plan})


# --------------------------------------------------------- fiber scan

@dataclass
class Hit:
    n: int
    product_hi: Fraction
    psi_lo: Fraction
    trivial: bool = False


@dataclass
class HitRecord:
    beta: str
    hits: list
    complete: bool = True


def _parse_beta(b):
    if isinstance(b, (Fraction, int)):
        return Fraction(b), str(Fraction(b))
    if isinstance(b, str):
        try:
            return Fraction(b), b
        except (ValueError, ZeroDivisionError):
            b = parse_real(b)
    from .realnum import exact_value
    ex = exact_value(b)
    if isinstance(ex, Fraction):
        return ex, format_real(b)
    return b, format_real(b)


def _decide_hit(ta: ConvergentTable, beta, n: int, psi: PsiSpec, label: str) -> Hit | None:
    """Exact decision of ||n alpha|| ||n beta|| < psi(n) for one n."""
    def run(bits: int):
        na = dist_to_int(n * ta.alpha_interval(bits + n.bit_length() + 4))
        if isinstance(beta, Fraction):
            nb = dist_to_int(n * beta)
        else:
            nb = dist_to_int(n * beta.alpha_interval(bits + n.bit_length() + 4))
        if not isinstance(nb, Interval) and nb == 0:
            return Hit(n, Fraction(0), psi.interval(n, bits).lo, True) if not psi.is_zero else None
        prod = to_interval(na) * to_interval(nb)
        p = psi.interval(n, bits) if not psi.is_zero else Interval(0, 0)
        if prod.hi < p.lo:
            return Hit(n, prod.hi, p.lo)
        if prod.lo >= p.hi:
            return None
        raise Undecided("product against psi")
    try:
        return refine_until(run, 96, f"hit test at beta={label}, n={n}")
    except PrecisionError as exc:
        raise PrecisionError(f"beta={label}, n={n}: {exc}", exc.bits) from None


def fiber_hit_scan(x, psi: PsiSpec, betas: list, N: int, P: int = 96) -> list[HitRecord]:
    """For each beta, every n <= N with ||n alpha|| ||n beta|| < psi(n), each certified.

    Candidates are screened with fixed-point lower bounds against a block-wise
    upper bound of psi (psi decreasing); anything not excluded is decided
    individually.
    """
    ta = as_table(x)
    if psi.is_zero:
        return [HitRecord(_parse_beta(b)[1], [], True) for b in betas]
    if not psi.decreasing:
        raise DomainError("fiber scan needs a decreasing psi")
    fa = fixed_setup(ta, None, P)
    a_lo: list[int] = []
    for n0 in range(1, N + 1, CHUNK):
        lo, _, sp = norm_chunk(fa, n0, min(n0 + CHUNK, N + 1))
        a_lo.extend(lo)
    # psi upper bounds scaled by 2**(2P)
    S = 2 * P
    pub = [0] * (N + 1)
    for n0, n1, hi in block_upper_bounds(psi, N):
        v = -((-(hi.numerator << S)) // hi.denominator)
        for n in range(n0, n1):
            pub[n] = v
    out = []
    for b in betas:
        beta, label = _parse_beta(b)
        hits = []
        if isinstance(beta, Fraction):
            num, den = beta.numerator, beta.denominator
            scale = 1 << P
            for n in range(1, N + 1):
                r = (n * num) % den
                d = min(r, den - r)
                # ||n beta|| = d / den exactly
                if a_lo[n - 1] * d * scale >= pub[n] * den:
                    continue
                h = _decide_hit(ta, beta, n, psi, label)
                if h is not None:
                    hits.append(h)
        else:
            tb = as_table(beta)
            fb = fixed_setup(tb, None, P)
            for n0 in range(1, N + 1, CHUNK):
                blo, _, _ = norm_chunk(fb, n0, min(n0 + CHUNK, N + 1))
                for i, bl in enumerate(blo):
                    n = n0 + i
                    if a_lo[n - 1] * bl >= pub[n]:
                        continue
                    h = _decide_hit(ta, tb, n, psi, label)
                    if h is not None:
                        hits.append(h)
        out.append(HitRecord(label, hits, True))
    return out


HIT_COLUMNS = ["beta", "n", "product_hi", "psi_n_lo"]


def hits_csv(records: list[HitRecord]) -> str:
    from .report import fmt_down, fmt_up
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HIT_COLUMNS)
    for rec in records:
        for h in rec.hits:
            w.writerow([rec.beta, h.n, fmt_up(h.product_hi), fmt_down(h.psi_lo)])
    return buf.getvalue()
