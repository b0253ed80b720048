"""Command line front end.

Every command writes one report (JSON with ``"schema": 1`` or CSV) and exits
0 when all verdicts pass, 1 when some bound verdict fails (the report is
still written) and 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import __version__
from .errors import DepthError, DiophError
from .report import FAIL, NOT_MET, PASS, BoundReport, Verdict, dumps, to_jsonable, verdict

CSV_HELP = {
    "cf": "k,a_k,p_k,q_k,sign_Dk,absDk_lo,absDk_hi,A_k",
    "norm": "n,value_lo,value_hi",
    "gaps": "n,gap_to_next,case",
    "count": "eps,N,count,floor_eps_N,32_eps_N",
    "sum": "N,R_lo,R_hi,S_lo,S_hi",
    "psi-sum": "M,kappa_lo,kappa_hi",
    "liouville": "k,a_k,log2_q_k,ratio_lo,ratio_hi",
    "fiber-scan": "beta,n,product_hi,psi_n_lo",
}


def _fr(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int(text: str) -> int:
    try:
        return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _ints(text: str) -> list[int]:
    return [_int(x) for x in text.split(",") if x.strip()]


# ------------------------------------------------------------------ commands
# Each returns (payload, verdicts, csv_text_or_None).

def cmd_cf(a):
    from .contfrac import approx_exponent, certify_relations, export_csv, table_records
    from .sums import as_table
    t = as_table(_alpha(a.alpha))
    depth = a.depth if a.depth is not None else 10
    t.extend(depth + 2)
    rel = certify_relations(t, depth)
    bad = sorted({(r.name, r.k) for r in rel if not r.ok})
    vs = [verdict("relations", not bad, checked=len(rel), failures=[list(b) for b in bad[:20]])]
    payload = {"command": "cf", "alpha": a.alpha, "depth": depth,
               "rows": table_records(t, depth)}
    if depth >= 3:
        ex = approx_exponent(t, depth)
        payload["exponent"] = {"running_max": ex.running_max, "last": ex.last}
    return payload, vs, export_csv(t, depth)


def cmd_ostrowski(a):
    from .gamma import parse_gamma
    from .ostrowski import expand_int, expand_real, reconstruct_int, validate_digits
    from .sums import as_gamma, as_table
    t = as_table(_alpha(a.alpha))
    payload = {"command": "ostrowski", "alpha": a.alpha}
    vs = []
    if a.n is not None:
        d = expand_int(t, a.n)
        v = validate_digits(d.digits, t)
        payload.update({"n": a.n, "digits": [list(x) for x in d.digits]})
        vs.append(verdict("admissible", v.valid))
        vs.append(verdict("roundtrip", reconstruct_int(d, t) == a.n))
    if a.gamma is not None:
        depth = a.depth if a.depth is not None else 20
        g = as_gamma(parse_gamma(a.gamma), t)
        b = expand_real(t, g, depth, a.precision)
        payload.update({"gamma": g.describe(), "gamma_digits": [list(x) for x in b.digits],
                        "depth": b.depth, "shift": b.shift, "terminated": b.terminated})
        vs.append(verdict("admissible_gamma", validate_digits(b.digits, t).valid))
    if a.n is None and a.gamma is None:
        raise DiophError("ostrowski needs --n or --gamma")
    return payload, vs, None


def cmd_norm(a):
    from .gamma import parse_gamma
    from .normeval import norm_direct, norm_via_ostrowski
    from .ostrowski import expand_int, expand_real
    from .report import fmt_down, fmt_up
    from .sums import as_gamma, as_table
    t = as_table(_alpha(a.alpha))
    g = as_gamma(parse_gamma(a.gamma), t)
    ns = [a.n] if a.n is not None else list(range(1, _need(a, "N") + 1))
    rows = []
    vs = []
    b = None
    depth = a.depth if a.depth is not None else t.ensure_q_above(max(ns), extra=2) + 4
    if not g.is_zero and g.rho == 0:
        b = expand_real(t, g, depth, a.precision)
    lines = ["n,value_lo,value_hi"]
    agree = True
    for n in ns:
        r = norm_direct(t, n, g, a.precision)
        row = {"n": n, "direct": r.value, "degenerate": r.degenerate}
        if b is not None and not r.degenerate:
            while True:
                try:
                    s = norm_via_ostrowski(t, expand_int(t, n), b, a.precision)
                    if (b.terminated or a.depth is not None or b.depth > 4096
                            or s.enclosure().width <= Fraction(1, 1 << a.precision)):
                        break
                    b = expand_real(t, g, 2 * b.depth, a.precision)
                except DepthError:
                    # digits of n and gamma agree further than expanded
                    if a.depth is not None or b.depth > 4096:
                        raise
                    b = expand_real(t, g, 2 * b.depth, a.precision)
            row["digit_route"] = s.value
            agree &= r.enclosure().overlaps(s.enclosure())
        rows.append(row)
        e = r.enclosure(a.precision + 8)
        lines.append(f"{n},{fmt_down(e.lo)},{fmt_up(e.hi)}")
    if b is not None:
        vs.append(verdict("routes_agree", agree))
    payload = {"command": "norm", "alpha": a.alpha, "gamma": g.describe() if not g.is_zero
               else "0", "precision": a.precision, "rows": rows}
    return payload, vs, "\n".join(lines) + "\n"


def cmd_gaps(a):
    from .gapsets import (count_bounds, enumerate_cases, harmonic_sum_A, parse_prefix,
                          verify_gaps)
    from .sums import as_table
    t = as_table(_alpha(a.alpha))
    N = _need(a, "N")
    if not a.prefix:
        raise DiophError("gaps needs --prefix d1,...,d_{m+1}")
    pre = parse_prefix(a.prefix)
    rows = enumerate_cases(pre, t, N)
    members = [n for n, _ in rows]
    g = verify_gaps(members, pre, t)
    cb = count_bounds(members, pre, t, N)
    vs = [verdict("gap_rules", g.ok, violations=g.violations[:20])] + cb.verdicts
    payload = {"command": "gaps", "alpha": a.alpha, "prefix": list(pre.digits), "N": N,
               "n_prime": pre.n_prime(t), "count": g.count, "case": g.case,
               "alphabet": list(g.alphabet), "gaps": g.gaps, "bounds": cb.values}
    if N >= 3:
        h = harmonic_sum_A(members, pre.n_prime(t), N, t, pre.m)
        vs += h.verdicts
        payload["harmonic"] = h.values
    lines = ["n,gap_to_next,case"]
    for i, (n, case) in enumerate(rows):
        nxt = rows[i + 1][0] - n if i + 1 < len(rows) else ""
        lines.append(f"{n},{nxt},{'' if case is None else case}")
    return payload, vs, "\n".join(lines) + "\n"


def cmd_count(a):
    from .counting import NormCache, count_hom, count_inhom
    from .gamma import parse_gamma
    from .sums import as_gamma, as_table
    t = as_table(_alpha(a.alpha))
    N = _need(a, "N")
    eps = _need(a, "eps")
    g = as_gamma(parse_gamma(a.gamma), t)
    hom = NormCache(t, None, N, threads=a.threads)
    if g.is_zero:
        rep = count_hom(t, eps, N, hom)
    else:
        rep = count_inhom(t, g, eps, N, NormCache(t, g, N, threads=a.threads), hom)
    payload = {"command": "count", "report": rep}
    csv = (f"eps,N,count,floor_eps_N,32_eps_N\n{eps},{N},{rep.count},"
           f"{(eps * N).__floor__()},{32 * eps * N}\n")
    return payload, rep.verdicts, csv


def cmd_sum(a):
    from .gamma import parse_gamma
    from .report import fmt_down, fmt_up
    from .sums import as_gamma, as_table, check_T1, sweep
    t = as_table(_alpha(a.alpha))
    N = _need(a, "N")
    g = as_gamma(parse_gamma(a.gamma), t)
    grid = _log_grid(N)
    sw = sweep(t, g, N, a.precision, checkpoints=grid, threads=a.threads)
    payload = {"command": "sum", "alpha": a.alpha,
               "gamma": "0" if g.is_zero else g.describe(), "N": N,
               "precision": a.precision, "fixed_point_bits": sw.P, "R": sw.R, "S": sw.S}
    vs = []
    if g.is_zero and N >= 100:
        rep = check_T1(t, N, sw.S)
        payload["T1"] = {"values": rep.values, "flags": rep.flags}
        vs += rep.verdicts
    lines = ["N,R_lo,R_hi,S_lo,S_hi"]
    for M in grid:
        R, S = sw.R_at(M), sw.S_at(M)
        lines.append(f"{M},{fmt_down(R.lo)},{fmt_up(R.hi)},{fmt_down(S.lo)},{fmt_up(S.hi)}")
    return payload, vs, "\n".join(lines) + "\n"


def cmd_split(a):
    from .sums import split_R
    rep = split_R(_alpha(a.alpha), _need(a, "N"), a.precision, threads=a.threads)
    return {"command": "split", "alpha": a.alpha, "report": rep}, rep.verdicts, None


def cmd_trim(a):
    from .sums import trimmed_R
    c = a.c if a.c is not None else Fraction(1)
    rep = trimmed_R(_alpha(a.alpha), _need(a, "N"), c, a.precision)
    return {"command": "trim", "alpha": a.alpha, "c": c, "report": rep}, rep.verdicts, None


def cmd_linforms(a):
    from .sums import linear_forms_sum
    A = [_alpha(s) for s in (a.A or a.alpha).split(";") if s.strip()]
    T = _ints(a.T) if a.T else [_need(a, "N")] * len(A)
    gamma = Fraction(a.gamma) if a.gamma not in (None, "") else Fraction(0)
    rep = linear_forms_sum(A, T, a.L, gamma, a.theorem, a.precision)
    return {"command": "linforms", "A": A, "report": rep}, [rep.verdict], None


def cmd_psi_sum(a):
    from .gamma import parse_gamma
    from .psi import parse_psi
    from .report import fmt_down, fmt_up
    from .sums import as_gamma, as_table, psi_transfer_sums
    t = as_table(_alpha(a.alpha))
    N = _need(a, "N")
    g = as_gamma(parse_gamma(a.gamma), t)
    psi = parse_psi(a.psi or "1/n")
    grid = [M for M in _log_grid(N) if M >= 2]
    rep = psi_transfer_sums(t, g, psi, N, a.precision, trend=grid)
    lines = ["M,kappa_lo,kappa_hi"]
    for M, k in rep.kappa.items():
        lines.append(f"{M},{fmt_down(k.lo)},{fmt_up(k.hi)}")
    payload = {"command": "psi-sum", "alpha": a.alpha, "precision": a.precision, "report": rep}
    return payload, rep.verdicts, "\n".join(lines) + "\n"


def cmd_construct_t5(a):
    from .constructions import adversarial_gamma_T5, parse_growth, spike_report
    from .sums import as_table
    t = as_table(_alpha(a.alpha))
    plan = adversarial_gamma_T5(t, parse_growth(a.growth), _ints(a.eps_bits), a.count)
    sp = spike_report(plan, t, precision=a.precision)
    payload = {"command": "construct-t5", "plan": _plan_view(plan), "spikes": sp.values}
    return payload, plan.checks + sp.verdicts, None


def cmd_construct_t8(a):
    from .constructions import (T8_DEFAULT_K, adversarial_gamma_T8, t8_decay,
                                t8_default_alpha)
    from .sums import as_table
    if a.alpha is None:
        t = as_table(t8_default_alpha())
        Ks = _ints(a.K) if a.K else list(T8_DEFAULT_K)
    elif a.K:
        t = as_table(_alpha(a.alpha))
        Ks = _ints(a.K)
    else:
        raise DiophError("construct-t8 with --alpha needs --K")
    plan = adversarial_gamma_T8(t, Ks, a.depth)
    rep = t8_decay(plan, t, a.precision)
    payload = {"command": "construct-t8", "plan": _plan_view(plan), "decay": rep.values}
    return payload, rep.verdicts, None


def cmd_liouville(a):
    from .constructions import DEFAULT_BUDGET, build_liouville_alpha, liouville_depth_within
    from .contfrac import approx_exponent
    from .realnum import format_real
    from .report import fmt_down, fmt_up
    from .sums import as_table
    budget = a.budget or DEFAULT_BUDGET
    prefix = tuple(_ints(a.prefix)) if a.prefix else ()
    limit = liouville_depth_within(a.rule, budget, prefix)
    depth = min(a.depth, limit) if a.depth is not None else limit
    x = build_liouville_alpha(a.rule, depth, prefix, budget)
    t = as_table(x)
    ex = approx_exponent(t, depth - 1) if depth >= 4 else None
    payload = {"command": "liouville", "rule": a.rule, "budget_bits": budget,
               "depth": depth, "depth_limit": limit, "alpha": format_real(x),
               "log2_q": [t.q(k).bit_length() for k in range(depth + 1)]}
    lines = ["k,a_k,log2_q_k,ratio_lo,ratio_hi"]
    ratios = dict(ex.ratios) if ex else {}
    for k in range(1, depth + 1):
        r = ratios.get(k)
        lines.append(f"{k},{_short(t.a(k))},{t.q(k).bit_length()},"
                     f"{fmt_down(r.lo) if r else ''},{fmt_up(r.hi) if r else ''}")
    if ex:
        payload["exponent"] = {"running_max": ex.running_max, "last": ex.last}
    return payload, [], "\n".join(lines) + "\n"


def cmd_fiber_scan(a):
    from .constructions import fiber_hit_scan, hits_csv
    from .psi import parse_psi
    from .sums import as_table
    t = as_table(_alpha(a.alpha))
    N = _need(a, "N")
    psi = parse_psi(a.psi or "1/(n log^2(n+2) loglog(n+16))")
    betas = [b for b in (a.beta or "").split(";") if b.strip()]
    if not betas:
        raise DiophError("fiber-scan needs --beta b1;b2;...")
    recs = fiber_hit_scan(t, psi, betas, N)
    payload = {"command": "fiber-scan", "alpha": a.alpha, "psi": psi.describe(), "N": N,
               "records": [{"beta": r.beta, "complete": r.complete, "hit_count": len(r.hits),
                            "trivial": sum(h.trivial for h in r.hits),
                            "hits": [h.n for h in r.hits]} for r in recs]}
    return payload, [], hits_csv(recs)


def cmd_verify_all(a):
    rep = verify_all(_alpha(a.alpha), _need(a, "N"), a.precision, a.threads)
    return {"command": "verify-all", "report": rep}, rep.verdicts, None


# ---------------------------------------------------------------- verify-all

def verify_all(alpha, N: int, precision: int = 64, threads: int = 1) -> BoundReport:
    """Every applicable inequality for one alpha up to N, with hypothesis flags."""
    from .contfrac import certify_relations
    from .counting import NormCache, count_hom, count_inhom
    from .gamma import parse_gamma
    from .gapsets import count_bounds, enumerate_A, harmonic_sum_A, random_prefix, verify_gaps
    from .ostrowski import expand_int, reconstruct_int, validate_digits
    from .sums import (as_gamma, as_table, check_T1, corollary_checks,
                       linear_forms_sum, partial_summation_check, split_R, sweep, trimmed_R)
    if N < 2:
        raise DiophError("verify-all needs N >= 2")
    t = as_table(alpha)
    out = BoundReport("verify_all")
    K = t.K_of(N)
    from .realnum import format_real
    out.values.update({"alpha": format_real(t.spec), "N": N, "K": K, "precision": precision})

    def tag(prefix: str, vs):
        for v in vs:
            out.add(Verdict(f"{prefix}:{v.name}", v.status, v.detail))

    depth = K + 2
    rel = certify_relations(t, depth)
    tag("cf", [verdict("relations", all(r.ok for r in rel), depth=depth)])

    M = min(N, 2000)
    ok = all(validate_digits(expand_int(t, n).digits, t).valid
             and reconstruct_int(expand_int(t, n), t) == n for n in range(1, M + 1))
    tag("ostrowski", [verdict("roundtrip", ok, upto=M)])

    sw = sweep(t, None, N, precision, keep=N, threads=threads)
    tag("sums", corollary_checks(sw, N))
    tag("sums", [partial_summation_check(t, None, N, precision, sw)])
    if N >= 100:
        tag("sums", check_T1(t, N, sw.S).verdicts)
        out.flags["T1_asymptotic"] = True
    else:
        tag("sums", [Verdict("eq12", NOT_MET, {"reason": "checked from N = 100 on"})])
    if N >= t.q(3):
        tag("sums", split_R(t, N, precision, sw.R).verdicts)
        tag("sums", trimmed_R(t, N, 1, precision).verdicts)
    else:
        tag("sums", [Verdict("eq1/eq4/eq2", NOT_MET, {"reason": f"N < q_3 = {t.q(3)}"})])

    T = max(2, min(N, 64))
    tag("linforms", [linear_forms_sum([t.spec], [T], T, 0, "T3", precision).verdict])

    rng = random.Random(0)
    for m in (0, 1, 2):
        if t.q(m + 1) > N:
            continue
        pre = random_prefix(t, m, rng)
        mem = enumerate_A(pre, t, N)
        g = verify_gaps(mem, pre, t)
        tag(f"gaps[{','.join(map(str, pre.digits))}]",
            [verdict("gap_rules", g.ok)] + count_bounds(mem, pre, t, N).verdicts
            + (harmonic_sum_A(mem, pre.n_prime(t), N, t, m).verdicts if N >= 3 else []))

    hom = NormCache(t, None, N, threads=threads)
    g1 = as_gamma(parse_gamma("absD1"), t)
    inh = NormCache(t, g1, N, threads=threads)
    ghj_missing = []
    for j in range(3, 11):
        eps = Fraction(1, 2 ** j)
        r = count_hom(t, eps, N, hom)
        if not r.flags["ghj"]:
            ghj_missing.append(str(eps))
        tag(f"count[eps={eps}]", r.verdicts)
        tag(f"count[eps={eps},gamma=|D1|]", count_inhom(t, g1, eps, N, inh, hom).verdicts)
    out.flags["ghj_unavailable_for_eps"] = ghj_missing
    return out


# -------------------------------------------------------------------- helpers

def _alpha(text: str):
    """parse_real syntax plus liouville:RULE[:prefix] for a stream within the default budget."""
    if not text.startswith("liouville:"):
        return text
    from .constructions import build_liouville_alpha, liouville_depth_within
    parts = text.split(":")
    rule = parts[1]
    prefix = tuple(_ints(parts[2])) if len(parts) > 2 else ()
    return build_liouville_alpha(rule, liouville_depth_within(rule, prefix=prefix), prefix)


def _plan_view(plan) -> dict:
    from .report import to_jsonable
    d = {k: getattr(plan, k) for k in plan.__dataclass_fields__ if k not in ("gamma", "checks")}
    g = plan.gamma
    d["gamma"] = {"label": g.label, "u": g.u, "r": g.r, "tail_radius": g.rho}
    return to_jsonable(d)


def _short(v: int) -> str:
    return str(v) if v.bit_length() <= 256 else f"<{v.bit_length()}-bit>"


def _log_grid(N: int) -> list[int]:
    out = []
    m = 1
    while m < N:
        for f in (1, 2, 5):
            if f * m < N:
                out.append(f * m)
        m *= 10
    out.append(N)
    return sorted(set(out))


def _need(a, name: str):
    v = getattr(a, name)
    if v is None:
        raise DiophError(f"{a.command} needs --{name}")
    return v


COMMANDS = {
    "cf": (cmd_cf, "continued fraction table and certified relations"),
    "ostrowski": (cmd_ostrowski, "Ostrowski digits of an integer n or of gamma"),
    "norm": (cmd_norm, "||n alpha - gamma|| by both routes"),
    "gaps": (cmd_gaps, "members and gaps of a digit-prefix set up to N"),
    "count": (cmd_count, "count n <= N with ||n alpha - gamma|| < eps, with bounds"),
    "sum": (cmd_sum, "certified R_N and S_N along a log grid"),
    "split": (cmd_split, "residue-class split of R_N and its bounds"),
    "trim": (cmd_trim, "trimmed residue sum against its bound"),
    "linforms": (cmd_linforms, "box sums of linear forms"),
    "psi-sum": (cmd_psi_sum, "sum of psi(n)/||n alpha - gamma|| three ways"),
    "construct-t5": (cmd_construct_t5, "gamma with spikes of S_N"),
    "construct-t8": (cmd_construct_t8, "gamma along which R_N / (N log N) decays"),
    "liouville": (cmd_liouville, "Liouville-type quotient stream within a bit budget"),
    "fiber-scan": (cmd_fiber_scan, "hits of ||n alpha|| ||n beta|| < psi(n)"),
    "verify-all": (cmd_verify_all, "every applicable inequality for one alpha"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dioph", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_) in COMMANDS.items():
        epilog = f"CSV columns: {CSV_HELP[name]}" if name in CSV_HELP else "JSON output only"
        s = sub.add_parser(name, help=help_, description=help_, epilog=epilog)
        s.add_argument("--alpha", default=None if name == "construct-t8" else "golden",
                       help="golden | e | surd:(A+B*sqrtD)/C | quotients:[a0;a1,...][...] | "
                            "periodic:[a0;pre|period] | interval:LO,HI | liouville:RULE")
        s.add_argument("--gamma", default=None, help="0 | p/q | D<k> | absD<k> | lin:u,r | real")
        s.add_argument("--psi", default=None, help="e.g. 1/n, n^-2, 1/(n log^2(n+2))")
        s.add_argument("--N", type=_int, default=None)
        s.add_argument("--n", type=_int, default=None)
        s.add_argument("--eps", type=_fr, default=None)
        s.add_argument("--c", type=_fr, default=None)
        s.add_argument("--depth", type=_int, default=None)
        s.add_argument("--precision", type=_int, default=64, help="target bits")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        s.add_argument("--out", default=None, help="output file (default stdout)")
        s.add_argument("--threads", type=_int, default=1)
        if name == "gaps":
            s.add_argument("--prefix", default=None, help="d_1,...,d_{m+1}")
        if name == "linforms":
            s.add_argument("--A", default=None, help="reals separated by ';' (default --alpha)")
            s.add_argument("--T", default=None, help="box sizes T_1,...,T_n")
            s.add_argument("--L", type=_fr, default=None)
            s.add_argument("--theorem", choices=("T3", "T9", "T10", "kron"), default="T3")
        if name == "construct-t5":
            s.add_argument("--growth", default="sqrt", help="sqrt | log | N^p/q")
            s.add_argument("--eps-bits", default="0,1")
            s.add_argument("--count", type=_int, default=4)
        if name == "construct-t8":
            s.add_argument("--K", default=None,
                           help="checkpoint indices K_1,K_2,...; without --alpha a built-in "
                                "stream with K = 2,4,6 is used")
        if name == "liouville":
            s.add_argument("--rule", default="qk", help="qk | qk^k | one")
            s.add_argument("--prefix", default=None)
            s.add_argument("--budget", type=_int, default=None, help="bit budget for q_k")
        if name == "fiber-scan":
            s.add_argument("--beta", default=None, help="reals or rationals separated by ';'")
    return p


def run(args: argparse.Namespace) -> int:
    fn = COMMANDS[args.command][0]
    payload, verdicts, csv = fn(args)
    if args.format == "csv":
        if csv is None:
            raise DiophError(f"{args.command} has no CSV output")
        text = csv
    else:
        body = dict(payload)
        if "report" in body:
            # verdicts are listed once, at the top level
            rep = to_jsonable(body["report"])
            if isinstance(rep, dict):
                rep.pop("verdicts", None)
            body["report"] = rep
        body["verdicts"] = verdicts
        body["overall"] = FAIL if any(v.status == FAIL for v in verdicts) else PASS
        text = dumps(body) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(v.status == FAIL for v in verdicts) else 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    if args.threads < 1 or args.precision < 8:
        print("dioph: error: --threads must be >= 1 and --precision >= 8", file=sys.stderr)
        return 2
    try:
        return run(args)
    except (DiophError, ValueError, ArithmeticError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        print(f"dioph: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
