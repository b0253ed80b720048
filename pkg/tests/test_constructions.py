import json
from fractions import Fraction

import mpmath
import pytest

from dioph.constructions import (T8_DEFAULT_K, T8_DEFAULT_PREFIX, adversarial_gamma_T5,
                                 adversarial_gamma_T8, build_liouville_alpha, fiber_hit_scan,
                                 hits_csv, liouville_depth_within, parse_growth, plan_json,
                                 spike_report, t8_decay, t8_default_alpha)
from dioph.contfrac import ConvergentTable, approx_exponent
from dioph.errors import ConstructionError, DomainError, ParseError, ResourceError
from dioph.ostrowski import validate_digits
from dioph.psi import PsiSpec
from dioph.realnum import parse_real

from . import oracles

GOLD_TAIL = "surd:(-1+1*sqrt5)/2"


def test_liouville_qk_exponent_grows():
    x = build_liouville_alpha("qk", 8)
    ex = approx_exponent(ConvergentTable(x), 6)
    assert ex.running_max.lo >= Fraction(19, 10)


def test_liouville_qk_power_exponent():
    x = build_liouville_alpha("qk^k", 6)
    ex = approx_exponent(ConvergentTable(x), 5)
    assert ex.running_max.lo >= 4


def test_liouville_one_is_golden_like():
    x = build_liouville_alpha("one", 60)
    ex = approx_exponent(ConvergentTable(x), 50)
    assert abs(ex.last.mid - 1) < Fraction(1, 20)


def test_liouville_quotients_follow_rule():
    x = build_liouville_alpha("qk", 5, prefix=(2,))
    t = ConvergentTable(x)
    assert t.a(1) == 2
    for k in range(1, 5):
        assert t.a(k + 1) == t.q(k)


def test_liouville_budget():
    d = liouville_depth_within("qk^k", 2000)
    build_liouville_alpha("qk^k", d, budget_bits=2000)
    with pytest.raises(ResourceError):
        build_liouville_alpha("qk^k", d + 1, budget_bits=2000)
    with pytest.raises(DomainError):
        build_liouville_alpha("nope", 3)
    with pytest.raises(DomainError):
        build_liouville_alpha(lambda k, q, h: 0, 3)


def test_t8_default_plan_and_decay():
    x = t8_default_alpha()
    t = ConvergentTable(x)
    assert all(t.a(k + 1) == v for k, v in enumerate(T8_DEFAULT_PREFIX))
    plan = adversarial_gamma_T8(x, list(T8_DEFAULT_K))
    assert plan.valid and validate_digits(plan.digits, t).valid
    assert plan.checkpoints == [(t.a(K + 1) // 4) * t.q(K) for K in T8_DEFAULT_K]
    rep = t8_decay(plan, x)
    assert rep.ok and rep.values["reachable"] == 3
    r = rep.values["ratios"]
    assert r[0].lo > r[1].hi and r[1].lo > r[2].hi
    json.loads(plan_json(plan))


def test_t8_rejects_bad_input():
    x = t8_default_alpha()
    with pytest.raises(ConstructionError):
        adversarial_gamma_T8(x, [1])
    with pytest.raises(ConstructionError):
        adversarial_gamma_T8(x, [3])          # a_4 = 2 < 8
    with pytest.raises(ConstructionError):
        adversarial_gamma_T8("golden", [2])   # {golden} > 1/3


def test_t5_plan_and_spikes():
    plan = adversarial_gamma_T5(GOLD_TAIL, parse_growth("sqrt"), (0, 1), 4)
    assert plan.ok and len(plan.n) == 4
    ks = plan.k
    assert all(b - a >= 5 for a, b in zip(ks, ks[1:]))
    t = ConvergentTable(parse_real(GOLD_TAIL))
    assert plan.n == [sum(t.q(k) for k in ks[:i]) for i in range(1, 5)]
    rep = spike_report(plan, GOLD_TAIL)
    assert rep.ok and len(rep.verdicts) == 4


def test_t5_summed_spike_against_mpmath():
    plan = adversarial_gamma_T5(GOLD_TAIL, parse_growth("sqrt"), (0, 1), 2)
    n2 = plan.n[1]
    # gamma carries ~400-bit coefficients, so the oracle needs a wide working precision
    alpha = oracles.value(GOLD_TAIL, 300)
    with mpmath.workdps(300):
        U, V = plan.gamma.u, plan.gamma.r
        g = U * alpha + mpmath.mpf(V.numerator) / V.denominator
        terms = [1 / (n * oracles.dist(n * alpha - g)) for n in range(1, n2 + 1)]
        spike = sum(terms) - max(terms)
    row = spike_report(plan, GOLD_TAIL).values["rows"][1]
    assert abs(mpmath.mpf(row["spike_lower"].numerator) / row["spike_lower"].denominator - spike) < 1e-6 * spike


def test_growth_parsing():
    assert parse_growth("N^1/3").theta == Fraction(1, 3)
    assert parse_growth("log").kind == "log"
    with pytest.raises(DomainError):
        parse_growth("N^3/2")
    with pytest.raises(ParseError):
        parse_growth("exp")


PSI = dict(c=1, tau=1, a=2, s=2, b=1, t=16)
PSI_SPEC = PsiSpec(a=Fraction(2), b=Fraction(1))


@pytest.mark.parametrize("alpha,betas", [
    ("golden", ["surd:(0+1*sqrt2)/1", "e", "1/3", "2/7"]),
    ("e", ["surd:(0+1*sqrt3)/1", "golden", "5/11"]),
])
def test_fiber_scan_matches_rescan(alpha, betas):
    N = 5000
    recs = fiber_hit_scan(alpha, PSI_SPEC, betas, N)
    av = oracles.value(alpha, 40)
    for b, rec in zip(betas, recs):
        bv = Fraction(b) if "/" in b and ":" not in b else oracles.value(b, 40)
        assert [h.n for h in rec.hits] == oracles.fiber_hits(av, bv, PSI, N)
        assert all(h.trivial or h.product_hi < h.psi_lo for h in rec.hits)
    assert hits_csv(recs).splitlines()[0] == "beta,n,product_hi,psi_n_lo"


def test_fiber_scan_zero_psi_and_rational_trivial_hits():
    assert fiber_hit_scan("golden", PsiSpec(c=Fraction(0)), ["1/2"], 100)[0].hits == []
    rec = fiber_hit_scan("golden", PSI_SPEC, ["1/3"], 30)[0]
    assert [h.n for h in rec.hits if h.trivial] == [3, 6, 9, 12, 15, 18, 21, 24, 27, 30]
    with pytest.raises(DomainError):
        fiber_hit_scan("golden", PsiSpec(a=Fraction(-1)), ["1/3"], 10)
