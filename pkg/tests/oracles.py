"""Independent reference computations used by the tests.

Nothing here imports dioph: values are recomputed from first principles with
mpmath floats at generous precision and plain integer recurrences.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

DPS = 60

ALPHAS = {
    "golden": lambda: (1 + mpmath.sqrt(5)) / 2,
    "surd:(0+1*sqrt2)/1": lambda: mpmath.sqrt(2),
    "surd:(0+1*sqrt3)/1": lambda: mpmath.sqrt(3),
    "e": lambda: mpmath.e,
    "surd:(-1+1*sqrt5)/2": lambda: (mpmath.sqrt(5) - 1) / 2,
}


def value(name: str, dps: int = DPS):
    with mpmath.workdps(dps):
        return +ALPHAS[name]()


def quotients(x, count: int, dps: int = DPS) -> list[int]:
    """First count+1 partial quotients a_0..a_count of x by repeated inversion."""
    out = []
    with mpmath.workdps(dps):
        y = mpmath.mpf(x)
        for _ in range(count + 1):
            a = int(mpmath.floor(y))
            out.append(a)
            y = 1 / (y - a)
    return out


def convergents(a: list[int]) -> tuple[list[int], list[int]]:
    p, q = [], []
    pm2, pm1, qm2, qm1 = 0, 1, 1, 0
    for ak in a:
        pk, qk = ak * pm1 + pm2, ak * qm1 + qm2
        p.append(pk)
        q.append(qk)
        pm2, pm1, qm2, qm1 = pm1, pk, qm1, qk
    return p, q


def greedy_ostrowski(n: int, q: list[int]) -> dict[int, int]:
    """Digits c_{k+1} (keyed by k) of n in the base q_0, q_1, ... by greedy subtraction."""
    out = {}
    k = max(i for i, v in enumerate(q) if v <= n) if n else 0
    while n:
        while q[k] > n:
            k -= 1
        c, n = divmod(n, q[k])
        out[k] = c
        k -= 1
    return out


def admissible(digits: dict[int, int], a: list[int]) -> bool:
    """Digit rules with a = [a_0, a_1, ...]."""
    if digits.get(0, 0) >= a[1]:
        return False
    for k, c in digits.items():
        if c < 0 or c > a[k + 1]:
            return False
        if k >= 1 and c == a[k + 1] and digits.get(k - 1, 0) != 0:
            return False
    return True


def dist(x) -> mpmath.mpf:
    return abs(x - mpmath.nint(x))


def norm(alpha, n: int, gamma=0, dps: int = DPS):
    with mpmath.workdps(dps):
        return dist(n * mpmath.mpf(alpha) - mpmath.mpf(gamma))


def count_brute(alpha, gamma, eps: Fraction, N: int, dps: int = 40) -> int:
    """#{n <= N : ||n alpha - gamma|| < eps}; a near tie is an error, not a guess."""
    c = 0
    with mpmath.workdps(dps):
        e = mpmath.mpf(eps.numerator) / eps.denominator
        for n in range(1, N + 1):
            v = dist(n * alpha - gamma)
            if abs(v - e) < mpmath.mpf(10) ** (-dps + 10):
                raise AssertionError(f"oracle tie at n={n}")
            c += v < e
    return c


def sums(alpha, gamma, N: int, dps: int = 30) -> tuple[float, float]:
    """(R_N, S_N) by straightforward summation."""
    R = S = mpmath.mpf(0)
    with mpmath.workdps(dps):
        for n in range(1, N + 1):
            v = 1 / dist(n * alpha - gamma)
            R += v
            S += v / n
        return float(R), float(S)


def psi_value(n: int, c=1, tau=1, a=0, s=2, b=0, t=16):
    v = mpmath.mpf(c) / mpmath.mpf(n) ** tau
    if a:
        v /= mpmath.log(n + s) ** a
    if b:
        v /= mpmath.log(mpmath.log(n + t)) ** b
    return v


def fiber_hits(alpha, beta, psi_kwargs: dict, N: int, dps: int = 40) -> list[int]:
    """n <= N with ||n alpha|| ||n beta|| < psi(n); beta a Fraction or an mpf.

    Floats decide everything that is clear by a wide margin (their error is
    below 1e-10 for n <= 10**6); the rest is redone with mpmath.
    """
    af = float(alpha)
    bf = None if isinstance(beta, Fraction) else float(beta)
    hits = []
    for n in range(1, N + 1):
        x = n * af
        na = abs(x - round(x))
        if bf is None:
            r = (n * beta.numerator) % beta.denominator
            nb = min(r, beta.denominator - r) / beta.denominator
        else:
            y = n * bf
            nb = abs(y - round(y))
        ps = float(psi_value(n, **psi_kwargs)) if n < 64 else _psi_float(n, **psi_kwargs)
        prod = na * nb
        if abs(prod - ps) > 1e-9:
            if prod < ps:
                hits.append(n)
            continue
        with mpmath.workdps(dps):
            na = dist(n * alpha)
            if isinstance(beta, Fraction):
                nb = mpmath.mpf(min(r, beta.denominator - r)) / beta.denominator
            else:
                nb = dist(n * beta)
            prod = na * nb
            ps = psi_value(n, **psi_kwargs)
            if abs(prod - ps) < mpmath.mpf(10) ** (-dps + 8) * ps:
                raise AssertionError(f"oracle tie at n={n}")
            if prod < ps:
                hits.append(n)
    return hits


def _psi_float(n: int, c=1, tau=1, a=0, s=2, b=0, t=16) -> float:
    v = float(c) / float(n) ** float(tau)
    if a:
        v /= math.log(n + s) ** float(a)
    if b:
        v /= math.log(math.log(n + t)) ** float(b)
    return v


def log_grid(lo: int, hi: int, per_decade=(1, 2, 5)) -> list[int]:
    out = []
    m = 1
    while m <= hi:
        for f in per_decade:
            if lo <= f * m <= hi:
                out.append(f * m)
        m *= 10
    return out


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a

