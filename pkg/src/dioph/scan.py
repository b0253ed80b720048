"""Fixed-point interval engine for sweeps over n = 1..N.

alpha and gamma are enclosed by integers at scale 2**P; then
n*alpha - gamma lies in [n*A_lo - G_hi, n*A_hi - G_lo] / 2**P and its distance
to Z is read off with integer operations only.  Values whose enclosure touches
an integer are handed back as "special" and resolved exactly by the caller.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import ConvergentTable
from .gamma import Gamma
from .realnum import Interval, to_interval


@dataclass(frozen=True)
class FixedSetup:
    P: int
    A_lo: int
    A_hi: int
    G_lo: int
    G_hi: int


def fixed_setup(t: ConvergentTable, gamma: Gamma | None, P: int) -> FixedSetup:
    a = t.alpha_interval(P + 2)
    A_lo, A_hi = a.scaled_ints(P)
    if gamma is None or gamma.is_zero:
        G_lo = G_hi = 0
    else:
        g = to_interval(gamma.value(t, P + 2), P + 2)
        G_lo, G_hi = g.scaled_ints(P)
    return FixedSetup(P, A_lo, A_hi, G_lo, G_hi)


def norm_chunk(fs: FixedSetup, n0: int, n1: int) -> tuple[list, list, list]:
    """Bounds lo[i] <= 2**P ||n alpha - gamma|| <= hi[i] for n = n0 + i < n1.

    Returns (lo, hi, special) where special lists the n whose enclosure
    contains an integer; their lo entry may be 0.
    """
    P = fs.P
    M = 1 << P
    H = M >> 1
    mask = M - 1
    dA_lo, dA_hi = fs.A_lo, fs.A_hi
    x_lo = n0 * dA_lo - fs.G_hi
    x_hi = n0 * dA_hi - fs.G_lo
    los = []
    his = []
    special = []
    lo_app = los.append
    hi_app = his.append
    for n in range(n0, n1):
        r = x_lo & mask
        e = r + (x_hi - x_lo)
        if e <= H:
            if r == 0:
                special.append(n)
            lo_app(r)
            hi_app(e)
        elif e <= M:
            if r >= H:
                lo_app(M - e)
                hi_app(M - r)
                if e == M:
                    special.append(n)
            else:
                if e == M:
                    special.append(n)
                lo_app(r if r < M - e else M - e)
                hi_app(H)
        else:
            special.append(n)
            lo_app(0)
            hi_app(H)
        x_lo += dA_lo
        x_hi += dA_hi
    return los, his, special


CHUNK = 1 << 16


def norm_bounds(fs: FixedSetup, n0: int, n1: int, threads: int = 1):
    """Yield (n_start, lo, hi, special) chunks in increasing order of n."""
    ranges = [(a, min(a + CHUNK, n1)) for a in range(n0, n1, CHUNK)]
    if threads <= 1 or len(ranges) <= 1:
        for a, b in ranges:
            lo, hi, sp = norm_chunk(fs, a, b)
            yield a, lo, hi, sp
        return
    with ProcessPoolExecutor(max_workers=threads) as ex:
        futs = [ex.submit(norm_chunk, fs, a, b) for a, b in ranges]
        for (a, _), f in zip(ranges, futs):
            lo, hi, sp = f.result()
            yield a, lo, hi, sp


def exact_norm_interval(t: ConvergentTable, gamma: Gamma | None, n: int, bits: int
                        ) -> Interval | None:
    """Certified enclosure of ||n alpha - gamma||; None if it vanishes exactly."""
    from .normeval import norm_direct
    r = norm_direct(t, n, gamma, bits)
    if r.degenerate:
        return None
    return r.enclosure(bits + 8)


def recip_bounds(lo: int, hi: int, shift: int) -> tuple[int, int]:
    """floor(2**shift/hi), ceil(2**shift/lo)."""
    num = 1 << shift
    return num // hi, -((-num) // lo)


def interval_from_scaled(lo: int, hi: int, bits: int) -> Interval:
    return Interval(Fraction(lo, 1 << bits), Fraction(hi, 1 << bits))
