"""Verdicts, bound reports and deterministic serialisation helpers."""
from __future__ import annotations

import decimal
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .realnum import Interval, Surd, to_interval

SCHEMA = 1

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis-not-met"
INFO = "info"


def _dec(x: Fraction, digits: int, rounding: str) -> str:
    ctx = decimal.Context(prec=digits, rounding=rounding)
    v = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return format(v, "g") if v != 0 else "0"


def fmt_down(x, digits: int = 24) -> str:
    """Decimal string not exceeding x."""
    x = Fraction(x)
    return _dec(x, digits, decimal.ROUND_FLOOR)


def fmt_up(x, digits: int = 24) -> str:
    """Decimal string not below x."""
    x = Fraction(x)
    return _dec(x, digits, decimal.ROUND_CEILING)


def interval_json(v, digits: int = 24) -> dict:
    i = to_interval(v, 4 * digits + 16)
    return {"lo": fmt_down(i.lo, digits), "hi": fmt_up(i.hi, digits)}


@dataclass
class Verdict:
    """Outcome of one certified check.

    ``status`` is pass, fail, hypothesis-not-met or info (a reported ratio with
    no claim attached).  ``holds`` is True only for pass.
    """
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def verdict(name: str, ok: bool, **detail) -> Verdict:
    return Verdict(name, PASS if ok else FAIL, detail)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Verdict):
        return {"name": obj.name, "status": obj.status, "detail": to_jsonable(obj.detail)}
    if isinstance(obj, (Interval, Surd)):
        return interval_json(obj)
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return obj.numerator
        return {"lo": fmt_down(obj), "hi": fmt_up(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    if isinstance(obj, float):
        return repr(obj)
    return obj


def dumps(payload: dict) -> str:
    body = {"schema": SCHEMA}
    body.update(to_jsonable(payload))
    return json.dumps(body, indent=1, sort_keys=False)


def check_le(name: str, lhs, rhs, **detail) -> Verdict:
    """Certified lhs <= rhs.  Overlapping enclosures are reported as a failure
    with ``undecided`` set, never as a pass."""
    a, b = to_interval(lhs), to_interval(rhs)
    if a.hi <= b.lo:
        return Verdict(name, PASS, detail)
    d = dict(detail)
    if a.lo <= b.hi:
        d["undecided"] = True
    return Verdict(name, FAIL, d)


@dataclass
class BoundReport:
    """A computed quantity, the bounds it was compared against and the verdicts."""
    name: str
    values: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(v.failed for v in self.verdicts)

    def add(self, v: Verdict) -> Verdict:
        self.verdicts.append(v)
        return v

    def status(self, name: str) -> str | None:
        for v in self.verdicts:
            if v.name == name:
                return v.status
        return None
