"""Verification reports shared by the special-value checks, the solver and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .laurent import LaurentSeries, format_exponent
from .tate import TateElement

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


@dataclass
class Report:
    name: str
    status: str
    precision: Fraction | None = None
    witness: Any = None
    first_discrepant_exponent: Fraction | None = None
    checks: list["Report"] = field(default_factory=list)
    detail: str = ""
    # series kept for precision-soundness re-runs; not serialized
    values: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "status": self.status,
                     "precision": None if self.precision is None else format_exponent(self.precision)}
        if self.witness is not None:
            w = self.witness
            out["witness"] = w.to_json() if hasattr(w, "to_json") else (
                w if isinstance(w, (int, float, bool, list, dict)) else str(w))
        if self.first_discrepant_exponent is not None:
            out["first_discrepant_exponent"] = format_exponent(self.first_discrepant_exponent)
        if self.detail:
            out["detail"] = self.detail
        if self.checks:
            out["checks"] = [c.to_json() for c in self.checks]
        return out

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        prec = "" if self.precision is None else f" mod θ^-{format_exponent(self.precision)}"
        head = f"{pad}{self.name}: {self.status}{prec}"
        if self.first_discrepant_exponent is not None:
            head += f" (first discrepancy at θ^-{format_exponent(self.first_discrepant_exponent)})"
        out = [head]
        if self.witness is not None:
            out.append(f"{pad}  witness: {self.witness}")
        if self.detail:
            out.append(f"{pad}  {self.detail}")
        for c in self.checks:
            out.extend(c.lines(indent + 1))
        return out


def combine(name: str, checks: list[Report], **kw) -> Report:
    if any(c.status == FAILED for c in checks):
        status = FAILED
    elif all(c.status == VERIFIED for c in checks):
        status = VERIFIED
    else:
        status = INCONCLUSIVE
    precs = [c.precision for c in checks if c.precision is not None]
    values: dict = {}
    for c in checks:
        values.update({f"{c.name}.{k}": v for k, v in c.values.items()})
    return Report(name, status, min(precs) if precs else None, checks=checks, values=values, **kw)


def compare(name: str, a, b, N=None, witness=None) -> Report:
    """Coefficient-exact comparison through min(N, precision of a and b)."""
    prec = _common_precision(a, b, N)
    bad = a.first_discrepancy(b, prec)
    return Report(name, VERIFIED if bad is None else FAILED, prec, witness=witness,
                  first_discrepant_exponent=bad, values={"lhs": a, "rhs": b})


def is_zero_check(name: str, a, N=None) -> Report:
    prec = a.precision if N is None else (Fraction(N) if a.precision is None else min(a.precision, Fraction(N)))
    b = a.truncate(prec)
    if b.is_zero():
        return Report(name, VERIFIED, prec, values={"value": a})
    first = min((Fraction(k) for k in _first_exponents(b)), default=None)
    return Report(name, FAILED, prec, first_discrepant_exponent=first, values={"value": a})


def require_precision(rep: Report, N) -> Report:
    """Downgrade a verified report whose guaranteed precision falls short of N."""
    if rep.status == VERIFIED and rep.precision is not None and rep.precision < Fraction(N):
        rep.status = INCONCLUSIVE
        rep.detail = (rep.detail + "; " if rep.detail else "") + f"precision below requested {N}"
    return rep


def _common_precision(a, b, N):
    ps = [x for x in (a.precision, b.precision) if x is not None]
    if N is not None:
        ps.append(Fraction(N))
    return min(ps) if ps else None


def _first_exponents(x):
    if isinstance(x, LaurentSeries):
        return [x.valuation()] if not x.is_zero() else []
    if isinstance(x, TateElement):
        return [c.valuation() for c in x.terms.values()]
    return []
