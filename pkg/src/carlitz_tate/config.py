"""Run configuration shared by the CLI, the suites and the benchmarks."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction

from .field_tower import FieldContext, context_for_q, get_context

ENV_PREFIX = "CARLITZ_TATE_"
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    e: int = 1
    N: Fraction = Fraction(16)
    s: int | None = None
    n: int = 1
    degree: int = 3
    budget: int = DEFAULT_BUDGET
    fmt: str = "text"
    seed: int = 0
    range: int | None = None

    def __post_init__(self):
        if self.N <= 0:
            raise ValueError("precision must be positive")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def ctx(self) -> FieldContext:
        return get_context(self.p, self.e)

    def with_precision(self, N) -> "RunConfig":
        return replace(self, N=Fraction(N))

    def header(self) -> dict:
        return {"p": self.p, "e": self.e, "q": self.q, "precision": str(self.N), "lattice_den": self.q - 1}

    @classmethod
    def from_q(cls, q: int, **kw) -> "RunConfig":
        ctx = context_for_q(q)
        return cls(p=ctx.p, e=ctx.e, **kw)


_ENV_FIELDS = {
    "P": ("p", int), "E": ("e", int), "Q": ("q", int), "PREC": ("N", Fraction), "S": ("s", int),
    "N": ("n", int), "BUDGET": ("budget", int), "FORMAT": ("fmt", str), "SEED": ("seed", int),
    "RANGE": ("range", int),
}


def env_overrides(environ=None) -> dict:
    """Settings read from CARLITZ_TATE_* variables (lower priority than flags)."""
    environ = os.environ if environ is None else environ
    out = {}
    for suffix, (name, conv) in _ENV_FIELDS.items():
        raw = environ.get(ENV_PREFIX + suffix)
        if raw not in (None, ""):
            out[name] = conv(raw)
    return out
