"""Compare the compiled and pure-Python series kernels.

    python3 benchmarks/bench_backends.py [--q 3] [--repeat 5]

Each workload runs on a fresh field context per backend; results must agree
byte for byte before timings are reported.
"""
from __future__ import annotations

import argparse
import time
from fractions import Fraction

from carlitz_tate import available_backends, context_for_q
from carlitz_tate._kernels import make_kernel
from carlitz_tate.carlitz import exp_carlitz
from carlitz_tate.field_tower import FieldContext
from carlitz_tate.special_values import omega, pi_bar, zeta


def context(q: int, backend: str) -> FieldContext:
    base = context_for_q(q)
    ctx = FieldContext(base.p, base.e)
    ctx.kernel = make_kernel(ctx.p, ctx.Q, ctx.add_bytes, ctx.mul_bytes, ctx.neg_bytes, ctx.inv_bytes,
                             backend=backend)
    return ctx


def workloads(ctx: FieldContext):
    pi = pi_bar(ctx, 64)
    w = omega(ctx, 24)
    z1 = zeta(ctx, 1, 0, 32)
    return {
        "laurent mul (N=64)": lambda: pi * pi,
        "laurent invert (N=64)": lambda: pi.invert(),
        "tate mul ω·ω (N=24)": lambda: w * w,
        "zeta(1) (N=24)": lambda: zeta(ctx, 1, 0, 24),
        "zeta(1;2) (N=12)": lambda: zeta(ctx, 1, 2, 12),
        "exp_C(ζ(1)) (N=32)": lambda: exp_carlitz(z1, Fraction(32)),
    }


def best_of(fn, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    results = {}
    for b in backends:
        ctx = context(args.q, b)
        results[b] = {name: best_of(fn, args.repeat) for name, fn in workloads(ctx).items()}
    names = list(results[backends[0]])
    print(f"q={args.q}  best of {args.repeat}")
    print(f"{'workload':28}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name in names:
        outs = [str(results[b][name][1]) for b in backends]
        if len(set(outs)) != 1:
            raise SystemExit(f"backends disagree on {name}")
        times = [results[b][name][0] for b in backends]
        row = f"{name:28}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[-1] / times[0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
