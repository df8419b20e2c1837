"""Benchmark the compiled orbit kernel against the pure-Python fallback.

Renders small grids with each backend, checks the outputs are
bit-identical, and reports per-iteration cost and speedup.

Usage: python benchmarks/bench_kernels.py [--res 64x64] [--max-iter 120]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from dynlab.fndef import fn_from_source
from dynlab.kernel import backends
from dynlab.orbits import OrbitConfig, PreparedFn
from dynlab.singular import Rect, singular_set

CASES = [
    ("z + 1", Rect(-2.0, 10.0, -3 * math.pi, 3 * math.pi), None),
    ("z + exp(-z)", Rect(-2.0, 10.0, -3 * math.pi, 3 * math.pi), None),
    ("z + exp(1/sin(z))", Rect(-4 * math.pi, 4 * math.pi, -8.0, 8.0),
     2 * math.pi),
]


def run_case(mod, src, window, period, res, max_iter):
    f = fn_from_source(src, period=period, validate_period=False)
    sing = singular_set(f, window)
    cfg = OrbitConfig(max_iter=max_iter)
    prep = PreparedFn(f, sing if len(sing) else None, cfg,
                      period=complex(period) if period else None)
    ka = prep.kernel_args()
    w, h = res
    n = w * h
    out = dict(
        out_kind=np.zeros(n, np.uint8), out_tclass=np.zeros(n, np.int8),
        out_tre=np.zeros(n), out_tim=np.zeros(n),
        out_tsing=np.zeros(n, np.int32), out_iters=np.zeros(n, np.int32),
        out_resid=np.zeros(n))
    t0 = time.perf_counter()
    mod.classify_grid(prep.body.ops, prep.body.consts,
                      prep.deriv.ops, prep.deriv.consts,
                      window.re_min, window.re_max,
                      window.im_min, window.im_max, w, h,
                      prep.sing_re, prep.sing_im, len(prep.sing_re),
                      ka["max_iter"], ka["escape_radius"], ka["eps_sing"],
                      ka["eps_cycle"], ka["p_max"], ka["confirm_steps"],
                      ka["slow_confirm"], ka["capture_radius"],
                      ka["has_period"], ka["pre"], ka["pim"],
                      0, h,
                      out["out_kind"], out["out_tclass"], out["out_tre"],
                      out["out_tim"], out["out_tsing"], out["out_iters"],
                      out["out_resid"])
    elapsed = time.perf_counter() - t0
    return elapsed, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--res", default="64x64")
    ap.add_argument("--max-iter", type=int, default=120)
    args = ap.parse_args()
    w, h = (int(x) for x in args.res.lower().split("x"))

    mods = backends()
    if "compiled" not in mods:
        print("compiled kernel not built; benchmarking python only")
    print(f"grid {w}x{h}, max_iter {args.max_iter}\n")
    print(f"{'map':<22}{'backend':<10}{'time':>9}{'ns/iter':>10}"
          f"{'speedup':>9}  identical")
    for src, window, period in CASES:
        results = {}
        for name, mod in mods.items():
            elapsed, out = run_case(mod, src, window, period, (w, h),
                                    args.max_iter)
            results[name] = (elapsed, out)
        base = results["python"][0]
        same = "-"
        if "compiled" in results:
            same = all(
                np.array_equal(results["python"][1][k],
                               results["compiled"][1][k])
                for k in results["python"][1])
        for name, (elapsed, out) in results.items():
            iters = max(1, int(out["out_iters"].sum()))
            print(f"{src:<22}{name:<10}{elapsed:>8.2f}s"
                  f"{1e9 * elapsed / iters:>10.1f}"
                  f"{base / elapsed:>8.1f}x  {same}")
        print()


if __name__ == "__main__":
    main()
