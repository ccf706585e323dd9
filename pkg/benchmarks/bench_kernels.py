"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--q 59] [--repeat 3]
"""

import argparse
import time

from permbinom import kernels
from permbinom.gf import quadratic_extension
from permbinom.hermite import _kernel_terms


def bench(mod, q: int, r: int, repeat: int) -> dict[str, float]:
    ctx = quadratic_extension(q)
    t = ctx.tables
    e = r * (q - 1) + 1
    logs = range(r * (q - 1))
    terms = [_kernel_terms(q, alpha, 5) for alpha in range(q)]
    out = {}

    def timed(name, fn):
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
        out[name] = best

    timed("is_permutation (all classes)", lambda: [mod.is_permutation_log(t.exp, t.zech, k, e, t.order) for k in logs])
    timed("power_sum (100 a)", lambda: [mod.power_sum_log(t.zech, k, e, q * q - 2, t.order) for k in range(100)])
    timed("lambda_sum (all alpha, 100 a)", lambda: [mod.lambda_sum_log(t.zech, cl, ex, k, t.order)
                                                    for k in range(100) for cl, ex, _ in terms])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=59)
    ap.add_argument("--r", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    results = {name: bench(mod, args.q, args.r, args.repeat) for name, mod in backends.items()}
    print(f"q={args.q} r={args.r}, best of {args.repeat}")
    names = list(results["python"])
    print(f"{'kernel':32}" + "".join(f"{b:>12}" for b in results) + ("     speedup" if "cython" in results else ""))
    for n in names:
        row = f"{n:32}" + "".join(f"{results[b][n]:11.4f}s" for b in results)
        if "cython" in results:
            row += f"{results['python'][n] / results['cython'][n]:11.1f}x"
        print(row)
    if "cython" not in results:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
