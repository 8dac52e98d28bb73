"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from ineqlab import kernels


def cases(rng):
    v = rng.normal(size=64)
    X = rng.normal(size=(2000, 8))
    nodes = np.sort(rng.uniform(0, 10, size=(2000, 4)), axis=1)
    vals = np.sqrt(nodes)
    samples = rng.normal(size=21)
    t = np.linspace(0, 1, 500)
    U, V = rng.normal(size=(2000, 8)), rng.normal(size=(2000, 8))
    return {
        "lp_norm (64, p=1.5) x1000": (lambda m: [kernels.lp_norm(v, 1.5, m) for _ in range(1000)]),
        "lp_norm_rows (2000x8)": (lambda m: kernels.lp_norm_rows(X, 3.0, m)),
        "divided_difference x1000": (lambda m: [kernels.divided_difference(nodes[i], vals[i], m)
                                                for i in range(1000)]),
        "divided_differences_batch (2000x4)": (lambda m: kernels.divided_differences_batch(nodes, vals, m)),
        "bernstein_eval (deg 20, 500 pts)": (lambda m: kernels.bernstein_eval(samples, t, m)),
        "cnj_ratios (2000x8)": (lambda m: kernels.cnj_ratios(U, V, 1.5, m)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    rng = np.random.default_rng(0)
    names = sorted(backends)
    print(f"{'kernel':40s}" + "".join(f"{n + ' ms':>14s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in cases(rng).items():
        times = {}
        for name in names:
            mod = backends[name]
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) * 1e3
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:40s}" + "".join(f"{times[n]:14.3f}" for n in names) + f"{speed:10.1f}x")


if __name__ == "__main__":
    main()
