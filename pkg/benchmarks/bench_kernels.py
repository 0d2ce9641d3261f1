"""Compare the numba kernels with the numpy fallback.

Kernel timings call both implementations in one process.  The end-to-end
classicalisation sweep runs once per backend in a subprocess, because the
backend is fixed at import time by ``CHEESE_NUMBA``.

    python benchmarks/bench_kernels.py [--repeat 5] [--sweep 200]
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from swisscheese import _kernels
from swisscheese.analysis import PoleTerm, RationalFunction, boundary_chain
from swisscheese.generate import random_cheese

SWEEP_SNIPPET = """
import json, time
from swisscheese import _kernels
from swisscheese.classicalise import classicalise
from swisscheese.generate import random_cheese
cheeses = [random_cheese(200, s, 0.9, (0.0, 0.5, 0.9)[s % 3]) for s in range({n})]
classicalise(cheeses[0])  # compile outside the clock
t0 = time.perf_counter()
steps = sum(len(classicalise(c)[1]) for c in cheeses)
print(json.dumps({{"backend": _kernels.BACKEND, "seconds": time.perf_counter() - t0, "steps": steps}}))
"""


def best_of(fn, repeat):
    fn()  # warm up (and JIT-compile)
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases():
    c = random_cheese(200, 1, 0.9, 0.0)
    x, y, r = (np.ascontiguousarray(a) for a in (c.x, c.y, c.r))
    # push every disc far apart so the overlap scan has to visit all pairs
    spread = np.ascontiguousarray(x * 1e3)
    rng = np.random.default_rng(0)
    px, py = rng.uniform(-1, 1, (2, 200_000))
    ch = boundary_chain(random_cheese(50, 2, 0.5, 0.0))
    f = RationalFunction((1, 2), tuple(PoleTerm(complex(3 + k, 0.5)) for k in range(5)))
    quad = (*ch.arrays(), _kernels.unit_roots(512), *f._arrays())
    return {
        "first_overlap (n=200, none found)": ("first_overlap", (spread, y * 1e3, r, 1e-9)),
        "points_in_cheese (2e5 points, 200 discs)": ("points_in_cheese", (px, py, x, y, r, 0.0, 0.0, 1.0)),
        "chain_integral (51 circles, 512 nodes)": ("chain_integral", quad),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sweep", type=int, default=200, help="cheeses in the end-to-end sweep")
    args = ap.parse_args(argv)

    if _kernels.NUMBA is None:
        sys.exit("numba is not installed; nothing to compare")

    print(f"{'kernel':<44}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for label, (name, call_args) in kernel_cases().items():
        t_np = best_of(lambda: _kernels.NUMPY[name](*call_args), args.repeat)
        t_nb = best_of(lambda: _kernels.NUMBA[name](*call_args), args.repeat)
        print(f"{label:<44}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")

    print(f"\nclassicalise sweep: {args.sweep} cheeses of 200 discs, radius budget 0.9")
    results = {}
    for flag in ("0", "1"):
        env = dict(os.environ, CHEESE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", SWEEP_SNIPPET.format(n=args.sweep)],
                             env=env, capture_output=True, text=True, check=True).stdout
        res = json.loads(out)
        results[res["backend"]] = res
        print(f"  {res['backend']:<8}{res['seconds']:>8.2f} s   ({res['steps']} moves)")
    if results["numpy"]["steps"] != results["numba"]["steps"]:
        sys.exit("backends disagree on the number of moves")
    print(f"  speedup {results['numpy']['seconds'] / results['numba']['seconds']:.1f}x")


if __name__ == "__main__":
    main()
