"""Compare the compiled and numpy scan kernels on the default grid.

    python benchmarks/bench_scan.py [--repeat 3] [--workers 1 4]
"""

import argparse
import time

from polyacc import _scan_py, backend
from polyacc.examples import halfplane_family, moebius_family, shear_family
from polyacc.program import compile_spec
from polyacc.univalence import GridSpec

try:
    from polyacc import _scan_c
except ImportError:
    _scan_c = None

CASES = {
    "eg2 p=3 n=5": shear_family(3, 5, 0.2),
    "eg1 a=3 b=0.5 c=0.2": moebius_family(2, 3, 0.5, 0.2),
    "eg3 p=5 mu=1/2": halfplane_family(5, 0.5),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    args = ap.parse_args()
    grid = GridSpec()
    r, th, t = grid.radii(), grid.thetas(), grid.ts()
    impls = [("numpy", _scan_py)] + ([("cython", _scan_c)] if _scan_c else [])
    print(f"grid {grid.n_r}x{grid.n_theta}x{grid.n_t} = {grid.n_r * grid.n_theta * grid.n_t} nodes")
    print(f"{'case':<22} {'impl':<7} {'workers':>7} {'seconds':>9}  min|U|")
    for label, spec in CASES.items():
        prog = compile_spec(spec)
        ref = None
        for name, impl in impls:
            for w in args.workers:
                secs, out = best_of(lambda: backend.scan_min(prog, r, th, t, workers=w, impl=impl), args.repeat)
                ref = ref or out
                same = "" if out == ref else "  (differs!)"
                print(f"{label:<22} {name:<7} {w:>7} {secs:>9.4f}  {out[0]:.6e}{same}")
    if not _scan_c:
        print("compiled kernel not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
