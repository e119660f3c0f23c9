"""Time the lattice-point kernel on both backends.

    python benchmarks/bench_enumeration.py [--repeat N]

Each case enumerates the sections of a degree on a corpus fan, checks both
backends return the same points, and reports the best wall time.
"""
import argparse
import time

from toricaut import CORPUS
from toricaut._kernels import HAVE_NUMBA
from toricaut.divisors import lattice_points
from toricaut.io import load_fan

CASES = [
    ("P^5, O(8)", "p5", [8, 0, 0, 0, 0, 0]),
    ("P^5, O(12)", "p5", [12, 0, 0, 0, 0, 0]),
    ("P(1,1,2,3), degree 60", "p1123", [60, 0, 0, 0]),
    ("F_3, (6, 0, 6, 0)", "f3", [6, 0, 6, 0]),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    if HAVE_NUMBA:
        # compile outside the timed region
        lattice_points([[1], [-1]], [1, 1], backend="numba")
    print(f"{'case':<24}{'points':>10}" + "".join(f"{b + ' (s)':>14}" for b in backends) + f"{'speedup':>10}")
    for label, name, coeffs in CASES:
        rays = load_fan(CORPUS / f"{name}.fan").rays
        times, results = [], []
        for b in backends:
            t, pts = best_of(lambda: lattice_points(rays, coeffs, backend=b), args.repeat)
            times.append(t)
            results.append(pts)
        assert all(r == results[0] for r in results), label
        speed = f"{times[1] / times[0]:>9.1f}x" if len(times) == 2 else f"{'-':>10}"
        print(f"{label:<24}{len(results[0]):>10}" + "".join(f"{t:>14.4f}" for t in times) + speed)


if __name__ == "__main__":
    main()
