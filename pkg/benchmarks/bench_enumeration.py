"""Compare the compiled and pure-Python point-counting kernels.

    python benchmarks/bench_enumeration.py [--repeat N]

Both kernels count the same varieties; the script checks that the counts
agree and reports the best wall time of each.
"""
import argparse
import time

from motzeta import geometry, kernels
from motzeta.checks import blown_up_plane
from motzeta.galois import field

BUDGET = 2 ** 32

CASES = [
    ("P^2 over F_256", geometry.ProjectiveVarietySpec.projective_space(2, 2), 8),
    ("quadric x0 x1 - x2 x3 over F_121", geometry.parse_variety("11 3\nx0*x1 - x2*x3"), 2),
    ("Fermat cubic surface over F_64", geometry.parse_variety("2 3\nx0^3 + x1^3 + x2^3 + x3^3"), 6),
    ("blown-up plane in P^5 over F_9", blown_up_plane(3), 2),
    ("quartic threefold over F_13", geometry.parse_variety("13 4\nx0^4 + x1^4 + x2^4 + x3^4 + x4^4"), 1),
]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if kernels.count_points_native is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'case':34s} {'points':>8s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, x, k in CASES:
        F = field(x.base_prime, k)
        F.tables  # build field tables outside the timed region
        t_c, n_c = best_of(lambda: geometry.enumerate_points(x, F, backend="cython", budget=BUDGET), args.repeat)
        t_p, n_p = best_of(lambda: geometry.enumerate_points(x, F, backend="python", budget=BUDGET), args.repeat)
        if n_c != n_p:
            raise SystemExit(f"{name}: kernels disagree ({n_c} vs {n_p})")
        print(f"{name:34s} {n_c:8d} {t_c:10.4f} {t_p:10.4f} {t_p / t_c:7.0f}x")


if __name__ == "__main__":
    main()
