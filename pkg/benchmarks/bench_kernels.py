"""Compare the numba and numpy kernel backends.

Times the descent loop on a perturbed copy of the 20-vertex net and the
balanced-mask enumeration at increasing degrees. Run directly:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import math
import random
import time

import numpy as np

from geonets import Point, VertexKind, build_paper_net
from geonets._kernels import HAS_NUMBA, get_impls
from geonets.solver import _arrays, moved


def _perturbed_arrays():
    net = build_paper_net()
    rng = random.Random(7)
    for v in list(net.vertices):
        if v.kind is VertexKind.BALANCED:
            net = moved(
                net,
                v.id,
                Point(v.pos.x + rng.uniform(-0.014, 0.014), v.pos.y + rng.uniform(-0.014, 0.014)),
            )
    _, pos, edges, free = _arrays(net)
    return pos, edges, free


def _time(fn, repeats: int = 5) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_descend(impls) -> None:
    pos, edges, free = _perturbed_arrays()
    print("descend to 1e-9 on the perturbed 20-vertex net:")
    results = {}
    for name, impl in impls.items():
        descend = impl["descend"]

        def run():
            out = descend(pos.copy(), free, edges, 0.1, 1e-9, 1e-4, 100_000, 1e-9)
            assert out[2], "descent failed to converge"
            return out

        run()  # warm up (jit compile on the numba path)
        best = _time(run)
        results[name] = best
        print(f"  {name:>6}: {best * 1e3:9.2f} ms")
    if len(results) == 2:
        print(f"  speedup: {results['numpy'] / results['numba']:.1f}x")


def bench_balanced_masks(impls) -> None:
    rng = np.random.default_rng(3)
    print("balanced-mask enumeration:")
    for degree in (8, 12, 16, 20):
        angles = rng.uniform(0.0, 2.0 * math.pi, size=degree)
        vecs = np.column_stack([np.cos(angles), np.sin(angles)])
        vecs[1] = -vecs[0]
        row = [f"  degree {degree:2d} (2^{degree} masks):"]
        timings = {}
        for name, impl in impls.items():
            masks = impl["balanced_masks"]
            masks(vecs, 1e-9)  # warm up
            timings[name] = _time(lambda: masks(vecs, 1e-9), repeats=3)
            row.append(f"{name} {timings[name] * 1e3:9.2f} ms")
        if len(timings) == 2:
            row.append(f"speedup {timings['numpy'] / timings['numba']:5.1f}x")
        print("  ".join(row))


def main() -> None:
    impls = {"numpy": get_impls("numpy")}
    if HAS_NUMBA:
        impls["numba"] = get_impls("numba")
    else:
        print("numba is not importable; benchmarking numpy only")
    bench_descend(impls)
    bench_balanced_masks(impls)


if __name__ == "__main__":
    main()
