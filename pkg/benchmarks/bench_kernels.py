"""Time the numba kernels against their pure-numpy counterparts.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]

Each kernel is warmed up once (numba compiles on first call, cached on disk
afterwards), then timed ``--repeat`` times; the best run is reported.  Both
variants must return identical results or the script exits nonzero.
"""
import argparse
import sys
import time

import numpy as np

from altorbits import kernels
from altorbits._accel import HAVE_NUMBA
from altorbits.smithloop import AbelianGroupSpec, Window


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(x, y):
    if isinstance(x, tuple):
        return all(np.array_equal(p, q) for p, q in zip(x, y))
    return np.array_equal(x, y)


def cases(quick):
    n_label = 1 << 16 if quick else 1 << 20
    yield ("orbit_labels", f"n={n_label}",
           lambda: kernels.orbit_labels_np(n_label),
           lambda: kernels.orbit_labels_nb(n_label))

    # the M = 6 non-flip window; these orbits have bottom cycles of ~1e7 nodes
    walk = [(160216181, s) for s in range(1, 7)]
    if quick:
        walk = walk[:2]
    yield ("swap_on_bottom", f"{len(walk)} pairs, n~1.6e8",
           lambda: np.array([kernels.swap_on_bottom_np(r + s, r) for r, s in walk]),
           lambda: np.array([kernels.swap_on_bottom_nb(r + s, r) for r, s in walk]))

    G = AbelianGroupSpec.free_rank2()
    W = Window.build(G, 4 if quick else 8, 2 if quick else 4)
    gens = np.array([G.s0, G.s1], dtype=np.int64)
    mods = np.array(G.moduli, dtype=np.int64)
    ui, vi = np.divmod(np.arange(len(W) ** 2), len(W))
    args = (W.a[ui], W.i[ui], W.n[ui], W.a[vi], W.i[vi], W.n[vi], gens, mods)
    yield ("loop_mul", f"{ui.size} products",
           lambda: kernels.loop_mul_np(*args),
           lambda: kernels.loop_mul_nb(*args))

    W = Window.build(G, 3 if quick else 5, 1 if quick else 2)
    s_coeffs = W.a[W.n == 0]
    yield ("s_associator_failures", f"{len(s_coeffs)} x {len(W)}^2 triples",
           lambda: kernels.s_associator_failures_np(s_coeffs, W.a, W.i, W.n, gens, mods),
           lambda: kernels.s_associator_failures_nb(s_coeffs, W.a, W.i, W.n, gens, mods))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small inputs, for smoke testing")
    opts = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba unavailable (or ALTORBITS_PURE_NUMPY set); nothing to compare")
        return 0

    print(f"{'kernel':<24}{'input':<30}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    print("-" * 88)
    status = 0
    for name, label, np_fn, nb_fn in cases(opts.quick):
        t_np, out_np = best_of(np_fn, opts.repeat)
        t_nb, out_nb = best_of(nb_fn, opts.repeat)
        flag = ""
        if not same(out_np, out_nb):
            flag = "  MISMATCH"
            status = 1
        print(f"{name:<24}{label:<30}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x{flag}")
    return status


if __name__ == "__main__":
    sys.exit(main())
