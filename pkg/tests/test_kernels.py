import os
import pathlib
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from altorbits import _accel, kernels
from altorbits.dynsys import Pair, orbit_partition
from altorbits.flip import flips_bruteforce, flips_fast
from altorbits.smithloop import AbelianGroupSpec, Window

ROOT = pathlib.Path(__file__).resolve().parent.parent

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba path not active")


def _variants(name):
    """The numpy kernel, plus the numba one when it is compiled."""
    fns = [getattr(kernels, name + "_np")]
    if _accel.HAVE_NUMBA:
        fns.append(getattr(kernels, name + "_nb"))
    return fns


def test_successors():
    assert kernels.omega_successors(7).tolist() == [0, 2, 4, 6, 1, 3, 5]
    assert kernels.omega_successors(6)[3] == 3


@pytest.mark.parametrize("labels", _variants("orbit_labels"))
def test_labels_match_python_orbits(labels):
    for n in range(2, 301):
        lab = labels(n)
        for o in orbit_partition(n):
            rs = sorted(p.r for p in o.nodes)
            assert set(lab[rs].tolist()) == {rs[0]}, (n, rs[0])


@needs_numba
@given(st.integers(2, 1 << 16))
def test_label_backends_agree(n):
    assert np.array_equal(kernels.orbit_labels_np(n), kernels.orbit_labels_nb(n))


def test_labels_reject_small_n():
    with pytest.raises(ValueError):
        kernels.orbit_labels_np(1)


@pytest.mark.parametrize("walk", _variants("swap_on_bottom"))
def test_swap_matches_enumeration(walk):
    for n in range(2, 150):
        for r in range(1, n):
            assert walk(n, r) == flips_bruteforce(Pair(r, n - r)), (r, n - r)


@pytest.mark.parametrize("walk", _variants("swap_on_bottom"))
def test_swap_domain(walk):
    with pytest.raises(ValueError):
        walk(10, 0)
    with pytest.raises(ValueError):
        walk(10, 10)


@needs_numba
@given(st.integers(2, 10**7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_swap_backends_agree(nr):
    n, r = nr
    assert kernels.swap_on_bottom_np(n, r) == kernels.swap_on_bottom_nb(n, r)


@pytest.mark.parametrize("p", [
    # sums past 2**31 and 2**62 take the Python-integer route; a small odd
    # part keeps the bottom cycle short
    Pair(1, 3 * (1 << 40) - 1),
    Pair(2, 11 * (1 << 35) - 2),
    Pair(7, 5 * (1 << 62) - 7),
    Pair(1, 7 * (1 << 63) - 1),
    Pair(1 << 20, 3 * (1 << 64) - (1 << 20)),
])
def test_swap_big_integer_fallback(p):
    n = p.n
    expected = flips_fast(p).flips
    for walk in _variants("swap_on_bottom"):
        assert walk(n, p.r) == expected


@needs_numba
@pytest.mark.parametrize("G, max_exp, bound", [
    (AbelianGroupSpec.smith(), 6, 4),
    (AbelianGroupSpec.free_rank2(), 3, 2),
    (AbelianGroupSpec(1, (3,), (1, 0), (0, 2)), 3, 1),
])
def test_loop_kernels_agree(G, max_exp, bound):
    W = Window.build(G, max_exp, bound)
    gens = np.array([G.s0, G.s1], dtype=np.int64)
    mods = np.array(G.moduli, dtype=np.int64)
    ui, vi = np.divmod(np.arange(len(W) ** 2), len(W))
    args = (W.a[ui], W.i[ui], W.n[ui], W.a[vi], W.i[vi], W.n[vi], gens, mods)
    for x, y in zip(kernels.loop_mul_np(*args), kernels.loop_mul_nb(*args)):
        assert np.array_equal(x, y)
    s = W.a[W.n == 0]
    assert (kernels.s_associator_failures_np(s, W.a, W.i, W.n, gens, mods)
            == kernels.s_associator_failures_nb(s, W.a, W.i, W.n, gens, mods) == 0)


def test_public_bindings_follow_backend():
    if _accel.USE_NUMBA:
        assert kernels.orbit_labels is kernels.orbit_labels_nb
        assert kernels.loop_mul is kernels.loop_mul_nb
    else:
        assert kernels.orbit_labels is kernels.orbit_labels_np
        assert kernels.loop_mul is kernels.loop_mul_np


def _run(code, **env):
    full_env = dict(os.environ, **env)
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env=full_env, cwd=ROOT, check=True).stdout.strip()


def test_environment_flag_selects_numpy():
    code = ("from altorbits import kernels, _accel; "
            "print(_accel.backend_name(), kernels.orbit_labels is kernels.orbit_labels_np)")
    assert _run(code, ALTORBITS_PURE_NUMPY="1") == "numpy True"
    assert _run(code, ALTORBITS_PURE_NUMPY="yes") == "numpy True"
    if _accel.HAVE_NUMBA:
        assert _run(code, ALTORBITS_PURE_NUMPY="0") == "numba False"


def test_numpy_path_end_to_end():
    code = ("from altorbits.flip import flip_table_bruteforce, flips_fast, nonflip_window\n"
            "from altorbits.dynsys import Pair\n"
            "bad = [(r, n) for n in range(2, 200) for r in range(1, n)\n"
            "       if bool(flip_table_bruteforce(n)[r]) != flips_fast(Pair(r, n - r)).flips]\n"
            "print(len(bad), nonflip_window(4))")
    assert _run(code, ALTORBITS_PURE_NUMPY="1") == "0 90"


@needs_numba
def test_benchmark_quick_run():
    out = subprocess.run([sys.executable, str(ROOT / "benchmarks" / "bench_kernels.py"), "--quick",
                          "--repeat", "1"], capture_output=True, text=True, cwd=ROOT)
    assert out.returncode == 0, out.stdout + out.stderr
    assert "MISMATCH" not in out.stdout
    for name in ("orbit_labels", "swap_on_bottom", "loop_mul", "s_associator_failures"):
        assert name in out.stdout
