"""Hot inner loops, each with a numba and a pure-numpy implementation.

The public names (``orbit_labels``, ``swap_on_bottom``, ``loop_mul``,
``s_associator_failures``) are
bound to the numba variants when numba is active and to the ``*_np``
variants otherwise; see :mod:`altorbits._accel`.  Both variants are kept
importable so tests and the benchmark can compare them.

Points of a fixed sum ``n`` are indexed by their first coordinate
``r`` in ``1..n-1``; index 0 is unused padding.
"""
from __future__ import annotations

import numpy as np

from . import _accel

# products of two residues below this bound fit in int64
_INT64_SAFE_MODULUS = 1 << 31
_CHUNK = 1 << 15


def omega_successors(n: int) -> np.ndarray:
    """First coordinate of ω(r, n-r) for every r; the point (n/2, n/2) maps to itself."""
    r = np.arange(n, dtype=np.int64)
    succ = (2 * r) % n
    if n % 2 == 0:
        succ[n // 2] = n // 2
    succ[0] = 0
    return succ


def _relabel_to_min(labels: np.ndarray) -> np.ndarray:
    n = labels.shape[0]
    idx = np.arange(n, dtype=np.int64)
    lowest = np.full(n, n, dtype=np.int64)
    np.minimum.at(lowest, labels, idx)
    return lowest[labels]


def orbit_labels_np(n: int) -> np.ndarray:
    """Label each r in 1..n-1 by the smallest first coordinate in its orbit.

    Orbits are the weakly connected components of the ω functional graph.
    Pointer doubling: after K rounds with 2**K >= n, ``jump`` lands every
    node on its cycle and ``low`` at a cycle node spans the whole cycle.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    jump = omega_successors(n)
    low = np.arange(n, dtype=np.int64)
    for _ in range(int(n).bit_length() + 1):
        low = np.minimum(low, low[jump])
        jump = jump[jump]
    return _relabel_to_min(low[jump])


def swap_on_bottom_np(n: int, r: int) -> bool:
    """True iff (n-r, r) lies in the orbit of (r, n-r), by walking ω forward.

    Doubling r mod n lands on the bottom after at most v2(n) steps; the walk
    then scans one full cycle for the mirrored first coordinate.
    """
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got r={r}, n={n}")
    x = r
    for _ in range(int(n).bit_length() + 1):
        if 2 * x == n:
            return True
        x = 2 * x % n
    if 2 * x == n:
        return True
    if n >= _INT64_SAFE_MODULUS:
        return _swap_on_cycle_pyint(n, x)
    start = x
    target = n - start
    chunk = min(_CHUNK, 1 << int(n).bit_length())
    table = np.ones(chunk, dtype=np.int64)
    width = 1
    while width < chunk:
        table[width:2 * width] = table[:width] * pow(2, width, n) % n
        width *= 2
    stride = pow(2, chunk, n)
    base = start
    while True:
        block = base * table % n
        hits = np.flatnonzero(block[1:] == start)
        end = hits[0] + 1 if hits.size else chunk
        if np.any(block[:end] == target):
            return True
        if hits.size:
            return False
        base = base * stride % n


def _swap_on_cycle_pyint(n: int, start: int) -> bool:
    target = n - start
    x = start
    while True:
        if x == target:
            return True
        x = 2 * x % n
        if x == start:
            return False


def _canonical_np(a, i, e, mods):
    tors = mods > 0
    if tors.any():
        a[:, tors] = np.mod(a[:, tors], mods[tors])
    i[e == 0] = 0
    return a, i, e


def loop_mul_np(a1, i1, e1, a2, i2, e2, gens, mods):
    """Row-wise product in the loop of pairs a·x_i^e.

    ``a*`` are (N, d) coefficient vectors in the additive group, ``i*`` the
    symbol index, ``e*`` the exponent; ``gens`` is the (2, d) array holding
    s0 and s1, ``mods`` the per-coordinate torsion (0 = free).
    """
    a1 = np.asarray(a1, dtype=np.int64)
    a2 = np.asarray(a2, dtype=np.int64)
    i1 = np.asarray(i1, dtype=np.int64)
    i2 = np.asarray(i2, dtype=np.int64)
    e1 = np.asarray(e1, dtype=np.int64)
    e2 = np.asarray(e2, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    # symbol indices are 0 or 1, so selects are arithmetic, and the twist is
    # added one coordinate at a time: numpy is slow at fancy indexing, at
    # np.where, and at broadcasting over a short trailing axis
    diff = i1 ^ i2
    low = np.minimum(e1, e2)
    twist = diff * low
    twist1 = twist * i1
    a = a1 + a2
    for k in range(a.shape[1]):
        a[:, k] += gens[0, k] * twist + (gens[1, k] - gens[0, k]) * twist1
    i = i1 + (diff & (e1 <= e2)) * (i2 - i1)
    e = np.abs(e2 - e1) + (1 - diff) * (2 * low)
    return _canonical_np(a, i, e, np.asarray(mods, dtype=np.int64))


def s_associator_failures_np(s_coeffs, a, i, e, gens, mods):
    """Count triples (c, u, v), c in S, where c fails to commute or associate.

    ``s_coeffs`` is (K, d): the S-elements c (exponent 0).  ``a, i, e``
    describe the window W.  Checks c∘u = u∘c, (c∘u)∘v = c∘(u∘v),
    (u∘c)∘v = u∘(c∘v) and (u∘v)∘c = u∘(v∘c) for all u, v in W.
    """
    a = np.asarray(a, dtype=np.int64)
    i = np.asarray(i, dtype=np.int64)
    e = np.asarray(e, dtype=np.int64)
    size = i.shape[0]
    zeros = np.zeros(size, dtype=np.int64)
    cs = np.asarray(s_coeffs, dtype=np.int64)
    cu_all, uc_all = [], []
    for c in cs:
        cw = (np.broadcast_to(c, a.shape), zeros, zeros)
        cu_all.append(loop_mul_np(*cw, a, i, e, gens, mods))
        uc_all.append(loop_mul_np(a, i, e, *cw, gens, mods))
    failures = 0
    # blocks of pairs small enough that the temporaries stay in cache
    step = _ASSOC_BLOCK
    for start in range(0, size * size, step):
        ui, vi = np.divmod(np.arange(start, min(start + step, size * size)), size)
        u = (a[ui], i[ui], e[ui])
        v = (a[vi], i[vi], e[vi])
        uv = loop_mul_np(*u, *v, gens, mods)
        zk = np.zeros(ui.size, dtype=np.int64)
        for c, cu, uc in zip(cs, cu_all, uc_all):
            cpairs = (np.broadcast_to(c, u[0].shape), zk, zk)
            cu_u = tuple(x[ui] for x in cu)
            uc_u = tuple(x[ui] for x in uc)
            bad = ~_rows_equal(cu_u, uc_u)
            bad |= ~_rows_equal(loop_mul_np(*cu_u, *v, gens, mods),
                                loop_mul_np(*cpairs, *uv, gens, mods))
            bad |= ~_rows_equal(loop_mul_np(*uc_u, *v, gens, mods),
                                loop_mul_np(*u, *(x[vi] for x in cu), gens, mods))
            bad |= ~_rows_equal(loop_mul_np(*uv, *cpairs, gens, mods),
                                loop_mul_np(*u, *(x[vi] for x in uc), gens, mods))
            failures += int(bad.sum())
    return failures


_ASSOC_BLOCK = 1 << 14


def _rows_equal(p, q):
    eq = (p[1] == q[1]) & (p[2] == q[2])
    for k in range(p[0].shape[1]):
        eq &= p[0][:, k] == q[0][:, k]
    return eq


if _accel.USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def _orbit_labels_core(n):
        parent = np.arange(n)
        for r in range(1, n):
            if 2 * r == n:
                continue
            a = _find(parent, r)
            b = _find(parent, (2 * r) % n)
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
        labels = np.zeros(n, dtype=np.int64)
        for r in range(1, n):
            labels[r] = _find(parent, r)
        return labels

    def orbit_labels_nb(n: int) -> np.ndarray:
        """Numba variant of :func:`orbit_labels_np` (union-find)."""
        if n < 2:
            raise ValueError("n must be >= 2")
        return _orbit_labels_core(n)

    @njit(cache=True)
    def _swap_on_bottom_core(n, r):
        x = r
        for _ in range(64):
            if 2 * x == n:
                return True
            x = 2 * x % n
        if 2 * x == n:
            return True
        start = x
        target = n - start
        while True:
            if x == target:
                return True
            x = 2 * x % n
            if x == start:
                return False

    def swap_on_bottom_nb(n: int, r: int) -> bool:
        """Numba variant of :func:`swap_on_bottom_np`."""
        if not 0 < r < n:
            raise ValueError(f"need 0 < r < n, got r={r}, n={n}")
        if n >= 1 << 62:
            x = r
            for _ in range(int(n).bit_length() + 1):
                if 2 * x == n:
                    return True
                x = 2 * x % n
            if 2 * x == n:
                return True
            return _swap_on_cycle_pyint(n, x)
        return bool(_swap_on_bottom_core(n, r))

    @njit(cache=True)
    def _loop_mul_core(a1, i1, e1, a2, i2, e2, gens, mods):
        rows, dim = a1.shape
        a = np.empty((rows, dim), dtype=np.int64)
        i = np.empty(rows, dtype=np.int64)
        e = np.empty(rows, dtype=np.int64)
        for k in range(rows):
            if i1[k] == i2[k]:
                twist = 0
                i[k] = i1[k]
                e[k] = e1[k] + e2[k]
            elif e1[k] <= e2[k]:
                twist = e1[k]
                i[k] = i2[k]
                e[k] = e2[k] - e1[k]
            else:
                twist = e2[k]
                i[k] = i1[k]
                e[k] = e1[k] - e2[k]
            for d in range(dim):
                v = a1[k, d] + a2[k, d] + twist * gens[i1[k], d]
                if mods[d] > 0:
                    v = v % mods[d]
                a[k, d] = v
            if e[k] == 0:
                i[k] = 0
        return a, i, e

    def loop_mul_nb(a1, i1, e1, a2, i2, e2, gens, mods):
        """Numba variant of :func:`loop_mul_np`."""
        as64 = lambda x: np.ascontiguousarray(x, dtype=np.int64)  # noqa: E731
        return _loop_mul_core(as64(a1), as64(i1), as64(e1), as64(a2), as64(i2), as64(e2),
                              as64(gens), as64(mods))

    @njit(cache=True, inline="always")
    def _mul_rows(a1, i1, e1, r1, a2, i2, e2, r2, gens, mods, out_a, out_i, out_e, r):
        """out[r] = x1[r1] ∘ x2[r2] for rows of (a, i, e) arrays."""
        left_i = i1[r1]
        left_e = e1[r1]
        right_i = i2[r2]
        right_e = e2[r2]
        if left_i == right_i:
            twist = 0
            idx = left_i
            exp = left_e + right_e
        elif left_e <= right_e:
            twist = left_e
            idx = right_i
            exp = right_e - left_e
        else:
            twist = right_e
            idx = left_i
            exp = left_e - right_e
        for d in range(out_a.shape[1]):
            v = a1[r1, d] + a2[r2, d] + twist * gens[left_i, d]
            if mods[d] > 0:
                v = v % mods[d]
            out_a[r, d] = v
        out_e[r] = exp
        if exp == 0:
            out_i[r] = 0
        else:
            out_i[r] = idx

    @njit(cache=True, inline="always")
    def _pair_differs(la, li, le):
        diff = (li[0] != li[1]) | (le[0] != le[1])
        for d in range(la.shape[1]):
            diff |= la[0, d] != la[1, d]
        return diff

    @njit(cache=True)
    def _s_associator_core(s_coeffs, a, i, e, gens, mods):
        size, dim = a.shape
        k_count = s_coeffs.shape[0]
        ci = np.zeros(k_count, dtype=np.int64)
        ce = np.zeros(k_count, dtype=np.int64)
        # products that do not depend on the S-element
        uv_a = np.empty((size * size, dim), dtype=np.int64)
        uv_i = np.empty(size * size, dtype=np.int64)
        uv_e = np.empty(size * size, dtype=np.int64)
        for p in range(size):
            for q in range(size):
                _mul_rows(a, i, e, p, a, i, e, q, gens, mods, uv_a, uv_i, uv_e, p * size + q)
        cu_a = np.empty((size, dim), dtype=np.int64)
        cu_i = np.empty(size, dtype=np.int64)
        cu_e = np.empty(size, dtype=np.int64)
        uc_a = np.empty((size, dim), dtype=np.int64)
        uc_i = np.empty(size, dtype=np.int64)
        uc_e = np.empty(size, dtype=np.int64)
        la = np.empty((2, dim), dtype=np.int64)
        li = np.empty(2, dtype=np.int64)
        le = np.empty(2, dtype=np.int64)
        failures = 0
        for k in range(k_count):
            for p in range(size):
                _mul_rows(s_coeffs, ci, ce, k, a, i, e, p, gens, mods, cu_a, cu_i, cu_e, p)
                _mul_rows(a, i, e, p, s_coeffs, ci, ce, k, gens, mods, uc_a, uc_i, uc_e, p)
            for p in range(size):
                commute = (cu_i[p] != uc_i[p]) | (cu_e[p] != uc_e[p])
                for d in range(dim):
                    commute |= cu_a[p, d] != uc_a[p, d]
                for q in range(size):
                    pq = p * size + q
                    # (c∘u)∘v = c∘(u∘v)
                    _mul_rows(cu_a, cu_i, cu_e, p, a, i, e, q, gens, mods, la, li, le, 0)
                    _mul_rows(s_coeffs, ci, ce, k, uv_a, uv_i, uv_e, pq, gens, mods, la, li, le, 1)
                    bad = commute | _pair_differs(la, li, le)
                    # (u∘c)∘v = u∘(c∘v)
                    _mul_rows(uc_a, uc_i, uc_e, p, a, i, e, q, gens, mods, la, li, le, 0)
                    _mul_rows(a, i, e, p, cu_a, cu_i, cu_e, q, gens, mods, la, li, le, 1)
                    bad |= _pair_differs(la, li, le)
                    # (u∘v)∘c = u∘(v∘c)
                    _mul_rows(uv_a, uv_i, uv_e, pq, s_coeffs, ci, ce, k, gens, mods, la, li, le, 0)
                    _mul_rows(a, i, e, p, uc_a, uc_i, uc_e, q, gens, mods, la, li, le, 1)
                    bad |= _pair_differs(la, li, le)
                    failures += bad
        return failures

    def s_associator_failures_nb(s_coeffs, a, i, e, gens, mods):
        """Numba variant of :func:`s_associator_failures_np`."""
        as64 = lambda x: np.ascontiguousarray(x, dtype=np.int64)  # noqa: E731
        return int(_s_associator_core(as64(s_coeffs), as64(a), as64(i), as64(e), as64(gens), as64(mods)))

    orbit_labels = orbit_labels_nb
    swap_on_bottom = swap_on_bottom_nb
    loop_mul = loop_mul_nb
    s_associator_failures = s_associator_failures_nb
else:
    orbit_labels = orbit_labels_np
    swap_on_bottom = swap_on_bottom_np
    loop_mul = loop_mul_np
    s_associator_failures = s_associator_failures_np
