"""An infinite alternative loop in which x0 has no two-sided inverse.

Elements are ``a·x_i^n`` with ``a`` in an abelian group S, ``i`` in {0, 1}
and ``n >= 0``; ``x_i^0`` is identified with 1, so the canonical form has
``i = 0`` whenever ``n = 0``.  The product is::

    a x_i^n ∘ b x_j^m = (ab) x_i^(n+m)          if i == j
                      = (ab s_i^n) x_j^(m-n)    if i != j and n <= m
                      = (ab s_i^m) x_i^(n-m)    if i != j and n >= m

S is written additively here: an element is an integer vector whose first
``free_rank`` coordinates are free and whose remaining coordinates are
reduced modulo the listed torsion orders.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import freegroupoid as fg
from . import kernels

MAX_BRACKETING_POWER = 10


class LoopSpecError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroupSpec:
    free_rank: int
    torsion: tuple[int, ...]
    s0: tuple[int, ...]
    s1: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise LoopSpecError("free_rank must be nonnegative")
        torsion = tuple(int(m) for m in self.torsion)
        if any(m < 2 for m in torsion):
            raise LoopSpecError(f"torsion orders must be >= 2, got {torsion}")
        object.__setattr__(self, "torsion", torsion)
        if self.dim == 0:
            raise LoopSpecError("the group must have at least one coordinate")
        object.__setattr__(self, "s0", self.reduce(self.s0))
        object.__setattr__(self, "s1", self.reduce(self.s1))
        if self.s0 == self.s1:
            raise LoopSpecError("s0 and s1 must differ, otherwise x0 has a two-sided inverse")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def reduce(self, a) -> tuple[int, ...]:
        a = tuple(int(c) for c in a)
        if len(a) != self.dim:
            raise LoopSpecError(f"element {a} has {len(a)} coordinates, expected {self.dim}")
        return tuple(c % m if m else c for c, m in zip(a, self.moduli))

    def add(self, *elems) -> tuple[int, ...]:
        return self.reduce(tuple(sum(cs) for cs in zip(*elems)))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(tuple(-c for c in a))

    def scale(self, a, k: int) -> tuple[int, ...]:
        return self.reduce(tuple(k * c for c in a))

    def gen(self, i: int) -> tuple[int, ...]:
        return self.s0 if i == 0 else self.s1

    def elements_within(self, bound: int) -> list[tuple[int, ...]]:
        """Distinct group elements with every coordinate in [-bound, bound], after reduction."""
        rng = range(-bound, bound + 1)
        return sorted({self.reduce(v) for v in itertools.product(rng, repeat=self.dim)})

    @classmethod
    def smith(cls) -> AbelianGroupSpec:
        """S cyclic of order 2 with s0 the identity and s1 the generator."""
        return cls(0, (2,), (0,), (1,))

    @classmethod
    def free_rank2(cls) -> AbelianGroupSpec:
        return cls(2, (), (1, 0), (0, 1))


@dataclass(frozen=True, order=True)
class LoopElem:
    a: tuple[int, ...]
    i: int = 0
    n: int = 0

    def __post_init__(self):
        if self.i not in (0, 1):
            raise LoopSpecError(f"index must be 0 or 1, got {self.i}")
        if self.n < 0:
            raise LoopSpecError(f"exponent must be nonnegative, got {self.n}")
        object.__setattr__(self, "a", tuple(int(c) for c in self.a))
        if self.n == 0:
            object.__setattr__(self, "i", 0)

    def in_S(self) -> bool:
        return self.n == 0

    def __str__(self):
        coeff = "(" + ",".join(str(c) for c in self.a) + ")"
        if self.n == 0:
            return coeff
        return f"{coeff}·x_{self.i}^{self.n}"


def elem(G: AbelianGroupSpec, a=None, i: int = 0, n: int = 0) -> LoopElem:
    return LoopElem(G.zero if a is None else G.reduce(a), i, n)


def identity(G: AbelianGroupSpec) -> LoopElem:
    return elem(G)


def x(G: AbelianGroupSpec, i: int, n: int = 1) -> LoopElem:
    return elem(G, None, i, n)


def mul(u: LoopElem, v: LoopElem, G: AbelianGroupSpec) -> LoopElem:
    if u.i == v.i:
        return LoopElem(G.add(u.a, v.a), u.i, u.n + v.n)
    twist = G.scale(G.gen(u.i), min(u.n, v.n))
    if u.n <= v.n:
        return LoopElem(G.add(u.a, v.a, twist), v.i, v.n - u.n)
    return LoopElem(G.add(u.a, v.a, twist), u.i, u.n - v.n)


def left_div(u: LoopElem, z: LoopElem, G: AbelianGroupSpec) -> LoopElem:
    """The unique y with ``u ∘ y = z``."""
    base = G.add(G.neg(u.a), z.a)
    if u.n == 0:
        return LoopElem(base, z.i, z.n)
    if u.i == z.i and z.n >= u.n:
        return LoopElem(base, u.i, z.n - u.n)
    if u.i == z.i or z.n == 0:
        # result carries the other index and absorbs u's surplus exponent
        d = u.n - z.n
        return LoopElem(G.add(base, G.scale(G.gen(u.i), -d)), 1 - u.i, d)
    return LoopElem(G.add(base, G.scale(G.gen(u.i), -u.n)), z.i, z.n + u.n)


def right_div(z: LoopElem, u: LoopElem, G: AbelianGroupSpec) -> LoopElem:
    """The unique w with ``w ∘ u = z``."""
    base = G.add(z.a, G.neg(u.a))
    if u.n == 0:
        return LoopElem(base, z.i, z.n)
    if u.i == z.i and z.n >= u.n:
        return LoopElem(base, u.i, z.n - u.n)
    if u.i == z.i or z.n == 0:
        d = u.n - z.n
        k = 1 - u.i
        return LoopElem(G.add(base, G.scale(G.gen(k), -d)), k, d)
    return LoopElem(G.add(base, G.scale(G.gen(z.i), -u.n)), z.i, z.n + u.n)


def two_sided_inverse(u: LoopElem, G: AbelianGroupSpec) -> LoopElem | None:
    y = left_div(u, identity(G), G)
    z = right_div(identity(G), u, G)
    return y if y == z else None


def evaluate(word, u: LoopElem, G: AbelianGroupSpec, _memo=None) -> LoopElem:
    """Value of the bracketed power ``word`` with every letter set to ``u``."""
    memo = {} if _memo is None else _memo
    if fg.is_leaf(word):
        return u
    if word not in memo:
        memo[word] = mul(evaluate(word[0], u, G, memo), evaluate(word[1], u, G, memo), G)
    return memo[word]


def power_all_bracketings(u: LoopElem, n: int, G: AbelianGroupSpec) -> set[LoopElem]:
    if not 1 <= n <= MAX_BRACKETING_POWER:
        raise ValueError(f"power must be in 1..{MAX_BRACKETING_POWER}, got {n}")
    memo = {}
    return {evaluate(w, u, G, memo) for w in fg.enumerate_words(n)}


def left_powers(u: LoopElem, count: int, G: AbelianGroupSpec) -> list[LoopElem]:
    """u^(0) = 1, u^(k+1) = u ∘ u^(k), for k < count."""
    out = [identity(G)]
    for _ in range(count - 1):
        out.append(mul(u, out[-1], G))
    return out


def right_powers(u: LoopElem, count: int, G: AbelianGroupSpec) -> list[LoopElem]:
    out = [identity(G)]
    for _ in range(count - 1):
        out.append(mul(out[-1], u, G))
    return out


# -- exhaustive window checks, vectorized over all pairs --------------------

@dataclass
class Window:
    """Every element a·x_i^n with coefficients drawn from ``coeffs`` and n <= max_exp, as arrays."""

    G: AbelianGroupSpec
    a: np.ndarray
    i: np.ndarray
    n: np.ndarray

    @classmethod
    def build(cls, G: AbelianGroupSpec, max_exp: int, coeff_bound: int) -> Window:
        coeffs = G.elements_within(coeff_bound)
        rows = [(c, 0, 0) for c in coeffs]
        rows += [(c, i, e) for e in range(1, max_exp + 1) for i in (0, 1) for c in coeffs]
        a = np.array([r[0] for r in rows], dtype=np.int64).reshape(len(rows), G.dim)
        i = np.array([r[1] for r in rows], dtype=np.int64)
        n = np.array([r[2] for r in rows], dtype=np.int64)
        return cls(G, a, i, n)

    def __len__(self):
        return len(self.i)

    def element(self, k: int) -> LoopElem:
        return LoopElem(tuple(int(c) for c in self.a[k]), int(self.i[k]), int(self.n[k]))


def _gens(G):
    return np.array([G.s0, G.s1], dtype=np.int64)


def _mul_arrays(G, u, v):
    return kernels.loop_mul(u[0], u[1], u[2], v[0], v[1], v[2], _gens(G), np.array(G.moduli))


def _eq(p, q):
    return np.all(p[0] == q[0], axis=1) & (p[1] == q[1]) & (p[2] == q[2])


def _take(W, idx):
    return W.a[idx], W.i[idx], W.n[idx]


def left_div_arrays(G: AbelianGroupSpec, u, z):
    """Vectorized :func:`left_div` over rows of (a, i, n) arrays."""
    gens = _gens(G)
    (ua, ui, un), (za, zi, zn) = u, z
    base = za - ua
    same = ui == zi
    case_s = un == 0
    case_fits = same & (zn >= un)
    case_switch = same | (zn == 0)
    surplus = un - zn
    shift = np.select([case_s, case_fits, case_switch], [0, 0, surplus], un)
    a = base - shift[:, None] * gens[ui]
    i = np.select([case_s, case_fits, case_switch], [zi, ui, 1 - ui], zi)
    n = np.select([case_s, case_fits, case_switch], [zn, zn - un, surplus], zn + un)
    return _canonical(G, a, i, n)


def right_div_arrays(G: AbelianGroupSpec, z, u):
    """Vectorized :func:`right_div` over rows of (a, i, n) arrays."""
    gens = _gens(G)
    (za, zi, zn), (ua, ui, un) = z, u
    base = za - ua
    same = ui == zi
    case_s = un == 0
    case_fits = same & (zn >= un)
    case_switch = same | (zn == 0)
    surplus = un - zn
    shift = np.select([case_s, case_fits, case_switch], [0, 0, surplus], un)
    gen_idx = np.select([case_switch & ~case_fits & ~case_s], [1 - ui], zi)
    a = base - shift[:, None] * gens[gen_idx]
    i = np.select([case_s, case_fits, case_switch], [zi, ui, 1 - ui], zi)
    n = np.select([case_s, case_fits, case_switch], [zn, zn - un, surplus], zn + un)
    return _canonical(G, a, i, n)


def _canonical(G, a, i, n):
    mods = np.array(G.moduli, dtype=np.int64)
    tors = mods > 0
    a = a.copy()
    if tors.any():
        a[:, tors] = np.mod(a[:, tors], mods[tors])
    i = np.where(n == 0, 0, i)
    return a, i, n


@dataclass
class LawReport:
    spec: AbelianGroupSpec
    max_exp: int
    coeff_bound: int
    window_size: int
    failures: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, law: str, bad, describe=None, limit: int = 5):
        bad = np.asarray(bad)
        self.checked[law] = int(bad.size)
        hits = np.flatnonzero(bad)
        if hits.size:
            self.failures[law] = [describe(int(k)) if describe else int(k) for k in hits[:limit]]

    def to_dict(self):
        return {
            "free_rank": self.spec.free_rank,
            "torsion": list(self.spec.torsion),
            "s0": list(self.spec.s0),
            "s1": list(self.spec.s1),
            "max_exp": self.max_exp,
            "coeff_bound": self.coeff_bound,
            "window_size": self.window_size,
            "checked": self.checked,
            "failures": self.failures,
            "ok": self.ok,
        }


def verify_laws_window(G: AbelianGroupSpec, exponent_bound: int, coeff_bound: int) -> LawReport:
    """Exhaustively check the loop and alternative laws on a finite window.

    The window holds every a·x_i^n with n <= exponent_bound and coefficients
    in [-coeff_bound, coeff_bound].  Over all pairs (u, v) it checks the
    identity law, both alternative laws, both division round trips, that
    left and right multiplication are injective on the window (no second
    quotient inside it), and over all triples (c, u, v) with c in S that c
    commutes and associates.  Cost: O(W^2) pair products plus O(K W^2)
    triple products, K the number of S-elements in the window.
    """
    W = Window.build(G, exponent_bound, coeff_bound)
    size = len(W)
    report = LawReport(G, exponent_bound, coeff_bound, size)
    ui, vi = np.divmod(np.arange(size * size), size)
    u = _take(W, ui)
    v = _take(W, vi)
    mul_ = lambda p, q: _mul_arrays(G, p, q)  # noqa: E731

    def one_elem(k):
        return str(W.element(k))

    def two_elems(k):
        return (str(W.element(int(ui[k]))), str(W.element(int(vi[k]))))

    everyone = _take(W, np.arange(size))
    one = (np.zeros((size, G.dim), dtype=np.int64), np.zeros(size, np.int64), np.zeros(size, np.int64))
    report.record("left_identity", ~_eq(mul_(one, everyone), everyone), one_elem)
    report.record("right_identity", ~_eq(mul_(everyone, one), everyone), one_elem)

    uv = mul_(u, v)
    report.record("left_alternative", ~_eq(mul_(u, uv), mul_(mul_(u, u), v)), two_elems)
    report.record("right_alternative", ~_eq(mul_(u, mul_(v, v)), mul_(uv, v)), two_elems)

    # v plays the role of the right-hand side z
    report.record("left_division", ~_eq(mul_(u, left_div_arrays(G, u, v)), v), two_elems)
    report.record("right_division", ~_eq(mul_(right_div_arrays(G, v, u), u), v), two_elems)
    report.record("left_div_of_product", ~_eq(left_div_arrays(G, u, uv), v), two_elems)
    report.record("right_div_of_product", ~_eq(right_div_arrays(G, uv, v), u), two_elems)

    keys = np.column_stack([uv[2], uv[1], uv[0]]).reshape(size, size, -1)
    report.record("left_unique",
                  [len(np.unique(keys[k], axis=0)) != size for k in range(size)], one_elem)
    report.record("right_unique",
                  [len(np.unique(keys[:, k], axis=0)) != size for k in range(size)], one_elem)

    s_part = W.a[W.n == 0]
    fails = kernels.s_associator_failures(s_part, W.a, W.i, W.n, _gens(G), np.array(G.moduli))
    report.checked["S_central"] = int(len(s_part) * size * size)
    if fails:
        report.failures["S_central"] = [f"{fails} failing (c, u, v) triples"]
    return report


def parse_spec_text(text: str) -> AbelianGroupSpec:
    """Parse ``key=value`` lines: free_rank, torsion, s0, s1 (vectors comma-separated)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise LoopSpecError(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in ("free_rank", "torsion", "s0", "s1"):
            raise LoopSpecError(f"line {lineno}: unknown key {key!r}")
        values[key] = val
    missing = {"free_rank", "s0", "s1"} - values.keys()
    if missing:
        raise LoopSpecError(f"missing keys: {', '.join(sorted(missing))}")

    def vec(s):
        return tuple(int(c) for c in s.split(",") if c.strip())

    try:
        return AbelianGroupSpec(int(values["free_rank"]), vec(values.get("torsion", "")),
                                vec(values["s0"]), vec(values["s1"]))
    except ValueError as exc:
        if isinstance(exc, LoopSpecError):
            raise
        raise LoopSpecError(str(exc)) from exc


def load_spec(path) -> AbelianGroupSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_text(fh.read())
