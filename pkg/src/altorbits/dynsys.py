"""The two-dimensional dynamical system induced by the alternative laws.

A point ``(r, s)`` records the lengths of the two top factors of a word.
One application of an alternative law moves it by one of four partial maps::

    alpha(r, s) = (2r, s - r)        defined for s > r
    beta(r, s)  = (r - s, 2s)        defined for r > s
    gamma(r, s) = (r/2, s + r/2)     defined for r even
    delta(r, s) = (r + s/2, s/2)     defined for s even

alpha and beta merge into ``omega(r, s) = (2r mod n, 2s mod n)`` with
``n = r + s``; gamma and delta are its right inverses.  An orbit is therefore a
functional graph: a bottom cycle (or the single point ``(n/2, n/2)``) with
binary trees of omega-preimages hanging off it.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .numtheory import is_prime, mult_order, v2

DEFAULT_MAX_N = 1 << 20

MAP_NAMES = ("alpha", "beta", "gamma", "delta")


class OrbitLimitError(ValueError):
    """Raised when a coordinate sum exceeds the enumeration cap."""


@dataclass(frozen=True, order=True, slots=True)
class Pair:
    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError(f"Pair coordinates must be ints, got {self.r!r}, {self.s!r}")
        if self.r < 1 or self.s < 1:
            raise ValueError(f"Pair coordinates must be positive, got ({self.r}, {self.s})")

    @property
    def n(self) -> int:
        return self.r + self.s

    @property
    def depth(self) -> int:
        return math.gcd(self.r, self.s)

    def swapped(self) -> Pair:
        return Pair(self.s, self.r)

    def __iter__(self):
        yield self.r
        yield self.s

    def __str__(self):
        return f"({self.r},{self.s})"


def as_pair(p) -> Pair:
    if isinstance(p, Pair):
        return p
    r, s = p
    return Pair(int(r), int(s))


def step(map_name: str, p) -> Pair | None:
    """Apply one of the four partial maps; ``None`` outside its domain."""
    p = as_pair(p)
    r, s = p.r, p.s
    if map_name == "alpha":
        out = Pair(2 * r, s - r) if s > r else None
    elif map_name == "beta":
        out = Pair(r - s, 2 * s) if r > s else None
    elif map_name == "gamma":
        out = Pair(r // 2, s + r // 2) if r % 2 == 0 else None
    elif map_name == "delta":
        out = Pair(r + s // 2, s // 2) if s % 2 == 0 else None
    else:
        raise ValueError(f"unknown map {map_name!r}; expected one of {MAP_NAMES}")
    assert out is None or out.n == p.n
    return out


def omega(p) -> Pair | None:
    p = as_pair(p)
    if p.r == p.s:
        return None
    n = p.n
    out = Pair(2 * p.r % n, 2 * p.s % n)
    assert out.n == n
    return out


def omega_preimages(p) -> set[Pair]:
    """All points mapped onto ``p`` by omega (the gamma and delta images)."""
    p = as_pair(p)
    return {q for q in (step("gamma", p), step("delta", p)) if q is not None}


@dataclass(frozen=True)
class OrbitShape:
    bottom_size: int
    a: int
    total_size: int
    singleton_bottom: bool

    @property
    def predicted_size(self) -> int:
        if self.singleton_bottom:
            return 2 ** (self.a + 1) - 1
        return self.bottom_size * 2**self.a

    @property
    def consistent(self) -> bool:
        return self.predicted_size == self.total_size


@dataclass(frozen=True)
class Orbit:
    n: int
    nodes: frozenset
    omega_succ: dict = field(repr=False)
    bottom: tuple
    depth_of: dict = field(repr=False)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, p):
        return as_pair(p) in self.nodes

    @property
    def singleton_bottom(self) -> bool:
        return len(self.bottom) == 1 and self.bottom[0].r == self.bottom[0].s

    @property
    def depth(self) -> int:
        return max(self.depth_of.values())

    def edges(self) -> list[tuple[Pair, Pair]]:
        """Single omega steps inside the orbit, sorted."""
        return sorted(self.omega_succ.items())

    def distances(self) -> dict[Pair, int]:
        """Number of omega steps from each node to the bottom."""
        dist = {b: 0 for b in self.bottom}
        queue = deque(self.bottom)
        bottom = set(self.bottom)
        while queue:
            v = queue.popleft()
            for q in omega_preimages(v):
                if q not in bottom and q not in dist:
                    dist[q] = dist[v] + 1
                    queue.append(q)
        return dist

    def tree_heights(self) -> list[int]:
        """Height of every tree attached to the bottom, measured from its bottom node.

        A singleton bottom ``(r, r)`` carries two trees, rooted at its gamma and
        delta preimages; a cycle node carries the tree through its single
        off-cycle preimage.
        """
        bottom = set(self.bottom)
        dist = self.distances()
        heights = []
        for b in self.bottom:
            for root in sorted(omega_preimages(b) - bottom):
                height = 1
                queue = deque([root])
                while queue:
                    v = queue.popleft()
                    height = max(height, dist[v])
                    queue.extend(omega_preimages(v))
                heights.append(height)
        return heights


def _canonical_cycle(cycle: list[Pair]) -> tuple[Pair, ...]:
    k = min(range(len(cycle)), key=lambda idx: cycle[idx].r)
    return tuple(cycle[k:] + cycle[:k])


def orbit(p, max_n: int = DEFAULT_MAX_N) -> Orbit:
    """Enumerate the full orbit of ``p``.

    Follows omega forward until a node repeats (or the fixed point ``(r, r)``
    is hit), then closes the visited path under omega-preimages.
    """
    p = as_pair(p)
    n = p.n
    if n > max_n:
        raise OrbitLimitError(f"r + s = {n} exceeds the orbit cap {max_n}")

    path = [p]
    index = {p: 0}
    while True:
        nxt = omega(path[-1])
        if nxt is None:
            bottom = (path[-1],)
            break
        if nxt in index:
            bottom = _canonical_cycle(path[index[nxt]:])
            break
        index[nxt] = len(path)
        path.append(nxt)

    succ = {}
    seen = set(path)
    queue = deque(path)
    while queue:
        v = queue.popleft()
        w = omega(v)
        if w is not None:
            succ[v] = w
        for q in omega_preimages(v):
            if q not in seen:
                seen.add(q)
                queue.append(q)

    depth_of = {v: v.depth for v in seen}
    return Orbit(n=n, nodes=frozenset(seen), omega_succ=succ, bottom=bottom, depth_of=depth_of)


def shape(o: Orbit) -> OrbitShape:
    g = math.gcd(*(c for b in o.bottom for c in b))
    return OrbitShape(
        bottom_size=len(o.bottom),
        a=v2(g),
        total_size=len(o.nodes),
        singleton_bottom=o.singleton_bottom,
    )


def orbit_partition(n: int, max_n: int = DEFAULT_MAX_N) -> list[Orbit]:
    """All distinct orbits with coordinate sum ``n``, ordered by smallest first coordinate."""
    if n < 2:
        raise ValueError("n must be >= 2")
    seen = set()
    out = []
    for r in range(1, n):
        p = Pair(r, n - r)
        if p in seen:
            continue
        o = orbit(p, max_n=max_n)
        seen |= o.nodes
        out.append(o)
    return out


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_complete(n: int) -> bool:
    """Whether every orbit of sum ``n`` holds all ``n - 1`` points.

    True exactly for powers of two and for odd primes with 2 as a primitive root.
    """
    if n < 2:
        raise ValueError(f"completeness is defined for n >= 2, got {n}")
    if _is_power_of_two(n):
        return True
    return n % 2 == 1 and is_prime(n) and mult_order(2, n) == n - 1
