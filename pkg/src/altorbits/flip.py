"""Does (r, s) flip, i.e. does (s, r) lie in the orbit of (r, s)?

Two independent routes are provided:

* brute force, by enumerating the orbit (:func:`flips_bruteforce`), by
  labelling every orbit of one coordinate sum at once
  (:func:`flip_table_bruteforce`), or by walking the bottom cycle with
  O(1) memory for sums far beyond the enumeration cap
  (:func:`flips_cycle_walk`);
* the number-theoretic decision (:func:`flips_fast`): push the point down to
  the bottom, divide out the gcd, and ask whether ``2**k ≡ -1`` modulo the
  odd coprime sum that remains.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .dynsys import DEFAULT_MAX_N, Pair, as_pair, is_complete, omega, orbit
from .numtheory import crt, factorize, neg_one_exponent, primes_in_class, v2


class Verdict(str, enum.Enum):
    FLIPS = "flips"
    DOES_NOT_FLIP = "does_not_flip"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    detail: str

    def to_dict(self):
        return {"rule": self.rule, "detail": self.detail}


@dataclass(frozen=True)
class FlipReport:
    input: Pair
    flips: bool
    method: str
    odd_core: Pair | None = None
    trace: tuple[TraceStep, ...] = field(default=())

    def to_dict(self):
        return {
            "input": [self.input.r, self.input.s],
            "flips": self.flips,
            "method": self.method,
            "odd_core": None if self.odd_core is None else [self.odd_core.r, self.odd_core.s],
            "trace": [t.to_dict() for t in self.trace],
        }


def flips_bruteforce(p, max_n: int = DEFAULT_MAX_N) -> bool:
    p = as_pair(p)
    return p.swapped() in orbit(p, max_n=max_n)


def flips_cycle_walk(p) -> bool:
    """Brute-force flip test that never stores the orbit.

    The mirror of an orbit is again an orbit, so (s, r) is in O(r, s) exactly
    when the mirror of a bottom node lies on the same bottom cycle.
    """
    p = as_pair(p)
    return kernels.swap_on_bottom(p.n, p.r)


def flip_table_bruteforce(n: int) -> np.ndarray:
    """``table[r]`` says whether (r, n - r) flips, for 1 <= r < n (index 0 unused)."""
    labels = kernels.orbit_labels(n)
    mirror = (n - np.arange(n)) % n
    table = labels == labels[mirror]
    table[0] = False
    return table


def _reduce(p: Pair):
    a = v2(p.n)
    c = v2(math.gcd(p.r, p.s))
    steps = []
    cur = p
    for _ in range(a - c):
        nxt = omega(cur)
        steps.append(TraceStep("omega", f"ω{cur} = {nxt}"))
        cur = nxt
        if cur.r == cur.s:
            return Pair(1, 1), steps, cur, a, c
    g = math.gcd(cur.r, cur.s)
    core = Pair(cur.r // g, cur.s // g)
    return core, steps, cur, a, c


def reduce_to_odd_core(p) -> Pair:
    """Walk omega down to the bottom and divide out the gcd there.

    The result has odd sum and coprime coordinates, and flips exactly when
    ``p`` does.  If the walk reaches a fixed point (m, m) the orbit's bottom
    is that single point, ``p`` flips, and (1, 1) is returned.
    """
    p = as_pair(p)
    if p.r == p.s:
        raise ValueError(f"{p} has equal coordinates; it flips trivially and has no core")
    return _reduce(p)[0]


def flips_fast(p) -> FlipReport:
    p = as_pair(p)
    n = p.n
    if p.r == p.s:
        return FlipReport(p, True, "trivial_equal",
                          trace=(TraceStep("equal", f"r = s = {p.r}; the point is its own mirror"),))
    if is_complete(n):
        return FlipReport(p, True, "complete_sum",
                          trace=(TraceStep("complete", f"every orbit of sum {n} holds all {n - 1} points"),))

    core, steps, bottom_point, a, c = _reduce(p)
    trace = [TraceStep("valuations", f"r + s = {n} = 2^{a}·{n >> a}, "
                                     f"gcd = {math.gcd(p.r, p.s)} = 2^{c}·{math.gcd(p.r, p.s) >> c}; "
                                     f"apply ω {a - c} time(s)")]
    trace.extend(steps)
    if core.r == core.s:
        trace.append(TraceStep("fixed_point", f"reached {bottom_point}; the bottom is a single "
                                              f"symmetric point so the orbit is mirror-closed"))
        return FlipReport(p, True, "reduction", odd_core=core, trace=tuple(trace))

    g = bottom_point.r // core.r
    trace.append(TraceStep("divide_gcd", f"gcd{bottom_point} = {g}; core {core}"))
    n0 = core.n
    assert n0 % 2 == 1 and math.gcd(core.r, core.s) == 1
    fac = factorize(n0)
    trace.append(TraceStep("factor", f"{n0} = {fac}; primes mod 8: "
                                     + ", ".join(f"{q}≡{q % 8}" for q in fac.primes)))
    witness = neg_one_exponent(n0)
    if witness.exists:
        trace.append(TraceStep("congruence", f"2^{witness.k_min} ≡ -1 (mod {n0})"))
    else:
        trace.append(TraceStep("congruence", f"2^k ≡ -1 (mod {n0}) has no solution"))
    verdict = classify_by_primes(n0)
    trace.append(TraceStep("prime_classes", f"classification by prime residues: {verdict.value}"))
    if verdict is not Verdict.UNDETERMINED:
        assert (verdict is Verdict.FLIPS) == witness.exists, "prime classes contradict the congruence"
    return FlipReport(p, witness.exists, "reduction", odd_core=core, trace=tuple(trace))


def classify_by_primes(n: int) -> Verdict:
    """Decide flips for coprime splits of odd ``n`` from the residues mod 8 of its primes.

    Any prime ≡ 7 forces no flip, as does a mix of primes ≡ 3 and ≡ 5; all
    primes ≡ 3, or all ≡ 5, force a flip.  Anything else is undetermined.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need odd n >= 3, got {n}")
    classes = {q % 8 for q in factorize(n).primes}
    if 7 in classes:
        return Verdict.DOES_NOT_FLIP
    if {3, 5} <= classes:
        return Verdict.DOES_NOT_FLIP
    if classes == {3} or classes == {5}:
        return Verdict.FLIPS
    return Verdict.UNDETERMINED


def nonflip_primes(M: int) -> list[int]:
    """The M smallest primes ≡ 7 (mod 8) that exceed M."""
    if M < 1:
        raise ValueError("M must be positive")
    return primes_in_class(M, 7, 8, M)


def nonflip_window(M: int, verify: bool = True) -> int:
    """Least r > 0 with r + s ≡ 0 (mod p_s) for s = 1..M, p_s ≡ 7 (mod 8).

    None of (r, 1), ..., (r, M) flips.
    """
    primes = nonflip_primes(M)
    r = crt([((-s) % q, q) for s, q in enumerate(primes, start=1)])
    if r == 0:
        r = math.prod(primes)
    if verify:
        for s in range(1, M + 1):
            report = flips_fast((r, s))
            if report.flips:
                raise AssertionError(f"({r},{s}) flips; window construction is broken")
    return r


def forward_path(p: Pair) -> list[Pair]:
    """omega-path from ``p`` until a node repeats or a fixed point (m, m) is reached."""
    path = [p]
    seen = {p}
    while True:
        nxt = omega(path[-1])
        if nxt is None or nxt in seen:
            return path
        seen.add(nxt)
        path.append(nxt)


def orbit_mod_projection_check(p, t: int) -> bool:
    """Check that reducing mod ``t`` maps the omega-path of ``p`` onto the omega-path of ``p mod t``.

    Requires ``t`` odd, ``t | r + s`` and ``t ∤ r``.
    """
    p = as_pair(p)
    if t < 1 or t % 2 == 0:
        raise ValueError(f"t must be an odd positive integer, got {t}")
    if p.n % t:
        raise ValueError(f"t = {t} does not divide r + s = {p.n}")
    if p.r % t == 0:
        raise ValueError(f"t = {t} divides r = {p.r}")
    q = Pair(p.r % t, p.s % t)
    for v in forward_path(p):
        if (v.r % t, v.s % t) != (q.r, q.s):
            return False
        q = omega(q)
    return True
