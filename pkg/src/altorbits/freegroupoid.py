"""Words of the free groupoid on one letter, and the alternative laws acting on them.

A word is the leaf ``X`` (the string ``"x"``) or a 2-tuple ``(left, right)``.
Tuples give structural equality and hashing for free, which is exactly what
the laws ``u(ut) = (uu)t`` and ``t(uu) = (tu)u`` need.

Wire format: preorder bitstring, ``1`` for a product node and ``0`` for a
leaf, so ``x(xx)`` is ``"10100"``.  Human format: ``x(xx)`` with the outer
product unbracketed.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .dynsys import Pair

X = "x"
Word = Union[str, tuple]

CATALAN_MAX = 30
DEFAULT_ENUM_CAP = 14
DEFAULT_CLASS_CAP = 13


class WordCapError(ValueError):
    """Raised when a word length exceeds the brute-force cap."""


def is_leaf(w: Word) -> bool:
    return not isinstance(w, tuple)


def length(w: Word) -> int:
    if is_leaf(w):
        return 1
    return length(w[0]) + length(w[1])


def catalan(n: int) -> int:
    """Number of words of length ``n`` (c_1 = 1, c_2 = 1, c_3 = 2, ...)."""
    if not 1 <= n <= CATALAN_MAX:
        raise ValueError(f"catalan index must be in 1..{CATALAN_MAX}, got {n}")
    c = [1, 1]
    for m in range(1, n):
        c.append(sum(c[i] * c[m + 1 - i] for i in range(1, m + 1)))
    return c[n]


def _check_cap(n: int, cap: int):
    if n < 1:
        raise ValueError(f"word length must be positive, got {n}")
    if n > cap:
        raise WordCapError(f"length {n} exceeds cap {cap}")


@lru_cache(maxsize=None)
def _words(n: int) -> tuple:
    if n == 1:
        return (X,)
    return tuple((u, v) for k in range(1, n) for u in _words(k) for v in _words(n - k))


def enumerate_words(n: int, cap: int = DEFAULT_ENUM_CAP) -> list[Word]:
    """All words of length ``n``, ordered by left-factor length, then recursively."""
    _check_cap(n, cap)
    return list(_words(n))


def top_split(w: Word) -> Pair:
    if is_leaf(w):
        raise ValueError("a single letter has no top split")
    return Pair(length(w[0]), length(w[1]))


def rewrite_neighbors(w: Word) -> set:
    """Words one alternative-law application away from ``w``, in either direction."""
    return set(_neighbors(w))


def _neighbors(w: Word) -> Iterator[Word]:
    if is_leaf(w):
        return
    u, v = w
    if not is_leaf(v):
        # u(ut) -> (uu)t
        if v[0] == u:
            yield ((u, u), v[1])
        # t(yy) -> (ty)y
        if v[0] == v[1]:
            yield ((u, v[0]), v[0])
    if not is_leaf(u):
        # (yy)t -> y(yt)
        if u[0] == u[1]:
            yield (u[0], (u[0], v))
        # (ty)y -> t(yy)
        if u[1] == v:
            yield (u[0], (v, v))
    for u2 in _neighbors(u):
        yield (u2, v)
    for v2 in _neighbors(v):
        yield (u, v2)


def equivalence_class(w: Word, cap: int = DEFAULT_CLASS_CAP) -> set:
    """Breadth-first closure of ``{w}`` under the alternative laws."""
    _check_cap(length(w), cap)
    seen = {w}
    queue = deque([w])
    while queue:
        for nb in _neighbors(queue.popleft()):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


@dataclass(frozen=True)
class ClassReport:
    n: int
    class_sizes: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(self.class_sizes)

    @property
    def well_defined(self) -> bool:
        return self.class_count == 1

    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.class_sizes).items()))


def class_partition(n: int, cap: int = DEFAULT_CLASS_CAP) -> ClassReport:
    """Split all words of length ``n`` into alternative-law equivalence classes."""
    _check_cap(n, cap)
    seen = set()
    sizes = []
    for w in _words(n):
        if w in seen:
            continue
        cls = equivalence_class(w, cap=cap)
        seen |= cls
        sizes.append(len(cls))
    assert sum(sizes) == catalan(n)
    return ClassReport(n, tuple(sorted(sizes, reverse=True)))


def class_splits(w: Word, cap: int = DEFAULT_CLASS_CAP) -> set[Pair]:
    """Top splits occurring anywhere in the equivalence class of ``w``."""
    return {top_split(v) for v in equivalence_class(w, cap=cap)}


def class_contains_split(w: Word, split, cap: int = DEFAULT_CLASS_CAP) -> bool:
    split = split if isinstance(split, Pair) else Pair(*split)
    if split.n != length(w):
        raise ValueError(f"split {split} does not sum to the word length {length(w)}")
    return split in class_splits(w, cap=cap)


def to_bits(w: Word) -> str:
    out = []
    stack = [w]
    while stack:
        v = stack.pop()
        if is_leaf(v):
            out.append("0")
        else:
            out.append("1")
            stack.append(v[1])
            stack.append(v[0])
    return "".join(out)


def from_bits(bits: str) -> Word:
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(bits):
            raise ValueError(f"truncated word bitstring {bits!r}")
        c = bits[pos]
        pos += 1
        if c == "0":
            return X
        if c != "1":
            raise ValueError(f"bad character {c!r} in word bitstring")
        left = parse()
        return (left, parse())

    w = parse()
    if pos != len(bits):
        raise ValueError(f"trailing characters in word bitstring {bits!r}")
    return w


def to_str(w: Word) -> str:
    def inner(v):
        return X if is_leaf(v) else f"({inner(v[0])}{inner(v[1])})"

    if is_leaf(w):
        return X
    return inner(w[0]) + inner(w[1])


def parse_word(text: str) -> Word:
    """Parse ``x(xx)``-style notation; juxtaposition inside brackets must be binary."""
    tokens = [c for c in text if not c.isspace()]
    pos = 0

    def factor():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        c = tokens[pos]
        if c == "x":
            pos += 1
            return X
        if c == "(":
            pos += 1
            w = product()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            pos += 1
            return w
        raise ValueError(f"unexpected {c!r} in {text!r}")

    def product():
        left = factor()
        if pos < len(tokens) and tokens[pos] != ")":
            right = factor()
            if pos < len(tokens) and tokens[pos] != ")":
                raise ValueError(f"ambiguous product in {text!r}; bracket every pair")
            return (left, right)
        return left

    w = product()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return w


def left_power(n: int) -> Word:
    """x(x(...(xx)))."""
    w = X
    for _ in range(n - 1):
        w = (X, w)
    return w


def right_power(n: int) -> Word:
    """((xx)x)...x."""
    w = X
    for _ in range(n - 1):
        w = (w, X)
    return w
