import pytest
from hypothesis import given
from hypothesis import strategies as st

from altorbits.dynsys import Pair, orbit
from altorbits.freegroupoid import (
    X,
    WordCapError,
    catalan,
    class_contains_split,
    class_partition,
    class_splits,
    enumerate_words,
    equivalence_class,
    from_bits,
    left_power,
    length,
    parse_word,
    rewrite_neighbors,
    right_power,
    to_bits,
    to_str,
    top_split,
)

P = parse_word


def words_up_to(n):
    return st.integers(1, n).flatmap(lambda k: st.sampled_from(enumerate_words(k)))


# --- frozen examples ---------------------------------------------------

@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 2), (4, 5), (8, 429)])
def test_catalan(n, expected):
    assert catalan(n) == expected


def test_catalan_bounds():
    with pytest.raises(ValueError):
        catalan(0)


def test_small_enumerations():
    assert enumerate_words(1) == [X]
    assert enumerate_words(2) == [(X, X)]
    assert {to_str(w) for w in enumerate_words(3)} == {"x(xx)", "(xx)x"}


def test_enumeration_cap():
    with pytest.raises(WordCapError):
        enumerate_words(20)


def test_neighbors_of_x_xx():
    assert rewrite_neighbors(P("x(xx)")) == {P("(xx)x")}
    assert rewrite_neighbors(X) == set()


def test_neighbors_of_xx_xx():
    w = P("(xx)(xx)")
    # one application of a law in either direction
    assert rewrite_neighbors(w) == {P("x(x(xx))"), P("((xx)x)x")}
    two_steps = set().union(*(rewrite_neighbors(v) for v in rewrite_neighbors(w)))
    assert {P("x((xx)x)"), P("(x(xx))x")} <= two_steps
    assert equivalence_class(w) == {w, P("x(x(xx))"), P("x((xx)x)"), P("((xx)x)x"), P("(x(xx))x")}


def test_classes_of_length_4_and_5():
    for w in enumerate_words(4):
        assert len(equivalence_class(w)) == 5
    for w in enumerate_words(5):
        assert len(equivalence_class(w)) == 14


def test_length_6_splits_in_two():
    rep = class_partition(6)
    assert rep.class_sizes == (38, 4)
    assert not rep.well_defined
    assert all(len(equivalence_class(w)) < 42 for w in enumerate_words(6))


def test_partition_examples():
    rep = class_partition(4)
    assert rep.class_sizes == (5,) and rep.well_defined
    assert not class_partition(11).well_defined


@pytest.mark.parametrize("text, split", [("(xx)x", (2, 1)), ("x(x(x(xx)))", (1, 4)), ("(xx)(xx)", (2, 2))])
def test_top_split(text, split):
    assert top_split(P(text)) == Pair(*split)


def test_top_split_of_letter():
    with pytest.raises(ValueError):
        top_split(X)


# Shortest rewrite path from x^3 x^5 to x^4 x^4, found by breadth-first search.
# Step 3 applies the left law inside (x^3 x^3)x, turning it into x^3(x^3 x).
THREE_FIVE_TO_FOUR_FOUR = [
    "((xx)x)(((xx)x)(xx))",
    "(((xx)x)((xx)x))(xx)",
    "((((xx)x)((xx)x))x)x",
    "(((xx)x)(((xx)x)x))x",
    "(((xx)x)((xx)(xx)))x",
    "((((xx)x)(xx))(xx))x",
    "(((((xx)x)x)x)(xx))x",
    "((((((xx)x)x)x)x)x)x",
    "(((((xx)x)x)(xx))x)x",
    "((((xx)x)x)(xx))(xx)",
    "(((xx)x)x)((xx)(xx))",
]


def test_three_five_reaches_four_four_by_explicit_path():
    path = [P(t) for t in THREE_FIVE_TO_FOUR_FOUR]
    for a, b in zip(path, path[1:]):
        assert b in rewrite_neighbors(a)
    assert top_split(path[0]) == Pair(3, 5)
    assert top_split(path[-1]) == Pair(4, 4)


def test_three_five_classes_reach_every_split():
    splits = {Pair(r, 8 - r) for r in range(1, 8)}
    for v in enumerate_words(5):
        for u in enumerate_words(3):
            w = (u, v)
            assert class_splits(w) == splits
            assert class_contains_split(w, (4, 4))


def test_eleven_and_thirteen_are_not_well_defined():
    # the splitting is real even though x^3 x^5 = x^4 x^4
    assert class_partition(11).class_count == 40
    assert class_partition(13).class_count == 232


def test_split_must_match_length():
    with pytest.raises(ValueError):
        class_contains_split(P("(xx)x"), (1, 1))


def test_bit_encoding_examples():
    assert to_bits(P("x(xx)")) == "10100"
    assert from_bits("11000") == P("(xx)x")
    for bad in ("", "1", "102", "000"):
        with pytest.raises(ValueError):
            from_bits(bad)


def test_parse_errors():
    for bad in ("xxx", "(xx", "x)", "y", ""):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_powers():
    assert left_power(4) == P("x(x(xx))")
    assert right_power(4) == P("((xx)x)x")
    assert left_power(1) == X


def test_measured_class_counts():
    # frozen from exhaustive breadth-first search
    counts = [class_partition(n).class_count for n in range(1, 12)]
    assert counts == [1, 1, 1, 1, 1, 2, 2, 3, 8, 18, 40]


# --- properties --------------------------------------------------------

@given(words_up_to(12))
def test_neighbors_preserve_length(w):
    assert all(length(v) == length(w) for v in rewrite_neighbors(w))


def test_rewriting_is_symmetric():
    for n in range(1, 9):
        for w in enumerate_words(n):
            for v in rewrite_neighbors(w):
                assert w in rewrite_neighbors(v)


def test_class_splits_stay_in_the_orbit():
    for n in range(2, 11):
        done = set()
        for w in enumerate_words(n):
            if w in done:
                continue
            cls = equivalence_class(w)
            done |= cls
            o = orbit(top_split(w))
            assert all(top_split(v) in o for v in cls)


def test_partition_sums_to_catalan_and_powers_are_well_defined_only_up_to_5():
    for n in range(1, 14):
        rep = class_partition(n)
        assert sum(rep.class_sizes) == catalan(n)
        assert rep.well_defined == (n <= 5)


@given(words_up_to(14))
def test_bits_round_trip(w):
    assert from_bits(to_bits(w)) == w
    assert parse_word(to_str(w)) == w
    assert to_bits(w).count("0") == length(w)


@given(words_up_to(9), st.randoms(use_true_random=False))
def test_class_is_closed(w, rnd):
    cls = equivalence_class(w)
    for v in cls:
        assert rewrite_neighbors(v) <= cls
    other = rnd.choice(sorted(cls, key=to_bits))
    assert equivalence_class(other) == cls
