from collections import Counter
from itertools import combinations_with_replacement
from math import factorial

import pytest

from nagata.cremona import cremona_transform, enumerate_minus_one, hudson_test, max_degree
from nagata.errors import IndexOutOfRange, NumericalPrecondition, RepeatedIndex, UnsupportedN
from nagata.lattice import arithmetic_genus, canonical_class, exceptional, line, pair, parse_class

COUNTS = {2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def brute_force_count(n: int, d_max: int) -> int:
    """Count integer solutions of d^2 - sum m^2 = -1, 3d - sum m = 1 directly.

    For n <= 8 every such numerical class is a (-1)-curve, so this is an
    oracle independent of the Cremona orbit search.
    """
    total = 0
    for d in range(0, d_max + 1):
        lo = -1 if d == 0 else 0
        for ms in combinations_with_replacement(range(lo, d + 1), n):
            if sum(ms) == 3 * d - 1 and sum(m * m for m in ms) == d * d + 1:
                perms = factorial(n)
                for c in Counter(ms).values():
                    perms //= factorial(c)
                total += perms
    return total


@pytest.mark.parametrize("n", range(2, 9))
def test_counts(n):
    assert len(enumerate_minus_one(n)) == COUNTS[n]


@pytest.mark.parametrize("n", range(2, 9))
def test_counts_match_brute_force(n):
    assert brute_force_count(n, 6) == COUNTS[n]


def test_max_degrees():
    assert [max_degree(enumerate_minus_one(n)) for n in range(2, 9)] == [1, 1, 1, 2, 2, 3, 6]


@pytest.mark.parametrize("n", range(3, 9))
def test_every_class_is_exceptional_and_passes_hudson(n):
    K = canonical_class(n)
    for c in enumerate_minus_one(n):
        assert pair(c, c) == -1 and pair(K, c) == -1
        assert hudson_test(c).accepted
        degrees = hudson_test(c).degrees
        assert all(a > b for a, b in zip(degrees, degrees[1:]))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_distinct_classes_meet_nonnegatively(n):
    classes = enumerate_minus_one(n)
    for a in classes:
        assert arithmetic_genus(a) == 0
        for b in classes:
            if a != b:
                assert pair(a, b) >= 0


def test_cremona_is_involution_preserving_form():
    c = parse_class("7;3,3,2,2,1,1,1")
    for base in [(1, 2, 3), (2, 5, 7), (4, 6, 7)]:
        img = cremona_transform(c, *base)
        assert cremona_transform(img, *base) == c
        assert pair(img, img) == pair(c, c)
        assert pair(img, canonical_class(7)) == pair(c, canonical_class(7))


def test_spec_transform_examples():
    assert cremona_transform(parse_class("6;3,2^7"), 1, 2, 3) == parse_class("5;2,1,1,2^5")
    assert cremona_transform(exceptional(5, 1), 1, 2, 3) == parse_class("1;0,1,1,0,0")
    trace = hudson_test(parse_class("2;1^5,0^3"))
    assert trace.accepted and [int(d.to_rat()) for d in trace.degrees] == [2, 1, 0]


def test_involution_on_random_classes():
    import random

    rng = random.Random(1)
    for _ in range(1000):
        n = rng.randint(3, 10)
        c = parse_class(f"{rng.randint(-5, 20)};" + ",".join(str(rng.randint(-3, 9)) for _ in range(n)))
        i, j, k = rng.sample(range(1, n + 1), 3)
        assert cremona_transform(cremona_transform(c, i, j, k), i, j, k) == c


def test_cremona_of_line_through_two_base_points():
    # the line through p1, p2 is contracted to the point p3
    assert cremona_transform(parse_class("1;1,1,0"), 1, 2, 3) == exceptional(3, 3)
    assert cremona_transform(line(3), 1, 2, 3) == parse_class("2;1,1,1")


def test_hudson_trace_regression():
    trace = hudson_test(parse_class("6;3,2^7"))
    assert trace.accepted and trace.verdict == "MinusOneClass"
    assert [int(d.to_rat()) for d in trace.degrees] == [6, 5, 4, 2, 1, 0]
    assert [s.base for s in trace.steps] == [(1, 2, 3), (1, 4, 5), (6, 7, 8), (1, 2, 3), (4, 5, 1)]
    assert str(trace.final) == "0;-1,0^7"


def test_hudson_rejects_numerical_class_containing_a_line():
    # (5;3,3,1^8) meets the line through p1, p2 negatively, so it is reducible
    c = parse_class("5;3,3,1^8")
    assert pair(c, c) == -1 and pair(canonical_class(10), c) == -1
    assert pair(c, parse_class("1;1,1,0^8")) == -1
    trace = hudson_test(c)
    assert not trace.accepted and trace.verdict.startswith("Rejected")


def test_hudson_preconditions():
    with pytest.raises(NumericalPrecondition):
        hudson_test(parse_class("1;1,1,1"))
    with pytest.raises(NumericalPrecondition):
        hudson_test(parse_class("1;1,1"))
    with pytest.raises(NumericalPrecondition):
        hudson_test(parse_class("1/2;1,1,0"))


def test_index_errors():
    c = parse_class("1;1,1,1")
    with pytest.raises(IndexOutOfRange):
        cremona_transform(c, 1, 2, 4)
    with pytest.raises(RepeatedIndex):
        cremona_transform(c, 1, 1, 2)
    with pytest.raises(UnsupportedN):
        enumerate_minus_one(9)


def test_sorted_order():
    classes = enumerate_minus_one(5)
    keys = [(c.d, tuple(-x for x in c.m)) for c in classes]
    assert keys == sorted(keys)
