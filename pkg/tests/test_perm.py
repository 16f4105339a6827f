from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcomp.errors import ArityMismatch, DuplicateValues, EmptyBlock
from permcomp.perm import (
    Permutation,
    avoiders,
    avoids,
    contains,
    count,
    decreasing,
    delete,
    inflate,
    occurrences,
    reduce,
)

from oracles import brute_count, brute_inflate, brute_reduce


def perms(max_n=8):
    return st.integers(0, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


# --- values ------------------------------------------------------------------


def test_rejects_non_bijections():
    with pytest.raises(DuplicateValues):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        Permutation([1, 3])
    assert Permutation(()) == ()


def test_text_forms():
    assert str(Permutation.parse("53412")) == "53412"
    big = Permutation.parse("10,3,1,2,4,5,6,7,8,9")
    assert big[0] == 10
    assert str(big) == "10,3,1,2,4,5,6,7,8,9"
    assert Permutation.parse(str(big)) == big
    assert Permutation.parse("3 1 2") == (3, 1, 2)


def test_inverse_and_position():
    p = Permutation.parse("3142")
    assert p.position(4) == 3
    assert tuple(p.inverse()) == (2, 4, 1, 3)


# --- reduce ------------------------------------------------------------------


@pytest.mark.parametrize(
    "seq, want",
    [((9, 7, 8, 6), "4231"), ((5, 3, 4, 1, 2), "53412"), ((3.5, 9.0, 2.1), "231")],
)
def test_reduce_examples(seq, want):
    assert str(reduce(seq)) == want


def test_reduce_duplicates():
    with pytest.raises(DuplicateValues):
        reduce((2, 5, 2))


@given(st.lists(st.integers(-50, 50), unique=True, max_size=9))
def test_reduce_matches_rank_oracle(seq):
    assert tuple(reduce(seq)) == brute_reduce(seq)


@given(perms())
def test_reduce_idempotent(pi):
    assert reduce(pi) == pi


# --- occurrences -------------------------------------------------------------


def test_occurrence_examples():
    assert occurrences(Permutation.parse("53412"), (1, 2, 3)) == []
    pi = Permutation.parse("52134")
    occ = occurrences(pi, (1, 2, 3))
    assert sorted("".join(map(str, o.values(pi))) for o in occ) == ["134", "234"]
    for n in range(3, 8):
        assert count(tuple(range(1, n + 1)), (1, 2, 3)) == comb(n, 3)


def test_occurrence_indices_are_valid():
    pi = Permutation.parse("461532")
    for o in occurrences(pi, (1, 3, 2)):
        assert list(o.indices) == sorted(o.indices)
        assert reduce(o.values(pi)) == (1, 3, 2)


@given(perms(9), st.integers(1, 4).flatmap(lambda k: st.permutations(range(1, k + 1))))
def test_count_matches_subset_scan(pi, tau):
    assert count(pi, tau) == brute_count(pi, tau)
    assert contains(pi, tau) == (brute_count(pi, tau) > 0)
    assert avoids(pi, tau) != contains(pi, tau)


def test_occurrences_empty_pattern():
    with pytest.raises(ValueError):
        occurrences(Permutation.parse("12"), ())


# --- avoiders ----------------------------------------------------------------


def test_avoider_examples():
    assert len(list(avoiders(3, (1, 2, 3)))) == 5
    assert [str(p) for p in avoiders(1, (1, 3, 2))] == ["1"]
    assert len(list(avoiders(4, (1, 3, 2)))) == 14
    assert list(avoiders(0, (1, 2))) == [Permutation(())]


@pytest.mark.parametrize("tau", [(1, 2, 3), (1, 3, 2)])
def test_avoiders_catalan(tau):
    for n in range(0, 10):
        assert sum(1 for _ in avoiders(n, tau)) == comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("tau", [(1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2), (2, 4, 1, 3), (1, 2)])
def test_avoiders_equal_filtered_sn(tau):
    for n in range(0, 8):
        want = [p for p in permutations(range(1, n + 1)) if brute_count(p, tau) == 0]
        got = [tuple(p) for p in avoiders(n, tau)]
        assert got == want  # same set, lexicographic order


# --- inflation ---------------------------------------------------------------


def test_inflate_examples():
    blocks = [Permutation.parse(b) for b in ("132", "12", "4231")]
    assert str(inflate(Permutation.parse("213"), blocks)) == "354129786"
    assert str(inflate(Permutation.parse("21"), [Permutation((1,)), Permutation((1,))])) == "21"
    assert str(inflate(Permutation.parse("12"), [Permutation.parse("21")] * 2)) == "2143"


def test_inflate_errors():
    with pytest.raises(ArityMismatch):
        inflate(Permutation.parse("12"), [Permutation((1,))])
    with pytest.raises(EmptyBlock):
        inflate(Permutation.parse("12"), [Permutation((1,)), Permutation(())])


@given(perms(5).filter(len).flatmap(lambda p: st.tuples(st.just(p), st.lists(perms(3).filter(len), min_size=len(p), max_size=len(p)))))
def test_inflate_matches_block_oracle(args):
    pi, blocks = args
    out = inflate(pi, blocks)
    assert tuple(out) == brute_inflate(pi, blocks)
    start = 0
    for b in blocks:
        assert reduce(out[start : start + len(b)]) == b
        start += len(b)


@given(perms(7))
def test_singleton_inflation(pi):
    assert inflate(pi, [Permutation((1,))] * len(pi)) == pi


def test_decreasing_and_delete():
    assert str(decreasing(3)) == "321"
    assert str(decreasing(1)) == "1"
    assert decreasing(0) == ()
    assert str(delete(Permutation.parse("4123"), 1)) == "123"
    assert str(delete(Permutation.parse("52134"), 1, 3)) == "123"
    assert str(delete(Permutation.parse("52134"), 2)) == "4123"
