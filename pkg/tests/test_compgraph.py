from fractions import Fraction
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcomp.compgraph import (
    competition_graph,
    digraph_of,
    edge_witnesses,
    permutations_by_weight,
    pointset_competition_graph,
    pointset_to_permutation,
    prey_triples,
    weighted_competition_graph,
)
from permcomp.errors import DuplicatePoint
from permcomp.graph import WeightedGraph, canonical_key, complete_graph, path_graph
from permcomp.perm import Permutation, avoids, count

from oracles import brute_count, dominance_competition, nx_competition, nx_iso, to_nx


def P(s):
    return Permutation.parse(s)


def by_value(g, pairs):
    return sorted(tuple(sorted((g.label(u), g.label(v)), reverse=True)) for u, v in pairs)


def perms(max_n=8):
    return st.integers(0, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


# --- D(pi) ---------------------------------------------------------------------


def test_digraph_examples():
    for n in range(1, 6):
        inc = digraph_of(tuple(range(1, n + 1)))
        assert inc.arcs == {(j, i) for j in range(n) for i in range(j)}
        assert not digraph_of(tuple(range(n, 0, -1))).arcs
    d = digraph_of(P("461532"))
    assert by_value(d, d.arcs) == [(2, 1), (3, 1), (5, 1), (5, 4), (6, 4)]
    assert "->" in d.to_dot()


@given(perms())
def test_digraph_matches_12_rule(pi):
    want = {(j, i) for j in range(len(pi)) for i in range(j) if pi[i] < pi[j]}
    assert digraph_of(pi).arcs == want


# --- C(pi), W(pi) --------------------------------------------------------------


def test_competition_examples():
    assert not competition_graph(P("54321")).edges
    for n in range(2, 7):
        g = competition_graph(tuple(range(1, n + 1)))
        assert canonical_key(g) == canonical_key(complete_graph(n - 1).add_isolated(1))
        if n >= 3:
            assert g.isolated() == [0]
    g = competition_graph(P("461532"))
    assert by_value(g, g.edges) == [(3, 2), (5, 2), (5, 3), (6, 5)]
    assert sorted(g.label(v) for v in g.isolated()) == [1, 4]


def test_weighted_examples():
    w = weighted_competition_graph(P("123"))
    assert [(w.label(u), w.label(v), x) for (u, v), x in w.weights.items()] == [(2, 3, 1)]
    w = weighted_competition_graph(P("1234"))
    vals = {tuple(sorted((w.label(u), w.label(v)))): x for (u, v), x in w.weights.items()}
    assert vals == {(2, 3): 1, (2, 4): 1, (3, 4): 2}
    assert w.total_weight() == count(P("1234"), (1, 2, 3)) == 4
    w = weighted_competition_graph(P("5736124"))
    assert set(w.weights.values()) == {1}
    assert canonical_key(w) == canonical_key(WeightedGraph(7, path_graph(3, weighted=True).weights))


@given(perms())
def test_competition_matches_prey_oracle(pi):
    oracle = nx_competition(pi, weighted=True)
    assert competition_graph(pi).edges == {tuple(sorted(e)) for e in oracle.edges}
    assert nx_iso(to_nx(weighted_competition_graph(pi)), oracle)


@given(perms())
def test_weights_count_patterns(pi):
    w = weighted_competition_graph(pi)
    total = brute_count(pi, (1, 2, 3)) + brute_count(pi, (1, 3, 2))
    assert w.total_weight() == total == prey_triples(pi)
    assert w.simple().edges == competition_graph(pi).edges


# --- witnesses -----------------------------------------------------------------


def test_witness_examples():
    pi = P("132")
    assert edge_witnesses(pi) == {(1, 2): (0,)}
    pi = P("52134")
    wit = edge_witnesses(pi)
    assert sorted(pi[w] for w in wit[(3, 4)]) == [1, 2]
    pi = P("461532")
    assert sum(len(v) for v in edge_witnesses(pi).values()) == 4 == count(pi, (1, 2, 3)) + count(pi, (1, 3, 2))


@given(perms())
def test_witnesses_are_valid_prey(pi):
    wit = edge_witnesses(pi)
    assert set(wit) == competition_graph(pi).edges
    for (u, v), ws in wit.items():
        assert ws
        for w in ws:
            assert w < u < v and pi[w] < pi[u] and pi[w] < pi[v]
            # each witness is the "1" of a 123 or 132 occurrence on (w, u, v)


# --- exact-weight search --------------------------------------------------------


@pytest.mark.parametrize("avoid", [None, (1, 2, 3), (1, 3, 2)])
def test_permutations_by_weight_matches_filter(avoid):
    for n in range(0, 8):
        for total in range(0, 6):
            want = {
                p for p in permutations(range(1, n + 1))
                if prey_triples(p) == total and (avoid is None or avoids(p, avoid))
            }
            got = {tuple(p) for p in permutations_by_weight(n, total, avoid)}
            assert got == want, (n, total, avoid)


# --- point sets ----------------------------------------------------------------


def test_pointset_examples():
    ys = (4, 6, 1, 5, 3, 2)
    pts = [(x * 1.5, y * 10.0) for x, y in enumerate(ys)]
    assert str(pointset_to_permutation(pts)) == "461532"
    stack = [(0, 0), (0, 1), (0, 2)]
    assert str(pointset_to_permutation(stack)) == "321"
    assert not pointset_competition_graph(stack).edges
    assert str(pointset_to_permutation([(0, 0), (1, 1), (1, 2)])) == "132"
    g = pointset_competition_graph([(0, 0), (1, 2), (2, 1)])
    assert g.edges == {(1, 2)}
    anti = [(i, -i) for i in range(5)]
    assert not pointset_competition_graph(anti).edges
    assert canonical_key(pointset_competition_graph(pts)) == canonical_key(competition_graph(P("461532")))


def test_pointset_duplicates():
    with pytest.raises(DuplicatePoint):
        pointset_to_permutation([(0, 0), (1, 1), (0, 0)])
    with pytest.raises(DuplicatePoint):
        pointset_competition_graph([(Fraction(1, 2), 1), (0.5, 1)])


def test_pointset_shift_never_collides():
    # a tie group sitting just above a neighbouring coordinate
    pts = [(0, 0), (1, 0), (1, 1), (1, 2), (Fraction(99, 100), 3), (2, 5)]
    pi = pointset_to_permutation(pts)
    assert nx.is_isomorphic(to_nx(competition_graph(pi)), dominance_competition(pts))


tie_heavy = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=7, unique=True)
mixed = st.lists(
    st.tuples(
        st.one_of(st.integers(0, 4), st.fractions(0, 2, max_denominator=3)),
        st.one_of(st.integers(0, 4), st.floats(0, 4, allow_nan=False)),
    ),
    min_size=1,
    max_size=7,
).map(lambda pts: list({(Fraction(x), Fraction(y)): (x, y) for x, y in pts}.values()))


@given(st.one_of(tie_heavy, mixed))
def test_pointset_reduction_oracle(pts):
    pi = pointset_to_permutation(pts)
    assert len(pi) == len(pts)
    oracle = dominance_competition([(Fraction(x), Fraction(y)) for x, y in pts])
    assert nx.is_isomorphic(to_nx(competition_graph(pi)), oracle)
    assert nx.is_isomorphic(to_nx(pointset_competition_graph(pts)), oracle)
