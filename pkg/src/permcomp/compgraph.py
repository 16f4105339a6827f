"""Digraphs and competition graphs induced by permutations.

Vertex ``i - 1`` of every graph built here is the point ``(i, pi_i)``; the
value ``pi_i`` rides along as the vertex label. A term preys on every term
to its left with a smaller value, so two terms compete exactly when some
earlier, smaller term sits below both of them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from numbers import Rational, Real
from typing import Iterator, Sequence

from .errors import DuplicatePoint
from .graph import Digraph, SimpleGraph, WeightedGraph
from .perm import Permutation, _closer, reduce

__all__ = [
    "digraph_of",
    "competition_graph",
    "weighted_competition_graph",
    "edge_witnesses",
    "prey_triples",
    "permutations_by_weight",
    "pointset_to_permutation",
    "pointset_competition_graph",
]

PreyMap = dict  # {(u, v): tuple of prey vertices}, 0-based vertex indices


def _labels(pi: Sequence[int]) -> tuple:
    return tuple(pi)


def digraph_of(pi: Sequence[int]) -> Digraph:
    n = len(pi)
    arcs = {(j, i) for i in range(n) for j in range(i + 1, n) if pi[i] < pi[j]}
    return Digraph(n, frozenset(arcs), _labels(pi))


def _predators(pi: Sequence[int]) -> list[list[int]]:
    n = len(pi)
    return [[j for j in range(i + 1, n) if pi[j] > pi[i]] for i in range(n)]


def competition_graph(pi: Sequence[int]) -> SimpleGraph:
    edges = set()
    for preds in _predators(pi):
        edges.update(combinations(preds, 2))
    return SimpleGraph(len(pi), frozenset(edges), _labels(pi))


def weighted_competition_graph(pi: Sequence[int]) -> WeightedGraph:
    """Competition graph with each edge weighted by its number of common prey."""
    weights: dict[tuple[int, int], int] = {}
    for preds in _predators(pi):
        for e in combinations(preds, 2):
            weights[e] = weights.get(e, 0) + 1
    return WeightedGraph(len(pi), weights, _labels(pi))


def edge_witnesses(pi: Sequence[int]) -> PreyMap:
    """Map each edge of C(pi) to the prey vertices that induce it.

    Each (edge, prey) incidence is one occurrence of 123 or 132: the prey
    is the "1", the edge endpoints are the "2" and "3".
    """
    prey: dict[tuple[int, int], list[int]] = {}
    for w, preds in enumerate(_predators(pi)):
        for e in combinations(preds, 2):
            prey.setdefault(e, []).append(w)
    return {e: tuple(ws) for e, ws in sorted(prey.items())}


def prey_triples(pi: Sequence[int]) -> int:
    """Number of occurrences of 123 plus 132, i.e. the total edge weight of W(pi)."""
    n = len(pi)
    total = 0
    for i in range(n):
        g = sum(1 for j in range(i + 1, n) if pi[j] > pi[i])
        total += g * (g - 1) // 2
    return total


def permutations_by_weight(
    n: int, total: int, avoid: Sequence[int] | None = None
) -> Iterator[Permutation]:
    """Yield, lexicographically, every pi in S_n (avoiding ``avoid`` if given)
    whose weighted competition graph has total weight ``total``.

    Term ``v`` placed after ``b`` larger terms ends up with exactly
    ``n - v - b`` predators, so its share C(n - v - b, 2) of the total is
    known the moment it is placed and prefixes over budget are cut.
    """
    closes = _closer(avoid) if avoid is not None else None
    prefix: list[int] = []
    used = [False] * (n + 2)

    def extend(spent: int) -> Iterator[Permutation]:
        if len(prefix) == n:
            if spent == total:
                yield Permutation._trusted(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            larger_before = sum(used[v + 1 : n + 1])
            g = n - v - larger_before
            cost = spent + g * (g - 1) // 2
            if cost > total:
                continue
            prefix.append(v)
            if closes is None or not closes(prefix):
                used[v] = True
                yield from extend(cost)
                used[v] = False
            prefix.pop()

    yield from extend(0)


# --- point sets ----------------------------------------------------------


def _exact(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, Real):
        return Fraction(float(x))  # finite floats are exact dyadic rationals
    raise TypeError(f"coordinate {x!r} is not a real number")


def _check_points(points) -> list[tuple[Fraction, Fraction]]:
    pts = [(_exact(x), _exact(y)) for x, y in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("point set contains a repeated point")
    return pts


def _spread_ties(pts: list[list[Fraction]], axis: int) -> None:
    """Break ties on one coordinate without changing the dominance digraph.

    Tied points are fanned out along a line of negative slope, pulled back
    (left for x, down for y) into the gap below the tied value, so no tied
    pair becomes comparable and no comparison with another point changes.
    """
    other = 1 - axis
    while True:
        values = sorted({p[axis] for p in pts})
        tied = None
        for v in values:
            group = [p for p in pts if p[axis] == v]
            if len(group) > 1:
                tied = (v, group)
                break
        if tied is None:
            return
        v, group = tied
        below = [u for u in values if u < v]
        gap = v - below[-1] if below else Fraction(1)
        step = gap / len(group)
        # ascending in the other coordinate, so later points move further
        group.sort(key=lambda p: p[other])
        for i, p in enumerate(group):
            p[axis] = v - i * step


def pointset_to_permutation(points: Sequence[tuple[Real, Real]]) -> Permutation:
    """A permutation whose competition graph matches that of the dominance
    order on ``points``.

    Shared x-coordinates are spread first, then shared y-coordinates, with
    exact rational arithmetic throughout.
    """
    pts = [list(p) for p in _check_points(points)]
    _spread_ties(pts, 0)
    _spread_ties(pts, 1)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    assert len(set(xs)) == len(xs) and len(set(ys)) == len(ys)
    pts.sort(key=lambda p: p[0])
    return reduce([p[1] for p in pts])


def pointset_competition_graph(points: Sequence[tuple[Real, Real]]) -> SimpleGraph:
    """Competition graph of the dominance order on ``points`` taken as is.

    ``(x, y)`` is prey of ``(z, w)`` when ``x < z`` and ``y < w``. Vertex
    order follows the input order.
    """
    pts = _check_points(points)
    n = len(pts)
    edges = set()
    for w in range(n):
        xw, yw = pts[w]
        preds = [u for u in range(n) if pts[u][0] > xw and pts[u][1] > yw]
        edges.update(combinations(preds, 2))
    return SimpleGraph(n, frozenset(edges), tuple(pts))
