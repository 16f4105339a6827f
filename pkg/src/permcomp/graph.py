"""Small graph values and the isomorphism machinery used to collect
competition graphs up to relabeling.

Graphs are immutable. Vertices are ``0..order-1``; an optional ``labels``
tuple carries display names (for competition graphs, the permutation
values) and never takes part in isomorphism or equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence, Union

from .errors import OrderTooLarge

__all__ = [
    "SimpleGraph",
    "WeightedGraph",
    "Digraph",
    "CanonicalKey",
    "MAX_CANONICAL_ORDER",
    "canonical_key",
    "core",
    "core_key",
    "graph_to_dot",
    "iso_modulo_isolated",
    "is_isomorphic",
    "has_induced",
    "connected_components",
    "maximal_cliques",
    "is_interval",
    "path_graph",
    "star_graph",
    "complete_graph",
    "cycle_graph",
    "graph_from_json",
]

MAX_CANONICAL_ORDER = 14
MAX_INTERVAL_ORDER = 14
BRUTE_CLIQUE_LIMIT = 8

CanonicalKey = bytes


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    order: int
    edges: frozenset = frozenset()
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"edge {(u, v)} outside 0..{self.order - 1}")
            norm.add(_pair(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.order)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def isolated(self) -> list[int]:
        touched = {x for e in self.edges for x in e}
        return [v for v in range(self.order) if v not in touched]

    def label(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = {
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        }
        labels = tuple(self.label(v) for v in vertices) if self.labels is not None else None
        return SimpleGraph(len(vertices), frozenset(edges), labels)

    def add_isolated(self, k: int = 1) -> "SimpleGraph":
        return SimpleGraph(self.order + k, self.edges)

    def to_json(self) -> dict:
        return {"order": self.order, "edges": [list(e) for e in sorted(self.edges)]}


@dataclass(frozen=True)
class WeightedGraph:
    order: int
    weights: Mapping = field(default_factory=dict)
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        norm = {}
        for (u, v), w in dict(self.weights).items():
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"edge {(u, v)} outside 0..{self.order - 1}")
            if w < 1:
                raise ValueError(f"weight {w} on {(u, v)} must be >= 1")
            norm[_pair(u, v)] = int(w)
        object.__setattr__(self, "weights", _FrozenDict(norm))

    @property
    def edges(self) -> frozenset:
        return frozenset(self.weights)

    def simple(self) -> SimpleGraph:
        return SimpleGraph(self.order, self.edges, self.labels)

    def weight(self, u: int, v: int) -> int:
        return self.weights.get(_pair(u, v), 0)

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def isolated(self) -> list[int]:
        touched = {x for e in self.weights for x in e}
        return [v for v in range(self.order) if v not in touched]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.weights if v in e)

    def label(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def induced(self, vertices: Sequence[int]) -> "WeightedGraph":
        index = {v: i for i, v in enumerate(vertices)}
        weights = {
            (index[u], index[v]): w
            for (u, v), w in self.weights.items()
            if u in index and v in index
        }
        labels = tuple(self.label(v) for v in vertices) if self.labels is not None else None
        return WeightedGraph(len(vertices), weights, labels)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "weights": [[u, v, w] for (u, v), w in sorted(self.weights.items())],
        }


class _FrozenDict(dict):
    """Hashable, read-only dict used for edge weights."""

    def __hash__(self):
        return hash(frozenset(self.items()))

    def _readonly(self, *args, **kwargs):
        raise TypeError("weights are immutable")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly

    def __reduce__(self):
        return (_FrozenDict, (dict(self),))


@dataclass(frozen=True)
class Digraph:
    order: int
    arcs: frozenset = frozenset()
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-arc at {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"arc {(u, v)} outside 0..{self.order - 1}")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbors(self, u: int) -> set[int]:
        return {b for a, b in self.arcs if a == u}

    def label(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def to_json(self) -> dict:
        return {"order": self.order, "arcs": [list(a) for a in sorted(self.arcs)]}

    def to_dot(self, name: str = "D") -> str:
        lines = [f"digraph {name} {{"]
        for v in range(self.order):
            lines.append(f'  {v} [label="{self.label(v)}"];')
        for u, v in sorted(self.arcs):
            lines.append(f"  {u} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


Graph = Union[SimpleGraph, WeightedGraph]


def graph_from_json(data: dict) -> Graph:
    if "weights" in data:
        return WeightedGraph(data["order"], {(u, v): w for u, v, w in data["weights"]})
    return SimpleGraph(data["order"], frozenset(tuple(e) for e in data["edges"]))


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.order):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    if isinstance(g, WeightedGraph):
        for (u, v), w in sorted(g.weights.items()):
            lines.append(f'  {u} -- {v} [label="{w}"];')
    else:
        for u, v in sorted(g.edges):
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- named shapes ---------------------------------------------------------


def path_graph(m: int, weighted: bool = False) -> Graph:
    """P_m: a path with m edges on m + 1 vertices."""
    edges = {(i, i + 1) for i in range(m)}
    if weighted:
        return WeightedGraph(m + 1, {e: 1 for e in edges})
    return SimpleGraph(m + 1, frozenset(edges))


def star_graph(m: int, weighted: bool = False) -> Graph:
    """K_{1,m} with centre 0."""
    edges = {(0, i) for i in range(1, m + 1)}
    if weighted:
        return WeightedGraph(m + 1, {e: 1 for e in edges})
    return SimpleGraph(m + 1, frozenset(edges))


def complete_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, frozenset(combinations(range(k), 2)))


def cycle_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, frozenset(_pair(i, (i + 1) % k) for i in range(k)))


# --- canonical form -------------------------------------------------------


def _matrix(g: Graph) -> tuple[list[list[int]], bool]:
    n = g.order
    w = [[0] * n for _ in range(n)]
    if isinstance(g, WeightedGraph):
        items = g.weights.items()
        weighted = True
    else:
        items = ((e, 1) for e in g.edges)
        weighted = False
    for (u, v), x in items:
        w[u][v] = w[v][u] = x
    return w, weighted


def _refine(colors: list[int], adj: list[list[tuple[int, int]]]) -> list[int]:
    # colour numbering comes from sorted signatures, so it is label-invariant
    ncolors = len(set(colors))
    while True:
        sig = [
            (colors[v], tuple(sorted((colors[u], x) for u, x in adj[v])))
            for v in range(len(colors))
        ]
        uniq = sorted(set(sig))
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sig]
        if len(uniq) == ncolors:
            return colors
        ncolors = len(uniq)


def _canonical_code(w: list[list[int]]) -> tuple[int, ...]:
    n = len(w)
    adj = [[(u, w[v][u]) for u in range(n) if w[v][u]] for v in range(n)]

    def twins(a: int, b: int) -> bool:
        wa, wb = w[a], w[b]
        return all(wa[x] == wb[x] for x in range(n) if x != a and x != b)

    best: list = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(colors, adj)
        if len(set(colors)) == n:
            order = sorted(range(n), key=colors.__getitem__)
            code = tuple(w[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        sizes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            sizes.setdefault(c, []).append(v)
        cell = min(c for c, vs in sizes.items() if len(vs) > 1)
        tried: list[int] = []
        for v in sizes[cell]:
            # swapping twins is an automorphism, so their branches coincide
            if any(twins(u, v) for u in tried):
                continue
            tried.append(v)
            split = [2 * c for c in colors]
            split[v] -= 1
            search(split)

    search([0] * n)
    return best[0]


@lru_cache(maxsize=1 << 18)
def _cached_key(tag: bytes, n: int, items: frozenset) -> bytes:
    w = [[0] * n for _ in range(n)]
    for (u, v), x in items:
        w[u][v] = w[v][u] = x
    code = _canonical_code(w)
    if all(x < 256 for x in code):
        return tag + bytes([n]) + bytes(code)
    return tag + b"*" + repr((n, code)).encode()


def canonical_key(g: Graph, max_order: int = MAX_CANONICAL_ORDER) -> CanonicalKey:
    """Isomorphism-invariant fingerprint; equal keys iff isomorphic.

    Weighted graphs must match weight for weight, and never share a key
    with a simple graph.
    """
    if g.order > max_order:
        raise OrderTooLarge(f"order {g.order} exceeds canonical-form bound {max_order}")
    if isinstance(g, WeightedGraph):
        return _cached_key(b"W", g.order, frozenset(g.weights.items()))
    return _cached_key(b"S", g.order, frozenset((e, 1) for e in g.edges))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if type(g) is not type(h) or g.order != h.order:
        return False
    return canonical_key(g) == canonical_key(h)


def core(g: Graph) -> Graph:
    """``g`` with every isolated vertex deleted."""
    keep = sorted({x for e in g.edges for x in e})
    return g.induced(keep)


def core_key(g: Graph) -> CanonicalKey:
    return canonical_key(core(g))


def iso_modulo_isolated(g: Graph, h: Graph) -> bool:
    """True iff ``g`` and ``h`` agree once all isolated vertices are removed."""
    if type(g) is not type(h):
        return False
    return core_key(g) == core_key(h)


# --- induced subgraphs, components ---------------------------------------


def has_induced(g: SimpleGraph, h: SimpleGraph) -> bool:
    """True iff some vertex subset of ``g`` induces a copy of ``h``."""
    k = h.order
    if k > g.order:
        return False
    target = canonical_key(h)
    m = len(h.edges)
    adj = g.adjacency()
    for subset in combinations(range(g.order), k):
        ecount = sum(1 for a, b in combinations(subset, 2) if b in adj[a])
        if ecount == m and canonical_key(g.induced(subset)) == target:
            return True
    return False


def connected_components(g: SimpleGraph) -> list[list[int]]:
    """Vertex partition into components, each sorted, ordered by least vertex."""
    adj = g.adjacency()
    seen = [False] * g.order
    parts = []
    for s in range(g.order):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        parts.append(sorted(comp))
    return parts


# --- interval graphs ------------------------------------------------------


def maximal_cliques(g: SimpleGraph) -> list[frozenset]:
    """Bron-Kerbosch with pivoting; isolated vertices give singleton cliques."""
    adj = g.adjacency()
    out: list[frozenset] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(range(g.order)), set())
    return sorted(out, key=lambda c: sorted(c))


def _consecutive(order: Sequence[frozenset], vertices: Iterable[int]) -> bool:
    for v in vertices:
        hits = [i for i, c in enumerate(order) if v in c]
        if hits and hits[-1] - hits[0] + 1 != len(hits):
            return False
    return True


def _clique_order_brute(cliques: list[frozenset], n: int) -> bool:
    return any(_consecutive(p, range(n)) for p in permutations(cliques))


def _clique_order_c1p(cliques: list[frozenset]) -> bool:
    """Consecutive-ones search over clique orders.

    A partial order is extended one clique at a time; a vertex that has
    left the running window may not return. Failed (placed-set, last)
    states are memoised, bounding the work by 2^c * c^2.
    """
    c = len(cliques)
    if c <= 1:
        return True
    full = (1 << c) - 1
    dead: set[tuple[int, int]] = set()

    def extend(placed: int, last: int, closed: set) -> bool:
        if placed == full:
            return True
        if (placed, last) in dead:
            return False
        for j in range(c):
            if placed >> j & 1 or cliques[j] & closed:
                continue
            nxt = placed | 1 << j
            if extend(nxt, j, closed | (cliques[last] - cliques[j])):
                return True
        dead.add((placed, last))
        return False

    return any(extend(1 << i, i, set()) for i in range(c))


def is_interval(g: SimpleGraph, max_order: int = MAX_INTERVAL_ORDER, method: str = "auto") -> bool:
    """Interval-graph test: some ordering of the maximal cliques keeps the
    cliques through each vertex consecutive (Fulkerson-Gross).

    ``method`` is ``"brute"`` (scan all clique orderings), ``"c1p"``
    (pruned consecutive-ones search) or ``"auto"`` (brute when there are at
    most eight cliques).
    """
    if g.order > max_order:
        raise OrderTooLarge(f"order {g.order} exceeds interval bound {max_order}")
    cliques = [q for q in maximal_cliques(core(g)) if q]
    if method == "brute" or (method == "auto" and len(cliques) <= BRUTE_CLIQUE_LIMIT):
        return _clique_order_brute(cliques, g.order)
    return _clique_order_c1p(cliques)
