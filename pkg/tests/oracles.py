"""Small independent re-implementations used to check the library.

Nothing here imports the code under test except the plain value types.
"""

from itertools import combinations, permutations

import networkx as nx


def brute_reduce(seq):
    return tuple(sum(1 for y in seq if y <= x) for x in seq)


def brute_count(pi, tau):
    k = len(tau)
    return sum(1 for idx in combinations(range(len(pi)), k) if brute_reduce([pi[i] for i in idx]) == tuple(tau))


def brute_inflate(pi, blocks):
    # place block i at the value offset given by the sizes of the blocks
    # whose pattern letter is smaller
    out = []
    for i, block in enumerate(blocks):
        offset = sum(len(blocks[j]) for j in range(len(pi)) if pi[j] < pi[i])
        out.extend(v + offset for v in block)
    return tuple(out)


def prey_sets(pi):
    """prey[v] = positions w < v with pi[w] < pi[v] (0-based)."""
    return [{w for w in range(v) if pi[w] < pi[v]} for v in range(len(pi))]


def nx_competition(pi, weighted=False):
    prey = prey_sets(pi)
    g = nx.Graph()
    g.add_nodes_from(range(len(pi)))
    for u, v in combinations(range(len(pi)), 2):
        common = prey[u] & prey[v]
        if common:
            g.add_edge(u, v, weight=len(common))
    return g


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    if hasattr(g, "weights"):
        for (u, v), w in g.weights.items():
            h.add_edge(u, v, weight=w)
    else:
        h.add_edges_from(g.edges)
    return h


def nx_iso(a, b):
    return nx.is_isomorphic(a, b, edge_match=lambda x, y: x.get("weight", 1) == y.get("weight", 1))


def nx_interval(g):
    """Lekkerkerker-Boland: chordal and free of asteroidal triples."""
    return nx.is_chordal(g) and nx.is_at_free(g)


def dominance_competition(points):
    """Competition graph of the strict product order, straight from the definition."""
    g = nx.Graph()
    g.add_nodes_from(range(len(points)))
    below = [
        {j for j, q in enumerate(points) if q[0] < p[0] and q[1] < p[1]}
        for p in points
    ]
    for u, v in combinations(range(len(points)), 2):
        if below[u] & below[v]:
            g.add_edge(u, v)
    return g


def all_perms(n):
    return permutations(range(1, n + 1))
