"""Structural operations on permutations and their competition graphs:
redundant-term minimisation, dominating vertices, the component
partition, the constructive 132-avoiding realisation of P3-free
competition graphs, and accessory terms / base permutations for weighted
competition graphs.

Positions are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .compgraph import (
    competition_graph,
    edge_witnesses,
    permutations_by_weight,
    weighted_competition_graph,
)
from .errors import HasInducedP3, IndexOutOfRange, PreconditionViolated, ScaleExceeded
from .graph import (
    CanonicalKey,
    WeightedGraph,
    connected_components,
    core_key,
    has_induced,
    path_graph,
)
from .perm import Permutation, avoids, decreasing, delete, inflate, reduce

__all__ = [
    "PartitionWitness",
    "BaseCatalog",
    "is_redundant",
    "minimize",
    "dominating_vertex",
    "component_partition",
    "partition_violations",
    "realize_132",
    "accessory_terms",
    "base_permutations",
    "nontrivial_components",
]

P3 = path_graph(3)


def nontrivial_components(pi: Sequence[int]) -> list[list[int]]:
    """Components of C(pi) with at least two vertices (0-based vertices)."""
    return [c for c in connected_components(competition_graph(pi)) if len(c) > 1]


def _redundant(g, g_minus) -> bool:
    # one isolated vertex fewer, same non-isolated part
    if len(g.isolated()) - len(g_minus.isolated()) != 1:
        return False
    return core_key(g) == core_key(g_minus)


def is_redundant(pi: Sequence[int], i: int) -> bool:
    """Deleting term ``i`` leaves C(pi) minus exactly one isolated vertex."""
    if not 1 <= i <= len(pi):
        raise IndexOutOfRange(f"position {i} outside 1..{len(pi)}")
    return _redundant(competition_graph(pi), competition_graph(delete(pi, i)))


def _minimize_tracked(pi: Sequence[int]) -> tuple[Permutation, list[int]]:
    """Minimised permutation plus the original position of each kept term."""
    cur = Permutation._trusted(pi)
    kept = list(range(1, len(pi) + 1))
    while True:
        g = competition_graph(cur)
        for i in range(len(cur), 0, -1):
            if _redundant(g, competition_graph(delete(cur, i))):
                cur = delete(cur, i)
                del kept[i - 1]
                break
        else:
            return cur, kept


def minimize(pi: Sequence[int]) -> Permutation:
    """Repeatedly delete the right-most redundant term."""
    return _minimize_tracked(pi)[0]


def _require_single_p3_free(pi: Sequence[int]):
    g = competition_graph(pi)
    comps = [c for c in connected_components(g) if len(c) > 1]
    if len(comps) != 1:
        raise PreconditionViolated(
            f"C({Permutation._trusted(pi)}) has {len(comps)} non-trivial components, need 1"
        )
    if has_induced(g, P3):
        raise PreconditionViolated(f"C({Permutation._trusted(pi)}) has an induced P3")
    return g, comps[0]


def dominating_vertex(pi: Sequence[int]) -> int:
    """Position of a term adjacent to every other vertex of the single
    non-trivial component of C(pi).

    Works on the minimised permutation: the right-most isolated term there
    preys on a clique, and the largest term of that clique is returned,
    mapped back to its position in ``pi``.
    """
    g, comp = _require_single_p3_free(pi)
    small, kept = _minimize_tracked(pi)
    iso = set(competition_graph(small).isolated())
    k = max(iso)  # the first term is never a predator, so iso is non-empty
    tail = range(k + 1, len(small))
    c = max(tail, key=small.__getitem__)
    pos = kept[c]
    v = pos - 1
    adj = g.adjacency()
    if not all(u in adj[v] for u in comp if u != v):
        raise PreconditionViolated(f"no dominating vertex found for {Permutation._trusted(pi)}")
    return pos


@dataclass(frozen=True)
class PartitionWitness:
    """Split of a permutation into an edgeless remainder (part 0) and one
    part per non-trivial component of its competition graph."""

    parts: tuple[tuple[int, ...], ...]  # 1-based positions, part 0 first
    sigmas: tuple[Permutation, ...] = field(compare=False)

    @property
    def k(self) -> int:
        return len(self.parts) - 1


def component_partition(pi: Sequence[int]) -> PartitionWitness:
    """Partition ``pi`` so each non-trivial component of C(pi) gets its own
    subsequence together with a minimal set of its prey.

    For component C_j, the prey inducing its edges that lie outside C_j are
    thinned to those with no smaller prey of the same kind to their left;
    every edge they lose is still induced by that smaller prey.
    """
    g = competition_graph(pi)
    comps = [c for c in connected_components(g) if len(c) > 1]
    witnesses = edge_witnesses(pi)
    owner = {v: j for j, comp in enumerate(comps) for v in comp}
    prey: list[set[int]] = [set() for _ in comps]
    for (u, _), ws in witnesses.items():
        prey[owner[u]].update(ws)
    parts: list[tuple[int, ...]] = []
    taken: set[int] = set()
    for j, comp in enumerate(comps):
        outside = prey[j] - set(comp)
        minimal = {
            b for b in outside
            if not any(a < b and pi[a] < pi[b] for a in outside)
        }
        members = sorted(set(comp) | minimal)
        taken.update(members)
        parts.append(tuple(v + 1 for v in members))
    rest = tuple(v + 1 for v in range(len(pi)) if v not in taken)
    parts.insert(0, rest)
    sigmas = tuple(reduce([pi[p - 1] for p in part]) for part in parts)
    return PartitionWitness(tuple(parts), sigmas)


def partition_violations(pi: Sequence[int], w: PartitionWitness) -> list[str]:
    """Check a witness against the four partition properties; [] if all hold."""
    bad = []
    flat = sorted(p for part in w.parts for p in part)
    if flat != list(range(1, len(pi) + 1)):
        bad.append("(i) parts do not partition the positions")
    if any(len(s) == 0 for s in w.sigmas[1:]):
        bad.append("(i) empty component part")
    if competition_graph(w.sigmas[0]).edges:
        bad.append("(ii) remainder has edges")
    g = competition_graph(pi)
    comps = [c for c in connected_components(g) if len(c) > 1]
    if len(comps) != w.k:
        bad.append("(i) part count differs from component count")
        return bad
    for j, (comp, sigma) in enumerate(zip(comps, w.sigmas[1:]), start=1):
        cs = competition_graph(sigma)
        if core_key(cs) != core_key(g.induced(comp)):
            bad.append(f"(iii) part {j} does not reproduce its component")
        iso = cs.isolated()
        for a in iso:
            for b in iso:
                if a < b and sigma[a] < sigma[b]:
                    bad.append(f"(iv) isolated terms of part {j} form a 12 pattern")
                    break
    return bad


def _inflate_nonempty(pattern: Sequence[int], blocks: Sequence[Sequence[int]]) -> Permutation:
    # empty blocks are dropped together with their slot in the pattern
    keep = [i for i, b in enumerate(blocks) if len(b)]
    if not keep:
        return Permutation(())
    return inflate(reduce([pattern[i] for i in keep]), [blocks[i] for i in keep])


def realize_132(pi: Sequence[int]) -> Permutation:
    """A 132-avoiding permutation of the same length whose competition
    graph is isomorphic to C(pi); requires C(pi) to have no induced P3.

    Edgeless graphs come from the decreasing permutation. With several
    non-trivial components, each part of the component partition is
    realised on its own and the results are stacked in decreasing blocks.
    With a single component, a dominating vertex is removed, the rest is
    realised recursively and re-partitioned, and the vertex is put back as
    a final term sitting above everything it must dominate.
    """
    pi = Permutation._trusted(pi)
    g = competition_graph(pi)
    if has_induced(g, P3):
        raise HasInducedP3(f"C({pi}) has an induced P3")
    return _realize(pi)


def _realize(pi: Permutation) -> Permutation:
    n = len(pi)
    g = competition_graph(pi)
    comps = [c for c in connected_components(g) if len(c) > 1]
    if not comps:
        return decreasing(n)
    if len(comps) > 1:
        w = component_partition(pi)
        blocks = [decreasing(len(w.sigmas[0]))] + [_realize(s) for s in w.sigmas[1:]]
        return _inflate_nonempty(decreasing(len(blocks)), blocks)

    (comp,) = comps
    v = dominating_vertex(pi) - 1
    beta = delete(pi, v + 1)
    g_beta = competition_graph(beta)
    beta_iso = set(g_beta.isolated())
    # vertices of C1 - v left isolated once v is gone; indices shift past v
    m = sum(1 for u in comp if u != v and (u if u < v else u - 1) in beta_iso)
    rebuilt = _realize(beta)
    w = component_partition(rebuilt)
    spare = len(w.sigmas[0]) - 2 * m
    if spare < 0:
        raise PreconditionViolated(f"not enough prey slots while realising {pi}")
    tau0 = decreasing(spare)
    tau = _inflate_nonempty(decreasing(m), [Permutation._trusted((1, 2))] * m)
    middle = _inflate_nonempty(decreasing(w.k), list(w.sigmas[1:]))
    return _inflate_nonempty((4, 2, 1, 3), [tau0, middle, tau, Permutation._trusted((1,))])


def accessory_terms(pi: Sequence[int]) -> frozenset[int]:
    """Positions lying in no occurrence of 123 or 132."""
    n = len(pi)
    g = competition_graph(pi)
    touched = {x for e in g.edges for x in e}
    out = set()
    for i in range(n):
        larger_after = sum(1 for j in range(i + 1, n) if pi[j] > pi[i])
        if i not in touched and larger_after < 2:
            out.add(i + 1)
    return frozenset(out)


MAX_BASE_LENGTH = 11


def base_permutations(
    g: WeightedGraph, maxlen: int, avoid: Sequence[int] | None = None, force: bool = False
) -> set[Permutation]:
    """Every accessory-free pi with |pi| <= maxlen whose weighted competition
    graph is ``g`` up to isolated vertices (and avoiding ``avoid``)."""
    if maxlen > MAX_BASE_LENGTH and not force:
        raise ScaleExceeded(f"maxlen {maxlen} exceeds the default cap {MAX_BASE_LENGTH}")
    target = core_key(g)
    total = g.total_weight()
    found = set()
    for n in range(1, maxlen + 1):
        for pi in permutations_by_weight(n, total, avoid):
            if accessory_terms(pi):
                continue
            if core_key(weighted_competition_graph(pi)) == target:
                found.add(pi)
    return found


class BaseCatalog:
    """Base permutations grouped by target graph and avoided pattern."""

    def __init__(self):
        self._store: dict[tuple[CanonicalKey, tuple | None], set[Permutation]] = {}

    def add(self, pi: Sequence[int], avoid: Sequence[int] | None = None) -> None:
        pi = Permutation._trusted(pi)
        if accessory_terms(pi):
            raise ValueError(f"{pi} has accessory terms")
        if avoid is not None and not avoids(pi, avoid):
            raise ValueError(f"{pi} does not avoid {avoid}")
        key = core_key(weighted_competition_graph(pi))
        self._store.setdefault((key, tuple(avoid) if avoid else None), set()).add(pi)

    def get(self, g: WeightedGraph, avoid: Sequence[int] | None = None) -> set[Permutation]:
        return set(self._store.get((core_key(g), tuple(avoid) if avoid else None), ()))

    def merge(self, other: "BaseCatalog") -> None:
        for k, v in other._store.items():
            self._store.setdefault(k, set()).update(v)

    @classmethod
    def build(cls, graphs, maxlen: int, patterns=(None,)) -> "BaseCatalog":
        cat = cls()
        for g in graphs:
            for avoid in patterns:
                for pi in base_permutations(g, maxlen, avoid):
                    cat.add(pi, avoid)
        return cat
