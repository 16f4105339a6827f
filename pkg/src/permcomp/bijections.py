"""Path and star labelings of weighted competition graphs, and the two
cyclic-shift bijections between path-producing and star-producing
permutations.

Every map checks its input by building W(pi) and matching its
non-isolated part against the expected shape.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .compgraph import edge_witnesses, weighted_competition_graph
from .errors import KOutOfRange, NotA123Path, NotAPath, NotAStar
from .perm import Permutation, avoids, reduce

__all__ = [
    "PathLabeling",
    "StarLabeling",
    "path_labeling",
    "star_labeling",
    "T_power",
    "path_to_star",
    "star_to_path",
    "M",
    "M_inverse",
    "LOCAL_PATTERNS",
    "FINAL_LOCAL_PATTERNS",
]

# order-types of (x, p1, y, p_{k+2}, p_{k+3}) seen at each T step
LOCAL_PATTERNS = frozenset({(3, 4, 1, 5, 2), (3, 5, 1, 4, 2)})
FINAL_LOCAL_PATTERNS = frozenset({(3, 4, 1, 2, 5), (3, 5, 1, 2, 4)})


class PathLabeling(NamedTuple):
    """1-based positions of p_0, ..., p_m."""

    positions: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.positions) - 1


class StarLabeling(NamedTuple):
    """1-based positions of the centre a and of the leaves b_1..b_m, left to right."""

    center: int
    leaves: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.leaves)


def _unit_core(pi: Sequence[int]):
    w = weighted_competition_graph(pi)
    if any(x != 1 for x in w.weights.values()):
        return None, None
    adj: dict[int, set[int]] = {}
    for u, v in w.weights:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return w, adj


def _path_order(adj: dict[int, set[int]]) -> list[int] | None:
    if not adj:
        return None
    ends = [v for v, nb in adj.items() if len(nb) == 1]
    if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
        return None
    seq = [min(ends)]
    prev = None
    while True:
        nxt = [u for u in adj[seq[-1]] if u != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0])
    return seq if len(seq) == len(adj) else None


def _path_conditions(pi: Sequence[int], seq: list[int]) -> bool:
    m = len(seq) - 1
    if any(seq[i] > seq[i + 1] for i in range(m - 1)):
        return False
    if m >= 2 and seq[m] < seq[m - 2]:
        return False
    if m >= 2 and not pi[seq[m]] < pi[seq[1]]:
        return False
    return True


def path_labeling(pi: Sequence[int]) -> PathLabeling:
    """Canonical p_0..p_m labels for pi in W^{-1}(P_m).

    Of the two orientations of the path, keep the one where p_0..p_{m-1}
    run left to right, p_m lies right of p_{m-2}, and p_m is smaller than
    p_1. If both qualify (small m only), p_0 is the leftmost choice.
    """
    _, adj = _unit_core(pi)
    seq = _path_order(adj) if adj is not None else None
    if seq is None:
        raise NotAPath(f"W({Permutation._trusted(pi)}) is not a unit-weight path")
    good = [s for s in (seq, seq[::-1]) if _path_conditions(pi, s)]
    if not good:
        raise NotAPath(f"no orientation of the path in {Permutation._trusted(pi)} is canonical")
    best = min(good, key=lambda s: s[0])
    return PathLabeling(tuple(v + 1 for v in best))


def star_labeling(pi: Sequence[int]) -> StarLabeling:
    """Centre and left-to-right leaves for pi in W^{-1}(K_{1,m})."""
    _, adj = _unit_core(pi)
    if not adj:
        raise NotAStar(f"W({Permutation._trusted(pi)}) is not a unit-weight star")
    m = len(adj) - 1
    if m == 1:
        a = max(adj, key=lambda v: pi[v])
    else:
        hubs = [v for v, nb in adj.items() if len(nb) == m]
        if len(hubs) != 1 or any(len(nb) != 1 for v, nb in adj.items() if v != hubs[0]):
            raise NotAStar(f"W({Permutation._trusted(pi)}) is not a unit-weight star")
        a = hubs[0]
    leaves = sorted(v for v in adj if v != a)
    if m >= 2 and a < leaves[m - 2]:
        raise NotAStar(f"centre of {Permutation._trusted(pi)} is left of b_(m-1)")
    if not pi[leaves[-1]] < pi[a]:
        raise NotAStar(f"b_m exceeds the centre in {Permutation._trusted(pi)}")
    return StarLabeling(a + 1, tuple(v + 1 for v in leaves))


def _rotate_left(pi: Sequence[int], positions: Sequence[int]) -> Permutation:
    out = list(pi)
    vals = [pi[p - 1] for p in positions]
    for p, v in zip(positions, vals[1:] + vals[:1]):
        out[p - 1] = v
    return Permutation._trusted(out)


def _rotate_right(pi: Sequence[int], positions: Sequence[int]) -> Permutation:
    out = list(pi)
    vals = [pi[p - 1] for p in positions]
    for p, v in zip(positions, vals[-1:] + vals[:-1]):
        out[p - 1] = v
    return Permutation._trusted(out)


def _check_step(cur: Permutation, pos: Sequence[int], s: int) -> None:
    # pos[j] is the position i_j; p_1 currently sits at i_{s+1}
    m = len(pos) - 1
    prey = edge_witnesses(cur)

    def sole(a: int, b: int) -> int:
        e = (min(a, b) - 1, max(a, b) - 1)
        ws = prey.get(e)
        assert ws is not None and len(ws) == 1, f"edge {e} missing in {cur}"
        return ws[0] + 1

    here, mid, far = pos[s + 1], pos[s + 2], pos[s + 3]
    x, y = sole(here, mid), sole(mid, far)
    five = sorted([x, here, y, mid, far])
    shape = tuple(reduce([cur[p - 1] for p in five]))
    allowed = LOCAL_PATTERNS | (FINAL_LOCAL_PATTERNS if s + 3 == m else frozenset())
    assert shape in allowed, f"T step {s} on {cur}: local pattern {shape}"


def T_power(pi: Sequence[int], k: int, check: bool = False) -> Permutation:
    """T^k: cyclic left shift of the values at p_1, ..., p_{k+1}.

    With ``check`` the shift is applied one swap at a time and each step's
    five-term neighbourhood is checked against the expected order-types.
    """
    pi = Permutation._trusted(pi)
    lab = path_labeling(pi)
    m = lab.m
    if k == 0:
        return pi
    if not 0 <= k <= m - 2:
        raise KOutOfRange(f"k={k} outside 0..{m - 2}")
    pos = lab.positions
    result = _rotate_left(pi, pos[1 : k + 2])
    if check:
        cur = pi
        for s in range(k):
            _check_step(cur, pos, s)
            cur = _rotate_left(cur, (pos[s + 1], pos[s + 2]))
        assert cur == result
    return result


def path_to_star(pi: Sequence[int], check: bool = False) -> Permutation:
    """T^{m-2}, taking W^{-1}(P_m) onto W^{-1}(K_{1,m}).

    For m <= 2 the path already is a star and pi is returned unchanged.
    """
    m = path_labeling(pi).m
    if m <= 2:
        return Permutation._trusted(pi)
    return T_power(pi, m - 2, check=check)


def star_to_path(pi: Sequence[int]) -> Permutation:
    """Inverse of :func:`path_to_star`: right cyclic shift over b_2..b_{m-1}, a."""
    lab = star_labeling(pi)
    if lab.m <= 2:
        return Permutation._trusted(pi)
    return _rotate_right(pi, lab.leaves[1:-1] + (lab.center,))


def M(pi: Sequence[int]) -> Permutation:
    """Left cyclic shift over p_0..p_m, taking W^{-1}(P_m; 123) to W^{-1}(K_{1,m}; 132)."""
    if not avoids(pi, (1, 2, 3)):
        raise NotA123Path(f"{Permutation._trusted(pi)} contains 123")
    lab = path_labeling(pi)
    vals = [pi[p - 1] for p in lab.positions]
    if any(a <= b for a, b in zip(vals, vals[1:])):
        raise NotA123Path(f"path values {vals} are not decreasing")
    return _rotate_left(pi, lab.positions)


def M_inverse(pi: Sequence[int]) -> Permutation:
    """Right cyclic shift over b_1..b_m, a."""
    if not avoids(pi, (1, 3, 2)):
        raise NotAStar(f"{Permutation._trusted(pi)} contains 132")
    lab = star_labeling(pi)
    return _rotate_right(pi, lab.leaves + (lab.center,))
