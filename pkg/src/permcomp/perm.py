"""Permutations in one-line notation: reduction, pattern occurrences,
avoidance classes and inflation.

Positions in the public API are 1-based, matching one-line notation.
:class:`Permutation` itself is a tuple, so ``pi[0]`` is the first term.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import ArityMismatch, DuplicateValues, EmptyBlock

__all__ = [
    "Permutation",
    "Occurrence",
    "reduce",
    "occurrences",
    "contains",
    "count",
    "avoids",
    "avoiders",
    "inflate",
    "decreasing",
    "delete",
]


class Permutation(tuple):
    """A permutation of ``1..n`` stored as its one-line notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            if len(set(vals)) != len(vals):
                raise DuplicateValues(f"repeated values in {vals}")
            raise ValueError(f"{vals} is not a permutation of 1..{len(vals)}")
        return tuple.__new__(cls, vals)

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Permutation":
        # skips validation; for callers that build bijections themselves
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"53412"`` (digits, n <= 9) or ``"10,3,1,..."``."""
        text = text.strip()
        if not text:
            return cls(())
        if "," in text or " " in text:
            parts = text.replace(",", " ").split()
            return cls(int(p) for p in parts)
        return cls(int(c) for c in text)

    def __str__(self) -> str:
        if any(v >= 10 for v in self):
            return ",".join(map(str, self))
        return "".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation('{self}')"

    @property
    def n(self) -> int:
        return len(self)

    def position(self, value: int) -> int:
        """1-based position of ``value``."""
        return self.index(value) + 1

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation._trusted(inv)


class Occurrence(NamedTuple):
    """Strictly increasing 1-based positions of a pattern occurrence."""

    indices: tuple[int, ...]

    def values(self, pi: Sequence[int]) -> tuple[int, ...]:
        return tuple(pi[i - 1] for i in self.indices)


def reduce(seq: Sequence[float]) -> Permutation:
    """The permutation order-isomorphic to a sequence of distinct reals."""
    if len(set(seq)) != len(seq):
        raise DuplicateValues(f"sequence has equal entries: {list(seq)}")
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return Permutation._trusted(out)


def _relations(tau: Sequence[int]) -> list[tuple[int, int, bool]]:
    return [(a, b, tau[a] < tau[b]) for a, b in combinations(range(len(tau)), 2)]


def _order_isomorphic(vals: Sequence[int], rel: list[tuple[int, int, bool]]) -> bool:
    for a, b, less in rel:
        if (vals[a] < vals[b]) != less:
            return False
    return True


def occurrences(pi: Sequence[int], tau: Sequence[int]) -> list[Occurrence]:
    """Every index set of ``pi`` whose subsequence reduces to ``tau``.

    A plain scan over all C(n, k) subsets; patterns here have length <= 4.
    """
    if len(tau) < 1:
        raise ValueError("pattern must be non-empty")
    rel = _relations(tau)
    found = []
    for idx in combinations(range(len(pi)), len(tau)):
        if _order_isomorphic([pi[i] for i in idx], rel):
            found.append(Occurrence(tuple(i + 1 for i in idx)))
    return found


def count(pi: Sequence[int], tau: Sequence[int]) -> int:
    return len(occurrences(pi, tau))


def contains(pi: Sequence[int], tau: Sequence[int]) -> bool:
    rel = _relations(tau)
    return any(
        _order_isomorphic([pi[i] for i in idx], rel)
        for idx in combinations(range(len(pi)), len(tau))
    )


def avoids(pi: Sequence[int], tau: Sequence[int]) -> bool:
    return not contains(pi, tau)


def _closes_occurrence(prefix: list[int], k: int, rel) -> bool:
    # only occurrences using the newest term can be new; fill the other
    # k-1 pattern slots left to right, checking each against those placed
    last = len(prefix) - 1
    less = {(a, b): lt for a, b, lt in rel}
    chosen = [0] * k
    chosen[k - 1] = prefix[last]

    def fits(slot: int, val: int) -> bool:
        if (val < chosen[k - 1]) != less[(slot, k - 1)]:
            return False
        return all((chosen[a] < val) == less[(a, slot)] for a in range(slot))

    def fill(slot: int, start: int) -> bool:
        if slot == k - 1:
            return True
        for i in range(start, last - (k - 2 - slot)):
            if fits(slot, prefix[i]):
                chosen[slot] = prefix[i]
                if fill(slot + 1, i + 1):
                    return True
        return False

    return fill(0, 0)


def _closer(tau: Sequence[int]) -> Callable[[list[int]], bool]:
    """Test for "the last term of prefix completes an occurrence of tau".

    Length-3 patterns get a single left-to-right scan: for each candidate
    middle term, the best first term seen so far decides. Other lengths
    fall back to the general slot search.
    """
    k = len(tau)
    if k != 3:
        rel = _relations(tau)
        return lambda prefix: len(prefix) >= k and _closes_occurrence(prefix, k, rel)
    first_below_last = tau[0] < tau[2]
    mid_below_last = tau[1] < tau[2]
    first_below_mid = tau[0] < tau[1]

    def closes(prefix: list[int]) -> bool:
        v = prefix[-1]
        lo = hi = None  # extreme values so far on the first term's side of v
        for x in prefix[:-1]:
            if (x < v) == mid_below_last and lo is not None:
                if (lo < x) if first_below_mid else (hi > x):
                    return True
            if (x < v) == first_below_last:
                if lo is None or x < lo:
                    lo = x
                if hi is None or x > hi:
                    hi = x
        return False

    return closes


def avoiders(n: int, tau: Sequence[int]) -> Iterator[Permutation]:
    """Yield S_n(tau) in lexicographic order.

    Backtracks over prefixes, pruning as soon as a prefix holds an
    occurrence, so the cost tracks |S_n(tau)| rather than n!.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    closes = _closer(tau)
    prefix: list[int] = []
    used = [False] * (n + 1)

    def extend() -> Iterator[Permutation]:
        if len(prefix) == n:
            yield Permutation._trusted(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if not closes(prefix):
                used[v] = True
                yield from extend()
                used[v] = False
            prefix.pop()

    yield from extend()


def inflate(pi: Sequence[int], blocks: Sequence[Sequence[int]]) -> Permutation:
    """``pi[blocks[0], ..., blocks[n-1]]``: term i becomes block i.

    Block i keeps consecutive positions and a consecutive range of values;
    the blocks are stacked in value according to ``pi``.
    """
    if len(blocks) != len(pi):
        raise ArityMismatch(f"{len(blocks)} blocks for a permutation of length {len(pi)}")
    if any(len(b) == 0 for b in blocks):
        raise EmptyBlock("inflation blocks must be non-empty")
    offset = [0] * (len(pi) + 1)
    by_value = sorted(range(len(pi)), key=pi.__getitem__)
    base = 0
    for i in by_value:
        offset[i] = base
        base += len(blocks[i])
    out: list[int] = []
    for i, block in enumerate(blocks):
        out.extend(offset[i] + v for v in block)
    return Permutation._trusted(out)


def decreasing(k: int) -> Permutation:
    if k < 0:
        raise ValueError("length must be non-negative")
    return Permutation._trusted(range(k, 0, -1))


def delete(pi: Sequence[int], *positions: int) -> Permutation:
    """Reduce ``pi`` with the terms at the given 1-based positions removed."""
    drop = set(positions)
    return reduce([v for i, v in enumerate(pi, start=1) if i not in drop])
