"""Exhaustive sweeps over permutation classes and the h(m, n) counting
stack: brute force, recurrence, closed forms and generating functions.

h(m, n) is the number of 132-avoiding permutations of length n whose
weighted competition graph is a unit-weight star K_{1,m} plus isolated
vertices.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .compgraph import competition_graph, permutations_by_weight, weighted_competition_graph
from .errors import BelowThreshold, ScaleExceeded, UnsupportedM
from .graph import (
    CanonicalKey,
    SimpleGraph,
    WeightedGraph,
    canonical_key,
    core_key,
    has_induced,
    path_graph,
    star_graph,
)
from .perm import Permutation, avoiders, avoids, delete, reduce
from .report import FAIL, PASS, Report, timed
from .structure import accessory_terms

__all__ = [
    "GraphClassSet",
    "SequenceTable",
    "RationalSeries",
    "competition_class",
    "verify_lemma_3_3",
    "verify_class_correspondence",
    "verify_characterizations",
    "h_bruteforce",
    "h_recurrence",
    "h_closed_form",
    "h_table",
    "series_Fm",
    "series_H",
    "oeis_rows",
    "wcg_preimage",
    "star_base",
    "yp_violations",
    "recurrence_split",
    "OEIS_IDS",
]

MAX_FULL_N = 9
MAX_AVOIDER_N = 11
MAX_PREIMAGE_N = 10
MAX_BRUTE_H_N = 10

INC = (1, 2, 3)
P132 = (1, 3, 2)

OEIS_IDS = {1: "A001787", 2: "A000337", 3: "A045618"}


def _cap(n: int, limit: int, what: str, force: bool) -> None:
    if n > limit and not force:
        raise ScaleExceeded(f"{what} with n={n} exceeds the default cap {limit}; pass force=True")


# --- competition graph classes -------------------------------------------


@dataclass
class GraphClassSet:
    """Competition graphs of a permutation class, up to isomorphism, with
    the lexicographically least permutation realising each."""

    n: int
    avoid: tuple | None
    reps: dict[CanonicalKey, Permutation] = field(default_factory=dict)

    @property
    def keys(self) -> set[CanonicalKey]:
        return set(self.reps)

    def __len__(self) -> int:
        return len(self.reps)

    def __contains__(self, key) -> bool:
        return key in self.reps

    def graph(self, key: CanonicalKey) -> SimpleGraph:
        return competition_graph(self.reps[key])

    def add(self, pi: Permutation) -> None:
        key = canonical_key(competition_graph(pi))
        old = self.reps.get(key)
        if old is None or pi < old:
            self.reps[key] = pi

    def merge(self, other: "GraphClassSet") -> None:
        for key, pi in other.reps.items():
            old = self.reps.get(key)
            if old is None or pi < old:
                self.reps[key] = pi


def _sweep_first(args) -> dict:
    n, first = args
    part = GraphClassSet(n, None)
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in permutations(rest):
        part.add(Permutation._trusted((first,) + tail))
    return part.reps


def competition_class(
    n: int, avoid: Sequence[int] | None = None, jobs: int = 1, force: bool = False
) -> GraphClassSet:
    """C(S_n) or C(S_n(avoid)) as canonical keys with representatives."""
    avoid = tuple(avoid) if avoid else None
    _cap(n, MAX_AVOIDER_N if avoid else MAX_FULL_N, "competition_class", force)
    out = GraphClassSet(n, avoid)
    if avoid is not None:
        for pi in avoiders(n, avoid):
            out.add(pi)
        return out
    if n == 0:
        out.add(Permutation(()))
        return out
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for reps in pool.map(_sweep_first, [(n, v) for v in range(1, n + 1)]):
                out.merge(GraphClassSet(n, None, reps))
        return out
    for v in range(1, n + 1):
        out.merge(GraphClassSet(n, None, _sweep_first((n, v))))
    return out


def default_jobs() -> int:
    return os.cpu_count() or 1


def _padded(g: SimpleGraph, n: int) -> SimpleGraph:
    return SimpleGraph(n, g.edges)


def verify_lemma_3_3(jobs: int = 1) -> Report:
    """C(S_7) minus C(S_7(123)) is exactly the padded star, and C(S_7)
    minus C(S_7(132)) exactly the padded path P_3."""
    with timed() as t:
        full = competition_class(7, jobs=jobs)
        inc = competition_class(7, INC)
        p132 = competition_class(7, P132)
        star_key = canonical_key(_padded(star_graph(3), 7))
        path_key = canonical_key(_padded(path_graph(3), 7))
        d123 = full.keys - inc.keys
        d132 = full.keys - p132.keys
        checks = {
            "(i) C(S7) \\ C(S7(123)) = {K'13}": d123 == {star_key},
            "(ii) C(S7) \\ C(S7(132)) = {P'3}": d132 == {path_key},
            "K'13 in C(S7(132))": star_key in p132,
            "P'3 in C(S7(123))": path_key in inc,
        }
        witnesses = []
        for key in sorted(d123 ^ {star_key}):
            witnesses.append(str(full.reps.get(key) or inc.reps.get(key)))
        for key in sorted(d132 ^ {path_key}):
            witnesses.append(str(full.reps.get(key) or p132.reps.get(key)))
        if not checks["K'13 in C(S7(132))"]:
            witnesses.append("K'13 missing from C(S7(132))")
        if not checks["P'3 in C(S7(123))"]:
            witnesses.append("P'3 missing from C(S7(123))")
    status = PASS if all(checks.values()) else FAIL
    return Report(
        "lemma3.3",
        status,
        witnesses,
        t["runtime"],
        {"n": 7},
        {
            "checks": {k: v for k, v in checks.items()},
            "sizes": {"S7": len(full), "S7(123)": len(inc), "S7(132)": len(p132)},
            "K'13 witness": str(full.reps[star_key]) if star_key in full else None,
            "K'13 in S7(132) witness": str(p132.reps[star_key]) if star_key in p132 else None,
            "P'3 witness": str(full.reps[path_key]) if path_key in full else None,
        },
    )


def verify_class_correspondence(n_max: int = 6) -> Report:
    """For n <= n_max, C(S_n(123)) and C(S_n(132)) agree up to isomorphism."""
    with timed() as t:
        bad = []
        for n in range(1, n_max + 1):
            a = competition_class(n, INC)
            b = competition_class(n, P132)
            for key in sorted(a.keys ^ b.keys):
                rep = a.reps.get(key) or b.reps.get(key)
                bad.append(f"n={n}: {rep}")
    return Report(
        f"C(S_n(123)) ~ C(S_n(132)) for n <= {n_max}",
        PASS if not bad else FAIL,
        bad,
        t["runtime"],
        {"n_max": n_max},
    )


_STAR3 = star_graph(3)
_P3 = path_graph(3)


def verify_characterizations(n: int, jobs: int = 1, force: bool = False) -> list[Report]:
    """For every graph of C(S_n): no induced P_3 iff realisable by a
    132-avoider, and no induced K_{1,3} iff realisable by a 123-avoider."""
    _cap(n, 8, "verify_characterizations", force)
    with timed() as t:
        full = competition_class(n, jobs=jobs, force=force)
        classes = {P132: competition_class(n, P132, force=force), INC: competition_class(n, INC, force=force)}
    build_time = t["runtime"]
    reports = []
    for name, pattern, obstruction in (
        ("thm3.6", P132, _P3),
        ("conjecture3.5", INC, _STAR3),
    ):
        with timed() as t:
            bad = []
            for key, rep in sorted(full.reps.items(), key=lambda kv: kv[1]):
                g = competition_graph(rep)
                free = not has_induced(g, obstruction)
                realised = key in classes[pattern]
                if free != realised:
                    bad.append(str(rep))
        reports.append(
            Report(
                name,
                PASS if not bad else FAIL,
                bad,
                t["runtime"] + build_time,
                {"n": n},
                {"graphs": len(full), f"realised_by_{''.join(map(str, pattern))}_avoiders": len(classes[pattern])},
            )
        )
    return reports


# --- h(m, n) --------------------------------------------------------------


def _star_size(w: WeightedGraph) -> int:
    """m if W is a unit-weight K_{1,m} plus isolated vertices, else 0."""
    if not w.weights or any(x != 1 for x in w.weights.values()):
        return 0
    edges = list(w.weights)
    m = len(edges)
    if m == 1:
        return 1
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if sorted(deg.values()) == [1] * m + [m]:
        return m
    return 0


def h_row_bruteforce(n: int, force: bool = False) -> dict[int, int]:
    """{m: h(m, n)} from one pass over S_n(132)."""
    _cap(n, MAX_BRUTE_H_N, "h_bruteforce", force)
    counts: dict[int, int] = {}
    for pi in avoiders(n, P132):
        m = _star_size(weighted_competition_graph(pi))
        if m:
            counts[m] = counts.get(m, 0) + 1
    return counts


def h_bruteforce(m: int, n: int, force: bool = False) -> int:
    return h_row_bruteforce(n, force).get(m, 0)


@lru_cache(maxsize=None)
def h_recurrence(m: int, n: int) -> int:
    """h(m, n) = h(m, n-1) + h(m-1, n-2), seeded by h(1, n) = (n-2) 2^(n-3)."""
    if m < 1 or n <= 2:
        return 0
    if m == 1:
        return (n - 2) * 2 ** (n - 3)
    return h_recurrence(m, n - 1) + h_recurrence(m - 1, n - 2)


_CLOSED_THRESHOLD = {1: 3, 2: 5, 3: 7}


def h_closed_form(m: int, n: int) -> int:
    if m not in _CLOSED_THRESHOLD:
        raise UnsupportedM(f"no closed form for m={m}")
    if n < _CLOSED_THRESHOLD[m]:
        raise BelowThreshold(f"closed form for m={m} holds from n={_CLOSED_THRESHOLD[m]}")
    if m == 1:
        return (n - 2) * 2 ** (n - 3)
    if m == 2:
        return (n - 5) * 2 ** (n - 4) + 1
    return (n - 8) * 2 ** (n - 5) + n - 2


@dataclass
class SequenceTable:
    """h(m, n) cells, each tagged with every method that produced it.

    Adding a value that disagrees with one already stored raises.
    """

    cells: dict[tuple[int, int], int] = field(default_factory=dict)
    methods: dict[tuple[int, int], set] = field(default_factory=dict)

    def put(self, m: int, n: int, value: int, method: str) -> None:
        old = self.cells.get((m, n))
        if old is not None and old != value:
            raise AssertionError(f"h({m},{n}): {method} gives {value}, table has {old}")
        self.cells[(m, n)] = value
        self.methods.setdefault((m, n), set()).add(method)

    def get(self, m: int, n: int) -> int:
        return self.cells[(m, n)]

    def rows(self, max_m: int, max_n: int) -> list[list[int]]:
        return [[self.cells.get((m, n), 0) for n in range(1, max_n + 1)] for m in range(1, max_m + 1)]

    def to_csv(self, max_m: int, max_n: int) -> str:
        lines = ["m\\n," + ",".join(str(n) for n in range(1, max_n + 1))]
        for m, row in enumerate(self.rows(max_m, max_n), start=1):
            lines.append(f"{m}," + ",".join(map(str, row)))
        return "\n".join(lines) + "\n"

    def to_json(self, max_m: int, max_n: int) -> dict:
        return {
            "max_m": max_m,
            "max_n": max_n,
            "rows": self.rows(max_m, max_n),
            "methods": {
                f"{m},{n}": sorted(self.methods.get((m, n), ()))
                for m in range(1, max_m + 1)
                for n in range(1, max_n + 1)
            },
        }


def h_table(max_m: int, max_n: int, brute_max_n: int = MAX_BRUTE_H_N, series: bool = True) -> SequenceTable:
    """Fill h(m, n) by recurrence, by brute force up to ``brute_max_n``, by
    the closed forms where they apply, and by series expansion."""
    table = SequenceTable()
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            table.put(m, n, h_recurrence(m, n), "recurrence")
            if m in _CLOSED_THRESHOLD and n >= _CLOSED_THRESHOLD[m]:
                table.put(m, n, h_closed_form(m, n), "closed-form")
    for n in range(1, min(max_n, brute_max_n) + 1):
        row = h_row_bruteforce(n)
        for m in range(1, max_m + 1):
            table.put(m, n, row.get(m, 0), "brute")
    if series:
        grid = series_H(max_m, max_n)
        for m in range(1, max_m + 1):
            coeffs = series_Fm(m, max_n)
            for n in range(1, max_n + 1):
                table.put(m, n, coeffs[n], "series")
                table.put(m, n, grid[m][n], "series")
    return table


# --- generating functions ------------------------------------------------


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class RationalSeries:
    """numerator / denominator as a formal power series in y."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise ValueError("denominator needs a non-zero constant term")

    def coefficients(self, order: int) -> list:
        """Coefficients of y^0 .. y^order, by exact long division."""
        d = [Fraction(c) for c in self.denominator]
        num = [Fraction(c) for c in self.numerator]
        q: list[Fraction] = []
        for k in range(order + 1):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(d) - 1) + 1):
                acc -= d[j] * q[k - j]
            q.append(acc / d[0])
        return [_as_int(c) for c in q]


def Fm_series(m: int) -> RationalSeries:
    """F_m(y) = y^(2m+1) / ((1 - 2y)^2 (1 - y)^(m-1))."""
    den = [1, -4, 4]
    for _ in range(m - 1):
        den = _polymul(den, [1, -1])
    return RationalSeries(tuple([0] * (2 * m + 1) + [1]), tuple(den))


def series_Fm(m: int, order: int) -> list[int]:
    if m < 1 or order < 0:
        raise ValueError("need m >= 1 and order >= 0")
    return Fm_series(m).coefficients(order)


def series_H(max_m: int, max_n: int) -> list[list[int]]:
    """[x^m y^n] of H(x, y) = x y^3 (1 - y) / ((1 - 2y)^2 (1 - y - x y^2)),
    as grid[m][n] for 0 <= m <= max_m, 0 <= n <= max_n."""
    if max_m < 0 or max_n < 0:
        raise ValueError("bounds must be non-negative")
    num = {(1, 3): 1, (1, 4): -1}
    # (1 - 4y + 4y^2)(1 - y - x y^2)
    den: dict[tuple[int, int], int] = {}
    for (a, b), c in {(0, 0): 1, (0, 1): -4, (0, 2): 4}.items():
        for (p, r), e in {(0, 0): 1, (0, 1): -1, (1, 2): -1}.items():
            den[(a + p, b + r)] = den.get((a + p, b + r), 0) + c * e
    den = {k: v for k, v in den.items() if v}
    d0 = den.pop((0, 0))
    grid = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for i in range(max_m + 1):
        for j in range(max_n + 1):
            acc = num.get((i, j), 0)
            for (a, b), c in den.items():
                if a <= i and b <= j:
                    acc -= c * grid[i - a][j - b]
            q, r = divmod(acc, d0)
            assert r == 0
            grid[i][j] = q
    return grid


def oeis_rows(max_n: int = 30) -> dict[int, dict]:
    """b-file style text for h(1, n), h(2, n), h(3, n).

    Lines are ``n h(m,n)`` with n the length index used here, from the first
    non-zero term; no network access is made.
    """
    out = {}
    for m, oeis in OEIS_IDS.items():
        start = _CLOSED_THRESHOLD[m]
        values = [(n, h_recurrence(m, n)) for n in range(start, max_n + 1)]
        text = [f"# h({m},n) for n = {start}..{max_n}; compare {oeis} (index shifted)"]
        text += [f"{n} {v}" for n, v in values]
        out[m] = {"oeis": oeis, "values": values, "bfile": "\n".join(text) + "\n"}
    return out


# --- preimages ------------------------------------------------------------


def wcg_preimage(
    g: WeightedGraph, n: int, avoid: Sequence[int] | None = None, force: bool = False
) -> set[Permutation]:
    """Every pi in S_n (or S_n(avoid)) with W(pi) isomorphic to ``g`` after
    deleting isolated vertices on both sides."""
    _cap(n, MAX_PREIMAGE_N, "wcg_preimage", force)
    target = core_key(g)
    return {
        pi
        for pi in permutations_by_weight(n, g.total_weight(), avoid)
        if core_key(weighted_competition_graph(pi)) == target
    }


def star_base(m: int) -> Permutation:
    """(2m-1)(2m)(2m-3)(2m-2)...(3)(4)(1)(2)(2m+1)."""
    vals = []
    for i in range(m, 0, -1):
        vals += [2 * i - 1, 2 * i]
    return Permutation(vals + [2 * m + 1])


def _yp_positions(pi: Sequence[int], m: int) -> list[int] | None:
    acc = accessory_terms(pi)
    core = [p for p in range(1, len(pi) + 1) if p not in acc]
    if len(core) != 2 * m + 1:
        return None
    if reduce([pi[p - 1] for p in core]) != star_base(m):
        return None
    return core


def yp_violations(pi: Sequence[int], m: int) -> list[str]:
    """Structural checks on pi in W^{-1}(K_{1,m}; 132): the non-accessory
    terms form the base permutation, no accessory term splits a
    prey-predator pair, and the accessory run between consecutive pairs is
    decreasing and sits in value between the two pairs."""
    core = _yp_positions(pi, m)
    if core is None:
        return ["non-accessory terms do not reduce to the star base permutation"]
    bad = []
    acc = sorted(accessory_terms(pi))
    pairs = [(core[2 * i], core[2 * i + 1]) for i in range(m)]
    for i, (y, p) in enumerate(pairs, start=1):
        if any(y < a < p for a in acc):
            bad.append(f"accessory term inside pair {i}")
    for i in range(m - 1):
        (y1, p1), (y2, p2) = pairs[i], pairs[i + 1]
        run = [pi[a - 1] for a in acc if p1 < a < y2]
        lo = max(pi[y2 - 1], pi[p2 - 1])
        hi = min(pi[y1 - 1], pi[p1 - 1])
        if any(not lo < v < hi for v in run):
            bad.append(f"accessory run after pair {i + 1} not between the pairs in value")
        if any(a <= b for a, b in zip(run, run[1:])):
            bad.append(f"accessory run after pair {i + 1} not decreasing")
    return bad


def recurrence_split(m: int, n: int) -> tuple[set, set, set]:
    """Split W_n^{-1}(K_{1,m}; 132) by the term after the first pair.

    Returns (preimage, images with that accessory term removed, images with
    the second pair removed); the first image set should be all of
    W_{n-1}^{-1}(K_{1,m}; 132) and the second all of W_{n-2}^{-1}(K_{1,m-1}; 132),
    each reached injectively.
    """
    pre = wcg_preimage(star_graph(m, weighted=True), n, P132)
    drop_one, drop_pair = [], []
    for pi in pre:
        core = _yp_positions(pi, m)
        a = core[0]
        nxt = a + 2
        if nxt not in core:
            drop_one.append(delete(pi, nxt))
        else:
            drop_pair.append(delete(pi, nxt, nxt + 1))
    one, pair = set(drop_one), set(drop_pair)
    if len(one) != len(drop_one) or len(pair) != len(drop_pair):
        raise AssertionError("re-insertion is not unique")
    return pre, one, pair
