"""One check per reproducible claim, each returning a :class:`Report`.

``reproduce_all`` runs them in order at the default scale caps.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import comb

from .bijections import M, M_inverse, path_to_star, star_to_path
from .compgraph import (
    competition_graph,
    pointset_competition_graph,
    pointset_to_permutation,
    prey_triples,
    weighted_competition_graph,
)
from .enumeration import (
    h_closed_form,
    h_recurrence,
    h_row_bruteforce,
    series_Fm,
    series_H,
    star_base,
    verify_characterizations,
    verify_lemma_3_3,
    wcg_preimage,
)
from .graph import canonical_key, has_induced, is_interval, path_graph, star_graph
from .perm import Permutation, avoiders, avoids, count
from .report import FAIL, PASS, Report, timed
from .structure import base_permutations, realize_132

__all__ = ["EXPECTED_H_TABLE", "CHECKS", "reproduce_all"]

# h(m, n) for m = 1..5 (rows) and n = 1..12 (columns)
EXPECTED_H_TABLE = (
    (0, 0, 1, 4, 12, 32, 80, 192, 448, 1024, 2304, 5120),
    (0, 0, 0, 0, 1, 5, 17, 49, 129, 321, 769, 1793),
    (0, 0, 0, 0, 0, 0, 1, 6, 23, 72, 201, 522),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 7, 30, 102),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 8),
)

STAR3_BASES = {"5634127", "5634172", "5734126", "5734162"}


def _report(claim, bad, t, scale, details=None) -> Report:
    return Report(claim, PASS if not bad else FAIL, bad, t["runtime"], scale, details or {})


def check_catalan(n_max: int = 10) -> Report:
    with timed() as t:
        bad, sizes = [], {}
        for n in range(1, n_max + 1):
            catalan = comb(2 * n, n) // (n + 1)
            a = sum(1 for _ in avoiders(n, (1, 2, 3)))
            b = sum(1 for _ in avoiders(n, (1, 3, 2)))
            sizes[n] = [a, b, catalan]
            if not a == b == catalan:
                bad.append(f"n={n}: |S_n(123)|={a}, |S_n(132)|={b}, Catalan={catalan}")
    return _report("catalan", bad, t, {"n_max": n_max}, {"sizes": sizes})


def check_lemma_3_3(jobs: int = 1) -> Report:
    return verify_lemma_3_3(jobs=jobs)


def _characterization(name: str, ns, jobs: int) -> Report:
    with timed() as t:
        bad, per_n = [], {}
        for n in ns:
            rep = {r.claim: r for r in verify_characterizations(n, jobs=jobs)}[name]
            per_n[n] = rep.status
            bad += [f"n={n}: {w}" for w in rep.witnesses]
    return _report(name, bad, t, {"n": list(ns)}, {"per_n": per_n})


def check_theorem_3_6(ns=range(5, 9), jobs: int = 1) -> Report:
    return _characterization("thm3.6", ns, jobs)


def check_conjecture_3_5(ns=range(5, 9), jobs: int = 1) -> Report:
    return _characterization("conjecture3.5", ns, jobs)


def check_realize_132(n: int = 7) -> Report:
    p3 = path_graph(3)
    with timed() as t:
        bad, total = [], 0
        for pi in permutations(range(1, n + 1)):
            g = competition_graph(pi)
            if has_induced(g, p3):
                continue
            total += 1
            out = realize_132(pi)
            if len(out) != n or not avoids(out, (1, 3, 2)) or canonical_key(competition_graph(out)) != canonical_key(g):
                bad.append(f"{Permutation._trusted(pi)} -> {out}")
    return _report("realize132-roundtrip", bad, t, {"n": n}, {"instances": total})


def check_table_1(max_m: int = 5, max_n: int = 12, brute_max_n: int = 10) -> Report:
    with timed() as t:
        bad = []
        brute = {n: h_row_bruteforce(n) for n in range(1, brute_max_n + 1)}
        for m in range(1, max_m + 1):
            for n in range(1, max_n + 1):
                want = EXPECTED_H_TABLE[m - 1][n - 1]
                got = h_recurrence(m, n)
                if got != want:
                    bad.append(f"h({m},{n}) recurrence {got} != {want}")
                if n <= brute_max_n and brute[n].get(m, 0) != want:
                    bad.append(f"h({m},{n}) brute force {brute[n].get(m, 0)} != {want}")
    return _report("table1", bad, t, {"max_m": max_m, "max_n": max_n, "brute_max_n": brute_max_n})


def check_closed_forms(n_max: int = 30) -> Report:
    with timed() as t:
        bad = []
        for m, start in ((1, 3), (2, 5), (3, 7)):
            for n in range(start, n_max + 1):
                if h_closed_form(m, n) != h_recurrence(m, n):
                    bad.append(f"h({m},{n})")
    return _report("closed-forms", bad, t, {"n_max": n_max})


def check_generating_functions(max_m: int = 5, max_n: int = 20) -> Report:
    with timed() as t:
        bad = []
        grid = series_H(max_m, max_n)
        for m in range(1, max_m + 1):
            fm = series_Fm(m, max_n)
            for n in range(max_n + 1):
                h = h_recurrence(m, n)
                if fm[n] != h:
                    bad.append(f"F_{m}: [y^{n}] = {fm[n]} != {h}")
                if grid[m][n] != h:
                    bad.append(f"H: [x^{m} y^{n}] = {grid[m][n]} != {h}")
        bad += [f"H: [x^0 y^{n}] != 0" for n in range(max_n + 1) if grid[0][n]]
    return _report("generating-functions", bad, t, {"max_m": max_m, "max_n": max_n})


def check_bijection_T(m: int = 3, ns=range(7, 10)) -> Report:
    with timed() as t:
        bad, sizes = [], {}
        for n in ns:
            paths = wcg_preimage(path_graph(m, weighted=True), n)
            stars = wcg_preimage(star_graph(m, weighted=True), n)
            image = {}
            for pi in sorted(paths):
                out = path_to_star(pi, check=True)
                image[out] = pi
                if star_to_path(out) != pi:
                    bad.append(f"roundtrip fails on {pi}")
            if len(image) != len(paths):
                bad.append(f"n={n}: not injective")
            if set(image) != stars:
                bad.append(f"n={n}: image differs from the star preimage")
            sizes[n] = [len(paths), len(stars)]
    return _report("bijection-T", bad, t, {"m": m, "n": list(ns)}, {"sizes": sizes})


def check_bijection_M(m: int = 3, ns=range(7, 10)) -> Report:
    with timed() as t:
        bad, sizes = [], {}
        fig = M(Permutation.parse("5736142"))
        if str(fig) != "5634127":
            bad.append(f"M(5736142) = {fig}")
        for n in ns:
            paths = wcg_preimage(path_graph(m, weighted=True), n, (1, 2, 3))
            stars = wcg_preimage(star_graph(m, weighted=True), n, (1, 3, 2))
            image = {}
            for pi in sorted(paths):
                out = M(pi)
                image[out] = pi
                if M_inverse(out) != pi:
                    bad.append(f"roundtrip fails on {pi}")
            if len(image) != len(paths):
                bad.append(f"n={n}: not injective")
            if set(image) != stars:
                bad.append(f"n={n}: image differs from the 132 star preimage")
            sizes[n] = [len(paths), len(stars)]
    return _report("bijection-M", bad, t, {"m": m, "n": list(ns)}, {"sizes": sizes})


def check_base_permutations(maxlen: int = 11) -> Report:
    with timed() as t:
        bad = []
        k13 = star_graph(3, weighted=True)
        free = {str(p) for p in base_permutations(k13, maxlen)}
        if free != STAR3_BASES:
            bad.append(f"B(K13) = {sorted(free)}")
        avoid = {str(p) for p in base_permutations(k13, maxlen, (1, 3, 2))}
        if avoid != {"5634127"}:
            bad.append(f"B(K13;132) = {sorted(avoid)}")
        for m in range(1, 5):
            got = base_permutations(star_graph(m, weighted=True), maxlen, (1, 3, 2))
            if got != {star_base(m)}:
                bad.append(f"B(K1{m};132) = {sorted(map(str, got))}")
    return _report("base-permutations", bad, t, {"maxlen": maxlen})


def _random_pointset(rng: random.Random) -> list:
    k = rng.randint(1, 7)
    style = rng.choice(("grid", "grid", "line", "float", "fraction"))
    if style == "grid":
        side = rng.randint(1, 4)
        cells = [(x, y) for x in range(side + 1) for y in range(side + 1)]
        return rng.sample(cells, min(k, len(cells)))
    if style == "line":
        x0 = rng.randint(0, 2)
        pts = {(x0, rng.randint(0, 9)) for _ in range(k)} | {(rng.randint(0, 3), 5) for _ in range(k // 2)}
        return list(pts)
    if style == "fraction":
        pts = {(Fraction(rng.randint(0, 6), 3), Fraction(rng.randint(0, 6), 2)) for _ in range(k)}
        return list(pts)
    pts = {(rng.random(), rng.random()) for _ in range(k)}
    return list(pts)


def check_properties(n_max: int = 8, samples: int = 1000, seed: int = 20141) -> Report:
    with timed() as t:
        bad = []
        interval_memo: dict = {}
        for n in range(1, n_max + 1):
            for pi in permutations(range(1, n + 1)):
                g = competition_graph(pi)
                key = canonical_key(g)
                if key not in interval_memo:
                    interval_memo[key] = is_interval(g)
                if not interval_memo[key]:
                    bad.append(f"C({Permutation._trusted(pi)}) not interval")
                w = weighted_competition_graph(pi)
                if w.simple().edges != g.edges:
                    bad.append(f"W/C edge mismatch on {Permutation._trusted(pi)}")
                total = w.total_weight()
                if total != prey_triples(pi) or total != count(pi, (1, 2, 3)) + count(pi, (1, 3, 2)):
                    bad.append(f"weight sum mismatch on {Permutation._trusted(pi)}")
        rng = random.Random(seed)
        for _ in range(samples):
            pts = _random_pointset(rng)
            direct = pointset_competition_graph(pts)
            via = competition_graph(pointset_to_permutation(pts))
            if canonical_key(direct) != canonical_key(via):
                bad.append(f"point set {pts}")
    return _report(
        "properties",
        bad,
        t,
        {"n_max": n_max, "pointsets": samples, "seed": seed},
        {"interval_classes": len(interval_memo)},
    )


CHECKS = {
    "catalan": check_catalan,
    "lemma3.3": check_lemma_3_3,
    "thm3.6": check_theorem_3_6,
    "conjecture3.5": check_conjecture_3_5,
    "realize132": check_realize_132,
    "table1": check_table_1,
    "closed-forms": check_closed_forms,
    "generating-functions": check_generating_functions,
    "bijection-T": check_bijection_T,
    "bijection-M": check_bijection_M,
    "base-permutations": check_base_permutations,
    "properties": check_properties,
}

_TAKES_JOBS = {"lemma3.3", "thm3.6", "conjecture3.5"}


def run_check(name: str, jobs: int = 1) -> Report:
    fn = CHECKS[name]
    return fn(jobs=jobs) if name in _TAKES_JOBS else fn()


def reproduce_all(jobs: int = 1, cache=None) -> list[Report]:
    """Every check at default scale; ``cache`` (a ResultCache) is optional."""
    out = []
    for name in CHECKS:
        if cache is not None:
            out.append(cache.report(("check", name), lambda name=name: run_check(name, jobs)))
        else:
            out.append(run_check(name, jobs))
    return out
