"""Command-line front end: ``permcomp VERB ...``.

Exit status is 0 on success or PASS, 1 when a check finds a
counterexample, and 2 on a usage error. ``--json`` prints one JSON
document with sorted keys; run times appear only with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .bijections import M, M_inverse, T_power, path_labeling, path_to_star, star_labeling, star_to_path
from .cache import ENV_VAR, NullCache, ResultCache, canonical_json
from .compgraph import competition_graph, digraph_of, weighted_competition_graph
from .enumeration import (
    MAX_AVOIDER_N,
    MAX_PREIMAGE_N,
    default_jobs,
    h_table,
    oeis_rows,
    verify_characterizations,
    verify_class_correspondence,
    wcg_preimage,
)
from .errors import PermCompError
from .graph import graph_to_dot, path_graph, star_graph
from .perm import Permutation, avoiders, occurrences
from .report import Report
from .reproduce import CHECKS, reproduce_all, run_check
from .structure import MAX_BASE_LENGTH, _minimize_tracked, base_permutations, realize_132

__all__ = ["main", "run", "build_parser"]


class UsageError(Exception):
    """Bad command line; message names the offending flag or argument."""


# --- argument types ----------------------------------------------------------


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except (ValueError, PermCompError) as exc:
        raise argparse.ArgumentTypeError(f"not a permutation: {text!r} ({exc})")


def _pattern(text: str) -> tuple[int, ...]:
    return tuple(_perm(text))


def _shape(text: str) -> tuple[str, int]:
    kind, _, m = text.partition(":")
    if kind not in ("star", "path") or not m.isdigit() or int(m) < 1:
        raise argparse.ArgumentTypeError(f"expected star:M or path:M with M >= 1, got {text!r}")
    return kind, int(m)


def _shape_graph(shape: tuple[str, int]):
    kind, m = shape
    return (star_graph if kind == "star" else path_graph)(m, weighted=True)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common():
        # a fresh parent per verb: "resolve" in one subparser would otherwise
        # strip option strings from the shared actions
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", action="store_true", help="print a single JSON document")
        c.add_argument("--timings", action="store_true", help="include run times in the output")
        c.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: CPU count)")
        c.add_argument("--max-n", type=_positive, default=None, help="raise the scale cap for this verb")
        c.add_argument("--force", action="store_true", help="ignore scale caps")
        c.add_argument("--cache", metavar="PATH", default=None, help=f"cache file (default: ${ENV_VAR})")
        c.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
        return c

    parser = argparse.ArgumentParser(
        prog="permcomp",
        description="Competition graphs of permutations and pattern-avoiding permutations.",
    )
    parser.add_argument("--version", action="version", version=f"permcomp {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)

    def verb(name, help_, **kw):
        return sub.add_parser(name, parents=[common()], help=help_, description=help_, **kw)

    p = verb("compgraph", "competition graph C(PI) or, with --weighted, W(PI)")
    p.add_argument("pi", metavar="PI", type=_perm)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--dot", action="store_true", help="Graphviz DOT output")

    p = verb("digraph", "the digraph D(PI)")
    p.add_argument("pi", metavar="PI", type=_perm)
    p.add_argument("--dot", action="store_true")

    p = verb("patterns", "occurrences of patterns in PI")
    p.add_argument("pi", metavar="PI", type=_perm)
    p.add_argument("--pattern", type=_pattern, action="append", metavar="TAU", help="repeatable; default 123 and 132")

    p = verb("avoiders", "list S_N(TAU)")
    p.add_argument("n", metavar="N", type=_positive)
    p.add_argument("tau", metavar="TAU", type=_pattern)
    p.add_argument("--count", action="store_true", help="print only the number of avoiders")

    p = verb("minimize", "delete redundant terms right to left")
    p.add_argument("pi", metavar="PI", type=_perm)

    p = verb("realize132", "132-avoiding permutation with the same competition graph")
    p.add_argument("pi", metavar="PI", type=_perm)

    p = verb("base-perms", "accessory-free permutations producing a weighted star or path")
    p.add_argument("--graph", type=_shape, required=True, metavar="star:M|path:M")
    p.add_argument("--avoid", type=_pattern, default=None, metavar="TAU")
    p.add_argument("--maxlen", type=_positive, default=MAX_BASE_LENGTH)

    p = verb("bijection", "apply or verify the path/star bijections")
    p.add_argument("action", choices=["t", "t-inverse", "m", "m-inverse", "verify"])
    p.add_argument("pi", metavar="PI", type=_perm, nargs="?")
    p.add_argument("--k", type=_positive, default=None, help="apply T^k instead of T^(m-2)")
    p.add_argument("--shape", type=_shape, default=None, metavar="path:M")
    p.add_argument("--n", type=_positive, default=None)
    p.add_argument("--avoid", type=_pattern, default=None, metavar="123")

    p = verb("preimage", "all PI of length N whose weighted graph is the given shape")
    p.add_argument("--shape", type=_shape, required=True, metavar="star:M|path:M")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--avoid", type=_pattern, default=None, metavar="TAU")

    # here --max-n is the table width, not a scale cap
    p = verb("table", "h(m, n) table or OEIS-style rows", conflict_handler="resolve")
    p.add_argument("which", choices=["h", "oeis"])
    p.add_argument("--max-m", type=_positive, default=5)
    p.add_argument("--max-n", dest="table_max_n", type=_positive, default=12)
    p.add_argument("--brute-max-n", type=_positive, default=10, help="brute-force cells up to this n")
    p.add_argument("--csv", action="store_true")

    p = verb("verify", "check one claim and print a report")
    p.add_argument("claim", choices=sorted(set(CHECKS) | {"conjecture", "correspondence"}))
    p.add_argument("--n", type=_positive, default=None, help="single length for thm3.6 / conjecture")

    verb("reproduce-all", "run every check at default scale")
    return parser


# --- helpers ---------------------------------------------------------------


def _cap(args, n: int, default: int, flag: str) -> bool:
    """True if the call must bypass the library cap."""
    if args.force:
        return True
    limit = args.max_n if getattr(args, "max_n", None) is not None else default
    if n > limit:
        raise UsageError(f"argument {flag}: {n} exceeds the scale cap {limit}; use --max-n or --force")
    return n > default


def _cache(args):
    if args.no_cache:
        return NullCache()
    path = args.cache or os.environ.get(ENV_VAR)
    return ResultCache(path, __version__) if path else NullCache()


def _report_doc(r: Report, timings: bool) -> dict:
    d = r.to_json()
    if not timings:
        d.pop("runtime")
    return d


def _perm_list(ps) -> list[str]:
    return [str(p) for p in sorted(ps)]


# --- verbs -----------------------------------------------------------------
# each returns (document, text, exit status)


def _do_compgraph(args, cache):
    g = weighted_competition_graph(args.pi) if args.weighted else competition_graph(args.pi)
    doc = {"pi": str(args.pi), "weighted": args.weighted, "graph": g.to_json()}
    if args.dot:
        return doc, graph_to_dot(g).rstrip("\n"), 0
    if args.weighted:
        body = [f"{g.label(u)}-{g.label(v)} (weight {w})" for (u, v), w in sorted(g.weights.items())]
    else:
        body = [f"{g.label(u)}-{g.label(v)}" for u, v in sorted(g.edges)]
    head = f"{'W' if args.weighted else 'C'}({args.pi}): {g.order} vertices, {len(body)} edges (by value)"
    return doc, "\n".join([head] + body), 0


def _do_digraph(args, cache):
    d = digraph_of(args.pi)
    doc = {"pi": str(args.pi), "digraph": d.to_json()}
    if args.dot:
        return doc, d.to_dot().rstrip("\n"), 0
    body = [f"{d.label(u)} -> {d.label(v)}" for u, v in sorted(d.arcs)]
    return doc, "\n".join([f"D({args.pi}): {d.order} vertices, {len(body)} arcs (by value)"] + body), 0


def _do_patterns(args, cache):
    pats = args.pattern or [(1, 2, 3), (1, 3, 2)]
    doc, lines = {"pi": str(args.pi), "patterns": {}}, []
    for tau in pats:
        occ = [list(o.indices) for o in occurrences(args.pi, tau)]
        name = str(Permutation(tau))
        doc["patterns"][name] = {"count": len(occ), "occurrences": occ}
        lines.append(f"{name}: {len(occ)}" + ("  " + " ".join("(" + ",".join(map(str, o)) + ")" for o in occ) if occ else ""))
    return doc, "\n".join(lines), 0


def _do_avoiders(args, cache):
    _cap(args, args.n, MAX_AVOIDER_N, "N")
    perms = [str(p) for p in avoiders(args.n, args.tau)]
    doc = {"n": args.n, "tau": str(Permutation(args.tau)), "count": len(perms)}
    if args.count:
        return doc, str(len(perms)), 0
    doc["avoiders"] = perms
    return doc, "\n".join(perms), 0


def _do_minimize(args, cache):
    small, kept = _minimize_tracked(args.pi)
    removed = [i for i in range(1, len(args.pi) + 1) if i not in kept]
    doc = {"pi": str(args.pi), "minimized": str(small), "removed_positions": removed}
    return doc, f"{small or '(empty)'}\nremoved positions: {removed}", 0


def _do_realize132(args, cache):
    out = realize_132(args.pi)
    return {"pi": str(args.pi), "realization": str(out)}, str(out), 0


def _do_base_perms(args, cache):
    force = _cap(args, args.maxlen, MAX_BASE_LENGTH, "--maxlen")
    g = _shape_graph(args.graph)
    params = {"graph": list(args.graph), "avoid": args.avoid, "maxlen": args.maxlen}
    found = cache.compute(
        "base-perms", params, lambda: _perm_list(base_permutations(g, args.maxlen, args.avoid, force=force))
    )
    kind, m = args.graph
    doc = {"graph": f"{kind}:{m}", "avoid": _tau(args.avoid), "maxlen": args.maxlen, "base_permutations": found}
    return doc, "\n".join(found) if found else "(none)", 0


def _tau(t):
    return str(Permutation(t)) if t else None


def _apply_bijection(args):
    if args.pi is None:
        raise UsageError(f"argument PI: required for 'bijection {args.action}'")
    pi, act = args.pi, args.action
    if act == "t":
        out = T_power(pi, args.k) if args.k is not None else path_to_star(pi)
        lab = path_labeling(pi)
        extra = {"path_positions": list(lab.positions)}
    elif act == "t-inverse":
        out, lab = star_to_path(pi), star_labeling(pi)
        extra = {"center": lab.center, "leaves": list(lab.leaves)}
    elif act == "m":
        out, lab = M(pi), path_labeling(pi)
        extra = {"path_positions": list(lab.positions)}
    else:
        out, lab = M_inverse(pi), star_labeling(pi)
        extra = {"center": lab.center, "leaves": list(lab.leaves)}
    doc = {"map": act, "pi": str(pi), "image": str(out), **extra}
    return doc, str(out), 0


def _verify_bijection(args, cache):
    if args.shape is None or args.n is None:
        missing = "--shape" if args.shape is None else "--n"
        raise UsageError(f"argument {missing}: required for 'bijection verify'")
    kind, m = args.shape
    if kind != "path":
        raise UsageError("argument --shape: bijection verify starts from path:M")
    if args.avoid not in (None, (1, 2, 3)):
        raise UsageError("argument --avoid: only 123 is supported (the M map)")
    force = _cap(args, args.n, MAX_PREIMAGE_N, "--n")
    use_m = args.avoid == (1, 2, 3)

    def work():
        src = wcg_preimage(path_graph(m, weighted=True), args.n, args.avoid, force=force)
        dst = wcg_preimage(star_graph(m, weighted=True), args.n, (1, 3, 2) if use_m else None, force=force)
        fwd, back = (M, M_inverse) if use_m else (lambda p: path_to_star(p, check=True), star_to_path)
        pairs, bad = [], []
        for pi in sorted(src):
            out = fwd(pi)
            pairs.append([str(pi), str(out)])
            if back(out) != pi:
                bad.append(f"roundtrip fails on {pi}")
        images = {p[1] for p in pairs}
        if len(images) != len(pairs):
            bad.append("map is not injective")
        missing = sorted({str(p) for p in dst} - images)
        extra = sorted(images - {str(p) for p in dst})
        bad += [f"star preimage {p} not hit" for p in missing] + [f"image {p} outside the star preimage" for p in extra]
        return {"pairs": pairs, "sizes": [len(src), len(dst)], "problems": bad}

    res = cache.compute("bijection-verify", {"m": m, "n": args.n, "avoid": args.avoid}, work)
    name = "M" if use_m else "T^(m-2)"
    rep = Report(
        f"bijection {name} on path:{m}, n={args.n}",
        "PASS" if not res["problems"] else "FAIL",
        res["problems"],
        0.0,
        {"m": m, "n": args.n},
        {"sizes": res["sizes"]},
    )
    doc = {"report": _report_doc(rep, args.timings), "pairs": res["pairs"]}
    lines = [f"{a} -> {b}" for a, b in res["pairs"]]
    lines.append(rep.line() if args.timings else rep.line().replace(f"  ({rep.runtime:.2f}s)", ""))
    return doc, "\n".join(lines), 0 if rep.passed else 1


def _do_bijection(args, cache):
    if args.action == "verify":
        return _verify_bijection(args, cache)
    return _apply_bijection(args)


def _do_preimage(args, cache):
    force = _cap(args, args.n, MAX_PREIMAGE_N, "--n")
    g = _shape_graph(args.shape)
    params = {"shape": list(args.shape), "n": args.n, "avoid": args.avoid}
    found = cache.compute("preimage", params, lambda: _perm_list(wcg_preimage(g, args.n, args.avoid, force=force)))
    kind, m = args.shape
    doc = {"shape": f"{kind}:{m}", "n": args.n, "avoid": _tau(args.avoid), "count": len(found), "preimage": found}
    return doc, "\n".join(found + [f"count: {len(found)}"]), 0


def _do_table(args, cache):
    if args.which == "oeis":
        rows = cache.compute("oeis", {"max_n": args.table_max_n}, lambda: oeis_rows(args.table_max_n))
        text = "\n".join(f"# {r['oeis']}\n{r['bfile'].rstrip()}" for _, r in sorted(rows.items()))
        return {"rows": rows}, text, 0
    if args.brute_max_n > 10 and not args.force:
        raise UsageError(f"argument --brute-max-n: {args.brute_max_n} exceeds the scale cap 10; use --force")
    params = {"max_m": args.max_m, "max_n": args.table_max_n, "brute_max_n": args.brute_max_n}

    def work():
        t = h_table(args.max_m, args.table_max_n, brute_max_n=args.brute_max_n)
        return {"json": t.to_json(args.max_m, args.table_max_n), "csv": t.to_csv(args.max_m, args.table_max_n)}

    res = cache.compute("table-h", params, work)
    if args.csv:
        return res["json"], res["csv"].rstrip("\n"), 0
    rows = res["json"]["rows"]
    width = max(len(str(v)) for row in rows for v in row) if rows else 1
    head = "m\\n " + " ".join(f"{n:>{width}}" for n in range(1, args.table_max_n + 1))
    body = [f"{m:<3} " + " ".join(f"{v:>{width}}" for v in row) for m, row in enumerate(rows, start=1)]
    return res["json"], "\n".join([head] + body), 0


def _do_verify(args, cache):
    claim = "conjecture3.5" if args.claim == "conjecture" else args.claim
    jobs = args.jobs or default_jobs()
    if claim == "correspondence":
        n_max = args.n or 6
        rep = cache.report(("verify", claim, n_max), lambda: verify_class_correspondence(n_max))
    elif claim in ("thm3.6", "conjecture3.5") and args.n is not None:
        force = _cap(args, args.n, 8, "--n")
        n = args.n

        def one():
            return {r.claim: r for r in verify_characterizations(n, jobs=jobs, force=force)}[claim]

        rep = cache.report(("verify", claim, n), one)
    else:
        if args.n is not None:
            raise UsageError(f"argument --n: not accepted by 'verify {args.claim}'")
        rep = cache.report(("check", claim), lambda: run_check(claim, jobs))
    return _reports([rep], args)


def _reports(reports: Sequence[Report], args):
    doc = {"reports": [_report_doc(r, args.timings) for r in reports], "all_pass": all(r.passed for r in reports)}
    lines = []
    for r in reports:
        line = r.line()
        if not args.timings:
            line = line.replace(f"  ({r.runtime:.2f}s)", "")
        lines.append(line)
    return doc, "\n".join(lines), 0 if doc["all_pass"] else 1


def _do_reproduce_all(args, cache):
    return _reports(reproduce_all(jobs=args.jobs or default_jobs(), cache=cache), args)


VERBS = {
    "compgraph": _do_compgraph,
    "digraph": _do_digraph,
    "patterns": _do_patterns,
    "avoiders": _do_avoiders,
    "minimize": _do_minimize,
    "realize132": _do_realize132,
    "base-perms": _do_base_perms,
    "bijection": _do_bijection,
    "preimage": _do_preimage,
    "table": _do_table,
    "verify": _do_verify,
    "reproduce-all": _do_reproduce_all,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        doc, text, status = VERBS[args.verb](args, _cache(args))
    except UsageError as exc:
        print(f"permcomp {args.verb}: error: {exc}", file=stderr)
        return 2
    except PermCompError as exc:
        # invalid input for the requested operation (bad shape, wrong class, ...)
        where = "PI" if getattr(args, "pi", None) is not None else "input"
        print(f"permcomp {args.verb}: error: argument {where}: {exc}", file=stderr)
        return 2
    if args.json:
        print(json.dumps(json.loads(canonical_json(doc)), sort_keys=True, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
