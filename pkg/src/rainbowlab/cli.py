"""Command-line front end.

Exit codes: 0 success, 1 an invariant or theorem check failed, 2 usage error.
Every JSON document carries ``schema``, ``tool``, ``version`` and the full
config (including the seed).  Keys are sorted and timings live under keys
named ``ms``/``wall_ms``/``timing``; ``--no-timing`` drops them so identical
configs give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .arith import DomainError, is_prime, smallest_prime_factor, t_decomposition
from .classify import generate_rainbow_free, structural_check
from .coloring import Coloring, find_rainbow_mod, is_exact
from .digraph import MAX_MODULUS, build, component_prediction, cycle_vertices, export_dot
from .prefix import (
    PrefixColoring,
    density_experiment,
    density_profile,
    dominant_colors,
    find_rainbow_prefix,
    lift,
    meets_density_target,
)
from .search import DEFAULT_BUDGET, default_workers, enumerate_rainbow_free_3colorings, labeled_count, rb_bruteforce
from .verify import CHECKS, VerifyConfig, run_all

SCHEMA = 1
RB_CSV_COLUMNS = ("p", "k", "predicted", "brute", "agree", "nodes", "ms")
TRACE_CSV_COLUMNS = ("n", "count_R", "count_G", "count_B")

log = logging.getLogger("rainbowlab")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"5..13"``, ``"5,7,11"``, ``"3..9,15"`` or a single integer."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def parse_colors(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"bad color list {text!r}") from None


def _moduli(args) -> list[int]:
    if getattr(args, "p", None):
        vals = [p for p in parse_range(args.p) if is_prime(p)]
        if not vals:
            raise UsageError(f"no primes in {args.p!r}")
        return vals
    if getattr(args, "n", None):
        return parse_range(args.n)
    raise UsageError("give --p or --n")


def envelope(command: str, config: dict, result, timing: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "tool": "rainbowlab",
        "version": __version__,
        "command": command,
        "config": config,
        "seed": config.get("seed"),
        "result": result,
    }
    if timing is not None:
        doc["timing"] = timing
    return doc


def emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args, *names) -> dict:
    return {name: getattr(args, name) for name in names}


def cmd_digraph(args) -> int:
    ns = _moduli(args)
    ks = parse_range(args.k)
    pairs = [(n, k) for n in ns for k in ks]
    if any(not 2 <= n <= MAX_MODULUS for n in ns) or any(k < 2 for k in ks):
        raise UsageError(f"need 2 <= n <= {MAX_MODULUS} and k >= 2")
    if args.dot and len(pairs) > 1 and ("{n}" not in args.dot or "{k}" not in args.dot):
        raise UsageError("with several (n, k) pairs, --dot must contain {n} and {k}")
    rows = []
    for n, k in pairs:
        g = build(n, k)
        row = g.summary()
        row["cycle_vertices"] = sorted(cycle_vertices(g))
        row["cycle_count"] = len(g.cycles())
        if n >= 3 and is_prime(n):
            pred = component_prediction(n, k)
            row["theorem"] = {
                "in_scope": True,
                "predicted_cycle_vertex_count": t_decomposition(n - 1, k).t + 1,
                "component_prediction": pred.kind.value,
                "reason": pred.reason,
            }
        else:
            row["theorem"] = {"in_scope": False, "reason": f"{n} is not an odd prime"}
        rows.append(row)
        if args.dot:
            Path(args.dot.format(n=n, k=k)).write_text(export_dot(g, cluster=not args.no_cluster))
    emit_json(envelope("digraph", _config(args, "n", "p", "k", "dot", "seed"), rows), args.json)
    return 0


def cmd_rb(args) -> int:
    ns = _moduli(args)
    ks = parse_range(args.k)
    if any(n < 3 for n in ns) or any(k < 2 for k in ks) or args.max_r < 3:
        raise UsageError("need n >= 3, k >= 2 and --max-r >= 3")
    results = []
    for n in ns:
        for k in ks:
            res = rb_bruteforce(n, k, args.max_r, budget=args.budget, workers=args.workers)
            results.append(res)
            log.info("n=%d k=%d rb=%s predicted=%s nodes=%d", n, k, res.rb, res.predicted, res.nodes_explored)

    disagree = [r for r in results if r.agrees is False]
    exceeded = [r for r in results if r.exceeded]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(RB_CSV_COLUMNS)
            for r in results:
                w.writerow([
                    r.n,
                    r.k,
                    "" if r.predicted is None else r.predicted,
                    "exceeded" if r.exceeded else ("" if r.rb is None else r.rb),
                    "" if r.agrees is None else str(r.agrees).lower(),
                    r.nodes_explored,
                    0 if args.no_timing else round(r.wall_ms, 1),
                ])
    rows = []
    for r in results:
        row = r.to_json()
        if args.no_timing:
            row.pop("wall_ms")
        rows.append(row)
    emit_json(envelope("rb", _config(args, "n", "p", "k", "max_r", "budget", "seed"), rows), args.json)
    for r in exceeded:
        print(f"warning: n={r.n} k={r.k} exceeded the node budget", file=sys.stderr)
    for r in disagree:
        print(f"DISAGREEMENT: n={r.n} k={r.k} brute={r.rb} predicted={r.predicted}", file=sys.stderr)
    if disagree or (exceeded and args.strict):
        return 1
    return 0


def cmd_classify(args) -> int:
    p = args.p
    if p < 3 or not is_prime(p):
        raise UsageError(f"classify needs an odd prime, got {p}")
    g = build(p, args.k)
    if args.colors:
        cols = parse_colors(args.colors)
        if len(cols) != p:
            raise UsageError(f"expected {p} colors, got {len(cols)}")
        c = Coloring.of(cols)
        report = structural_check(c, g)
        cert = find_rainbow_mod(c, args.k)
        result = {
            "colors": list(c.colors),
            "exact_3_coloring": c.r == 3 and is_exact(c),
            "structural": report.to_json(),
            "rainbow": None if cert is None else cert.to_json(),
        }
    else:
        gen = generate_rainbow_free(p, args.k)
        result = {"generated": [list(c.colors) for c in gen], "count": len(gen), "labeled_count": labeled_count(gen)}
    emit_json(envelope("classify", _config(args, "p", "k", "colors", "seed"), result), args.json)
    return 0


def cmd_enumerate(args) -> int:
    ns = _moduli(args)
    ks = parse_range(args.k)
    rows = []
    for n in ns:
        for k in ks:
            found = enumerate_rainbow_free_3colorings(n, k, budget=args.budget, workers=args.workers)
            rows.append({
                "n": n,
                "k": k,
                "colorings": [list(c.colors) for c in found],
                "count": len(found),
                "labeled_count": labeled_count(found),
                "min_class_sizes": [min(map(len, c.classes())) for c in found],
                "min_class_bound": n // smallest_prime_factor(n) if n % 2 else None,
            })
    emit_json(envelope("enumerate", _config(args, "n", "p", "k", "budget", "seed"), rows), args.json)
    return 0


def cmd_prefix(args) -> int:
    if args.zn_colors:
        zc = Coloring.of(parse_colors(args.zn_colors))
        pc = lift(zc, args.N)
    elif args.colors:
        pc = PrefixColoring.of(parse_colors(args.colors))
    else:
        rep = density_experiment(args.k, args.N, args.trials, args.seed, args.margin)
        emit_json(envelope("prefix", _config(args, "k", "N", "trials", "seed", "margin"), rep.to_json()), args.json)
        return 0 if rep.without_rainbow == 0 else 1

    prof = density_profile(pc, args.k)
    hit = find_rainbow_prefix(pc, args.k)
    result = {
        "N": pc.N,
        "rainbow": None if hit is None else list(hit),
        "dominant_colors": sorted(dominant_colors(pc)),
        "final_densities": [str(d) for d in prof.final_densities],
        "min_final_density": str(prof.min_final_density),
        "threshold": str(prof.threshold),
        "meets_target": meets_density_target(pc, args.k, args.margin),
    }
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(TRACE_CSV_COLUMNS)
            w.writerows(prof.csv_rows())
    emit_json(envelope("prefix", _config(args, "k", "N", "colors", "zn_colors", "margin", "seed"), result), args.json)
    return 0


def cmd_verify_all(args) -> int:
    cfg = VerifyConfig(p_max=args.p_max, seed=args.seed, density_trials=args.trials, self_test_negative=args.self_test_negative)
    only = args.only.split(",") if args.only else None
    if only and set(only) - set(CHECKS):
        raise UsageError(f"unknown checks: {sorted(set(only) - set(CHECKS))}")
    results = run_all(cfg, only)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.checked} checked)", file=sys.stderr)
    doc = envelope(
        "verify-all",
        cfg.to_json(),
        {"checks": [r.to_json(timing=not args.no_timing) for r in results], "passed": all(r.passed for r in results)},
    )
    emit_json(doc, args.json)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowlab",
        description="Rainbow solutions of x - y = z^k over Z_n and prefixes of the naturals.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "rb CSV columns: " + ",".join(RB_CSV_COLUMNS) + "\n"
            "prefix trace CSV columns: " + ",".join(TRACE_CSV_COLUMNS) + "\n"
            "Colors are integers; 0, 1, 2 print as R, G, B.\n"
            "Environment: RAINBOWLAB_THREADS sets the default worker count."
        ),
    )
    parser.add_argument("--version", action="version", version=f"rainbowlab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, seed_default=0):
        sp.add_argument("--json", metavar="PATH", help="write JSON here instead of stdout")
        sp.add_argument("--seed", type=int, default=seed_default, help="recorded in the output (default %(default)s)")
        sp.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")

    sp = sub.add_parser("digraph", help="power-map digraph G_n^k as JSON and DOT")
    sp.add_argument("--n", help="moduli, e.g. 11 or 5..13")
    sp.add_argument("--p", help="moduli restricted to primes")
    sp.add_argument("--k", default="2")
    sp.add_argument("--dot", metavar="PATH", help="DOT output; may contain {n} and {k}")
    sp.add_argument("--no-cluster", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_digraph)

    sp = sub.add_parser("rb", help="rainbow numbers by exhaustive search, checked against the closed form")
    sp.add_argument("--p", help="primes in this range, e.g. 5..13")
    sp.add_argument("--n", help="any moduli (composite allowed, no prediction)")
    sp.add_argument("--k", default="2")
    sp.add_argument("--max-r", type=int, default=4)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget per r")
    sp.add_argument("--workers", type=int, default=default_workers())
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--strict", action="store_true", help="exit 1 when a budget is exceeded")
    common(sp)
    sp.set_defaults(func=cmd_rb)

    sp = sub.add_parser("classify", help="structural report for a coloring of Z_p, or all structural colorings")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--colors", help="comma-separated colors of 0..p-1; omit to generate all")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("enumerate", help="all canonical rainbow-free exact 3-colorings of Z_n")
    sp.add_argument("--n")
    sp.add_argument("--p")
    sp.add_argument("--k", default="2")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=default_workers())
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("prefix", help="prefix colorings of [1..N]: density experiment or analysis of one coloring")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--N", type=int, default=200)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--margin", default="0.02")
    sp.add_argument("--colors", help="explicit colors of positions 1..N")
    sp.add_argument("--zn-colors", help="colors of Z_n (0..n-1) to lift periodically to [1..N]")
    sp.add_argument("--trace", metavar="PATH", help="CSV density trace of the analysed coloring")
    common(sp)
    sp.set_defaults(func=cmd_prefix)

    sp = sub.add_parser("verify-all", help="run every named invariant check")
    sp.add_argument("--p-max", type=int, default=500)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--only", help="comma-separated subset of: " + ",".join(CHECKS))
    sp.add_argument("--self-test-negative", action="store_true", help="inject a flipped color; classification must fail")
    common(sp, seed_default=VerifyConfig.seed)
    sp.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"rainbowlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
