"""``tdcut`` command line front end.

Exit codes: 0 YES, 1 NO, 2 usage/format/precondition error, 3 internal
contract violation (including a solver/oracle disagreement under --oracle).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .elimination import (
    ForestError,
    build_dfs_forest,
    build_forest_from_fvs,
    greedy_fvs,
    parse_forest,
    validate_forest,
)
from .engine import DEFAULT_TRIALS, RunConfig
from .gf2poly import PolyOverflowError
from .graph import GraphFormatError, is_connected, parse_graph
from .solvers import PROBLEMS, InstanceError, ProblemInstance, SolveStats, solve

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
ORACLE_LIMIT = 16


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"tdcut: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tdcut", description="Cut&Count over an elimination forest.")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--graph", required=True, type=Path, help="PACE-style .gr file")
    p.add_argument("--k", required=True, type=int, help="solution size")
    p.add_argument("--terminals", help="comma-separated 1-indexed terminal ids (st)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--forest", type=Path, help="elimination forest file")
    src.add_argument("--forest-heuristic", choices=("dfs", "centroid-fvs"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--stats", action="store_true", help="key=value diagnostics on stderr")
    p.add_argument("--oracle", action="store_true",
                   help=f"cross-check with brute force (n <= {ORACLE_LIMIT})")
    return p


def _terminals(raw: str | None, n: int) -> frozenset[int]:
    if not raw:
        return frozenset()
    try:
        ids = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise InstanceError(f"bad terminal list {raw!r}") from None
    for t in ids:
        if not 1 <= t <= n:
            raise InstanceError(f"terminal {t} outside [1, {n}]")
    return frozenset(t - 1 for t in ids)


def _fail(msg: str, code: int = EXIT_USAGE) -> int:
    print(f"tdcut: {msg}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.terminals and args.problem != "st":
        return _fail("--terminals only applies to st")
    if args.trials < 1:
        return _fail("--trials must be >= 1")
    try:
        g = parse_graph(args.graph.read_bytes())
        terminals = _terminals(args.terminals, g.n)
        instance = ProblemInstance(args.problem, args.k, terminals)
        cfg = RunConfig(trials=args.trials, seed=args.seed)
        forest = None
        if args.forest is not None:
            forest = parse_forest(args.forest.read_bytes())
            if forest.n != g.n:
                return _fail(f"forest has {forest.n} vertices, graph has {g.n}")
            problems = validate_forest(g, forest)
            if problems:
                return _fail(f"invalid forest: {problems[0]}")
        elif is_connected(g) and g.n > 0:
            if args.forest_heuristic == "centroid-fvs":
                forest = build_forest_from_fvs(g, greedy_fvs(g))
            else:
                forest = build_dfs_forest(g)
        stats = SolveStats()
        start = time.perf_counter()
        verdict = solve(g, forest, instance, cfg, stats)
        elapsed = time.perf_counter() - start
    except (OSError, GraphFormatError, ForestError, InstanceError, ValueError) as exc:
        return _fail(str(exc))
    except (PolyOverflowError, AssertionError) as exc:
        return _fail(f"internal error: {exc}", EXIT_INTERNAL)

    print("YES" if verdict else "NO")
    if args.stats:
        depth = forest.depth if forest is not None else 0
        lines = [
            f"depth={depth}",
            f"states={stats.states}",
            f"leaf_evaluations={stats.leaf_evaluations}",
            f"countc_calls={stats.countc_calls}",
            f"peak_live_polys={stats.peak_live}",
            f"elapsed={elapsed:.6f}",
        ]
        if stats.bypass:
            lines.append(f"bypass={stats.bypass}")
        print("\n".join(lines), file=sys.stderr)
    if args.oracle:
        if g.n > ORACLE_LIMIT:
            return _fail(f"--oracle refused for n={g.n} > {ORACLE_LIMIT}")
        from .oracle import brute_solve

        truth = brute_solve(instance, g)
        print(f"oracle={'YES' if truth else 'NO'}", file=sys.stderr)
        if verdict and not truth:
            return _fail("solver answered YES but brute force found no solution", EXIT_INTERNAL)
    return EXIT_YES if verdict else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
