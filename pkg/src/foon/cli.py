"""Command-line front end for FOON task-tree retrieval.

Two subcommands share the same inputs (a FOON text file, kitchen and goal
documents, optionally motion success rates):

  * ``run``   searches each goal with the selected algorithm(s) and writes
              one task-tree file per solved (goal, algorithm) pair,
  * ``bench`` forces all three algorithms and additionally prints a pivoted
              goal-by-algorithm summary of functional-unit counts.

Exit codes: 0 all goals solved, 1 input error, 2 at least one goal unsolved.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .core import FoonError, FoonGraph, Kitchen, ObjectNode, build_graph, validate_tree
from .parsing import (
    ERROR,
    apply_motion_rates,
    export_dot,
    parse_foon_text,
    parse_goals,
    parse_kitchen,
    parse_motion_rates,
    serialize_task_tree,
)
from .search import (
    INPUT_COUNT,
    SOLVED,
    SUCCESS_RATE,
    SearchConfig,
    SearchOutcome,
    gbfs_search,
    ids_search,
)

ALGORITHMS = ("ids", "gbfs_a", "gbfs_b")


@dataclass(frozen=True)
class ReportRow:
    goal_label: str
    algorithm: str
    status: str
    functional_unit_count: int | None
    nodes_expanded: int
    elapsed_seconds: float


class _InputError(FoonError):
    """Unusable input file; maps to exit code 1."""


def _search(algorithm: str, graph, kitchen, goal, max_depth: int) -> SearchOutcome:
    if algorithm == "ids":
        return ids_search(graph, kitchen, goal, SearchConfig(max_depth=max_depth))
    heuristic = SUCCESS_RATE if algorithm == "gbfs_a" else INPUT_COUNT
    return gbfs_search(
        graph, kitchen, goal, SearchConfig(max_depth=max_depth, heuristic=heuristic)
    )


def slugify(label: str) -> str:
    """Filesystem-safe name for a goal label."""
    return re.sub(r"[^a-z0-9_.-]+", "_", label.replace(" ", "_"))


def _assign_slugs(goals: list[ObjectNode]) -> list[str]:
    slugs: list[str] = []
    used: dict[str, int] = {}
    for goal in goals:
        base = slugify(goal.label)
        count = used.get(base, 0) + 1
        used[base] = count
        slugs.append(base if count == 1 else f"{base}_{count}")
    return slugs


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _InputError(f"cannot read {what} file {path}: {exc}") from exc


def load_inputs(args) -> tuple[FoonGraph, Kitchen, list[ObjectNode]]:
    """Parse and assemble all input files, raising _InputError on any problem."""
    foon_text = _read_text(args.foon, "FOON")
    units, diagnostics = parse_foon_text(foon_text)
    for diag in diagnostics:
        print(f"{args.foon}: {diag}", file=sys.stderr)
    if any(d.severity == ERROR for d in diagnostics):
        raise _InputError(f"{args.foon}: FOON text did not parse")

    if args.motion_rates:
        rates = parse_motion_rates(_read_text(args.motion_rates, "motion rates"))
        units = apply_motion_rates(units, rates)

    graph = build_graph(units)
    kitchen = parse_kitchen(_read_text(args.kitchen, "kitchen"))
    goals = parse_goals(_read_text(args.goals, "goals"))
    return graph, kitchen, goals


def _process_goal(
    graph: FoonGraph,
    kitchen: Kitchen,
    goal: ObjectNode,
    slug: str,
    algorithms,
    max_depth: int,
    out_dir: Path,
    emit_dot: bool,
) -> list[ReportRow]:
    rows: list[ReportRow] = []
    for algorithm in algorithms:
        outcome = _search(algorithm, graph, kitchen, goal, max_depth)
        count = None
        if outcome.solved:
            report = validate_tree(graph, kitchen, outcome.tree)
            if not report.ok:
                raise RuntimeError(
                    f"internal error: invalid tree for {goal.label!r}: "
                    + "; ".join(report.violations)
                )
            count = len(outcome.tree.steps)
            stem = out_dir / f"{slug}_{algorithm}"
            stem.with_suffix(".txt").write_text(
                serialize_task_tree(outcome.tree), encoding="utf-8"
            )
            if emit_dot:
                stem.with_suffix(".dot").write_text(
                    export_dot(outcome.tree), encoding="utf-8"
                )
        rows.append(
            ReportRow(
                goal_label=goal.label,
                algorithm=algorithm,
                status=outcome.status,
                functional_unit_count=count,
                nodes_expanded=outcome.stats.nodes_expanded,
                elapsed_seconds=outcome.stats.elapsed_seconds,
            )
        )
    return rows


def _run_goals(args, algorithms) -> list[ReportRow]:
    graph, kitchen, goals = load_inputs(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    slugs = _assign_slugs(goals)

    def work(pair) -> list[ReportRow]:
        goal, slug = pair
        return _process_goal(
            graph, kitchen, goal, slug, algorithms, args.max_depth, out_dir, args.emit_dot
        )

    if args.jobs > 1 and len(goals) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            per_goal = list(pool.map(work, zip(goals, slugs)))
    else:
        per_goal = [work(pair) for pair in zip(goals, slugs)]
    return [row for rows in per_goal for row in rows]


def format_table(rows: list[ReportRow]) -> str:
    headers = ("goal", "algorithm", "status", "units", "expanded", "time_ms")
    cells = [
        (
            row.goal_label,
            row.algorithm,
            row.status,
            "-" if row.functional_unit_count is None else str(row.functional_unit_count),
            str(row.nodes_expanded),
            f"{row.elapsed_seconds * 1000:.1f}",
        )
        for row in rows
    ]
    widths = [
        max(len(headers[i]), *(len(c[i]) for c in cells)) if cells else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines)


def format_pivot(rows: list[ReportRow]) -> str:
    """Goal-by-algorithm table of functional-unit counts ('-' on failure)."""
    goals: list[str] = []
    counts: dict[tuple[str, str], str] = {}
    for row in rows:
        if row.goal_label not in goals:
            goals.append(row.goal_label)
        value = "-" if row.functional_unit_count is None else str(row.functional_unit_count)
        counts[(row.goal_label, row.algorithm)] = value

    headers = ("goal",) + ALGORITHMS
    cells = [
        (goal,) + tuple(counts.get((goal, algo), "-") for algo in ALGORITHMS)
        for goal in goals
    ]
    widths = [
        max(len(headers[i]), *(len(c[i]) for c in cells)) if cells else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines)


def _write_report(rows: list[ReportRow], path: str) -> None:
    payload = {"rows": [asdict(row) for row in rows]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--foon", required=True, help="FOON text file")
    parser.add_argument("--kitchen", required=True, help="kitchen JSON file")
    parser.add_argument("--goals", required=True, help="goal-node JSON file")
    parser.add_argument(
        "--motion-rates", help="JSON file mapping motion label to success rate"
    )
    parser.add_argument(
        "--max-depth",
        type=int,
        default=100,
        help="iterative-deepening depth cap; far above any desk-scale recipe "
        "chain (default: %(default)s)",
    )
    parser.add_argument(
        "--out-dir", default="./output", help="directory for task-tree files"
    )
    parser.add_argument(
        "--emit-dot", action="store_true", help="also write Graphviz .dot files"
    )
    parser.add_argument("--report", help="write a JSON report to this path")
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="process up to N goals concurrently (1 = fully serial)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foon", description="Task-tree retrieval from FOON graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="retrieve task trees for each goal")
    _add_common_arguments(run)
    run.add_argument(
        "--algorithm",
        choices=("ids", "gbfs-a", "gbfs-b", "all"),
        default="all",
        help="search algorithm (default: %(default)s)",
    )

    bench = sub.add_parser(
        "bench", help="run all three algorithms per goal and print a summary"
    )
    _add_common_arguments(bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run" and args.algorithm != "all":
        algorithms = (args.algorithm.replace("-", "_"),)
    else:
        algorithms = ALGORITHMS

    try:
        rows = _run_goals(args, algorithms)
    except FoonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(format_table(rows))
    if args.command == "bench":
        print()
        print(format_pivot(rows))
    if args.report:
        _write_report(rows, args.report)
    return 0 if all(row.status == SOLVED for row in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
