"""Task-tree retrieval: iterative deepening and greedy best-first search.

Both algorithms chain backward from the goal node: they repeatedly pick a
functional unit that outputs a needed item and then go looking for that
unit's inputs, until everything bottoms out in the kitchen.

Iterative deepening runs a depth-limited recursive resolver with bounds
0, 1, 2, ... and backtracks across alternative producers, so it succeeds
exactly on the instances where the goal is reachable at all (up to the
configured bound). Greedy best-first keeps a FIFO frontier of items to
produce and commits to one producer per item, chosen by a heuristic, with
no backtracking; a bad greedy commitment is reported as a failure.

Heuristics: ``success_rate`` prefers the unit whose motion has the highest
success rate, ``input_count`` the unit with the fewest inputs; ties go to
the lowest unit index.

Units are discovered goal-first; finalization reverses that discovery
order, drops duplicates, and settles the steps into an executable order
(a no-op for chain- and tree-shaped recipes).
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .core import (
    FoonGraph,
    FunctionalUnit,
    Kitchen,
    NodeKey,
    ObjectNode,
    TaskTree,
    input_keys,
    node_key,
    output_keys,
    unit_signature,
    validate_tree,
)

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
DEPTH_EXHAUSTED = "depth_exhausted"

SUCCESS_RATE = "success_rate"
INPUT_COUNT = "input_count"
HEURISTICS = (SUCCESS_RATE, INPUT_COUNT)

DEFAULT_MAX_DEPTH = 100


@dataclass(frozen=True)
class SearchConfig:
    """Search knobs: the outer depth bound and the greedy heuristic."""

    max_depth: int = DEFAULT_MAX_DEPTH
    heuristic: str = SUCCESS_RATE

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}")


@dataclass(frozen=True)
class SearchStats:
    functional_unit_count: int
    nodes_expanded: int
    final_depth_bound: int | None
    elapsed_seconds: float


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one retrieval: a task tree on success, a status otherwise.

    ``status`` is ``solved``, ``unsolvable`` (no way to produce some needed
    item, or the greedy selection is not executable), or
    ``depth_exhausted`` (iterative deepening hit its bound). On greedy
    failures ``missing_key`` names the first item that had no producer and
    was not in the kitchen.
    """

    tree: TaskTree | None
    status: str
    stats: SearchStats
    missing_key: NodeKey | None = None
    reason: str | None = None

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def heuristic_select(candidates, mode: str) -> FunctionalUnit:
    """Pick one producing unit: argmax success rate or argmin input count.

    Ties break toward the lowest unit index. The candidate list must be
    non-empty.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("heuristic_select: empty candidate list")
    if mode == SUCCESS_RATE:
        return min(candidates, key=lambda u: (-u.motion.success_rate, u.unit_index))
    if mode == INPUT_COUNT:
        return min(candidates, key=lambda u: (len(u.inputs), u.unit_index))
    raise ValueError(f"unknown heuristic {mode!r}")


def finalize_tree(discovery, goal: NodeKey) -> TaskTree:
    """Turn a goal-first discovery list into a task tree.

    Reverses the discovery order and removes structural duplicates,
    keeping the earliest execution-order occurrence.
    """
    steps: list[FunctionalUnit] = []
    seen: set[tuple] = set()
    for unit in reversed(list(discovery)):
        sig = unit_signature(unit)
        if sig not in seen:
            seen.add(sig)
            steps.append(unit)
    return TaskTree(steps=tuple(steps), goal=goal)


def _execution_order(steps, kitchen: Kitchen) -> list[FunctionalUnit] | None:
    """Stable executable ordering of steps, or None if none exists.

    Repeatedly takes the first not-yet-taken step whose inputs are all
    available. An already-executable order passes through unchanged; an
    order broken only by shared intermediates is repaired; a set of steps
    with a circular dependency yields None.
    """
    remaining = list(steps)
    available = set(kitchen.keys)
    ordered: list[FunctionalUnit] = []
    while remaining:
        pick = None
        for unit in remaining:
            if all(key in available for key in input_keys(unit)):
                pick = unit
                break
        if pick is None:
            return None
        remaining.remove(pick)
        ordered.append(pick)
        available.update(output_keys(pick))
    return ordered


def _executable_tree(candidate: TaskTree, kitchen: Kitchen) -> TaskTree | None:
    """Settle a finalized tree into executable order and trim past the goal."""
    if not candidate.steps:
        return candidate if candidate.goal in kitchen else None
    ordered = _execution_order(candidate.steps, kitchen)
    if ordered is None:
        return None
    last_producer = None
    for i, unit in enumerate(ordered):
        if candidate.goal in output_keys(unit):
            last_producer = i
    if last_producer is None:
        return None
    return TaskTree(steps=tuple(ordered[: last_producer + 1]), goal=candidate.goal)


def depth_limited_search(
    graph: FoonGraph, kitchen: Kitchen, goal_key: NodeKey, bound: int
) -> tuple[bool, bool, list[FunctionalUnit], int]:
    """One depth-limited backward resolution pass.

    Returns ``(found, cutoff, discovery, calls)`` where ``cutoff`` records
    whether any branch failed purely because the depth ran out (so a larger
    bound could behave differently), ``discovery`` lists the accepted units
    goal-first, and ``calls`` counts resolver invocations.

    Resolution of one item: fail when the remaining depth is below 1; then
    succeed when the item is in the kitchen or already resolved; otherwise
    try each producing unit in ascending unit-index order, resolving every
    input one level deeper. A unit whose inputs all resolve is accepted and
    its outputs become available to the rest of the pass; on failure its
    partial discoveries are rolled back and the next producer is tried.
    Items already being resolved further up the recursion fail immediately,
    which bounds the recursion on cyclic graphs without changing what any
    bound can solve.
    """
    kitchen_keys = kitchen.keys
    resolved: set[NodeKey] = set()
    trail: list[NodeKey] = []
    discovery: list[FunctionalUnit] = []
    on_path: set[NodeKey] = set()
    cutoff = False
    calls = 0

    def resolve(key: NodeKey, depth: int) -> bool:
        nonlocal cutoff, calls
        calls += 1
        if depth < 1:
            cutoff = True
            return False
        if key in kitchen_keys or key in resolved:
            return True
        if key in on_path:
            return False
        producers = graph.producers_of(key)
        if not producers:
            return False
        on_path.add(key)
        try:
            for unit in producers:
                discovery_mark = len(discovery)
                trail_mark = len(trail)
                discovery.append(unit)
                if all(resolve(k, depth - 1) for k in input_keys(unit)):
                    for out in output_keys(unit):
                        if out not in resolved:
                            resolved.add(out)
                            trail.append(out)
                    return True
                del discovery[discovery_mark:]
                for k in trail[trail_mark:]:
                    resolved.discard(k)
                del trail[trail_mark:]
            return False
        finally:
            on_path.discard(key)

    found = resolve(goal_key, bound)
    return found, cutoff, discovery, calls


def ids_search(
    graph: FoonGraph,
    kitchen: Kitchen,
    goal: ObjectNode,
    config: SearchConfig | None = None,
) -> SearchOutcome:
    """Retrieve a task tree by iterative deepening.

    Runs :func:`depth_limited_search` with bounds 0, 1, ... up to
    ``config.max_depth``. Stops early with ``unsolvable`` when a pass fails
    without ever hitting the depth limit (no larger bound can differ);
    reports ``depth_exhausted`` when every bound up to the maximum was
    tried. On success the returned tree validates against the same graph
    and kitchen.
    """
    config = config or SearchConfig()
    goal_key = node_key(goal)
    start = time.perf_counter()

    tree: TaskTree | None = None
    status = DEPTH_EXHAUSTED
    reason: str | None = None
    final_bound = config.max_depth
    total_calls = 0
    for bound in range(config.max_depth + 1):
        found, cutoff, discovery, calls = depth_limited_search(
            graph, kitchen, goal_key, bound
        )
        total_calls += calls
        if found:
            tree = _executable_tree(finalize_tree(discovery, goal_key), kitchen)
            if tree is None or not validate_tree(graph, kitchen, tree).ok:
                raise RuntimeError(
                    "internal error: accepted units do not form a valid tree"
                )
            status = SOLVED
            final_bound = bound
            break
        if not cutoff:
            status = UNSOLVABLE
            if not graph.producers_of(goal_key) and goal_key not in kitchen:
                reason = f"goal has no producers and is not in the kitchen: {goal_key}"
            else:
                reason = f"goal is unreachable from the kitchen: {goal_key}"
            final_bound = bound
            break

    elapsed = time.perf_counter() - start
    stats = SearchStats(
        functional_unit_count=len(tree.steps) if tree else 0,
        nodes_expanded=total_calls,
        final_depth_bound=final_bound,
        elapsed_seconds=elapsed,
    )
    return SearchOutcome(tree=tree, status=status, stats=stats, reason=reason)


def gbfs_search(
    graph: FoonGraph,
    kitchen: Kitchen,
    goal: ObjectNode,
    config: SearchConfig | None = None,
) -> SearchOutcome:
    """Retrieve a task tree by greedy best-first search.

    A FIFO frontier starts with the goal key. Each dequeued item is skipped
    when already handled or in the kitchen; otherwise one producing unit is
    committed via :func:`heuristic_select` and its inputs join the
    frontier. There is no backtracking: an item with no producers, or a
    selection that turns out not to be executable (circular commitments),
    fails the search even if another choice would have succeeded.
    """
    config = config or SearchConfig()
    goal_key = node_key(goal)
    start = time.perf_counter()

    frontier: deque[NodeKey] = deque([goal_key])
    visited: set[NodeKey] = set()
    discovery: list[FunctionalUnit] = []
    expanded = 0
    missing: NodeKey | None = None
    while frontier:
        key = frontier.popleft()
        if key in visited or key in kitchen:
            continue
        visited.add(key)
        expanded += 1
        candidates = graph.producers_of(key)
        if not candidates:
            missing = key
            break
        unit = heuristic_select(candidates, config.heuristic)
        discovery.append(unit)
        frontier.extend(input_keys(unit))

    tree: TaskTree | None = None
    status = UNSOLVABLE
    reason: str | None = None
    if missing is not None:
        reason = f"item cannot be produced and is not in the kitchen: {missing}"
    else:
        tree = _executable_tree(finalize_tree(discovery, goal_key), kitchen)
        if tree is not None and validate_tree(graph, kitchen, tree).ok:
            status = SOLVED
        else:
            tree = None
            reason = "selected units contain a circular dependency"

    elapsed = time.perf_counter() - start
    stats = SearchStats(
        functional_unit_count=len(tree.steps) if tree else 0,
        nodes_expanded=expanded,
        final_depth_bound=None,
        elapsed_seconds=elapsed,
    )
    return SearchOutcome(
        tree=tree, status=status, stats=stats, missing_key=missing, reason=reason
    )
