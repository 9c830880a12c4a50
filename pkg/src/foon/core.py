"""Domain model for functional object-oriented networks (FOON).

A FOON is a bipartite graph: object nodes flow into a motion node, which
transforms them into new object nodes. One motion together with its input
and output objects is a *functional unit* (one recipe step). A graph is a
deduplicated store of units plus a producer index mapping each object node
to the units that output it. A *task tree* is an execution-ordered list of
units that turns a kitchen (the objects assumed available) into a goal node.

Object identity is canonical: labels, states and ingredients are lowercased,
trimmed and whitespace-collapsed, and two nodes are the same node exactly
when their normalized content is equal. Everything here is immutable after
construction and safe to share between concurrent searches.
"""

from __future__ import annotations

import functools
import json
from collections import deque
from dataclasses import dataclass, field, replace

NodeKey = str


class FoonError(Exception):
    """Base class for errors raised by this package."""


class InvalidNodeError(FoonError):
    """A node violates its content rules (e.g. empty label)."""


class InvalidUnitError(FoonError):
    """A functional unit violates its content rules.

    ``unit_index`` is the position of the offending unit in the list that
    was handed to :func:`build_graph`.
    """

    def __init__(self, message: str, unit_index: int):
        super().__init__(f"unit {unit_index}: {message}")
        self.unit_index = unit_index


def normalize(text: str) -> str:
    """Lowercase, trim, and collapse internal whitespace to single spaces."""
    return " ".join(text.split()).lower()


@dataclass(frozen=True)
class StateDescriptor:
    """One state of an object, e.g. ``empty`` or ``in [bowl]``.

    ``relative_container`` holds the bracketed payload for states that are
    relative to another object. An empty container collapses to ``None``.
    """

    label: str
    relative_container: str | None = None

    def __post_init__(self):
        label = normalize(self.label)
        if not label:
            raise InvalidNodeError("state label is empty after normalization")
        container = None
        if self.relative_container is not None:
            container = normalize(self.relative_container) or None
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "relative_container", container)


def _state_sort_key(state: StateDescriptor) -> tuple[str, str]:
    return (state.label, state.relative_container or "")


@dataclass(frozen=True)
class ObjectNode:
    """An object with a set of states and a set of contained ingredients."""

    label: str
    states: frozenset[StateDescriptor] = frozenset()
    ingredients: frozenset[str] = frozenset()

    def __post_init__(self):
        label = normalize(self.label)
        if not label:
            raise InvalidNodeError("object label is empty after normalization")
        ingredients = frozenset(
            filter(None, (normalize(i) for i in self.ingredients))
        )
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "ingredients", ingredients)


@functools.cache
def node_key(node: ObjectNode) -> NodeKey:
    """Canonical identity of an object node.

    Deterministic serialization of (label, sorted states, sorted
    ingredients); two nodes get equal keys exactly when their normalized
    content is equal, regardless of state/ingredient order, letter case or
    surrounding whitespace in the original text.
    """
    states = sorted(_state_sort_key(s) for s in node.states)
    return json.dumps(
        [node.label, states, sorted(node.ingredients)], separators=(",", ":")
    )


@dataclass(frozen=True)
class MotionNode:
    """A named manipulation motion weighted with a success rate in [0, 1]."""

    label: str
    success_rate: float = 1.0

    def __post_init__(self):
        label = normalize(self.label)
        if not label:
            raise InvalidNodeError("motion label is empty after normalization")
        if not 0.0 <= self.success_rate <= 1.0:
            raise InvalidNodeError(
                f"success rate {self.success_rate!r} outside [0, 1]"
            )
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "success_rate", float(self.success_rate))


@dataclass(frozen=True)
class FunctionalUnit:
    """One recipe step: input objects, a single motion, output objects."""

    inputs: tuple[ObjectNode, ...]
    motion: MotionNode
    outputs: tuple[ObjectNode, ...]
    unit_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))


@functools.cache
def input_keys(unit: FunctionalUnit) -> tuple[NodeKey, ...]:
    return tuple(node_key(n) for n in unit.inputs)


@functools.cache
def output_keys(unit: FunctionalUnit) -> tuple[NodeKey, ...]:
    return tuple(node_key(n) for n in unit.outputs)


def unit_signature(unit: FunctionalUnit) -> tuple:
    """Structural identity: input key multiset, motion label, output key multiset.

    Deliberately ignores the motion's success rate and the unit index, so
    re-weighted or re-numbered copies of the same step compare equal.
    """
    return (
        tuple(sorted(input_keys(unit))),
        unit.motion.label,
        tuple(sorted(output_keys(unit))),
    )


@dataclass(frozen=True)
class FoonGraph:
    """Deduplicated unit store with a producer index.

    ``producers`` maps each node key to the ascending ``unit_index`` values
    of the units that output it. Instances are immutable; build them with
    :func:`build_graph`.
    """

    units: tuple[FunctionalUnit, ...] = ()
    producers: dict[NodeKey, tuple[int, ...]] = field(default_factory=dict)

    def producers_of(self, key: NodeKey) -> tuple[FunctionalUnit, ...]:
        """Units whose outputs contain ``key``, in ascending unit_index order."""
        return tuple(self.units[i] for i in self.producers.get(key, ()))

    def node_keys(self) -> frozenset[NodeKey]:
        """All distinct object-node keys appearing in the graph."""
        keys: set[NodeKey] = set()
        for unit in self.units:
            keys.update(input_keys(unit))
            keys.update(output_keys(unit))
        return frozenset(keys)

    def __len__(self) -> int:
        return len(self.units)


def build_graph(units: list[FunctionalUnit] | tuple[FunctionalUnit, ...]) -> FoonGraph:
    """Assemble a graph from units, dropping structural duplicates.

    The first occurrence of each structurally identical unit wins;
    surviving units are re-indexed densely in their original order. Raises
    :class:`InvalidUnitError` (carrying the source position) for a unit
    with no inputs or no outputs.
    """
    kept: list[FunctionalUnit] = []
    seen: set[tuple] = set()
    for source_index, unit in enumerate(units):
        if not unit.inputs:
            raise InvalidUnitError("no input nodes", source_index)
        if not unit.outputs:
            raise InvalidUnitError("no output nodes", source_index)
        sig = unit_signature(unit)
        if sig in seen:
            continue
        seen.add(sig)
        kept.append(replace(unit, unit_index=len(kept)))

    producers: dict[NodeKey, list[int]] = {}
    for unit in kept:
        for key in set(output_keys(unit)):
            producers.setdefault(key, []).append(unit.unit_index)
    index = {key: tuple(sorted(ids)) for key, ids in producers.items()}
    return FoonGraph(units=tuple(kept), producers=index)


@dataclass(frozen=True)
class Kitchen:
    """The set of object nodes available at the start of a task.

    Membership is by node key; the originating nodes are kept for
    reporting. Deduplicated on construction.
    """

    nodes: tuple[ObjectNode, ...] = ()
    keys: frozenset[NodeKey] = frozenset()

    @classmethod
    def from_nodes(cls, nodes) -> "Kitchen":
        kept: list[ObjectNode] = []
        keys: set[NodeKey] = set()
        for node in nodes:
            key = node_key(node)
            if key not in keys:
                keys.add(key)
                kept.append(node)
        return cls(nodes=tuple(kept), keys=frozenset(keys))

    def __contains__(self, key: NodeKey) -> bool:
        return key in self.keys

    def __len__(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class TaskTree:
    """Execution-ordered functional units satisfying a goal from a kitchen.

    Steps run leaves-first; the final step outputs the goal. Use
    :func:`validate_tree` to check feasibility.
    """

    steps: tuple[FunctionalUnit, ...]
    goal: NodeKey

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_tree(graph: FoonGraph, kitchen: Kitchen, tree: TaskTree) -> ValidationReport:
    """Check that a task tree is executable against a kitchen.

    Violations (returned as data, never raised):
      * a step consumes an input that is neither in the kitchen nor output
        by an earlier step,
      * the final step does not output the goal,
      * two steps are structurally identical,
      * the tree is empty although the goal is not already in the kitchen.
    """
    del graph  # feasibility depends only on kitchen and step order
    violations: list[str] = []
    if not tree.steps:
        if tree.goal not in kitchen:
            violations.append("empty tree but goal not in kitchen")
        return ValidationReport(tuple(violations))

    available: set[NodeKey] = set(kitchen.keys)
    seen_signatures: dict[tuple, int] = {}
    for i, unit in enumerate(tree.steps):
        for key in input_keys(unit):
            if key not in available:
                violations.append(f"step {i}: input {key} unavailable")
        sig = unit_signature(unit)
        if sig in seen_signatures:
            violations.append(
                f"step {i}: duplicate of step {seen_signatures[sig]}"
            )
        else:
            seen_signatures[sig] = i
        available.update(output_keys(unit))

    if tree.goal not in output_keys(tree.steps[-1]):
        violations.append("final step does not output the goal")
    return ValidationReport(tuple(violations))


def reachable_oracle(graph: FoonGraph, kitchen: Kitchen, goal: NodeKey) -> bool:
    """Ground truth for solvability, by forward-chaining saturation.

    Starts from the kitchen keys and repeatedly fires any unit whose inputs
    are all available, adding its outputs, until nothing changes. Returns
    whether the goal key ever becomes available. Independent of the search
    algorithms; used as the brute-force reference in tests.
    """
    available: set[NodeKey] = set(kitchen.keys)
    if goal in available:
        return True

    # Unmet-input counters give one pass per derived key instead of
    # rescanning all units every round. Positional indices, so the oracle
    # does not care how unit_index values were assigned.
    waiting: dict[NodeKey, list[int]] = {}
    unmet: list[int] = []
    for pos, unit in enumerate(graph.units):
        needs = set(input_keys(unit)) - available
        unmet.append(len(needs))
        for key in needs:
            waiting.setdefault(key, []).append(pos)

    frontier = deque(pos for pos, n in enumerate(unmet) if n == 0)
    fired: set[int] = set()
    while frontier:
        idx = frontier.popleft()
        if idx in fired:
            continue
        fired.add(idx)
        for key in output_keys(graph.units[idx]):
            if key in available:
                continue
            available.add(key)
            if key == goal:
                return True
            for waiter in waiting.get(key, ()):
                unmet[waiter] -= 1
                if unmet[waiter] == 0:
                    frontier.append(waiter)
    return goal in available
