"""Readers and writers for the FOON text format and its sidecar files.

The functional-unit text format is line oriented. The first whitespace
separated token of a line is its tag (case-insensitive); the rest is the
payload:

    //              delimits functional-unit blocks (at line start)
    O <label>       an object node; before the M line it is an input,
                    after it an output ("0" is accepted as a legacy
                    spelling of "O")
    S <payload>     a state of the most recent object; a bracketed suffix
                    ``[x]`` names a relative container and every braced
                    group ``{a,b}`` contributes ingredients
    M <label>       the block's single motion

Blank lines are ignored, unknown tags are skipped with a warning, and all
failures are reported as :class:`ParseDiagnostic` records instead of
exceptions; any error-severity diagnostic fails the whole parse.

Kitchen and goal files are JSON lists of ``{"label": ..., "states": [...],
"ingredients": [...]}`` records whose state strings use the same payload
mini-grammar as S lines. Motion success rates come from a JSON object
mapping motion label to a number in [0, 1].

Serialization is canonical: states sorted by (label, container),
ingredients sorted lexicographically and attached to the first state line,
LF line endings. Parsing serialized output and serializing again is
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import numbers
import re
import warnings
from dataclasses import dataclass, replace

from .core import (
    FoonError,
    FoonGraph,
    FunctionalUnit,
    Kitchen,
    MotionNode,
    ObjectNode,
    StateDescriptor,
    TaskTree,
    _state_sort_key,
    node_key,
    normalize,
)

WARNING = "warning"
ERROR = "error"


class FoonWarning(UserWarning):
    """Non-fatal condition noticed while reading input files."""


class SchemaError(FoonError):
    """A kitchen, goal, or motion-rate document violates its schema."""


@dataclass(frozen=True)
class ParseDiagnostic:
    """A problem found while parsing FOON text, anchored to a source line."""

    line_number: int
    message: str
    severity: str = ERROR

    def __str__(self) -> str:
        return f"line {self.line_number}: {self.severity}: {self.message}"


_BRACES = re.compile(r"\{([^{}]*)\}")
_BRACKETS = re.compile(r"\[([^\[\]]*)\]")
_OBJECT_TAGS = ("o", "0")  # "0" appears in older hand-written files


def parse_state_payload(payload: str) -> tuple[StateDescriptor, frozenset[str]]:
    """Parse an S-line payload into a state plus the ingredients it carries.

    Raises ValueError when the state label is empty once the braced and
    bracketed groups are stripped.
    """
    ingredients: set[str] = set()

    def collect(match: re.Match) -> str:
        ingredients.update(
            filter(None, (normalize(part) for part in match.group(1).split(",")))
        )
        return " "

    rest = _BRACES.sub(collect, payload)
    containers = [normalize(m.group(1)) for m in _BRACKETS.finditer(rest)]
    rest = _BRACKETS.sub(" ", rest)
    label = normalize(rest)
    if not label:
        raise ValueError("state label is empty")
    container = next((c for c in containers if c), None)
    return StateDescriptor(label, container), frozenset(ingredients)


class _BlockParser:
    """Accumulates O/S/M lines of one block into a functional unit."""

    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        self.inputs: list[ObjectNode] = []
        self.outputs: list[ObjectNode] = []
        self.motion: str | None = None
        self.failed = False
        self._label: str | None = None
        self._states: set[StateDescriptor] = set()
        self._ingredients: set[str] = set()
        self._saw_object = False

    def _error(self, line_number: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(line_number, message, ERROR))
        self.failed = True

    def _flush(self) -> None:
        if self._label is None:
            return
        node = ObjectNode(
            self._label, frozenset(self._states), frozenset(self._ingredients)
        )
        (self.outputs if self.motion is not None else self.inputs).append(node)
        self._label = None
        self._states = set()
        self._ingredients = set()

    def feed(self, line_number: int, tag: str, payload: str) -> None:
        kind = tag.lower()
        if kind in _OBJECT_TAGS:
            label = normalize(payload)
            if not label:
                self._error(line_number, "object line with empty label")
                return
            self._flush()
            self._label = label
            self._saw_object = True
        elif kind == "s":
            if self._label is None:
                self._error(line_number, "state line with no preceding object line")
                return
            try:
                state, extra = parse_state_payload(payload)
            except ValueError as exc:
                self._error(line_number, str(exc))
                return
            self._states.add(state)
            self._ingredients.update(extra)
        elif kind == "m":
            if self.motion is not None:
                self._error(line_number, "block has more than one motion line")
                return
            if not self._saw_object:
                self._error(line_number, "motion line with no preceding object line")
                return
            label = normalize(payload)
            if not label:
                self._error(line_number, "motion line with empty label")
                return
            self._flush()
            self.motion = label
        else:
            self.diagnostics.append(
                ParseDiagnostic(line_number, f"unknown line tag {tag!r}", WARNING)
            )

    def finish(self, start_line: int, unit_index: int) -> FunctionalUnit | None:
        self._flush()
        if self.motion is None:
            self._error(start_line, "block with no motion line")
        if self.failed:
            return None
        return FunctionalUnit(
            inputs=tuple(self.inputs),
            motion=MotionNode(self.motion),
            outputs=tuple(self.outputs),
            unit_index=unit_index,
        )


def parse_foon_text(text: str) -> tuple[list[FunctionalUnit], list[ParseDiagnostic]]:
    """Parse FOON text into functional units plus diagnostics.

    Never raises: every problem becomes a diagnostic. If any diagnostic has
    error severity the parse fails and the returned unit list is empty.
    """
    diagnostics: list[ParseDiagnostic] = []
    units: list[FunctionalUnit] = []

    block: _BlockParser | None = None
    block_start = 0
    previous_delimiter: int | None = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("//"):
            if block is not None:
                unit = block.finish(block_start, len(units))
                if unit is not None:
                    units.append(unit)
                block = None
            elif previous_delimiter is not None:
                diagnostics.append(
                    ParseDiagnostic(line_number, "empty functional-unit block", WARNING)
                )
            previous_delimiter = line_number
            continue
        if block is None:
            block = _BlockParser(diagnostics)
            block_start = line_number
        parts = stripped.split(None, 1)
        block.feed(line_number, parts[0], parts[1] if len(parts) > 1 else "")

    if block is not None:
        unit = block.finish(block_start, len(units))
        if unit is not None:
            units.append(unit)

    if any(d.severity == ERROR for d in diagnostics):
        return [], diagnostics
    return units, diagnostics


def _parse_node_records(text: str, what: str) -> list[ObjectNode]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise SchemaError(f"{what}: expected a list of object records")

    nodes: list[ObjectNode] = []
    for index, entry in enumerate(data):
        where = f"{what} entry {index}"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: expected an object record")
        if "label" not in entry:
            raise SchemaError(f'{where}: missing "label"')
        label = entry["label"]
        if not isinstance(label, str) or not normalize(label):
            raise SchemaError(f'{where}: "label" must be a non-empty string')
        states_raw = entry.get("states", [])
        ingredients_raw = entry.get("ingredients", [])
        if not isinstance(states_raw, list):
            raise SchemaError(f'{where}: "states" must be a list of strings')
        if not isinstance(ingredients_raw, list):
            raise SchemaError(f'{where}: "ingredients" must be a list of strings')

        states: set[StateDescriptor] = set()
        ingredients: set[str] = set()
        for s in states_raw:
            if not isinstance(s, str):
                raise SchemaError(f'{where}: "states" must be a list of strings')
            try:
                state, extra = parse_state_payload(s)
            except ValueError as exc:
                raise SchemaError(f"{where}: state {s!r}: {exc}") from exc
            states.add(state)
            ingredients.update(extra)
        for ing in ingredients_raw:
            if not isinstance(ing, str):
                raise SchemaError(f'{where}: "ingredients" must be a list of strings')
            ingredients.add(ing)
        nodes.append(
            ObjectNode(label, frozenset(states), frozenset(filter(None, map(normalize, ingredients))))
        )
    return nodes


def parse_kitchen(text: str) -> Kitchen:
    """Read a kitchen document into a deduplicated :class:`Kitchen`."""
    return Kitchen.from_nodes(_parse_node_records(text, "kitchen"))


def parse_goals(text: str) -> list[ObjectNode]:
    """Read a goal document, preserving order; duplicate goals warn."""
    nodes = _parse_node_records(text, "goals")
    seen: set[str] = set()
    for node in nodes:
        key = node_key(node)
        if key in seen:
            warnings.warn(f"duplicate goal {node.label!r}", FoonWarning, stacklevel=2)
        seen.add(key)
    return nodes


class _JsonObject(dict):
    """Marker for JSON objects parsed with duplicate-key detection."""


def parse_motion_rates(text: str) -> dict[str, float]:
    """Read a motion success-rate document into a normalized-label map."""

    def hook(pairs):
        obj = _JsonObject()
        obj["pairs"] = pairs
        return obj

    try:
        data = json.loads(text, object_pairs_hook=hook)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"motion rates: not valid JSON: {exc}") from exc
    if not isinstance(data, _JsonObject):
        raise SchemaError("motion rates: expected an object mapping motion to rate")

    rates: dict[str, float] = {}
    for raw_label, value in data["pairs"]:
        label = normalize(raw_label)
        if not label:
            raise SchemaError("motion rates: empty motion label")
        if label in rates:
            raise SchemaError(f"motion rates: duplicate motion {label!r}")
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise SchemaError(f"motion rates: rate for {label!r} must be a number")
        rate = float(value)
        if not 0.0 <= rate <= 1.0:
            raise SchemaError(
                f"motion rates: rate for {label!r} outside [0, 1]: {value!r}"
            )
        rates[label] = rate
    return rates


def apply_motion_rates(
    units: list[FunctionalUnit], rates: dict[str, float]
) -> list[FunctionalUnit]:
    """Attach success rates to motions; absent motions default to 1.0.

    Warns once per motion label that has no entry in the rate map.
    """
    missing: set[str] = set()
    out: list[FunctionalUnit] = []
    for unit in units:
        label = unit.motion.label
        if label in rates:
            out.append(replace(unit, motion=MotionNode(label, rates[label])))
        else:
            if label not in missing:
                missing.add(label)
                warnings.warn(
                    f"no success rate for motion {label!r}; defaulting to 1.0",
                    FoonWarning,
                    stacklevel=2,
                )
            out.append(unit)
    return out


def _render_node(node: ObjectNode) -> list[str]:
    # Ingredients ride on the first state line in canonical order; a node
    # with ingredients but no states cannot carry them in this format.
    lines = [f"O {node.label}"]
    ingredients = ",".join(sorted(node.ingredients))
    for position, state in enumerate(sorted(node.states, key=_state_sort_key)):
        payload = state.label
        if state.relative_container:
            payload += f" [{state.relative_container}]"
        if position == 0 and ingredients:
            payload += f" {{{ingredients}}}"
        lines.append(f"S {payload}")
    return lines


def serialize_units(units) -> str:
    """Render functional units in the canonical text format ("" when empty)."""
    units = list(units)
    if not units:
        return ""
    lines: list[str] = []
    for unit in units:
        lines.append("//")
        for node in unit.inputs:
            lines.extend(_render_node(node))
        lines.append(f"M {unit.motion.label}")
        for node in unit.outputs:
            lines.extend(_render_node(node))
    lines.append("//")
    return "\n".join(lines) + "\n"


def serialize_task_tree(tree: TaskTree) -> str:
    """Render a task tree's steps, execution order first to last."""
    return serialize_units(tree.steps)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _object_label(node: ObjectNode) -> str:
    states = ", ".join(
        s.label + (f" [{s.relative_container}]" if s.relative_container else "")
        for s in sorted(node.states, key=_state_sort_key)
    )
    ingredients = ", ".join(sorted(node.ingredients))
    parts = (node.label, states, "{" + ingredients + "}")
    # escape first, then join with the DOT newline sequence
    return "\\n".join(_dot_escape(part) for part in parts)


def export_dot(source: FoonGraph | TaskTree) -> str:
    """Render a graph or task tree as deterministic Graphviz DOT text.

    Object nodes are boxes identified by their node key (so equal nodes
    merge); each unit's motion is its own ellipse. Render with any DOT
    tool, e.g. ``dot -Tpng out.dot -O``.
    """
    units = source.units if isinstance(source, FoonGraph) else source.steps
    lines = ["digraph foon {"]
    declared: set[str] = set()

    def declare(node: ObjectNode) -> str:
        key = node_key(node)
        ident = "o" + hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]
        if key not in declared:
            declared.add(key)
            lines.append(f'  "{ident}" [shape=box, label="{_object_label(node)}"];')
        return ident

    for position, unit in enumerate(units):
        motion_id = f"m{position}"
        input_ids = [declare(node) for node in unit.inputs]
        lines.append(
            f'  "{motion_id}" [shape=ellipse, label="{_dot_escape(unit.motion.label)}"];'
        )
        output_ids = [declare(node) for node in unit.outputs]
        for ident in input_ids:
            lines.append(f'  "{ident}" -> "{motion_id}";')
        for ident in output_ids:
            lines.append(f'  "{motion_id}" -> "{ident}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
