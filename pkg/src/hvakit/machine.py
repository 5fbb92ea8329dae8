"""Homing vector automaton model, structural validation and the JSON file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional

from .numerics import DimensionError, QMatrix, QVector, parse_rational


class Head(str, Enum):
    REALTIME = "realtime"
    ONEWAY = "oneway"


class Control(str, Enum):
    DETERMINISTIC = "deterministic"
    NONDETERMINISTIC = "nondeterministic"


class Guard(str, Enum):
    EQ = "eq"
    NEQ = "neq"
    ANY = "any"

    def admits(self, omega: "Guard") -> bool:
        return self is Guard.ANY or self is omega


@dataclass(frozen=True)
class ModeFlags:
    head: Head = Head.REALTIME
    control: Control = Control.DETERMINISTIC
    blind: bool = False

    @property
    def deterministic(self) -> bool:
        return self.control is Control.DETERMINISTIC

    @property
    def realtime(self) -> bool:
        return self.head is Head.REALTIME

    @property
    def label(self) -> str:
        """Conventional variant name, e.g. ``rtDBHVA`` or ``1NHVA``."""
        prefix = "rt" if self.realtime else "1"
        return f"{prefix}{'D' if self.deterministic else 'N'}{'B' if self.blind else ''}HVA"


RTD = ModeFlags(Head.REALTIME, Control.DETERMINISTIC, False)
RTDB = ModeFlags(Head.REALTIME, Control.DETERMINISTIC, True)
RTN = ModeFlags(Head.REALTIME, Control.NONDETERMINISTIC, False)
RTNB = ModeFlags(Head.REALTIME, Control.NONDETERMINISTIC, True)
ONB = ModeFlags(Head.ONEWAY, Control.NONDETERMINISTIC, True)


@dataclass(frozen=True)
class Transition:
    source: str
    symbol: Optional[str]  # None is the empty move
    guard: Guard
    target: str
    matrix: QMatrix


@dataclass(frozen=True)
class HvaMachine:
    name: str
    mode: ModeFlags
    dimension: int
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accept: frozenset[str]
    initial_vector: QVector
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accept", frozenset(self.accept))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not isinstance(self.initial_vector, QVector):
            object.__setattr__(self, "initial_vector", QVector(self.initial_vector))

    @cached_property
    def outgoing(self) -> dict[str, tuple[Transition, ...]]:
        """Transitions grouped by source state, in declaration order."""
        table: dict[str, list[Transition]] = {}
        for t in self.transitions:
            table.setdefault(t.source, []).append(t)
        return {q: tuple(ts) for q, ts in table.items()}

    @cached_property
    def reading(self) -> dict[tuple[str, str], tuple[Transition, ...]]:
        """Symbol-reading transitions grouped by (source, symbol), in declaration order."""
        table: dict[tuple[str, str], list[Transition]] = {}
        for t in self.transitions:
            if t.symbol is not None:
                table.setdefault((t.source, t.symbol), []).append(t)
        return {k: tuple(ts) for k, ts in table.items()}

    @cached_property
    def _transition_ids(self) -> frozenset[int]:
        return frozenset(id(t) for t in self.transitions)

    def owns(self, t: Transition) -> bool:
        """Whether ``t`` is one of this machine's transitions (identity first, then equality)."""
        return id(t) in self._transition_ids or t in self.outgoing.get(t.source, ())

    @cached_property
    def has_epsilon(self) -> bool:
        return any(t.symbol is None for t in self.transitions)

    def with_name(self, name: str) -> "HvaMachine":
        return replace(self, name=name)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


class MachineFormatError(ValueError):
    """A machine document could not be read."""


class MachineValidationError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))


def validate(m: HvaMachine) -> list[Violation]:
    out: list[Violation] = []

    def bad(code, msg):
        out.append(Violation(code, msg))

    states = set(m.states)
    if len(states) != len(m.states):
        bad("DUPLICATE_STATE", "state list contains duplicates")
    if len(set(m.alphabet)) != len(m.alphabet):
        bad("DUPLICATE_SYMBOL", "alphabet contains duplicates")
    for s in m.alphabet:
        if not isinstance(s, str) or len(s) != 1:
            bad("BAD_SYMBOL", f"alphabet symbol {s!r} is not a single character")
    if m.start not in states:
        bad("UNKNOWN_STATE", f"start state {m.start!r} not declared")
    for q in sorted(m.accept - states):
        bad("UNKNOWN_STATE", f"accept state {q!r} not declared")
    if m.dimension < 1:
        bad("DIMENSION", "dimension must be at least 1")
    if m.initial_vector.dim != m.dimension:
        bad("DIMENSION", f"initial vector has dimension {m.initial_vector.dim}, expected {m.dimension}")
    if m.mode.deterministic and not m.mode.realtime:
        bad("DET_ONEWAY", "deterministic machines must be real-time")

    alphabet = set(m.alphabet)
    for idx, t in enumerate(m.transitions):
        where = f"transition {idx} ({t.source} -{t.symbol}-> {t.target})"
        if t.source not in states:
            bad("UNKNOWN_STATE", f"{where}: source not declared")
        if t.target not in states:
            bad("UNKNOWN_STATE", f"{where}: target not declared")
        if t.symbol is None:
            if m.mode.realtime:
                bad("EPSILON_REALTIME", f"{where}: empty move on a real-time machine")
        elif t.symbol not in alphabet:
            bad("UNKNOWN_SYMBOL", f"{where}: symbol not in alphabet")
        if t.matrix.dim != m.dimension:
            bad("DIMENSION", f"{where}: {t.matrix.dim}x{t.matrix.dim} matrix, expected {m.dimension}")
        if m.mode.blind and t.guard is not Guard.ANY:
            bad("BLIND_GUARD", f"{where}: blind machines cannot test the vector (guard {t.guard.value})")
        if not m.mode.blind and m.mode.deterministic and t.guard is Guard.ANY:
            bad("ANY_GUARD", f"{where}: deterministic non-blind transitions need an explicit eq/neq guard")

    if m.mode.deterministic:
        seen: dict[tuple, int] = {}
        for idx, t in enumerate(m.transitions):
            for omega in (Guard.EQ, Guard.NEQ):
                if t.guard.admits(omega):
                    key = (t.source, t.symbol, omega)
                    if key in seen:
                        bad("DET_CONFLICT",
                            f"transitions {seen[key]} and {idx} both apply to "
                            f"({t.source}, {t.symbol}, {omega.value})")
                    else:
                        seen[key] = idx
    return out


def check_valid(m: HvaMachine) -> HvaMachine:
    violations = validate(m)
    if violations:
        raise MachineValidationError(violations)
    return m


def expand_guards(m: HvaMachine) -> HvaMachine:
    """Replace each ``any`` guard on a non-blind machine by an eq and a neq copy."""
    if m.mode.blind:
        return m
    ts: list[Transition] = []
    for t in m.transitions:
        if t.guard is Guard.ANY:
            ts.append(replace(t, guard=Guard.EQ))
            ts.append(replace(t, guard=Guard.NEQ))
        else:
            ts.append(t)
    return replace(m, transitions=tuple(ts))


# ---------------------------------------------------------------- file format

def machine_to_dict(m: HvaMachine) -> dict:
    return {
        "name": m.name,
        "mode": {"head": m.mode.head.value, "control": m.mode.control.value, "blind": m.mode.blind},
        "dimension": m.dimension,
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "start": m.start,
        "accept": [q for q in m.states if q in m.accept]
        + sorted(q for q in m.accept if q not in m.states),
        "initial_vector": m.initial_vector.to_strings(),
        "transitions": [
            {
                "from": t.source,
                "symbol": t.symbol,
                "guard": t.guard.value,
                "to": t.target,
                "matrix": t.matrix.to_strings(),
            }
            for t in m.transitions
        ],
    }


def _require(doc: dict, key: str, kind, where: str = "machine"):
    if key not in doc:
        raise MachineFormatError(f"{where}: missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise MachineFormatError(f"{where}: key {key!r} has the wrong type")
    return value


def _rationals(items, where: str) -> list:
    if not isinstance(items, list):
        raise MachineFormatError(f"{where}: expected a list of rationals")
    out = []
    for x in items:
        if not isinstance(x, str):
            raise MachineFormatError(f"{where}: rational entries must be strings, got {x!r}")
        try:
            out.append(parse_rational(x))
        except ValueError as exc:
            raise MachineFormatError(f"{where}: {exc}") from None
    return out


def _matrix(rows, k: int, where: str) -> QMatrix:
    if not isinstance(rows, list) or len(rows) != k:
        raise MachineFormatError(f"{where}: matrix must have {k} rows")
    parsed = []
    for r, row in enumerate(rows):
        vals = _rationals(row, f"{where} row {r}")
        if len(vals) != k:
            raise MachineFormatError(f"{where} row {r}: expected {k} entries, got {len(vals)}")
        parsed.append(vals)
    return QMatrix(parsed)


def machine_from_dict(doc: dict) -> HvaMachine:
    if not isinstance(doc, dict):
        raise MachineFormatError("machine document must be a JSON object")
    mode_doc = _require(doc, "mode", dict)
    try:
        mode = ModeFlags(
            Head(_require(mode_doc, "head", str, "mode")),
            Control(_require(mode_doc, "control", str, "mode")),
            _require(mode_doc, "blind", bool, "mode"),
        )
    except ValueError as exc:
        raise MachineFormatError(f"mode: {exc}") from None
    k = _require(doc, "dimension", int)
    if k < 1:
        raise MachineFormatError("dimension must be at least 1")
    init = _rationals(_require(doc, "initial_vector", list), "initial_vector")
    if len(init) != k:
        raise MachineFormatError(f"initial_vector: expected {k} entries, got {len(init)}")
    transitions = []
    for idx, td in enumerate(_require(doc, "transitions", list)):
        where = f"transitions[{idx}]"
        if not isinstance(td, dict):
            raise MachineFormatError(f"{where}: expected an object")
        symbol = td.get("symbol", None)
        if symbol is not None and not isinstance(symbol, str):
            raise MachineFormatError(f"{where}: symbol must be a string or null")
        try:
            guard = Guard(_require(td, "guard", str, where))
        except ValueError as exc:
            raise MachineFormatError(f"{where}: {exc}") from None
        transitions.append(Transition(
            _require(td, "from", str, where),
            symbol,
            guard,
            _require(td, "to", str, where),
            _matrix(_require(td, "matrix", list, where), k, where + ".matrix"),
        ))
    return HvaMachine(
        name=_require(doc, "name", str),
        mode=mode,
        dimension=k,
        alphabet=tuple(_require(doc, "alphabet", list)),
        states=tuple(_require(doc, "states", list)),
        start=_require(doc, "start", str),
        accept=frozenset(_require(doc, "accept", list)),
        initial_vector=QVector(init),
        transitions=tuple(transitions),
    )


def load_json(document: str):
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise MachineFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_machine(document: str, check: bool = True) -> HvaMachine:
    """Read a machine document; raises on syntax errors and, if ``check``, on violations."""
    try:
        m = machine_from_dict(load_json(document))
    except DimensionError as exc:
        raise MachineFormatError(str(exc)) from None
    return check_valid(m) if check else m


def dumps_document(doc: dict) -> str:
    """Canonical JSON layout: one top-level key per line, one transition per line."""
    lines = ["{"]
    items = list(doc.items())
    for n, (key, value) in enumerate(items):
        comma = "," if n < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"  {json.dumps(key)}: [")
            for i, item in enumerate(value):
                sep = "," if i < len(value) - 1 else ""
                lines.append(f"    {json.dumps(item, ensure_ascii=False)}{sep}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_machine(m: HvaMachine) -> str:
    return dumps_document(machine_to_dict(m))


def make_machine(
    name: str,
    mode: ModeFlags,
    initial: Iterable,
    alphabet: Iterable[str],
    states: Iterable[str],
    start: str,
    accept: Iterable[str],
    transitions: Iterable[tuple],
) -> HvaMachine:
    """Convenience builder; transitions are ``(source, symbol, guard, target, matrix)``.

    ``guard`` may be a :class:`Guard` or its string value, and ``matrix`` a
    :class:`QMatrix` or a nested list.
    """
    v0 = QVector(initial)
    ts = []
    for src, sym, guard, dst, mat in transitions:
        if not isinstance(mat, QMatrix):
            mat = QMatrix(mat)
        ts.append(Transition(src, sym, Guard(guard), dst, mat))
    return HvaMachine(
        name=name,
        mode=mode,
        dimension=v0.dim,
        alphabet=tuple(alphabet),
        states=tuple(states),
        start=start,
        accept=frozenset(accept),
        initial_vector=v0,
        transitions=tuple(ts),
    )
