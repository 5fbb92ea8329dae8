"""Compilers into homing vector automata.

Counter machine simulations, intersection with a regular language, the
block-diagonal intersection of blind machines, and nondeterministic union,
concatenation and star.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .machine import (
    Control,
    Guard,
    Head,
    HvaMachine,
    MachineFormatError,
    ModeFlags,
    Transition,
    check_valid,
    dumps_document,
    load_json,
)
from .numerics import QMatrix, QVector, block_diag, ones

ZERO, NONZERO = "=", "≠"


class ConstructionError(ValueError):
    """An operand does not meet a construction's precondition."""


# ------------------------------------------------------------ counter machines

@dataclass(frozen=True)
class CounterMachine:
    """Real-time deterministic k-counter automaton.

    Non-blind machines key transitions by ``(state, symbol, pattern)``, where
    ``pattern`` has one ``=``/``≠`` character per counter (zero / non-zero).
    Blind machines use ``pattern=None``. Counters range over the integers.
    Blind machines accept in an accept state with all counters zero;
    non-blind machines accept on state alone unless ``accept_empty`` is set.
    """

    name: str
    counters: int
    blind: bool
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accept: frozenset[str]
    transitions: dict  # (state, symbol, pattern) -> (state, increments)
    accept_empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accept", frozenset(self.accept))
        for (q, sym, pattern), (q2, inc) in self.transitions.items():
            if self.blind and pattern is not None:
                raise ValueError("blind counter machines cannot test their counters")
            if not self.blind and (pattern is None or len(pattern) != self.counters
                                   or set(pattern) - {ZERO, NONZERO}):
                raise ValueError(f"bad zero-pattern {pattern!r}")
            if len(inc) != self.counters or any(d not in (-1, 0, 1) for d in inc):
                raise ValueError(f"bad increments {inc!r}")
            if q not in self.states or q2 not in self.states or sym not in self.alphabet:
                raise ValueError(f"transition {(q, sym, pattern)} uses undeclared names")

    def _pattern(self, values) -> Optional[str]:
        if self.blind:
            return None
        return "".join(ZERO if c == 0 else NONZERO for c in values)


def counter_trace(m: CounterMachine, word: str) -> Optional[list[tuple[str, tuple[int, ...]]]]:
    """(state, counters) after each prefix, or None if the run dies."""
    state = m.start
    values = (0,) * m.counters
    out = [(state, values)]
    for ch in word:
        if ch not in m.alphabet:
            raise ValueError(f"symbol {ch!r} not in alphabet")
        move = m.transitions.get((state, ch, m._pattern(values)))
        if move is None:
            return None
        state, inc = move
        values = tuple(c + d for c, d in zip(values, inc))
        out.append((state, values))
    return out


def run_counter(m: CounterMachine, word: str) -> bool:
    path = counter_trace(m, word)
    if path is None:
        return False
    state, values = path[-1]
    if state not in m.accept:
        return False
    if m.blind or m.accept_empty:
        return all(c == 0 for c in values)
    return True


def counter_update_matrix(increments) -> QMatrix:
    """Identity of size k+1 plus the increments in the last row."""
    k = len(increments)
    rows = [[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)]
    for i, d in enumerate(increments):
        rows[k][i] = d
    return QMatrix(rows)


def simulate_blind_counters(m: CounterMachine) -> HvaMachine:
    """rtDBHVA(k+1) whose vector holds ``1 + counter_i`` in entry i and 1 last."""
    if not m.blind:
        raise ConstructionError("simulate_blind_counters needs a blind counter machine; "
                                "use simulate_counter_nonblind")
    k = m.counters
    ts = [
        Transition(q, sym, Guard.ANY, q2, counter_update_matrix(inc))
        for (q, sym, _), (q2, inc) in m.transitions.items()
    ]
    return check_valid(HvaMachine(
        name=f"{m.name}.hva",
        mode=ModeFlags(Head.REALTIME, Control.DETERMINISTIC, True),
        dimension=k + 1,
        alphabet=m.alphabet,
        states=m.states,
        start=m.start,
        accept=m.accept,
        initial_vector=ones(k + 1),
        transitions=tuple(ts),
    ))


def simulate_counter_nonblind(m: CounterMachine) -> HvaMachine:
    """rtDHVA(2) for a one-counter machine accepting with an empty counter.

    The vector is ``[1 + c, 1]`` so it equals the initial vector exactly when
    the counter is zero, and the zero test becomes the eq/neq guard.
    """
    if m.blind:
        raise ConstructionError("machine is blind; use simulate_blind_counters")
    if m.counters != 1:
        raise ConstructionError("zero tests on individual counters cannot be simulated "
                                "for more than one counter")
    if not m.accept_empty:
        raise ConstructionError("the simulation needs acceptance with an empty counter")
    guard = {ZERO: Guard.EQ, NONZERO: Guard.NEQ}
    ts = [
        Transition(q, sym, guard[pattern], q2, counter_update_matrix(inc))
        for (q, sym, pattern), (q2, inc) in m.transitions.items()
    ]
    return check_valid(HvaMachine(
        name=f"{m.name}.hva",
        mode=ModeFlags(Head.REALTIME, Control.DETERMINISTIC, False),
        dimension=2,
        alphabet=m.alphabet,
        states=m.states,
        start=m.start,
        accept=m.accept,
        initial_vector=ones(2),
        transitions=tuple(ts),
    ))


def counter_to_dict(m: CounterMachine) -> dict:
    doc = {
        "name": m.name,
        "counters": m.counters,
        "blind": m.blind,
        "accept_empty": m.accept_empty,
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "start": m.start,
        "accept": [q for q in m.states if q in m.accept],
        "transitions": [],
    }
    for (q, sym, pattern), (q2, inc) in m.transitions.items():
        td = {"from": q, "symbol": sym}
        if pattern is not None:
            td["pattern"] = pattern
        td.update({"to": q2, "increments": list(inc)})
        doc["transitions"].append(td)
    return doc


def counter_from_dict(doc: dict) -> CounterMachine:
    try:
        transitions = {
            (td["from"], td["symbol"], td.get("pattern")): (td["to"], tuple(td["increments"]))
            for td in doc["transitions"]
        }
        return CounterMachine(
            name=doc["name"],
            counters=doc["counters"],
            blind=doc["blind"],
            alphabet=tuple(doc["alphabet"]),
            states=tuple(doc["states"]),
            start=doc["start"],
            accept=frozenset(doc["accept"]),
            transitions=transitions,
            accept_empty=doc.get("accept_empty", False),
        )
    except KeyError as exc:
        raise MachineFormatError(f"missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise MachineFormatError(str(exc)) from None


def serialize_counter(m: CounterMachine) -> str:
    return dumps_document(counter_to_dict(m))


def parse_counter(document: str) -> CounterMachine:
    return counter_from_dict(load_json(document))


# -------------------------------------------------------------------- DFAs

@dataclass(frozen=True)
class Dfa:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    start: str
    accept: frozenset[str]
    delta: dict  # (state, symbol) -> state, total

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accept", frozenset(self.accept))
        for q in self.states:
            for s in self.alphabet:
                if (q, s) not in self.delta:
                    raise ValueError(f"transition function undefined on ({q}, {s})")

    def accepts(self, word: str) -> bool:
        q = self.start
        for ch in word:
            q = self.delta.get((q, ch))
            if q is None:
                return False
        return q in self.accept


def dfa_to_dict(d: Dfa) -> dict:
    return {
        "alphabet": list(d.alphabet),
        "states": list(d.states),
        "start": d.start,
        "accept": [q for q in d.states if q in d.accept],
        "transitions": [{"from": q, "symbol": s, "to": t} for (q, s), t in d.delta.items()],
    }


def dfa_from_dict(doc: dict) -> Dfa:
    try:
        return Dfa(
            states=tuple(doc["states"]),
            alphabet=tuple(doc["alphabet"]),
            start=doc["start"],
            accept=frozenset(doc["accept"]),
            delta={(td["from"], td["symbol"]): td["to"] for td in doc["transitions"]},
        )
    except KeyError as exc:
        raise MachineFormatError(f"missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise MachineFormatError(str(exc)) from None


def parse_dfa(document: str) -> Dfa:
    return dfa_from_dict(load_json(document))


def serialize_dfa(d: Dfa) -> str:
    return dumps_document(dfa_to_dict(d))


# ---------------------------------------------------------------- closures

def _pair(p: str, q: str) -> str:
    return f"({p},{q})"


def _merge_alphabets(*alphabets) -> tuple[str, ...]:
    out: list[str] = []
    for alpha in alphabets:
        for s in alpha:
            if s not in out:
                out.append(s)
    return tuple(out)


def _require_realtime(*machines: HvaMachine) -> None:
    for m in machines:
        if not m.mode.realtime or m.has_epsilon:
            raise ConstructionError(f"{m.name!r} is not a real-time machine")


def intersect_regular(v: HvaMachine, d: Dfa) -> HvaMachine:
    """Product with a DFA; the vector and guards are those of ``v``."""
    _require_realtime(v)
    states = tuple(_pair(p, q) for p in v.states for q in d.states)
    ts = []
    for t in v.transitions:
        for q in d.states:
            q2 = d.delta.get((q, t.symbol))
            if q2 is None:
                continue
            ts.append(Transition(_pair(t.source, q), t.symbol, t.guard, _pair(t.target, q2), t.matrix))
    return check_valid(HvaMachine(
        name=f"({v.name})&dfa",
        mode=v.mode,
        dimension=v.dimension,
        alphabet=_merge_alphabets(v.alphabet, d.alphabet),
        states=states,
        start=_pair(v.start, d.start),
        accept=frozenset(_pair(p, q) for p in v.accept for q in d.accept),
        initial_vector=v.initial_vector,
        transitions=tuple(ts),
    ))


def intersect_blind(x: HvaMachine, y: HvaMachine) -> HvaMachine:
    """Synchronous product of two blind machines with block-diagonal matrices."""
    for m in (x, y):
        if not m.mode.blind:
            raise ConstructionError(f"{m.name!r} is not blind")
    _require_realtime(x, y)
    deterministic = x.mode.deterministic and y.mode.deterministic
    ts = []
    for tx in x.transitions:
        for ty in y.transitions:
            if ty.symbol != tx.symbol:
                continue
            ts.append(Transition(
                _pair(tx.source, ty.source), tx.symbol, Guard.ANY,
                _pair(tx.target, ty.target), block_diag(tx.matrix, ty.matrix),
            ))
    return check_valid(HvaMachine(
        name=f"({x.name})&({y.name})",
        mode=ModeFlags(Head.REALTIME,
                       Control.DETERMINISTIC if deterministic else Control.NONDETERMINISTIC, True),
        dimension=x.dimension + y.dimension,
        alphabet=_merge_alphabets(x.alphabet, y.alphabet),
        states=tuple(_pair(p, q) for p in x.states for q in y.states),
        start=_pair(x.start, y.start),
        accept=frozenset(_pair(p, q) for p in x.accept for q in y.accept),
        initial_vector=x.initial_vector.concat(y.initial_vector),
        transitions=tuple(ts),
    ))


def _same_blindness(x: HvaMachine, y: HvaMachine) -> bool:
    if x.mode.blind != y.mode.blind:
        raise ConstructionError("operands must be both blind or both non-blind")
    return x.mode.blind


def _left(x: HvaMachine, k_right: int, prefix: str = "L:"):
    eye = QMatrix.identity(k_right)
    return [
        Transition(prefix + t.source, t.symbol, t.guard, prefix + t.target, block_diag(t.matrix, eye))
        for t in x.transitions
    ]


def _right(y: HvaMachine, k_left: int, prefix: str = "R:"):
    eye = QMatrix.identity(k_left)
    return [
        Transition(prefix + t.source, t.symbol, t.guard, prefix + t.target, block_diag(eye, t.matrix))
        for t in y.transitions
    ]


def _nondet(blind: bool) -> ModeFlags:
    return ModeFlags(Head.REALTIME, Control.NONDETERMINISTIC, blind)


START = "start"


def union_nondet(x: HvaMachine, y: HvaMachine) -> HvaMachine:
    """Guess on the first symbol which operand to simulate; the idle block stays fixed."""
    blind = _same_blindness(x, y)
    _require_realtime(x, y)
    kx, ky = x.dimension, y.dimension
    left, right = _left(x, ky), _right(y, kx)
    # the fresh start state copies both operands' initial moves
    first = [
        Transition(START, t.symbol, t.guard, t.target, t.matrix)
        for t in left if t.source == "L:" + x.start
    ] + [
        Transition(START, t.symbol, t.guard, t.target, t.matrix)
        for t in right if t.source == "R:" + y.start
    ]
    accept = {"L:" + q for q in x.accept} | {"R:" + q for q in y.accept}
    if x.start in x.accept or y.start in y.accept:
        accept.add(START)
    return check_valid(HvaMachine(
        name=f"({x.name})|({y.name})",
        mode=_nondet(blind),
        dimension=kx + ky,
        alphabet=_merge_alphabets(x.alphabet, y.alphabet),
        states=(START,) + tuple("L:" + q for q in x.states) + tuple("R:" + q for q in y.states),
        start=START,
        accept=frozenset(accept),
        initial_vector=x.initial_vector.concat(y.initial_vector),
        transitions=tuple(first + left + right),
    ))


def concat_nondet(x: HvaMachine, y: HvaMachine) -> HvaMachine:
    """Run ``x`` on the left block, then at a guessed seam run ``y`` on the right block.

    The seam is only taken from an accept state of ``x``. On non-blind
    operands the seam requires the eq guard, which certifies that ``x``'s
    block is back at its initial value before ``y`` starts.
    """
    blind = _same_blindness(x, y)
    _require_realtime(x, y)
    kx, ky = x.dimension, y.dimension
    left, right = _left(x, ky), _right(y, kx)
    y_first = [t for t in right if t.source == "R:" + y.start]
    seams = []
    for q in x.states:
        if q not in x.accept:
            continue
        for t in y_first:
            if blind:
                guard = Guard.ANY
            elif t.guard.admits(Guard.EQ):
                guard = Guard.EQ
            else:
                continue  # y's own vector is at its initial value at the seam
            seams.append(Transition("L:" + q, t.symbol, guard, t.target, t.matrix))
    accept = {"R:" + q for q in y.accept}
    if y.start in y.accept:
        accept |= {"L:" + q for q in x.accept}
    return check_valid(HvaMachine(
        name=f"({x.name}).({y.name})",
        mode=_nondet(blind),
        dimension=kx + ky,
        alphabet=_merge_alphabets(x.alphabet, y.alphabet),
        states=tuple("L:" + q for q in x.states) + tuple("R:" + q for q in y.states),
        start="L:" + x.start,
        accept=frozenset(accept),
        initial_vector=x.initial_vector.concat(y.initial_vector),
        transitions=tuple(left + seams + right),
    ))


def star_nondet(x: HvaMachine) -> HvaMachine:
    """Kleene star of a non-blind machine.

    Every restart happens from an accept state under the eq guard, so each
    completed factor has returned the vector to its initial value.
    """
    if x.mode.blind:
        raise ConstructionError("star needs a non-blind operand: a blind machine cannot "
                                "certify that the vector is home at a factor boundary")
    _require_realtime(x)
    body = [
        Transition("L:" + t.source, t.symbol, t.guard, "L:" + t.target, t.matrix)
        for t in x.transitions
    ]
    restart = [t for t in x.transitions if t.source == x.start and t.guard.admits(Guard.EQ)]
    first = [Transition(START, t.symbol, Guard.EQ, "L:" + t.target, t.matrix) for t in restart]
    seams = [
        Transition("L:" + q, t.symbol, Guard.EQ, "L:" + t.target, t.matrix)
        for q in x.states if q in x.accept
        for t in restart
    ]
    return check_valid(HvaMachine(
        name=f"({x.name})*",
        mode=_nondet(False),
        dimension=x.dimension,
        alphabet=x.alphabet,
        states=(START,) + tuple("L:" + q for q in x.states),
        start=START,
        accept=frozenset({START} | {"L:" + q for q in x.accept}),
        initial_vector=x.initial_vector,
        transitions=tuple(first + body + seams),
    ))
