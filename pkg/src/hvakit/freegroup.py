"""Free group F2, its embedding into 2x2 integer matrices, and group automata.

Letters are ``a``, ``b`` and their inverses ``A``, ``B``. Words are kept
freely reduced. ``phi`` sends F2 onto the subgroup of K_n generated by
``Ma Mb Ma^2`` and ``Ma^2 Mb Ma``, where no non-identity element fixes the
row vector ``[1, 0]``; that is what lets a blind homing automaton stand in
for a group automaton.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Union

from .engine import Outcome, RunOptions, Verdict, check_input, search
from .machine import ONB, Guard, HvaMachine, Transition, dumps_document, load_json, MachineFormatError
from .numerics import QMatrix, QVector, block_diag, mat_inverse, mat_mul

LETTERS = "aAbB"
_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


@dataclass(frozen=True)
class GroupWord:
    letters: str = ""

    def __post_init__(self):
        for ch in self.letters:
            if ch not in _INVERSE:
                raise ValueError(f"{ch!r} is not a free group letter (use a, A, b, B)")
        object.__setattr__(self, "letters", _reduce_str(self.letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord("".join(_INVERSE[ch] for ch in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters


def _reduce_str(letters: str) -> str:
    stack: list[str] = []
    for ch in letters:
        if stack and stack[-1] == _INVERSE[ch]:
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def reduce(letters: Union[str, Iterable[str]]) -> GroupWord:
    return GroupWord("".join(letters))


IDENTITY = GroupWord("")


@dataclass(frozen=True)
class GroupPair:
    left: GroupWord = IDENTITY
    right: GroupWord = IDENTITY

    def __mul__(self, other: "GroupPair") -> "GroupPair":
        return GroupPair(self.left * other.left, self.right * other.right)

    def inverse(self) -> "GroupPair":
        return GroupPair(self.left.inverse(), self.right.inverse())

    def is_identity(self) -> bool:
        return self.left.is_identity() and self.right.is_identity()

    def __str__(self):
        return f"({self.left}, {self.right})"


def kn_generators(n: int = 2) -> tuple[QMatrix, QMatrix]:
    if n < 1:
        raise ValueError("K_n needs n >= 1")
    return QMatrix([[1, n], [0, 1]]), QMatrix([[1, 0], [n, 1]])


@lru_cache(maxsize=None)
def _letter_images(n: int) -> dict[str, QMatrix]:
    ma, mb = kn_generators(n)
    ma2 = mat_mul(ma, ma)
    ga = mat_mul(mat_mul(ma, mb), ma2)
    gb = mat_mul(mat_mul(ma2, mb), ma)
    return {"a": ga, "b": gb, "A": mat_inverse(ga), "B": mat_inverse(gb)}


def phi(w: GroupWord, n: int = 2) -> QMatrix:
    images = _letter_images(n)
    m = QMatrix.identity(2)
    for ch in w.letters:
        m = mat_mul(m, images[ch])
    return m


def psi(p: GroupPair, n: int = 2) -> QMatrix:
    return block_diag(phi(p.left, n), phi(p.right, n))


# ------------------------------------------------------------ group automata

F2 = "F2"
F2XF2 = "F2xF2"

Element = Union[GroupWord, GroupPair]


@dataclass(frozen=True)
class EfaTransition:
    source: str
    symbol: Optional[str]
    target: str
    element: Element


@dataclass(frozen=True)
class EfaMachine:
    name: str
    group: str
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accept: frozenset[str]
    transitions: tuple[EfaTransition, ...]

    def __post_init__(self):
        if self.group not in (F2, F2XF2):
            raise ValueError(f"unknown group {self.group!r}")
        kind = GroupWord if self.group == F2 else GroupPair
        for t in self.transitions:
            if not isinstance(t.element, kind):
                raise ValueError(f"transition element {t.element} does not belong to {self.group}")
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accept", frozenset(self.accept))
        object.__setattr__(self, "transitions", tuple(self.transitions))

    @property
    def identity(self) -> Element:
        return IDENTITY if self.group == F2 else GroupPair()

    @cached_property
    def outgoing(self) -> dict[str, tuple[EfaTransition, ...]]:
        table: dict[str, list] = {}
        for t in self.transitions:
            table.setdefault(t.source, []).append(t)
        return {q: tuple(ts) for q, ts in table.items()}

    @cached_property
    def has_epsilon(self) -> bool:
        return any(t.symbol is None for t in self.transitions)


def run_efa(e: EfaMachine, word: str, opts: RunOptions = RunOptions()) -> Verdict:
    """Search configurations ``(state, pos, register)`` with the register kept reduced."""
    check_input(e.alphabet, word)
    n = len(word)
    unit = e.identity

    def successors(c):
        state, pos, reg = c
        sym = word[pos] if pos < n else None
        for t in e.outgoing.get(state, ()):
            if t.symbol is None:
                yield t, (t.target, pos, reg * t.element)
            elif t.symbol == sym:
                yield t, (t.target, pos + 1, reg * t.element)

    def accepting(c):
        return c[1] == n and c[0] in e.accept and c[2] == unit

    outcome, path, stats = search(
        (e.start, 0, unit), successors, accepting, opts.budget,
        dedup=opts.dedup, bounded=not e.has_epsilon,
    )
    return Verdict(outcome, path, stats, budget=opts.budget)


def _translate(e: EfaMachine, embed, v0: QVector) -> HvaMachine:
    # one matrix per distinct group element
    images: dict = {}
    ts = []
    for t in e.transitions:
        if t.element not in images:
            images[t.element] = embed(t.element)
        ts.append(Transition(t.source, t.symbol, Guard.ANY, t.target, images[t.element]))
    return HvaMachine(
        name=f"{e.name}.hva",
        mode=ONB,
        dimension=v0.dim,
        alphabet=e.alphabet,
        states=e.states,
        start=e.start,
        accept=e.accept,
        initial_vector=v0,
        transitions=tuple(ts),
    )


def translate_efa_f2(e: EfaMachine, n: int = 2) -> HvaMachine:
    """Equivalent one-way nondeterministic blind HVA of dimension 2."""
    if e.group != F2:
        raise ValueError(f"expected an automaton over F2, got {e.group}")
    return _translate(e, lambda w: phi(w, n), QVector([1, 0]))


def translate_efa_f2xf2(e: EfaMachine, n: int = 2) -> HvaMachine:
    """Equivalent one-way nondeterministic blind HVA of dimension 4."""
    if e.group != F2XF2:
        raise ValueError(f"expected an automaton over F2xF2, got {e.group}")
    return _translate(e, lambda p: psi(p, n), QVector([1, 0, 1, 0]))


def translate_efa(e: EfaMachine, n: int = 2) -> HvaMachine:
    return translate_efa_f2(e, n) if e.group == F2 else translate_efa_f2xf2(e, n)


# ---------------------------------------------------------------- file format

def _element_to_json(x: Element):
    if isinstance(x, GroupPair):
        return {"left": x.left.letters, "right": x.right.letters}
    return x.letters


def efa_to_dict(e: EfaMachine) -> dict:
    return {
        "name": e.name,
        "group": e.group,
        "alphabet": list(e.alphabet),
        "states": list(e.states),
        "start": e.start,
        "accept": [q for q in e.states if q in e.accept],
        "transitions": [
            {"from": t.source, "symbol": t.symbol, "to": t.target, "element": _element_to_json(t.element)}
            for t in e.transitions
        ],
    }


def serialize_efa(e: EfaMachine) -> str:
    return dumps_document(efa_to_dict(e))


def efa_from_dict(doc: dict) -> EfaMachine:
    try:
        group = doc["group"]
        transitions = []
        for idx, td in enumerate(doc["transitions"]):
            el = td["element"]
            if group == F2XF2:
                if not isinstance(el, dict):
                    raise MachineFormatError(f"transitions[{idx}]: F2xF2 elements need left/right")
                element = GroupPair(GroupWord(el.get("left", "")), GroupWord(el.get("right", "")))
            else:
                if not isinstance(el, str):
                    raise MachineFormatError(f"transitions[{idx}]: F2 elements are strings")
                element = GroupWord(el)
            transitions.append(EfaTransition(td["from"], td.get("symbol"), td["to"], element))
        e = EfaMachine(
            name=doc["name"],
            group=group,
            alphabet=tuple(doc["alphabet"]),
            states=tuple(doc["states"]),
            start=doc["start"],
            accept=frozenset(doc["accept"]),
            transitions=tuple(transitions),
        )
    except KeyError as exc:
        raise MachineFormatError(f"missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MachineFormatError):
            raise
        raise MachineFormatError(str(exc)) from None
    states = set(e.states)
    if e.start not in states or not e.accept <= states:
        raise MachineFormatError("start/accept states must be declared")
    for t in e.transitions:
        if t.source not in states or t.target not in states:
            raise MachineFormatError(f"transition {t.source}->{t.target} uses an undeclared state")
        if t.symbol is not None and t.symbol not in e.alphabet:
            raise MachineFormatError(f"transition symbol {t.symbol!r} not in alphabet")
    return e


def parse_efa(document: str) -> EfaMachine:
    return efa_from_dict(load_json(document))
