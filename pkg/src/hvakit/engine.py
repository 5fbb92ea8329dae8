"""Running homing vector automata.

Deterministic and real-time machines have a finite configuration tree, so a
run always ends in accept or reject. Machines with empty moves are searched
breadth-first under a budget of expanded configurations and may come back
inconclusive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Iterable, Iterator, NamedTuple, Optional, Sequence

from .machine import Guard, HvaMachine, Transition
from .numerics import DimensionError, QVector, vec_mul_mat

DEFAULT_BUDGET = 1_000_000


class Outcome(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    INCONCLUSIVE = "inconclusive"


class InputSymbolError(ValueError):
    """The input contains a character outside the machine's alphabet."""


class Configuration(NamedTuple):
    state: str
    pos: int
    vector: QVector


@dataclass
class Stats:
    configurations_expanded: int = 0
    max_frontier: int = 0


@dataclass(frozen=True)
class RunOptions:
    budget: int = DEFAULT_BUDGET
    want_trace: bool = False
    dedup: bool = True

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    # accepting runs always carry their path: (transition taken, configuration reached)
    trace: Optional[tuple] = None
    stats: Stats = field(default_factory=Stats)
    budget: Optional[int] = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPT


def check_input(alphabet: Iterable[str], word: str) -> None:
    allowed = set(alphabet)
    for i, ch in enumerate(word):
        if ch not in allowed:
            raise InputSymbolError(f"symbol {ch!r} at position {i} is not in the alphabet")


def search(
    start: Hashable,
    successors: Callable[[Hashable], Iterable[tuple]],
    is_accepting: Callable[[Hashable], bool],
    budget: int,
    dedup: bool = True,
    bounded: bool = False,
) -> tuple[Outcome, Optional[tuple], Stats]:
    """Breadth-first search over a configuration graph.

    ``successors(c)`` yields ``(label, c')`` pairs in priority order. The
    first accepting configuration dequeued is reached by the
    lexicographically least shortest path. When ``bounded`` the graph is
    known to be finite and acyclic, and the budget is not enforced.
    """
    stats = Stats()
    # nodes are (configuration, parent node, label) so paths are rebuilt lazily
    queue: deque = deque([(start, None, None)])
    seen = {start} if dedup else None
    stats.max_frontier = 1
    while queue:
        node = queue.popleft()
        conf = node[0]
        if is_accepting(conf):
            path = []
            while node[1] is not None:
                path.append((node[2], node[0]))
                node = node[1]
            path.reverse()
            return Outcome.ACCEPT, tuple(path), stats
        if not bounded and stats.configurations_expanded >= budget:
            return Outcome.INCONCLUSIVE, None, stats
        stats.configurations_expanded += 1
        for label, nxt in successors(conf):
            if seen is not None:
                if nxt in seen:
                    continue
                seen.add(nxt)
            queue.append((nxt, node, label))
        if len(queue) > stats.max_frontier:
            stats.max_frontier = len(queue)
    return Outcome.REJECT, None, stats


def omega(v: QVector, v0: QVector) -> Guard:
    """``eq`` iff the current vector equals the initial vector."""
    if len(v) != len(v0):
        raise DimensionError(f"cannot compare vectors of dimension {len(v)} and {len(v0)}")
    return Guard.EQ if v == v0 else Guard.NEQ


def successors(m: HvaMachine, c: Configuration, word: str) -> list[tuple[Transition, Configuration]]:
    out = []
    ts = m.outgoing.get(c.state, ())
    if not ts:
        return out
    sym = word[c.pos] if c.pos < len(word) else None
    w = None if m.mode.blind else omega(c.vector, m.initial_vector)
    for t in ts:
        if t.symbol is None:
            pos = c.pos
        elif t.symbol == sym:
            pos = c.pos + 1
        else:
            continue
        if w is not None and not t.guard.admits(w):
            continue
        out.append((t, Configuration(t.target, pos, vec_mul_mat(c.vector, t.matrix))))
    return out


def step(m: HvaMachine, c: Configuration, word: str) -> set[Configuration]:
    return {conf for _, conf in successors(m, c, word)}


def is_accepting(m: HvaMachine, c: Configuration, word: str) -> bool:
    return c.pos == len(word) and c.state in m.accept and c.vector == m.initial_vector


def run(m: HvaMachine, word: str, opts: RunOptions = RunOptions()) -> Verdict:
    check_input(m.alphabet, word)
    start = Configuration(m.start, 0, m.initial_vector)
    n = len(word)
    v0 = m.initial_vector
    accept = m.accept

    def accepting(c):
        return c.pos == n and c.state in accept and c.vector == v0

    outcome, path, stats = search(
        start,
        lambda c: successors(m, c, word),
        accepting,
        opts.budget,
        dedup=opts.dedup,
        bounded=not m.has_epsilon,
    )
    return Verdict(outcome, path, stats, budget=opts.budget)


def accepts(m: HvaMachine, word: str, opts: RunOptions = RunOptions()) -> bool:
    v = run(m, word, opts)
    if v.outcome is Outcome.INCONCLUSIVE:
        raise RuntimeError(f"run of {m.name!r} on {word!r} was inconclusive")
    return v.accepted


def replay(m: HvaMachine, word: str, trace: Sequence[tuple[Transition, Configuration]]) -> Configuration:
    """Re-execute a trace step by step, checking every move is legal.

    Returns the final configuration; raises ``ValueError`` on any inconsistency.
    """
    state, pos, vec = m.start, 0, m.initial_vector
    v0 = m.initial_vector
    blind = m.mode.blind
    n = len(word)
    for i, (t, reached) in enumerate(trace):
        if t.source != state or not m.owns(t):
            raise ValueError(f"step {i}: transition does not leave state {state!r}")
        if t.symbol is not None:
            if pos >= n or word[pos] != t.symbol:
                raise ValueError(f"step {i}: symbol {t.symbol!r} does not match the input")
            pos += 1
        if not blind and not t.guard.admits(Guard.EQ if vec == v0 else Guard.NEQ):
            raise ValueError(f"step {i}: guard {t.guard.value} does not hold")
        state, vec = t.target, vec_mul_mat(vec, t.matrix)
        if reached != (state, pos, vec):
            raise ValueError(f"step {i}: recorded configuration differs from recomputed one")
    return Configuration(state, pos, vec)


def trace_to_json(trace: Sequence[tuple[Transition, Configuration]]) -> list[dict]:
    return [
        {
            "step": i + 1,
            "symbol": t.symbol,
            "from": t.source,
            "to": t.target,
            "guard": t.guard.value,
            "vector_after": c.vector.to_strings(),
        }
        for i, (t, c) in enumerate(trace)
    ]


# Real-time fast path: configuration sets keyed by (state, vector), position
# implicit. Each key maps to a back-link (transition, previous key, previous
# link) so an accepting path can be rebuilt without a second search.

def advance(m: HvaMachine, configs: dict, symbol: str) -> dict:
    """All (state, vector) pairs reachable by reading ``symbol`` from ``configs``.

    Only meaningful for machines without empty moves. The first path to
    reach a configuration is the one kept.
    """
    out: dict = {}
    v0 = m.initial_vector
    blind = m.mode.blind
    table = m.reading
    for key, link in configs.items():
        state, vec = key
        ts = table.get((state, symbol))
        if not ts:
            continue
        w = None if blind else (Guard.EQ if vec == v0 else Guard.NEQ)
        for t in ts:
            if w is not None and not t.guard.admits(w):
                continue
            nxt = (t.target, vec_mul_mat(vec, t.matrix))
            if nxt not in out:
                out[nxt] = (t, key, link)
    return out


def initial_layer(m: HvaMachine) -> dict:
    return {(m.start, m.initial_vector): None}


def layers(m: HvaMachine, word: str) -> Iterator[dict]:
    """Yield the reachable (state, vector) set before each symbol and after the last."""
    if m.has_epsilon:
        raise ValueError("layers() requires a machine without empty moves")
    check_input(m.alphabet, word)
    current = initial_layer(m)
    yield current
    for ch in word:
        current = advance(m, current, ch)
        yield current


def accepting_key(m: HvaMachine, configs: dict):
    v0 = m.initial_vector
    for key in configs:
        if key[0] in m.accept and key[1] == v0:
            return key
    return None


def layer_accepts(m: HvaMachine, configs: dict) -> bool:
    return accepting_key(m, configs) is not None


def layer_trace(configs: dict, key) -> tuple:
    """Rebuild the path to ``key`` as ``(transition, configuration)`` pairs."""
    path = []
    link = configs[key]
    while link is not None:
        t, prev, prev_link = link
        path.append((t, key))
        key, link = prev, prev_link
    path.reverse()
    return tuple((t, Configuration(k[0], i + 1, k[1])) for i, (t, k) in enumerate(path))


# Entry growth. With initial vector and matrix entries in {-m..m} and
# dimension k, no entry can exceed m^(n+1) k^n in absolute value after n steps.

def entry_scale(m: HvaMachine) -> int:
    """Largest absolute entry over the initial vector and all matrices (at least 1)."""
    values = list(m.initial_vector)
    for t in m.transitions:
        for row in t.matrix.rows:
            values.extend(row)
    if any(type(x) is not int for x in values):
        raise ValueError(f"{m.name!r} has non-integer entries")
    return max([1] + [abs(x) for x in values])


def growth_bound(scale: int, k: int, n: int) -> int:
    return scale ** (n + 1) * k ** n


def majorant(m: HvaMachine, steps: int) -> list[tuple[int, ...]]:
    """Entrywise upper bounds on |vector| after 0..steps moves along any path.

    Uses the entrywise maximum of |M| over all transition matrices, so the
    bound covers every input and every nondeterministic choice at once.
    """
    k = m.dimension
    top = [[0] * k for _ in range(k)]
    for t in m.transitions:
        for i, row in enumerate(t.matrix.rows):
            for j, x in enumerate(row):
                top[i][j] = max(top[i][j], abs(x))
    u = tuple(abs(x) for x in m.initial_vector)
    out = [u]
    for _ in range(steps):
        u = tuple(sum(u[i] * top[i][j] for i in range(k)) for j in range(k))
        out.append(u)
    return out


def reachable_layers(m: HvaMachine, steps: int, cap: int = 50_000) -> Iterator[set]:
    """(state, vector) pairs reachable in exactly n moves over any input, n = 0, 1, ...

    Stops early once a layer would exceed ``cap`` pairs. Empty moves count as moves.
    """
    layer = {(m.start, m.initial_vector)}
    yield layer
    v0 = m.initial_vector
    for _ in range(steps):
        nxt = set()
        for state, vec in layer:
            w = None if m.mode.blind else omega(vec, v0)
            for t in m.outgoing.get(state, ()):
                if w is None or t.guard.admits(w):
                    nxt.add((t.target, vec_mul_mat(vec, t.matrix)))
        if not nxt or len(nxt) > cap:
            return
        layer = nxt
        yield layer
