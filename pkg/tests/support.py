"""Small machines and oracle combinators shared by the test modules."""

from functools import lru_cache

from hvakit import zoo
from hvakit.constructions import Dfa
from hvakit.machine import RTD, RTDB, make_machine


def word_machine(word: str, alphabet: str, blind: bool):
    """Accepts exactly ``word`` using 1x1 identity matrices."""
    states = [f"s{i}" for i in range(len(word) + 1)]
    ts = [(states[i], ch, "any", states[i + 1], [[1]]) for i, ch in enumerate(word)]
    if blind:
        return make_machine(f"just_{word}", RTDB, [1], alphabet, states, states[0], [states[-1]], ts)
    # deterministic non-blind machines spell out both guards
    ts = [(p, ch, g, q, mat) for p, ch, _, q, mat in ts for g in ("eq", "neq")]
    return make_machine(f"just_{word}", RTD, [1], alphabet, states, states[0], [states[-1]], ts)


def anbn_nonblind():
    return zoo.build("anbn_1ca").machine


def sigma_star_dfa(alphabet: str) -> Dfa:
    return Dfa(("q",), tuple(alphabet), "q", {"q"}, {("q", s): "q" for s in alphabet})


def a_star_b_star_dfa() -> Dfa:
    delta = {("A", "a"): "A", ("A", "b"): "B", ("B", "a"): "X", ("B", "b"): "B",
             ("X", "a"): "X", ("X", "b"): "X"}
    return Dfa(("A", "B", "X"), ("a", "b"), "A", {"A", "B"}, delta)


def concat_oracle(f, g):
    return lambda s: any(f(s[:i]) and g(s[i:]) for i in range(len(s) + 1))


def star_oracle(f):
    def member(s):
        @lru_cache(maxsize=None)
        def from_(i):
            return i == len(s) or any(f(s[i:j]) and from_(j) for j in range(i + 1, len(s) + 1))
        return from_(0)
    return member
