"""Catalog of concrete machines with brute-force membership oracles, and the
exhaustive machine-versus-oracle checking harness.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from . import engine
from .constructions import CounterMachine, run_counter, simulate_blind_counters, ZERO, NONZERO
from .engine import Outcome, RunOptions, advance
from .freegroup import F2, F2XF2, EfaMachine, EfaTransition, GroupPair, GroupWord, reduce, run_efa
from .machine import RTD, RTDB, RTNB, HvaMachine, check_valid, make_machine
from .numerics import QMatrix
from .sternbrocot import alphabet_matrix, default_symbols, inverse_alphabet_matrix

Oracle = Callable[[str], bool]
AnyMachine = Union[HvaMachine, EfaMachine, CounterMachine]

I2 = [[1, 0], [0, 1]]
I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

M_PLUS = [[1, 0], [1, 1]]
M_MINUS = [[1, 0], [-1, 1]]

U1 = [[1, 1, 0], [1, 1, 0], [0, 0, 1]]
U2 = [[1, 0, 0], [0, 0, 0], [-1, 1, 1]]

M_T0 = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]]
M_T1 = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 0, 1, 1, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]]
M_HASH = [[1, 0, 0, 0, 0], [-1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 1, 1, 1]]
M_A0 = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]]
M_A1 = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 1, 1, 1, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]]

POW_RESET = [[1, 0, 0], [0, 0, 0], [0, 1, 1]]
POW_DECREMENT = [[1, 0, 0], [0, 1, 0], [-1, 0, 1]]

POWR_A = [[1, 0], [1, 1]]
POWR_B = [["1/2", 0], [0, 1]]


@dataclass(frozen=True)
class ZooEntry:
    name: str
    machine: AnyMachine
    oracle: Oracle
    notes: str
    # True only for prefixes that no member of the language extends
    no_member_extends: Optional[Callable[[str], bool]] = None


# ------------------------------------------------------------------ oracles

_ABA = re.compile(r"^(a*)(b*)(a*)$")
_AB = re.compile(r"^(a*)(b*)$")
_ABC = re.compile(r"^(a*)(b*)(c*)$")


def in_thm51(s: str) -> bool:
    """a^n b^x a^y with n = x or n = x + y, n the length of the leading a-block."""
    m = _ABA.match(s)
    if not m:
        return False
    n, x, y = (len(g) for g in m.groups())
    return n == x or n == x + y


def in_upow(s: str) -> bool:
    if set(s) - {"a"}:
        return False
    n = 1
    while n + 2 ** n <= len(s):
        if n + 2 ** n == len(s):
            return True
        n += 1
    return False


_INSTANCE = re.compile(r"(?:[01]+#){2,}")


def subsetsum_instance(s: str) -> Optional[tuple[int, list[int]]]:
    """Parse ``t#a1#...#an#`` with each number in reversed binary; None if ill-formed."""
    if _INSTANCE.fullmatch(s) is None:
        return None
    nums = [int(f[::-1], 2) for f in s[:-1].split("#")]
    return nums[0], nums[1:]


def in_subsetsum_r(s: str) -> bool:
    inst = subsetsum_instance(s)
    if inst is None:
        return False
    t, nums = inst
    for r in range(len(nums) + 1):
        for chosen in itertools.combinations(nums, r):
            if sum(chosen) == t:
                return True
    return False


def mpal_oracle(l: int) -> Oracle:
    symbols = set(default_symbols(l))

    def in_mpal(s: str) -> bool:
        if s.count("#") != 1:
            return False
        w, u = s.split("#")
        return not (set(w) - symbols) and u == w[::-1]

    return in_mpal


def in_pow(s: str) -> bool:
    m = _AB.match(s)
    return bool(m) and len(m.group(2)) == 2 ** len(m.group(1))


def in_pow_r(s: str) -> bool:
    m = _AB.match(s)
    return bool(m) and len(m.group(1)) == 2 ** len(m.group(2))


def outside_ab_prefixes(p: str) -> bool:
    """No word of a*b* starts with ``p`` once ``p`` contains ``ba``."""
    return "ba" in p


def outside_pow_r_prefixes(p: str) -> bool:
    """Members of a^(2^n) b^n lie in a*b* and start with at least one a."""
    return outside_ab_prefixes(p) or p.startswith("b")


def in_anbn(s: str) -> bool:
    m = _AB.match(s)
    return bool(m) and len(m.group(1)) == len(m.group(2))


def in_anb2n(s: str) -> bool:
    m = _AB.match(s)
    return bool(m) and 2 * len(m.group(1)) == len(m.group(2))


def in_abc(s: str) -> bool:
    m = _ABC.match(s)
    return bool(m) and len(m.group(1)) == len(m.group(2)) == len(m.group(3))


def in_union(s: str) -> bool:
    return in_anbn(s) or in_anb2n(s)


def in_l_bab(s: str) -> bool:
    """b^n (a^n b^n)^k with n, k >= 1."""
    for n in range(1, len(s) + 1):
        rest = len(s) - n
        if rest <= 0 or rest % (2 * n):
            continue
        if s == "b" * n + ("a" * n + "b" * n) * (rest // (2 * n)):
            return True
    return False


def in_ijk(s: str) -> bool:
    m = _ABC.match(s)
    if not m:
        return False
    i, j, k = (len(g) for g in m.groups())
    return i != j or j > k


def in_union_c(s: str) -> bool:
    if s.endswith("c"):
        return in_anb2n(s[:-1])
    return in_anbn(s)


def in_wp_f2(s: str) -> bool:
    return reduce(s).is_identity()


def in_wp_f2xf2(s: str) -> bool:
    left = "".join(ch for ch in s if ch in "aA")
    right = "".join(ch for ch in s if ch in "bB")
    return reduce(left).is_identity() and reduce(right).is_identity()


# ----------------------------------------------------------------- machines

def thm51_machine(scalar: bool = False) -> HvaMachine:
    """Counter in the first entry; a zero test right after the b-block picks the branch."""
    if scalar:
        plus, minus, eye, v0 = [[2]], [["1/2"]], [[1]], [1]
    else:
        plus, minus, eye, v0 = M_PLUS, M_MINUS, I2, [1, 1]
    ts = []
    for g in ("eq", "neq"):
        ts += [
            ("lead", "a", g, "lead", plus),
            ("lead", "b", g, "bs", minus),
            ("bs", "b", g, "bs", minus),
            ("tail", "a", g, "tail", minus),
            ("matched", "a", g, "matched", eye),
        ]
    ts += [
        ("bs", "a", "eq", "matched", eye),
        ("bs", "a", "neq", "tail", minus),
    ]
    return check_valid(make_machine(
        "thm51_scalar" if scalar else "thm51", RTD, v0, "ab",
        ["lead", "bs", "tail", "matched"], "lead",
        ["lead", "bs", "tail", "matched"], ts,
    ))


def upow_machine() -> HvaMachine:
    # the first a is read with the identity so that the vector homes on a^(n + 2^n)
    ts = [
        ("s0", "a", "any", "s1", I3),
        ("s1", "a", "any", "dbl", U1),
        ("dbl", "a", "any", "dbl", U1),
        ("dbl", "a", "any", "dec", U2),
        ("dec", "a", "any", "dec", U2),
    ]
    return check_valid(make_machine(
        "upow", RTNB, [1, 1, 1], "a", ["s0", "s1", "dbl", "dec"], "s0", ["dec"], ts,
    ))


def subsetsum_machine() -> HvaMachine:
    ts = [
        ("t0", "0", "any", "t", M_T0),
        ("t0", "1", "any", "t", M_T1),
        ("t", "0", "any", "t", M_T0),
        ("t", "1", "any", "t", M_T1),
        ("t", "#", "any", "gap0", M_HASH),
    ]
    for gap in ("gap0", "gap"):
        ts += [
            (gap, "0", "any", "take", M_A0),
            (gap, "1", "any", "take", M_A1),
            (gap, "0", "any", "skip", M_A0),
            (gap, "1", "any", "skip", M_A0),
        ]
    ts += [
        ("take", "0", "any", "take", M_A0),
        ("take", "1", "any", "take", M_A1),
        ("take", "#", "any", "gap", M_HASH),
        ("skip", "0", "any", "skip", M_A0),
        ("skip", "1", "any", "skip", M_A0),
        ("skip", "#", "any", "gap", M_HASH),
    ]
    return check_valid(make_machine(
        "subsetsum_r", RTNB, [0, 0, 1, 1, 1], "01#",
        ["t0", "t", "gap0", "take", "skip", "gap"], "t0", ["gap"], ts,
    ))


def mpal_machine(l: int = 2) -> HvaMachine:
    symbols = default_symbols(l)
    ts = [("w", "#", "any", "wr", QMatrix.identity(l))]
    for j, s in enumerate(symbols, start=1):
        ts.append(("w", s, "any", "w", alphabet_matrix(l, j)))
        ts.append(("wr", s, "any", "wr", inverse_alphabet_matrix(l, j)))
    return check_valid(make_machine(
        f"mpal_{l}", RTDB, [1] * l, symbols + "#", ["w", "wr"], "w", ["wr"], ts,
    ))


def pow_machine() -> HvaMachine:
    ts = [
        ("as", "a", "any", "as", U1),
        ("as", "b", "any", "bs", POW_RESET),
        ("bs", "b", "any", "bs", POW_DECREMENT),
    ]
    return check_valid(make_machine("pow", RTDB, [1, 1, 1], "ab", ["as", "bs"], "as", ["bs"], ts))


def pow_r_machine() -> HvaMachine:
    ts = [
        ("s", "a", "any", "as", I2),
        ("as", "a", "any", "as", POWR_A),
        ("as", "b", "any", "bs", POWR_B),
        ("bs", "b", "any", "bs", POWR_B),
    ]
    return check_valid(make_machine("pow_r", RTDB, [1, 1], "ab", ["s", "as", "bs"], "s", ["as", "bs"], ts))


def anbn_counter() -> CounterMachine:
    return CounterMachine(
        "anbn", 1, True, "ab", ("A", "B"), "A", {"A", "B"},
        {("A", "a", None): ("A", (1,)), ("A", "b", None): ("B", (-1,)),
         ("B", "b", None): ("B", (-1,))},
    )


def anb2n_counter() -> CounterMachine:
    # every second b decrements
    return CounterMachine(
        "anb2n", 1, True, "ab", ("A", "Bodd", "Beven"), "A", {"A", "Beven"},
        {("A", "a", None): ("A", (1,)), ("A", "b", None): ("Bodd", (-1,)),
         ("Bodd", "b", None): ("Beven", (0,)), ("Beven", "b", None): ("Bodd", (-1,))},
    )


def abc_counters() -> CounterMachine:
    return CounterMachine(
        "abc_counters", 2, True, "abc", ("A", "B", "C"), "A", {"A", "B", "C"},
        {("A", "a", None): ("A", (1, 0)), ("A", "b", None): ("B", (-1, 1)),
         ("B", "b", None): ("B", (-1, 1)), ("A", "c", None): ("C", (0, -1)),
         ("B", "c", None): ("C", (0, -1)), ("C", "c", None): ("C", (0, -1))},
    )


def anbn_one_counter() -> CounterMachine:
    """Non-blind one-counter machine for a^n b^n that relies on its zero test."""
    t = {}
    for p in (ZERO, NONZERO):
        t[("A", "a", p)] = ("A", (1,))
    t[("A", "b", NONZERO)] = ("B", (-1,))
    t[("B", "b", NONZERO)] = ("B", (-1,))
    return CounterMachine("anbn_1ca", 1, False, "ab", ("A", "B"), "A", {"A", "B"}, t,
                          accept_empty=True)


def wp_f2() -> EfaMachine:
    return EfaMachine(
        "wp_f2", F2, tuple(LETTERS_F2), ("q",), "q", {"q"},
        tuple(EfaTransition("q", ch, "q", GroupWord(ch)) for ch in LETTERS_F2),
    )


def wp_f2xf2() -> EfaMachine:
    def element(ch):
        return GroupPair(GroupWord(ch), GroupWord()) if ch in "aA" else GroupPair(GroupWord(), GroupWord(ch))

    return EfaMachine(
        "wp_f2xf2", F2XF2, tuple(LETTERS_F2), ("q",), "q", {"q"},
        tuple(EfaTransition("q", ch, "q", element(ch)) for ch in LETTERS_F2),
    )


LETTERS_F2 = "aAbB"


# ------------------------------------------------------------------ catalog

@dataclass(frozen=True)
class _Spec:
    builder: Callable[..., AnyMachine]
    oracle: Callable[..., Oracle]
    notes: str
    params: tuple[str, ...] = ()
    no_member_extends: Optional[Callable[[str], bool]] = None


def _const(pred: Oracle) -> Callable[..., Oracle]:
    return lambda **_: pred


CATALOG: dict[str, _Spec] = {
    "thm51": _Spec(lambda: thm51_machine(False), _const(in_thm51),
                   "rtDHVA(2) for a^n b^x a^y with n=x or n=x+y; counter simulated by M+/M-"),
    "thm51_scalar": _Spec(lambda: thm51_machine(True), _const(in_thm51),
                          "rtDHVA(1) for the same language with scalars 2 and 1/2"),
    "upow": _Spec(upow_machine, _const(in_upow),
                  "rtNBHVA(3) for a^(n+2^n), n>=1; doubling with U1, guessed switch to U2"),
    "subsetsum_r": _Spec(subsetsum_machine, _const(in_subsetsum_r),
                         "rtNBHVA(5) for SUBSETSUM with reversed binary numbers"),
    "mpal_l": _Spec(lambda l=2: mpal_machine(l), lambda l=2: mpal_oracle(l),
                    "rtDBHVA(l) for w#w^r via the generalized Stern-Brocot encoding", ("l",)),
    "pow": _Spec(pow_machine, _const(in_pow),
                 "rtDBHVA(3) for a^n b^(2^n): doubling, reset, then decrement",
                 no_member_extends=outside_ab_prefixes),
    "pow_r": _Spec(pow_r_machine, _const(in_pow_r),
                   "rtDBHVA(2) for a^(2^n) b^n with halving matrix",
                   no_member_extends=outside_pow_r_prefixes),
    "anbn": _Spec(lambda: simulate_blind_counters(anbn_counter()).with_name("anbn"), _const(in_anbn),
                  "rtDBHVA(2) simulating a blind one-counter machine for a^n b^n",
                  no_member_extends=outside_ab_prefixes),
    "anb2n": _Spec(lambda: simulate_blind_counters(anb2n_counter()).with_name("anb2n"), _const(in_anb2n),
                   "rtDBHVA(2) simulating a blind one-counter machine for a^n b^2n",
                   no_member_extends=outside_ab_prefixes),
    "abc_counters": _Spec(abc_counters, _const(in_abc),
                          "blind 2-counter machine for a^n b^n c^n"),
    "anbn_1ca": _Spec(anbn_one_counter, _const(in_anbn),
                      "non-blind one-counter machine for a^n b^n, accepting on empty counter"),
    "wp_f2": _Spec(wp_f2, _const(in_wp_f2), "group automaton over F2: the word problem"),
    "wp_f2xf2": _Spec(wp_f2xf2, _const(in_wp_f2xf2),
                      "group automaton over F2xF2: word problems of the {a,A} and {b,B} projections"),
}

# languages with an oracle but no machine; no deterministic machine exists for these
ORACLE_ONLY: dict[str, tuple[Oracle, str]] = {
    "union": (in_union, "a^n b^n or a^n b^2n"),
    "l_bab": (in_l_bab, "b^n (a^n b^n)^k, n,k>=1"),
    "ijk": (in_ijk, "a^i b^j c^k with i!=j or j>k"),
    "union_c": (in_union_c, "a^n b^n or a^n b^2n c"),
    "abc": (in_abc, "a^n b^n c^n"),
}


def names() -> list[str]:
    return list(CATALOG)


def build(name: str, **params) -> ZooEntry:
    spec = CATALOG.get(name)
    if spec is None:
        raise KeyError(f"unknown zoo entry {name!r}")
    unknown = set(params) - set(spec.params)
    if unknown:
        raise TypeError(f"{name} takes no parameter(s) {sorted(unknown)}")
    return ZooEntry(name, spec.builder(**params), spec.oracle(**params), spec.notes,
                    spec.no_member_extends)


def oracle(name: str, **params) -> Oracle:
    if name in CATALOG:
        return CATALOG[name].oracle(**params)
    if name in ORACLE_ONLY:
        return ORACLE_ONLY[name][0]
    raise KeyError(f"unknown oracle {name!r}")


# ------------------------------------------------------------- input suites

def all_strings(alphabet: Iterable[str], max_len: int) -> Iterable[str]:
    alphabet = list(alphabet)
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def block_strings(max_len: int, blocks: str = "ab") -> list[str]:
    """Words ``x^i y^j`` plus one trailing ``x`` (the shapes that stay alive)."""
    x, y = blocks
    out = []
    for i in range(max_len + 1):
        for j in range(max_len + 1 - i):
            out.append(x * i + y * j)
            if j and i + j < max_len:
                out.append(x * i + y * j + x)
    return out


def subsetsum_instances(max_numbers: int = 3, max_bits: int = 4) -> list[str]:
    """Every ``t#a1#...#an#`` with at most ``max_numbers`` numbers in all (the
    target counts) and each number 1..max_bits bits long."""
    if max_numbers < 2:
        raise ValueError("an instance needs a target and at least one summand")
    bitstrings = ["".join(p) for b in range(1, max_bits + 1) for p in itertools.product("01", repeat=b)]
    out = []
    for n in range(1, max_numbers):
        for fields in itertools.product(bitstrings, repeat=n + 1):
            out.append("#".join(fields) + "#")
    return out


def subsetsum_ill_formed(count: int = 1000, max_len: int = 14, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    out: list[str] = []
    seen = set()
    while len(out) < count:
        s = "".join(rng.choice("01#") for _ in range(rng.randint(1, max_len)))
        if s not in seen and subsetsum_instance(s) is None:
            seen.add(s)
            out.append(s)
    return out


# ------------------------------------------------------------------ harness

@dataclass(frozen=True)
class Mismatch:
    word: str
    machine: bool
    oracle: bool


@dataclass
class CheckReport:
    checked: int = 0
    # strings skipped because both machine and language reject every one of them
    certified: int = 0
    accepted: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    audit_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.inconclusive or self.audit_failures)

    def summary(self) -> str:
        covered = f" (+{self.certified} certified)" if self.certified else ""
        lines = [f"checked {self.checked} inputs{covered}, {self.accepted} accepted, "
                 f"{len(self.mismatches)} mismatches, {len(self.inconclusive)} inconclusive"]
        for m in self.mismatches[:20]:
            lines.append(f"  mismatch {m.word!r}: machine={'accept' if m.machine else 'reject'} "
                         f"oracle={'member' if m.oracle else 'non-member'}")
        for w in self.inconclusive[:20]:
            lines.append(f"  inconclusive {w!r}")
        for a in self.audit_failures[:20]:
            lines.append(f"  trace audit failed: {a}")
        return "\n".join(lines)


def audit_accept(m: HvaMachine, word: str, trace) -> Optional[str]:
    """Replay an accepting trace; returns a description of any problem."""
    try:
        final = engine.replay(m, word, trace)
    except ValueError as exc:
        return f"{word!r}: {exc}"
    if not engine.is_accepting(m, final, word):
        return f"{word!r}: trace does not end in an accepting configuration"
    return None


def _decide(machine: AnyMachine, word: str, opts: RunOptions) -> Optional[bool]:
    if isinstance(machine, CounterMachine):
        return run_counter(machine, word)
    if isinstance(machine, EfaMachine):
        v = run_efa(machine, word, opts)
    else:
        v = engine.run(machine, word, opts)
    if v.outcome is Outcome.INCONCLUSIVE:
        return None
    return v.accepted


def check(
    machine: AnyMachine,
    oracle: Oracle,
    max_len: int = 8,
    opts: RunOptions = RunOptions(),
    inputs: Optional[Iterable[str]] = None,
    alphabet: Optional[Iterable[str]] = None,
    audit: bool = True,
    no_member_extends: Optional[Callable[[str], bool]] = None,
) -> CheckReport:
    """Compare ``machine`` with ``oracle`` on every string up to ``max_len``
    (or on ``inputs``), collecting disagreements and inconclusive runs.

    Real-time vector automata are run by propagating configuration sets
    along shared prefixes. With ``audit`` every accepting path is rebuilt
    and replayed, and a sample of words is re-run through :func:`engine.run`.

    Once a prefix leaves the machine with no live configuration, every
    extension is rejected. If ``no_member_extends(prefix)`` also holds, the
    oracle rejects them too and the subtree is counted as certified instead
    of enumerated.
    """
    report = CheckReport()
    realtime = isinstance(machine, HvaMachine) and not machine.has_epsilon
    if inputs is None:
        alphabet = list(machine.alphabet if alphabet is None else alphabet)
        if realtime:
            _check_tree(machine, oracle, alphabet, max_len, opts, report, audit, no_member_extends)
            return report
        inputs = all_strings(alphabet, max_len)
    if realtime:
        _check_list(machine, oracle, inputs, opts, report, audit)
        return report
    for word in inputs:
        report.checked += 1
        got = _decide(machine, word, opts)
        if got is None:
            report.inconclusive.append(word)
            continue
        if got:
            report.accepted += 1
            if audit and isinstance(machine, HvaMachine):
                problem = audit_accept(machine, word, engine.run(machine, word, opts).trace)
                if problem:
                    report.audit_failures.append(problem)
        expected = oracle(word)
        if got != expected:
            report.mismatches.append(Mismatch(word, got, expected))
    return report


# accepted and rejected words per check that are also re-run through engine.run
ENGINE_SAMPLE = 32


def _record(m, oracle, word, configs, opts, report, audit, sampled):
    report.checked += 1
    key = engine.accepting_key(m, configs)
    got = key is not None
    if got:
        report.accepted += 1
        if audit:
            problem = audit_accept(m, word, engine.layer_trace(configs, key))
            if problem:
                report.audit_failures.append(problem)
    if audit and sampled[got] < ENGINE_SAMPLE:
        sampled[got] += 1
        v = engine.run(m, word, opts)
        if v.accepted != got:
            report.audit_failures.append(f"{word!r}: engine.run says {v.outcome.value}")
        elif got and audit_accept(m, word, v.trace):
            report.audit_failures.append(f"{word!r}: engine trace fails replay")
    expected = oracle(word)
    if got != expected:
        report.mismatches.append(Mismatch(word, got, expected))


def _check_tree(m, oracle, alphabet, max_len, opts, report, audit, no_member_extends=None):
    sampled = [0, 0]
    stack = [("", engine.initial_layer(m))]
    while stack:
        word, configs = stack.pop()
        if not configs:
            # dead prefix: the machine rejects every extension
            if no_member_extends is not None and no_member_extends(word):
                report.certified += sum(len(alphabet) ** n for n in range(max_len - len(word) + 1))
                continue
            for n in range(max_len - len(word) + 1):
                for tail in itertools.product(alphabet, repeat=n):
                    w = word + "".join(tail)
                    report.checked += 1
                    if oracle(w):
                        report.mismatches.append(Mismatch(w, False, True))
            continue
        _record(m, oracle, word, configs, opts, report, audit, sampled)
        if len(word) < max_len:
            for ch in reversed(alphabet):
                stack.append((word + ch, advance(m, configs, ch)))


def _check_list(m, oracle, inputs, opts, report, audit):
    inputs = set(inputs)
    engine.check_input(m.alphabet, "".join({ch for w in inputs for ch in w}))
    sampled = [0, 0]
    prev = ""
    chain = [engine.initial_layer(m)]  # chain[i]: configurations after prev[:i]
    for word in sorted(inputs):
        common = 0
        limit = min(len(prev), len(word))
        while common < limit and prev[common] == word[common]:
            common += 1
        del chain[common + 1:]
        for ch in word[common:]:
            chain.append(advance(m, chain[-1], ch))
        prev = word
        _record(m, oracle, word, chain[-1], opts, report, audit, sampled)
