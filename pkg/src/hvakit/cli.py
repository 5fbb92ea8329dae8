"""Command-line entry point.

Exit codes: 0 accept / success, 1 reject / mismatches found / invalid
encoding, 2 inconclusive, 3 usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import constructions, engine, freegroup, sternbrocot, zoo
from .constructions import CounterMachine
from .engine import Outcome, RunOptions
from .machine import HvaMachine, MachineFormatError, check_valid, load_json, machine_from_dict, serialize_machine

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3

COMPOSE_OPS = ("intersect-regular", "intersect-blind", "union", "concat", "star")


class UsageError(Exception):
    """Anything that should end the invocation with exit status 3."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_any(path: str):
    """Load a vector automaton, group automaton or counter machine file."""
    doc = load_json(_read(path))
    if not isinstance(doc, dict):
        raise MachineFormatError("top-level JSON value must be an object")
    if "group" in doc:
        return freegroup.efa_from_dict(doc)
    if "counters" in doc:
        return constructions.counter_from_dict(doc)
    return check_valid(machine_from_dict(doc))


def load_hva(path: str) -> HvaMachine:
    m = load_any(path)
    if not isinstance(m, HvaMachine):
        raise UsageError(f"{path} is not a homing vector automaton")
    return m


def as_hva(machine) -> HvaMachine:
    """The vector automaton standing for a catalog machine of any kind."""
    if isinstance(machine, HvaMachine):
        return machine
    if isinstance(machine, freegroup.EfaMachine):
        return freegroup.translate_efa(machine)
    if machine.blind:
        return constructions.simulate_blind_counters(machine)
    return constructions.simulate_counter_nonblind(machine)


def _report_verdict(v, show_trace: bool) -> int:
    if v.outcome is Outcome.INCONCLUSIVE:
        print(f"inconclusive: budget of {v.budget} expansions exhausted")
    else:
        print(v.outcome.value)
    print(f"expanded {v.stats.configurations_expanded} configurations, "
          f"max frontier {v.stats.max_frontier}", file=sys.stderr)
    if show_trace and v.accepted:
        print(json.dumps(engine.trace_to_json(v.trace), indent=2))
    return {Outcome.ACCEPT: EXIT_ACCEPT, Outcome.REJECT: EXIT_REJECT}.get(v.outcome, EXIT_INCONCLUSIVE)


def cmd_run(args) -> int:
    m = load_hva(args.machine)
    v = engine.run(m, args.input, RunOptions(budget=args.budget, want_trace=args.trace))
    return _report_verdict(v, args.trace)


def cmd_encode(args) -> int:
    symbols = args.alphabet or sternbrocot.default_symbols(args.k)
    if len(symbols) != args.k or len(set(symbols)) != args.k:
        raise UsageError(f"--alphabet must list {args.k} distinct symbols")
    try:
        word = sternbrocot.word_to_indices(args.word, symbols)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(sternbrocot.format_vector_text(sternbrocot.encode(args.k, word)))
    return 0


def cmd_decode(args) -> int:
    try:
        v = sternbrocot.parse_vector_text(args.vector)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    k = len(v)
    if k < 2:
        raise UsageError("vectors need at least 2 entries")
    symbols = args.alphabet or sternbrocot.default_symbols(k)
    if len(symbols) != k:
        raise UsageError(f"--alphabet must list {k} symbols")
    try:
        word = sternbrocot.decode(v)
    except sternbrocot.InvalidEncodingError:
        print("invalid")
        return 1
    print(sternbrocot.indices_to_word(word, symbols))
    return 0


def _zoo_params(args) -> dict:
    return {} if args.l is None else {"l": args.l}


def cmd_zoo(args) -> int:
    if args.action == "list":
        for name in zoo.names():
            spec = zoo.CATALOG[name]
            params = f" [--{' --'.join(spec.params)}]" if spec.params else ""
            print(f"{name}{params}\t{spec.notes}")
        for name, (_, notes) in zoo.ORACLE_ONLY.items():
            print(f"{name}\t(oracle only) {notes}")
        return 0
    if not args.name:
        raise UsageError("zoo export needs a catalog name")
    try:
        entry = zoo.build(args.name, **_zoo_params(args))
    except (KeyError, TypeError) as exc:
        raise UsageError(str(exc.args[0]) if exc.args else str(exc)) from None
    m = entry.machine
    if args.native and isinstance(m, freegroup.EfaMachine):
        print(freegroup.serialize_efa(m))
    elif args.native and isinstance(m, CounterMachine):
        print(constructions.serialize_counter(m))
    else:
        print(serialize_machine(as_hva(m)))
    return 0


def cmd_compose(args) -> int:
    need = 1 if args.op == "star" else 2
    if len(args.operands) != need:
        raise UsageError(f"--op {args.op} takes {need} operand file(s)")
    if args.op == "intersect-regular":
        v = load_hva(args.operands[0])
        d = constructions.parse_dfa(_read(args.operands[1]))
        out = constructions.intersect_regular(v, d)
    else:
        ms = [load_hva(p) for p in args.operands]
        build = {
            "intersect-blind": constructions.intersect_blind,
            "union": constructions.union_nondet,
            "concat": constructions.concat_nondet,
            "star": constructions.star_nondet,
        }[args.op]
        out = build(*ms)
    print(serialize_machine(check_valid(out)))
    return 0


def cmd_check(args) -> int:
    machine = load_any(args.machine)
    try:
        oracle = zoo.oracle(args.oracle)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    spec = zoo.CATALOG.get(args.oracle)
    certificate = spec.no_member_extends if spec else None
    inputs = None
    if args.inputs:
        inputs = [line.rstrip("\n") for line in _read(args.inputs).splitlines()]
    report = zoo.check(
        machine, oracle, args.max_len, RunOptions(budget=args.budget),
        inputs=inputs, no_member_extends=certificate,
    )
    print(report.summary())
    return 0 if report.ok else 1


def cmd_efa(args) -> int:
    e = load_any(args.machine)
    if not isinstance(e, freegroup.EfaMachine):
        raise UsageError(f"{args.machine} is not a group automaton")
    if args.action == "translate":
        if args.input is not None:
            raise UsageError("efa translate takes no input word")
        print(serialize_machine(freegroup.translate_efa(e, args.n)))
        return 0
    if args.input is None:
        raise UsageError("efa run needs an input word")
    return _report_verdict(freegroup.run_efa(e, args.input, RunOptions(budget=args.budget)), False)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hvakit", description="Homing vector automata toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run a machine on an input word")
    r.add_argument("machine", help="machine file (JSON), or - for stdin")
    r.add_argument("input", help="input word (use '' for the empty word)")
    r.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET,
                   help="configuration expansions allowed for machines with empty moves")
    r.add_argument("--trace", action="store_true", help="print the accepting path as JSON")
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("encode", help="Stern-Brocot encode a word")
    e.add_argument("word")
    e.add_argument("--k", type=int, default=2, help="alphabet size (default 2)")
    e.add_argument("--alphabet", help="symbols for letters 1..k (default: digits, '1','0' for k=2)")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="decode a vector such as [2,3]")
    d.add_argument("vector")
    d.add_argument("--alphabet", help="symbols for letters 1..k")
    d.set_defaults(func=cmd_decode)

    z = sub.add_parser("zoo", help="list or export catalog machines")
    z.add_argument("action", choices=["list", "export"])
    z.add_argument("name", nargs="?")
    z.add_argument("--l", type=int, help="alphabet size for mpal_l")
    z.add_argument("--native", action="store_true",
                   help="export group and counter machines in their own formats")
    z.set_defaults(func=cmd_zoo)

    c = sub.add_parser("compose", help="combine machines with a closure construction")
    c.add_argument("--op", required=True, choices=COMPOSE_OPS)
    c.add_argument("operands", nargs="+", help="machine files (and a DFA file for intersect-regular)")
    c.set_defaults(func=cmd_compose)

    k = sub.add_parser("check", help="compare a machine with a catalog oracle")
    k.add_argument("machine")
    k.add_argument("--oracle", required=True)
    k.add_argument("--max-len", type=int, default=8)
    k.add_argument("--inputs", help="file with one input word per line instead of all strings")
    k.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    k.set_defaults(func=cmd_check)

    f = sub.add_parser("efa", help="run or translate a group automaton")
    f.add_argument("action", choices=["run", "translate"])
    f.add_argument("machine")
    f.add_argument("input", nargs="?")
    f.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    f.add_argument("--n", type=int, default=2, help="K_n parameter of the embedding")
    f.set_defaults(func=cmd_efa)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        # format, validation, construction and input-symbol errors are all ValueErrors
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
