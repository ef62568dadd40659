"""Command-line driver: ``trio3pc run | attack | bench | gen-circuit``.

Exit codes: 0 when every honest party accepts, 2 when any honest party
aborts, 1 for usage, parse and input errors.  ``TRIO_TRACE=1`` prints the
transport trace (one line per delivered message) to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .adversary import CATALOG, estimate, make_strategy
from .bits import BitString
from .circuit import CircuitError, format_circuit, named_circuit, parse_circuit
from .malicious import run_malicious
from .rand import derive_seed
from .semihonest import run_semi_honest
from .transport import PARTIES

EXIT_OK, EXIT_USAGE, EXIT_ABORT = 0, 1, 2

SAMPLES = ["and", "majority", "xor-chain:4", "and-chain:1", "and-chain:5", "and-chain:10", "random:6:40:1"]


class UsageError(Exception):
    pass


def load_circuit(source: str):
    """A circuit file, or failing that one of the built-in names (``and``, ``and-chain:5`` ...)."""
    path = Path(source)
    if path.is_file():
        try:
            return parse_circuit(path.read_text())
        except CircuitError as exc:
            raise UsageError(f"{source}: {exc}") from None
    try:
        return named_circuit(source)
    except ValueError:
        raise UsageError(f"{source}: no such circuit file") from None


def parse_inputs(text: str, circuit) -> list[BitString]:
    """``p1:<bits>,p2:<bits>,p3:<bits>``; a party without inputs may be left out."""
    found = {}
    for part in filter(None, text.split(",")):
        name, sep, bits = part.partition(":")
        if not sep or name not in ("p1", "p2", "p3"):
            raise UsageError(f"bad input item {part!r}; expected p<i>:<bits>")
        if name in found:
            raise UsageError(f"input for {name} given twice")
        try:
            found[name] = BitString.from_str(bits)
        except ValueError as exc:
            raise UsageError(f"{name}: {exc}") from None
    xs = []
    for i in PARTIES:
        x = found.get(f"p{i}", BitString())
        if len(x) != circuit.input_length(i):
            raise UsageError(f"p{i} has {len(x)} input bits, circuit expects {circuit.input_length(i)}")
        xs.append(x)
    return xs


def tracing() -> bool:
    return os.environ.get("TRIO_TRACE") == "1"


def cmd_run(args) -> int:
    circuit = load_circuit(args.circuit)
    xs = parse_inputs(args.inputs, circuit)
    adv = None
    if args.adversary:
        if args.mode != "malicious":
            raise UsageError("--adversary needs --mode malicious")
        adv = strategy_for(args.adversary, args.corrupted, derive_seed(args.seed, "cli", "strategy"))
    if args.mode == "semi-honest":
        result = run_semi_honest(circuit, xs, seed=args.seed, trace=tracing())
        print(f"mode semi-honest seed={args.seed}")
    else:
        check_s(args.s)
        result = run_malicious(circuit, xs, args.s, seed=args.seed, strategy=adv, trace=tracing())
        who = f" adversary={args.adversary} corrupted=P{args.corrupted}" if adv else ""
        print(f"mode malicious s={args.s} seed={args.seed}{who}")
    if result.trace is not None:
        for line in result.trace:
            print(line, file=sys.stderr)
    honest = [i for i in PARTIES if adv is None or i != adv.corrupted]
    for i in PARTIES:
        tag = "" if i in honest else " (corrupted)"
        print(f"P{i}{tag}: {result.outcomes[i].describe()}")
    m = result.metrics
    print(f"rounds {m.rounds}")
    for (a, b), n in sorted(m.bytes_per_channel.items()):
        print(f"bytes P{a}->P{b} {n}")
    print(f"bytes total {m.total_bytes}")
    outs = [result.outcomes[i] for i in honest]
    if all(o.ok for o in outs) and len({str(o.value) for o in outs}) == 1:
        print(f"output {outs[0].value}")
        return EXIT_OK
    first = next(o for o in outs if not o.ok)
    print(f"abort {first.code}" + (f" run {first.run}" if first.run is not None else ""))
    return EXIT_ABORT


def strategy_for(name: str, corrupted: int, seed: int):
    if name not in CATALOG:
        raise UsageError(f"unknown strategy {name!r}; choose from {', '.join(CATALOG)}")
    return make_strategy(name, corrupted, seed)


def check_s(s: int) -> None:
    if s < 1:
        raise UsageError("--s must be at least 1")


def cmd_attack(args) -> int:
    name = args.strategy or args.adversary
    if not name:
        raise UsageError("attack needs a strategy name")
    if name not in CATALOG:
        raise UsageError(f"unknown strategy {name!r}; choose from {', '.join(CATALOG)}")
    check_s(args.s)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    circuit = load_circuit(args.circuit)
    report = estimate(name, circuit, args.s, args.trials, seed=args.seed, corrupted=args.corrupted)
    print(report.format_line())
    print(f"win-rate {report.win_rate:.6f}")
    print(f"reference 2^-{args.s} = {2.0 ** -args.s:.6f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    sources = args.circuit or ["xor-chain:4"] + [f"and-chain:{d}" for d in range(1, 11)]
    check_s(args.s)
    if args.s < 2:
        raise UsageError("bench needs --s >= 2 so that both verification and output runs occur")
    # run 1 is a verification run, the rest are output runs
    indicator = 1 << (args.s - 1)
    print(f"{'circuit':<16} {'mode':<12} {'gates':>6} {'and_depth':>9} {'rounds':>6} {'rounds-depth':>12} {'bytes':>9}")
    offsets: dict[str, set[int]] = {"semi-honest": set(), "malicious": set()}
    for source in sources:
        circuit = load_circuit(source)
        xs = [BitString.zeros(circuit.input_length(i)) for i in PARTIES]
        depth = circuit.and_depth()
        for mode in offsets:
            if mode == "semi-honest":
                r = run_semi_honest(circuit, xs, seed=args.seed)
            else:
                r = run_malicious(circuit, xs, args.s, seed=args.seed, indicator=indicator)
            if not all(o.ok for o in r.outcomes.values()):
                print(f"{source}: {mode} run aborted", file=sys.stderr)
                return EXIT_ABORT
            rounds = r.metrics.rounds
            offsets[mode].add(rounds - depth)
            print(f"{source:<16} {mode:<12} {circuit.q:>6} {depth:>9} {rounds:>6} {rounds - depth:>12} {r.metrics.total_bytes:>9}")
    ok = True
    for mode, seen in offsets.items():
        verdict = "constant" if len(seen) == 1 else "NOT constant"
        ok &= len(seen) == 1
        print(f"{mode}: rounds - and_depth = {', '.join(map(str, sorted(seen)))} ({verdict})")
    if ok:
        print(f"malicious overhead over semi-honest: {min(offsets['malicious']) - min(offsets['semi-honest'])} rounds")
    return EXIT_OK if ok else EXIT_ABORT


def cmd_gen_circuit(args) -> int:
    if args.all:
        out = Path(args.all)
        out.mkdir(parents=True, exist_ok=True)
        for name in SAMPLES:
            path = out / (name.replace(":", "-") + ".circ")
            path.write_text(format_circuit(named_circuit(name)))
            print(path)
        return EXIT_OK
    if not args.name:
        raise UsageError("gen-circuit needs a circuit name or --all DIR")
    try:
        text = format_circuit(named_circuit(args.name))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trio3pc", description="Three-party computation over XOR shares.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--s", type=int, default=8, help="number of cut-and-choose runs (default 8)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--corrupted", type=int, choices=PARTIES, default=1, help="party the adversary controls")

    p = sub.add_parser("run", help="evaluate a circuit on the given inputs")
    p.add_argument("--circuit", required=True, help="circuit file or built-in name")
    p.add_argument("--inputs", default="", help="p1:<bits>,p2:<bits>,p3:<bits>")
    p.add_argument("--mode", choices=("semi-honest", "malicious"), default="malicious")
    p.add_argument("--adversary", help="strategy for the corrupted party")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("attack", help="estimate a strategy's success rate")
    p.add_argument("strategy", nargs="?", help=", ".join(CATALOG))
    p.add_argument("--adversary", help="same as the positional strategy")
    p.add_argument("--circuit", default="majority")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--mode", choices=("malicious",), default="malicious")
    common(p)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("bench", help="rounds and bytes against AND depth")
    p.add_argument("--circuit", action="append", help="circuit file or name; repeatable")
    common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-circuit", help="print a built-in circuit")
    p.add_argument("name", nargs="?", help="and, majority, and-chain:D, xor-chain:N, random:N:Q:SEED")
    p.add_argument("-o", "--output")
    p.add_argument("--all", metavar="DIR", help="write the sample circuits into DIR")
    p.set_defaults(func=cmd_gen_circuit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
