"""Command line entry point: ``concrete-ait <subcommand> ...``.

Exit codes: 0 halted, 10 underflow, 11 overflow, 12 syntax error,
13 step limit, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import ait
from .eliminator import BEM_NAMES, as_bem, eliminate, run_bem
from .languages import CHAITIN_NAMES, LANGUAGES, get_language, start_configuration
from .pipe import ENDMARKER, Pipe, clean_bits
from .reduction import trace
from .runtime import EXIT_HALT, EXIT_USAGE, Diverged, Halted, Reason, exit_code, outcome_from
from .terms import CurriedSyntaxError, parse_curried, print_canonical, to_combinators
from .trees import ProgramSyntaxError

__all__ = ["main", "main_exit", "build_parser"]


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concrete-ait",
        description="Run tiny prefix-free universal machines and measure them.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def source_args(p, what="bits"):
        p.add_argument("input", nargs="?", help=f"{what} (default: read --file or standard input)")
        p.add_argument("--file", help=f"read {what} from this file")

    def steps_arg(p):
        p.add_argument("--steps", type=_positive, default=100_000,
                       help="reduction step limit (default 100000)")

    p = sub.add_parser("run", help="run a program")
    p.add_argument("--lang", required=True, choices=sorted(LANGUAGES))
    source_args(p)
    steps_arg(p)
    p.add_argument("--mode", choices=("term", "bits", "trace"), default="term")

    p = sub.add_parser("parse", help="show the term a program denotes, or normalise curried source")
    p.add_argument("--lang", choices=sorted(LANGUAGES),
                   help="bit language; without it the input is backtick source")
    source_args(p, "bits or source")

    p = sub.add_parser("abstract", help="bracket-abstract curried source into S, K and I")
    source_args(p, "source")

    p = sub.add_parser("eliminate", help="run the endmarker-free machine built from a BEM")
    p.add_argument("--lang", required=True, choices=sorted(BEM_NAMES))
    p.add_argument("positional_input", nargs="?", metavar="input")
    p.add_argument("--input", dest="input", help="bits, without endmarker")
    p.add_argument("--file")
    steps_arg(p)
    p.add_argument("--round-budget", type=_positive, default=10_000,
                   help="steps per speculation round (default 10000)")
    p.add_argument("--mode", choices=("term", "bits"), default="term")
    p.add_argument("--stats", action="store_true", help="print speculation statistics to stderr")

    for name, helptext in (("omega", "lower bound on the halting probability"),
                           ("complexity", "upper bound on program-size complexity")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--lang", required=True, choices=CHAITIN_NAMES)
        p.add_argument("--max-len", type=_natural, required=True)
        steps_arg(p)
        p.add_argument("--workers", type=_positive, default=1)
        p.add_argument("--resume", metavar="RECORD_FILE",
                       help="record file to append to; finished work in it is skipped")
        if name == "complexity":
            p.add_argument("--target", required=True,
                           help="output bits, or the source text of an output term")
        else:
            p.add_argument("--records", action="store_true", help="also list the halting codewords")

    p = sub.add_parser("count-trees", help="count tree traversals of each length")
    p.add_argument("length", nargs="?", type=_natural)
    p.add_argument("--max-len", type=_natural)
    return parser


def _read_source(args) -> str:
    if args.input is not None:
        return args.input
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _bits_with_endmarker(text: str) -> tuple[str, bool]:
    """Clean bits; a ``.`` marks the endmarker position.  Returns (symbols, explicit)."""
    if "." not in text:
        return clean_bits(text), False
    head, _, tail = text.partition(".")
    return clean_bits(head) + ENDMARKER + clean_bits(tail), True


def _emit(outcome, mode: str, out) -> int:
    if isinstance(outcome, Halted):
        print(outcome.bits if mode == "bits" else outcome.text, file=out)
    else:
        print(f"diverged: {outcome.reason.value} after {outcome.steps} steps", file=sys.stderr)
    return exit_code(outcome)


def _cmd_run(args, out) -> int:
    lang = get_language(args.lang)
    symbols, explicit = _bits_with_endmarker(_read_source(args))
    if explicit and not lang.bem:
        raise UsageError(f"'.' marks an endmarker, but {lang.name} has none")
    if args.mode == "trace":
        if explicit:
            raise UsageError("trace mode takes the bits without an endmarker")
        return _trace(lang.name, symbols, args.steps, out)
    if explicit:
        outcome = run_bem(as_bem(lang.name), symbols, args.steps)
    else:
        outcome = lang.run(symbols, args.steps)
    return _emit(outcome, args.mode, out)


def _trace(name: str, bits: str, steps: int, out) -> int:
    try:
        term, rest, finish = start_configuration(name, bits)
    except ProgramSyntaxError:
        return _emit(Diverged(Reason.SYNTAX_ERROR), "term", out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    pipe = Pipe(rest)
    gen = trace(term, steps, pipe)
    n = 0
    while True:
        try:
            t = next(gen)
        except StopIteration as stop:
            result = stop.value
            break
        print(f"{n}\t{print_canonical(t)}", file=out)
        n += 1
    outcome = outcome_from(result, pipe)
    if isinstance(outcome, Halted) and finish is not None:
        outcome = Halted(finish(outcome.term), outcome.steps)
        print(f"=\t{outcome.text}", file=out)
    if not outcome.halted:
        print(f"diverged: {outcome.reason.value} after {outcome.steps} steps", file=sys.stderr)
    return exit_code(outcome)


def _cmd_parse(args, out) -> int:
    text = _read_source(args)
    if args.lang is None:
        print(print_canonical(parse_curried(text)), file=out)
        return EXIT_HALT
    try:
        term, rest, _ = start_configuration(args.lang, clean_bits(text))
    except ProgramSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return exit_code(Diverged(Reason.SYNTAX_ERROR))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(print_canonical(term), file=out)
    if rest:
        print(f"input: {rest}", file=out)
    return EXIT_HALT


def _cmd_abstract(args, out) -> int:
    print(print_canonical(to_combinators(parse_curried(_read_source(args)))), file=out)
    return EXIT_HALT


def _cmd_eliminate(args, out) -> int:
    if args.input is None and args.positional_input is not None:
        args.input = args.positional_input
    bits = clean_bits(_read_source(args))
    machine = eliminate(as_bem(args.lang), args.round_budget)
    outcome = machine.run(bits, args.steps)
    if args.stats:
        st = machine.last_stats
        print(f"reads={st.reads} rounds={st.rounds} silent_halts={st.silent_halts} "
              f"max_branches={st.max_branches} steps={st.steps}", file=sys.stderr)
    return _emit(outcome, args.mode, out)


def _cmd_omega(args, out) -> int:
    bound = ait.omega_lower_bound(args.lang, args.max_len, args.steps,
                                  record_file=args.resume, resume=args.resume is not None,
                                  workers=args.workers)
    print(bound.report(), file=out)
    print(f"halting codewords: {len(bound.records)}; step-limited strings: {bound.step_limited}",
          file=out)
    if args.records:
        for r in bound.records:
            print(r.to_line(), file=out)
    return EXIT_HALT


def _cmd_complexity(args, out) -> int:
    records = ait.enumerate_halting(args.lang, args.max_len, args.steps,
                                    record_file=args.resume, resume=args.resume is not None,
                                    workers=args.workers)
    found = ait.complexity_upper_bound(args.lang, args.target, args.max_len, args.steps,
                                       records=records)
    print("none" if found is None else found, file=out)
    return EXIT_HALT


def _cmd_count_trees(args, out) -> int:
    if args.length is not None:
        lengths = [args.length]
    elif args.max_len is not None:
        lengths = range(1, args.max_len + 1, 2)
    else:
        raise UsageError("give a length or --max-len")
    for n in lengths:
        print(f"{n}\t{ait.count_trees(n)}", file=out)
    return EXIT_HALT


_COMMANDS = {
    "run": _cmd_run,
    "parse": _cmd_parse,
    "abstract": _cmd_abstract,
    "eliminate": _cmd_eliminate,
    "omega": _cmd_omega,
    "complexity": _cmd_complexity,
    "count-trees": _cmd_count_trees,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_HALT
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, CurriedSyntaxError, ait.RecordFileError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # malformed bit strings and similar input problems
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
