"""Command-line front end.

Exit status: 0 on success / member / accepted, 1 on an expected negative
outcome (rejection, non-member, no preimage), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .automaton import max_head_gap, render_trace
from .grammar import BIF, FIB, InvalidSymbolError, Symbol, as_word, first_symbol_ambiguity, generate
from .oracle import enumerate_preimages
from .reverser import Reconstructed, build_fib_machine, decide_membership, reverse_pass

GRAMMARS = {"fib": FIB, "bif": BIF}


def _word(text: str) -> str:
    try:
        return as_word(text)
    except InvalidSymbolError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"generation index must be non-negative, got {n}")
    return n


def cmd_generate(args, out) -> int:
    s = generate(GRAMMARS[args.grammar], args.n)
    print(f"{s} ({len(s)} symbols)", file=out)
    return 0


def cmd_reverse(args, out) -> int:
    outcome = reverse_pass(args.word)
    if isinstance(outcome, Reconstructed):
        print(outcome.output, file=out)
        return 0
    print(f"rejected: {outcome.reason}", file=out)
    return 1


def cmd_member(args, out) -> int:
    report = decide_membership(args.word)
    if args.show_passes:
        for i, p in enumerate(report.passes, 1):
            text = p.output if isinstance(p, Reconstructed) else f"rejected: {p.reason}"
            print(f"pass {i}: {text}", file=out)
    if report.member:
        print(f"member: generation {report.generation_index}", file=out)
    else:
        print(f"non-member: {report.rejection.reason} (pass {len(report.passes)})", file=out)
    print(f"fibonacci length: {'yes' if report.length_is_fibonacci else 'no'}", file=out)
    return 0 if report.member else 1


def cmd_trace(args, out) -> int:
    result = build_fib_machine().run(args.word)
    text = render_trace(result)
    if text:
        print(text, file=out)
        print(file=out)
    outcome = reverse_pass(args.word)
    if isinstance(outcome, Reconstructed):
        print(f"verdict: accepted, tape 2 holds {outcome.output}", file=out)
    else:
        print(f"verdict: rejected: {outcome.reason}", file=out)
    print(f"max head gap: {max_head_gap(result.trace)}", file=out)
    return 0 if result.accepted else 1


def cmd_ambiguity(args, out) -> int:
    for name, ls in GRAMMARS.items():
        amb = first_symbol_ambiguity(ls)
        rules = ", ".join(f"{s.value}->{ls.rules[s]}" for s in Symbol)
        if amb:
            syms = ",".join(sorted(s.value for s in amb))
            print(f"{name}: ambiguous at {syms} ({rules}; a lone image also opens a longer one)", file=out)
        else:
            print(f"{name}: unambiguous ({rules}; no lone image opens a longer one)", file=out)
    return 0


def cmd_preimages(args, out) -> int:
    pre = enumerate_preimages(GRAMMARS[args.grammar], args.word)
    if not pre:
        print("no preimages", file=out)
        return 1
    for t in pre:
        print(t, file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibtape",
        description="Generate, check and reconstruct Fibonacci-grammar words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print generation N")
    p.add_argument("n", type=_nonneg)
    p.add_argument("--grammar", choices=sorted(GRAMMARS), default="fib")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reverse", help="reconstruct the previous generation")
    p.add_argument("word", type=_word)
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("member", help="decide Fib-grammar membership")
    p.add_argument("word", type=_word)
    p.add_argument("--show-passes", action="store_true")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("trace", help="print the step-by-step two-tape trace")
    p.add_argument("word", type=_word)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("ambiguity", help="compare first-symbol ambiguity of fib and bif")
    p.set_defaults(func=cmd_ambiguity)

    p = sub.add_parser("preimages", help="list every one-step preimage")
    p.add_argument("word", type=_word)
    p.add_argument("--grammar", choices=sorted(GRAMMARS), default="fib")
    p.set_defaults(func=cmd_preimages)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
