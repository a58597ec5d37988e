"""The Fibonacci reconstruction machine.

One pass maps generation ``g_n`` of the Fib grammar (``0 -> 1``, ``1 -> 01``)
on tape 1 to ``g_{n-1}`` on tape 2 by grouping ``[01]`` back into ``1`` and a
standalone ``1`` back into ``0``. Repeating passes until only the axiom ``0``
remains decides membership.

State meanings:

``q_start``
    nothing read yet.
``q_pending``
    a ``0`` was read and a tentative ``0`` sits under head 2, waiting for the
    ``1`` that closes the ``[01]`` constituent.
``q_one`` / ``q_two``
    one / two consecutive ``1`` symbols read; a third has no rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .automaton import (
    AcceptedAtEnd,
    MachineState,
    Move,
    NonAcceptingAtEnd,
    RunResult,
    TapeCell,
    TransitionRule,
    TransitionTable,
    UndefinedTransition,
    max_head_gap,
    pass_end_gap,
    run,
)
from .grammar import FIB, as_word, fibonacci_index_of_length, generations

__all__ = [
    "Q_START",
    "Q_PENDING",
    "Q_ONE",
    "Q_TWO",
    "FibMachine",
    "build_fib_machine",
    "ForbiddenNgram",
    "TrailingZero",
    "Empty",
    "Reconstructed",
    "Rejected",
    "MembershipReport",
    "reverse_pass",
    "decide_membership",
    "generation_index",
    "AuditRow",
    "synchronization_audit",
]

Q_START = MachineState("q_start")
Q_PENDING = MachineState("q_pending")
Q_ONE = MachineState("q_one", accepting=True)
Q_TWO = MachineState("q_two", accepting=True)

Z, O, B = TapeCell.ZERO, TapeCell.ONE, TapeCell.BLANK
R, S = Move.R, Move.S


@dataclass(frozen=True)
class FibMachine:
    table: TransitionTable
    start: MachineState
    states: frozenset
    accepting: frozenset

    def run(self, word) -> RunResult:
        return run(self.table, self.start, self.accepting.__contains__, word)


@lru_cache(maxsize=None)
def build_fib_machine() -> FibMachine:
    rules = [
        TransitionRule(Q_START, Z, B, Q_PENDING, Z, Z, R, S, 1),
        TransitionRule(Q_ONE, Z, B, Q_PENDING, Z, Z, R, S, 1),
        TransitionRule(Q_TWO, Z, B, Q_PENDING, Z, Z, R, S, 1),
        TransitionRule(Q_PENDING, O, Z, Q_ONE, O, O, R, R, 2),
        TransitionRule(Q_START, O, B, Q_ONE, O, Z, R, R, 3),
        TransitionRule(Q_ONE, O, B, Q_TWO, O, Z, R, R, 3),
    ]
    return FibMachine(
        table=TransitionTable(rules),
        start=Q_START,
        states=frozenset({Q_START, Q_PENDING, Q_ONE, Q_TWO}),
        accepting=frozenset({Q_ONE, Q_TWO}),
    )


@dataclass(frozen=True)
class ForbiddenNgram:
    position: int  # index into the input of the symbol that could not be read
    ngram: str

    @property
    def start(self) -> int:
        return self.position - len(self.ngram) + 1

    def __str__(self) -> str:
        return f"forbidden n-gram {self.ngram} at {self.start}"


@dataclass(frozen=True)
class TrailingZero:
    def __str__(self) -> str:
        return "trailing zero"


@dataclass(frozen=True)
class Empty:
    def __str__(self) -> str:
        return "empty input"


Reason = Union[ForbiddenNgram, TrailingZero, Empty]


@dataclass(frozen=True)
class Reconstructed:
    output: str
    run: Optional[RunResult] = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class Rejected:
    reason: Reason
    run: Optional[RunResult] = field(default=None, repr=False, compare=False)


PassOutcome = Union[Reconstructed, Rejected]


def reverse_pass(s) -> PassOutcome:
    """Run the machine once over ``s`` and read the previous generation off tape 2."""
    result = build_fib_machine().run(s)
    v = result.verdict
    if isinstance(v, AcceptedAtEnd):
        cells = result.final.tape2.contents
        out = "".join(cells).rstrip(B.value)
        if B.value in out:
            raise AssertionError(f"tape 2 output is not contiguous: {out!r}")
        return Reconstructed(out, result)
    if isinstance(v, UndefinedTransition):
        # Q_PENDING faults on a second 0, Q_TWO on a third 1
        gram = "00" if v.state == Q_PENDING else "111"
        return Rejected(ForbiddenNgram(v.position - 1, gram), result)
    assert isinstance(v, NonAcceptingAtEnd)
    if v.state == Q_PENDING:
        return Rejected(TrailingZero(), result)
    return Rejected(Empty(), result)


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    generation_index: Optional[int]
    passes: tuple
    length_is_fibonacci: bool

    @property
    def rejection(self) -> Optional[Rejected]:
        if self.passes and isinstance(self.passes[-1], Rejected):
            return self.passes[-1]
        return None


def decide_membership(s) -> MembershipReport:
    """Reverse repeatedly until the axiom appears or a pass rejects."""
    s = as_word(s)
    fib_len = fibonacci_index_of_length(len(s)) is not None
    if s == FIB.axiom:
        return MembershipReport(True, 0, (), fib_len)
    passes = []
    cur = s
    # each pass shortens any word holding a 0; all-1 words longer than 2 fault
    for _ in range(len(s) + 2):
        outcome = reverse_pass(cur)
        passes.append(outcome)
        if isinstance(outcome, Rejected):
            return MembershipReport(False, None, tuple(passes), fib_len)
        cur = outcome.output
        if cur == FIB.axiom:
            return MembershipReport(True, len(passes), tuple(passes), fib_len)
    raise RuntimeError(f"membership loop exceeded {len(s) + 2} passes")


def generation_index(s) -> Optional[int]:
    return decide_membership(s).generation_index


@dataclass(frozen=True)
class AuditRow:
    n: int
    length: int
    output_length: int
    max_gap: int
    end_gap: int
    sweep_steps: int

    @property
    def within_2(self) -> bool:
        return self.max_gap <= 2


def synchronization_audit(max_n: int, min_n: int = 1) -> list[AuditRow]:
    """Measured head separation of one pass over each generation ``min_n..max_n``.

    The gap grows by one with every ``0`` read (head 2 stays on the
    tentative write), so it ends the pass at ``|g_n| - |g_{n-1}|``.
    """
    rows = []
    for n, g in enumerate(generations(FIB, max_n)):
        if n < min_n:
            continue
        out = reverse_pass(g)
        trace = out.run.trace
        sweep = sum(1 for st in trace if st.is_sweep)
        rows.append(
            AuditRow(
                n=n,
                length=len(g),
                output_length=len(out.output) if isinstance(out, Reconstructed) else 0,
                max_gap=max_head_gap(trace),
                end_gap=pass_end_gap(trace),
                sweep_steps=sweep,
            )
        )
    return rows
