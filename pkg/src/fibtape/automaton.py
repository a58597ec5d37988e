"""Deterministic one-way two-tape finite automata.

The engine works on partial transition tables: a missing entry is a
rejection, not a table error. Runs keep a full trace. Because both heads only
move right and writes happen under the heads, a configuration at any point of
a run is fully determined by the state, the two head positions, the cells
currently under the heads, and the initial/final tape contents. Traces store
just that, and build :class:`Configuration` objects on access, so a run over
``m`` symbols costs ``O(m)`` memory instead of ``O(m**2)``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Union

from .grammar import as_word

__all__ = [
    "TapeCell",
    "Move",
    "Tape",
    "MachineState",
    "TransitionRule",
    "TransitionTable",
    "Configuration",
    "TraceStep",
    "Trace",
    "AcceptedAtEnd",
    "UndefinedTransition",
    "NonAcceptingAtEnd",
    "RunResult",
    "EngineFault",
    "initial_configuration",
    "step",
    "run",
    "head_gaps",
    "max_head_gap",
    "pass_end_gap",
    "render_trace",
]


class TapeCell(str, Enum):
    ZERO = "0"
    ONE = "1"
    BLANK = "ε"
    LEFT = "▷"
    RIGHT = "◁"

    def __str__(self) -> str:
        return self.value

    @property
    def is_marker(self) -> bool:
        return self in (TapeCell.LEFT, TapeCell.RIGHT)


_CELL = {c.value: c for c in TapeCell}


class Move(Enum):
    R = 1
    S = 0


class EngineFault(RuntimeError):
    """A malformed table tried to overwrite a marker or run off a tape."""


@dataclass(frozen=True)
class Tape:
    cells: tuple[TapeCell, ...]
    head: int = 1

    def __post_init__(self):
        cells = self.cells
        if len(cells) < 2 or cells[0] is not TapeCell.LEFT or cells[-1] is not TapeCell.RIGHT:
            raise ValueError("tape must be delimited by ▷ and ◁")
        inner = cells[1:-1]
        if TapeCell.LEFT in inner or TapeCell.RIGHT in inner:
            raise ValueError("end markers may only appear at the tape ends")
        if not 0 <= self.head < len(cells):
            raise ValueError(f"head {self.head} outside tape of {len(cells)} cells")

    @classmethod
    def of(cls, contents: Iterable[Union[TapeCell, str]], head: int = 1) -> "Tape":
        inner = tuple(_CELL[str(c)] for c in contents)
        return cls((TapeCell.LEFT, *inner, TapeCell.RIGHT), head)

    @property
    def read(self) -> TapeCell:
        return self.cells[self.head]

    @property
    def last(self) -> int:
        return len(self.cells) - 1

    @property
    def contents(self) -> tuple[TapeCell, ...]:
        return self.cells[1:-1]

    def write(self, cell: TapeCell) -> "Tape":
        cur = self.read
        if cell is cur:
            return self
        if cur.is_marker or cell.is_marker:
            raise EngineFault(f"write of {cell.value} over {cur.value} at cell {self.head}")
        cells = self.cells[: self.head] + (cell,) + self.cells[self.head + 1 :]
        return Tape(cells, self.head)

    def move(self, m: Move) -> "Tape":
        if m is Move.S:
            return self
        if self.head >= self.last:
            raise EngineFault("head moved past ◁")
        return Tape(self.cells, self.head + 1)

    def __str__(self) -> str:
        return "".join(c.value for c in self.cells)


@dataclass(frozen=True)
class MachineState:
    name: str
    accepting: bool = False

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TransitionRule:
    from_state: MachineState
    read1: TapeCell
    read2: TapeCell
    to_state: MachineState
    write1: TapeCell
    write2: TapeCell
    move1: Move
    move2: Move
    label: Optional[int] = None

    @property
    def key(self) -> tuple[str, TapeCell, TapeCell]:
        return (self.from_state.name, self.read1, self.read2)

    def __str__(self) -> str:
        return (
            f"δ({self.from_state}, {self.read1}, {self.read2}) = "
            f"({self.to_state}, {self.write1}, {self.write2}, {self.move1.name}, {self.move2.name})"
        )


class TransitionTable:
    """Partial deterministic map ``(state, read1, read2) -> rule``."""

    def __init__(self, rules: Iterable[TransitionRule]):
        self._rules: dict[tuple[str, TapeCell, TapeCell], TransitionRule] = {}
        self._compiled: dict[tuple[str, TapeCell, TapeCell], tuple] = {}
        self.states: dict[str, MachineState] = {}
        for rule in rules:
            for st in (rule.from_state, rule.to_state):
                known = self.states.setdefault(st.name, st)
                if known != st:
                    raise ValueError(f"two different states named {st.name!r}")
            if rule.key in self._rules:
                raise ValueError(f"nondeterministic table: duplicate key {rule.key}")
            self._rules[rule.key] = rule
        self._compiled = {key: _compile(rule) for key, rule in self._rules.items()}

    def lookup(self, state: MachineState, read1: TapeCell, read2: TapeCell) -> Optional[TransitionRule]:
        return self._rules.get((state.name, read1, read2))

    def __iter__(self):
        return iter(self._rules.values())

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, key) -> bool:
        state, r1, r2 = key
        return (getattr(state, "name", state), r1, r2) in self._rules


def _overwrites_marker(read: TapeCell, write: TapeCell) -> bool:
    return write is not read and (read.is_marker or write.is_marker)


def _compile(rule: TransitionRule) -> tuple:
    bad = _overwrites_marker(rule.read1, rule.write1) or _overwrites_marker(rule.read2, rule.write2)
    return (rule, rule.to_state, rule.write1, rule.write2, rule.move1 is Move.R, rule.move2 is Move.R, bad)


@dataclass(frozen=True)
class Configuration:
    state: MachineState
    tape1: Tape
    tape2: Tape

    @property
    def heads(self) -> tuple[int, int]:
        return self.tape1.head, self.tape2.head


@dataclass(frozen=True)
class AcceptedAtEnd:
    pass


@dataclass(frozen=True)
class UndefinedTransition:
    position: int  # tape-1 cell index, the left marker being cell 0
    state: MachineState
    read1: TapeCell
    read2: TapeCell


@dataclass(frozen=True)
class NonAcceptingAtEnd:
    state: MachineState


Verdict = Union[AcceptedAtEnd, UndefinedTransition, NonAcceptingAtEnd]


class TraceStep:
    """One transition of a run; ``rule`` is ``None`` for closing-sweep moves."""

    __slots__ = ("index", "rule", "_trace")

    def __init__(self, index: int, rule: Optional[TransitionRule], trace: "Trace"):
        self.index = index
        self.rule = rule
        self._trace = trace

    @property
    def rule_label(self) -> Optional[int]:
        return None if self.rule is None else self.rule.label

    @property
    def is_sweep(self) -> bool:
        return self.rule is None

    @property
    def before(self) -> Configuration:
        return self._trace.configuration(self.index - 1)

    @property
    def after(self) -> Configuration:
        return self._trace.configuration(self.index)

    @property
    def heads_before(self) -> tuple[int, int]:
        return self._trace.heads(self.index - 1)

    @property
    def heads_after(self) -> tuple[int, int]:
        return self._trace.heads(self.index)

    def __repr__(self) -> str:
        return f"TraceStep({self.index}, label={self.rule_label}, heads {self.heads_before}->{self.heads_after})"


class Trace(Sequence):
    """Sequence of :class:`TraceStep` over configurations ``0..len(self)``."""

    def __init__(self, log, rules, initial, final):
        # log[k] = (state, head1, head2, cell under head1, cell under head2)
        self._log = log
        self._rules = rules
        self._initial = initial
        self._final = final

    def __len__(self) -> int:
        return len(self._rules)

    def __repr__(self) -> str:
        return f"<Trace of {len(self)} steps>"

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        n = len(self._rules)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(i)
        return TraceStep(i + 1, self._rules[i], self)

    def heads(self, k: int) -> tuple[int, int]:
        _, h1, h2, _, _ = self._log[k]
        return h1, h2

    def configuration(self, k: int) -> Configuration:
        """Configuration after ``k`` steps (``0`` is the start)."""
        if not 0 <= k <= len(self._rules):
            raise IndexError(k)
        state, h1, h2, c1, c2 = self._log[k]
        (init1, init2), (fin1, fin2) = self._initial, self._final
        # one-way heads: cells left of a head are final, cells right of it untouched
        tape1 = Tape(fin1[:h1] + (c1,) + init1[h1 + 1 :], h1)
        tape2 = Tape(fin2[:h2] + (c2,) + init2[h2 + 1 :], h2)
        return Configuration(state, tape1, tape2)

    @property
    def gaps(self) -> list[int]:
        return [abs(h1 - h2) for _, h1, h2, _, _ in self._log]


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    trace: Trace
    final: Configuration

    @property
    def accepted(self) -> bool:
        return isinstance(self.verdict, AcceptedAtEnd)

    @property
    def rule_labels(self) -> list[Optional[int]]:
        return [s.rule_label for s in self.trace if s.rule is not None]


def initial_configuration(start: MachineState, word) -> Configuration:
    w = as_word(word)
    return Configuration(start, Tape.of(w), Tape.of(TapeCell.BLANK for _ in w))


def step(table: TransitionTable, c: Configuration) -> Union[Configuration, UndefinedTransition]:
    """Apply the unique matching rule to ``c``.

    Returns the successor configuration, or an :class:`UndefinedTransition`
    when the table has no entry. Raises :class:`EngineFault` if the rule
    would overwrite a marker or push a head past ``◁``.
    """
    r1, r2 = c.tape1.read, c.tape2.read
    rule = table.lookup(c.state, r1, r2)
    if rule is None:
        return UndefinedTransition(c.tape1.head, c.state, r1, r2)
    t1 = c.tape1.write(rule.write1).move(rule.move1)
    t2 = c.tape2.write(rule.write2).move(rule.move2)
    return Configuration(rule.to_state, t1, t2)


def run(
    table: TransitionTable,
    start: MachineState,
    accepting: Optional[Callable[[MachineState], bool]],
    word,
) -> RunResult:
    """Run ``table`` on ``word`` from ``start``.

    Tape 1 holds ``▷ word ◁``, tape 2 holds ``▷`` plus one blank per input
    symbol plus ``◁``; both heads start on cell 1. The run stops on an
    undefined transition or when head 1 reaches ``◁``. In the latter case an
    accepting state triggers the closing sweep, which walks head 2 to its
    ``◁`` one unlabeled step at a time. ``accepting`` defaults to the
    states' own ``accepting`` flag.
    """
    if accepting is None:
        accepting = _flag
    w = as_word(word)
    init1 = (TapeCell.LEFT, *(_CELL[ch] for ch in w), TapeCell.RIGHT)
    init2 = (TapeCell.LEFT, *([TapeCell.BLANK] * len(w)), TapeCell.RIGHT)
    t1, t2 = list(init1), list(init2)
    end1, end2 = len(t1) - 1, len(t2) - 1
    compiled = table._compiled
    right = TapeCell.RIGHT

    state = start
    h1 = h2 = 1
    log = [(state, h1, h2, t1[h1], t2[h2])]
    applied: list = []
    stalled: set = set()
    verdict: Verdict

    while True:
        c1, c2 = t1[h1], t2[h2]
        if c1 is right:
            break
        entry = compiled.get((state.name, c1, c2))
        if entry is None:
            verdict = UndefinedTransition(h1, state, c1, c2)
            break
        rule, state, w1, w2, adv1, adv2, bad = entry
        if bad:
            raise EngineFault(f"rule {rule} overwrites a marker")
        t1[h1] = w1
        t2[h2] = w2
        if adv2:
            if h2 >= end2:
                raise EngineFault(f"rule {rule} moves head 2 past ◁")
            h2 += 1
        if adv1:
            h1 += 1
            if stalled:
                stalled.clear()
        else:
            snap = (state.name, t1[h1], h2, t2[h2])
            if snap in stalled:
                raise EngineFault(f"machine loops on cell {h1} without consuming input")
            stalled.add(snap)
        applied.append(rule)
        log.append((state, h1, h2, t1[h1], t2[h2]))

    if t1[h1] is right:
        if accepting(state):
            c1 = t1[h1]
            while h2 < end2:
                h2 += 1
                applied.append(None)
                log.append((state, h1, h2, c1, t2[h2]))
            verdict = AcceptedAtEnd()
        else:
            verdict = NonAcceptingAtEnd(state)

    final = Configuration(state, Tape(tuple(t1), h1), Tape(tuple(t2), h2))
    trace = Trace(log, applied, (init1, init2), (final.tape1.cells, final.tape2.cells))
    return RunResult(verdict, trace, final)


def _flag(state: MachineState) -> bool:
    return state.accepting


def head_gaps(trace: Sequence) -> list[int]:
    """``|i1 - i2|`` for every configuration visited by ``trace``."""
    if isinstance(trace, Trace):
        return trace.gaps
    gaps = []
    for k, st in enumerate(trace):
        if k == 0:
            a, b = st.heads_before
            gaps.append(abs(a - b))
        a, b = st.heads_after
        gaps.append(abs(a - b))
    return gaps


def max_head_gap(trace: Sequence) -> int:
    """Largest head separation over the trace, closing sweep included."""
    if len(trace) == 0:
        return 0
    return max(head_gaps(trace))


def pass_end_gap(trace: Sequence) -> int:
    """Head separation after the last rule step, before any closing sweep."""
    last = 0
    for st in trace:
        if st.rule is not None:
            a, b = st.heads_after
            last = abs(a - b)
    return last


def render_trace(result: RunResult) -> str:
    """Paper-style text trace, one two-line block per step.

    Bold marking of consumed tape-1 symbols becomes a bracketed prefix::

        T1 ▷[0]1101◁
        T2 ▷0εεεε◁ (by 1)
    """
    blocks = []
    for st in result.trace:
        after = st.after
        t1 = after.tape1
        consumed = "".join(c.value for c in t1.cells[1 : t1.head])
        rest = "".join(c.value for c in t1.cells[max(t1.head, 1) : -1])
        t2 = "".join(c.value for c in after.tape2.contents)
        line2 = f"T2 ▷{t2}◁"
        if st.rule_label is not None:
            line2 += f" (by {st.rule_label})"
        elif st.is_sweep:
            line2 += " (sweep)"
        blocks.append(f"T1 ▷[{consumed}]{rest}◁\n{line2}")
    return "\n\n".join(blocks)
