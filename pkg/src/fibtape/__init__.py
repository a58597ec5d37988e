"""Fibonacci-grammar generation, two-tape reconstruction and membership."""
from .automaton import (
    Configuration,
    EngineFault,
    MachineState,
    Move,
    RunResult,
    Tape,
    TapeCell,
    TransitionRule,
    TransitionTable,
    max_head_gap,
    render_trace,
    run,
    step,
)
from .grammar import (
    BIF,
    FIB,
    InvalidSymbolError,
    LSystem,
    Symbol,
    derive_step,
    fibonacci_index_of_length,
    find_forbidden_ngram,
    first_symbol_ambiguity,
    generate,
)
from .oracle import enumerate_preimages, exhaustive_membership_check, oracle_membership
from .reverser import (
    MembershipReport,
    Reconstructed,
    Rejected,
    build_fib_machine,
    decide_membership,
    generation_index,
    reverse_pass,
)

__version__ = "0.1.0"
