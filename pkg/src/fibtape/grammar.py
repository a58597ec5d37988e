"""Binary D0L systems: forward derivation and simple structural analysis.

Words are plain ``str`` objects over the characters ``"0"`` and ``"1"``.
:class:`Symbol` is a ``str`` enum, so its members compare and hash equal to
those characters and can be used wherever a one-character word is expected.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Optional, Union

__all__ = [
    "Symbol",
    "InvalidSymbolError",
    "LSystem",
    "FIB",
    "BIF",
    "as_word",
    "derive_step",
    "generate",
    "generations",
    "fibonacci_index_of_length",
    "first_symbol_ambiguity",
    "NgramViolation",
    "find_forbidden_ngram",
    "read_word",
    "write_word",
]


class Symbol(str, Enum):
    ZERO = "0"
    ONE = "1"

    def __str__(self) -> str:
        return self.value


class InvalidSymbolError(ValueError):
    """Raised when text contains a character outside ``{0, 1}``."""

    def __init__(self, position: int, char: str):
        super().__init__(f"invalid symbol {char!r} at position {position}")
        self.position = position
        self.char = char


WordLike = Union[str, Iterable[Symbol]]


def as_word(s: WordLike) -> str:
    """Normalize ``s`` to a binary ``str``, validating every character."""
    if not isinstance(s, str):
        s = "".join(c.value if isinstance(c, Symbol) else str(c) for c in s)
    if s.strip("01"):
        for i, c in enumerate(s):
            if c not in "01":
                raise InvalidSymbolError(i, c)
    return s


@dataclass(frozen=True)
class LSystem:
    """A deterministic context-free L-system over ``{0, 1}``.

    ``rules`` must define a non-empty image for both symbols.
    """

    name: str
    axiom: str
    rules: Mapping[Symbol, str]
    _table: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        axiom = as_word(self.axiom)
        if not axiom:
            raise ValueError("axiom must be non-empty")
        rules = {}
        for sym in Symbol:
            if sym not in self.rules:
                raise ValueError(f"no rule for symbol {sym.value}")
            image = as_word(self.rules[sym])
            if not image:
                raise ValueError(f"rule image for {sym.value} is empty")
            rules[sym] = image
        object.__setattr__(self, "axiom", axiom)
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "_table", str.maketrans({s.value: img for s, img in rules.items()}))

    def __hash__(self):
        return hash((self.name, self.axiom, tuple(self.rules.items())))

    def image(self, sym: Union[Symbol, str]) -> str:
        return self.rules[Symbol(sym)]


FIB = LSystem("fib", "0", {Symbol.ZERO: "1", Symbol.ONE: "01"})
BIF = LSystem("bif", "0", {Symbol.ZERO: "1", Symbol.ONE: "10"})


def derive_step(ls: LSystem, s: WordLike) -> str:
    """Rewrite every symbol of ``s`` in parallel."""
    return as_word(s).translate(ls._table)


def generate(ls: LSystem, n: int) -> str:
    """Return generation ``n`` of ``ls`` (``generate(ls, 0)`` is the axiom).

    Lengths grow geometrically; ``n`` around 40 already gives ~10**8 symbols.
    """
    if n < 0:
        raise ValueError("generation index must be non-negative")
    s = ls.axiom
    for _ in range(n):
        s = s.translate(ls._table)
    return s


def generations(ls: LSystem, upto: int) -> list[str]:
    """Generations ``0..upto`` inclusive."""
    out = [ls.axiom]
    for _ in range(upto):
        out.append(out[-1].translate(ls._table))
    return out


def fibonacci_index_of_length(length: int) -> Optional[int]:
    """Smallest ``n`` with ``len(generate(FIB, n)) == length``, else ``None``.

    Generations 0 and 1 both have length 1; the tie resolves to 0.
    """
    n, cur, nxt = 0, 1, 1
    while cur < length:
        n, cur, nxt = n + 1, nxt, cur + nxt
    return n if cur == length else None


def first_symbol_ambiguity(ls: LSystem) -> set[Symbol]:
    """Symbols that are a whole rule image and also a proper prefix of one.

    Such a symbol can be grouped back on its own or opened as the start of a
    longer constituent, so a left-to-right reader has to guess.
    """
    images = list(ls.rules.values())
    return {
        sym
        for sym in Symbol
        if sym.value in images
        and any(len(img) > 1 and img.startswith(sym.value) for img in images)
    }


class NgramViolation(NamedTuple):
    position: int
    ngram: str


def find_forbidden_ngram(s: WordLike) -> Optional[NgramViolation]:
    """Leftmost occurrence of ``00`` or ``111`` in ``s``.

    On equal start index ``00`` wins, since a machine reading left to right
    sees it one cell earlier.
    """
    s = as_word(s)
    hits = [(i, g) for g in ("00", "111") if (i := s.find(g)) >= 0]
    if not hits:
        return None
    pos, gram = min(hits, key=lambda h: (h[0], len(h[1])))
    return NgramViolation(pos, gram)


def read_word(path: Union[str, os.PathLike]) -> str:
    with open(path, encoding="ascii") as fh:
        return as_word(fh.read().rstrip("\r\n"))


def write_word(path: Union[str, os.PathLike], s: WordLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(as_word(s) + "\n")
