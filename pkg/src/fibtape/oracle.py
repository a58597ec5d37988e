"""Brute-force ground truth, independent of the automaton."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .grammar import FIB, LSystem, Symbol, as_word, derive_step, generate

__all__ = [
    "PreimageSet",
    "enumerate_preimages",
    "oracle_membership",
    "MembershipCheck",
    "exhaustive_membership_check",
    "binary_strings",
]


@dataclass(frozen=True)
class PreimageSet:
    source: str
    grammar: LSystem
    preimages: frozenset

    def __len__(self) -> int:
        return len(self.preimages)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.preimages))

    def __contains__(self, t) -> bool:
        return t in self.preimages


def enumerate_preimages(ls: LSystem, s) -> PreimageSet:
    """Every ``t`` with ``derive_step(ls, t) == s``.

    A backward pass marks which suffixes of ``s`` can be tiled by rule
    images; the forward search then only follows tilings that finish.
    """
    s = as_word(s)
    m = len(s)
    images = [(sym.value, ls.rules[sym]) for sym in Symbol]
    ok = [False] * (m + 1)
    ok[m] = True
    for i in range(m - 1, -1, -1):
        ok[i] = any(s.startswith(img, i) and ok[i + len(img)] for _, img in images)

    found = set()
    if ok[0]:
        stack = [(0, "")]
        while stack:
            i, acc = stack.pop()
            if i == m:
                found.add(acc)
                continue
            for sym, img in images:
                j = i + len(img)
                if s.startswith(img, i) and ok[j]:
                    stack.append((j, acc + sym))
    return PreimageSet(s, ls, frozenset(found))


def oracle_membership(s, max_n: int) -> Optional[int]:
    """Index ``n <= max_n`` with ``generate(FIB, n) == s`` by direct comparison."""
    s = as_word(s)
    g = FIB.axiom
    for n in range(max_n + 1):
        if n:
            g = derive_step(FIB, g)
        if g == s:
            return n
        if len(g) > len(s):
            break
    return None


def binary_strings(length: int) -> Iterator[str]:
    for bits in itertools.product("01", repeat=length):
        yield "".join(bits)


@dataclass
class MembershipCheck:
    checked: int = 0
    accepted: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def exhaustive_membership_check(max_len: int) -> MembershipCheck:
    """Compare the machine against the oracle on every word of length ``1..max_len``.

    Mismatches are ``(word, machine_says_member, oracle_index)`` triples.
    """
    from .reverser import decide_membership

    max_n = 0
    while len(generate(FIB, max_n)) <= max_len:
        max_n += 1
    report = MembershipCheck()
    for length in range(1, max_len + 1):
        for s in binary_strings(length):
            machine = decide_membership(s).member
            truth = oracle_membership(s, max_n)
            report.checked += 1
            if machine:
                report.accepted.append(s)
            if machine != (truth is not None):
                report.mismatches.append((s, machine, truth))
    return report
