"""Words over named generators.

Syntax: whitespace-separated letters, each ``name`` or ``name^k`` with k a
nonzero decimal integer.  A Word is a reduced run-length sequence of
(name, exponent) pairs; reduction here only merges adjacent equal names,
group-specific simplification happens in the engines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_LETTER_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


class WordSyntaxError(ValueError):
    pass


def _merge(pairs) -> tuple:
    out: list = []
    for name, exp in pairs:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            s = out[-1][1] + exp
            if s == 0:
                out.pop()
            else:
                out[-1] = (name, s)
        else:
            out.append((name, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    @staticmethod
    def of(pairs) -> "Word":
        return Word(_merge(pairs))

    @staticmethod
    def parse(text: str) -> "Word":
        pairs = []
        for tok in text.split():
            m = _LETTER_RE.match(tok)
            if m is None:
                raise WordSyntaxError(f"bad letter {tok!r}")
            exp = 1 if m.group(2) is None else int(m.group(2))
            if exp == 0:
                raise WordSyntaxError(f"zero exponent in {tok!r}")
            pairs.append((m.group(1), exp))
        return Word.of(pairs)

    def __mul__(self, other: "Word") -> "Word":
        return Word.of(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def conjugate_by(self, c: "Word") -> "Word":
        """c * self * c^-1."""
        return c * self * c.inverse()

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def names(self) -> set:
        return {n for n, _ in self.letters}

    def rename(self, mapping: dict) -> "Word":
        return Word(tuple((mapping.get(n, n), e) for n, e in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "<identity>"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()
