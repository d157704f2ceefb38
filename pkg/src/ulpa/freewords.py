"""Reduced words in the free group on the edge set.

A word is a tuple of signed letters (edge, +1|-1) with no adjacent
cancelling pair; the empty tuple is the group identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ultragraph import Ultragraph

Letter = tuple[str, int]


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((e, -s) for e, s in reversed(self.letters)))

    def __repr__(self):
        if not self.letters:
            return "0"
        return "".join(e + ("⁻¹" if s < 0 else "") for e, s in self.letters)


IDENTITY = FreeWord()


def reduce_letters(letters: Sequence[Letter]) -> FreeWord:
    out: list[Letter] = []
    for e, s in letters:
        if out and out[-1][0] == e and out[-1][1] == -s:
            out.pop()
        else:
            out.append((e, s))
    return FreeWord(tuple(out))


def word_multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    return reduce_letters(u.letters + v.letters)


def from_path(path: Sequence[str]) -> FreeWord:
    return FreeWord(tuple((e, 1) for e in path))


def from_paths(a: Sequence[str], b: Sequence[str]) -> FreeWord:
    """The reduced word a · b⁻¹."""
    return word_multiply(from_path(a), from_path(b).inverse())


def word_key(g: Ultragraph, w: FreeWord):
    """Canonical sort key: length, then letters by declaration order with
    positive letters before inverses."""
    return (len(w.letters), tuple((g.edge_index(e), 0 if s > 0 else 1) for e, s in w.letters))
