"""Words in the free group on ``a, b``, the integral group ring, and Fox calculus.

Words are always kept freely reduced, so structural equality of :class:`FreeWord`
objects is equality in the free group.  A :class:`GroupRingElement` is a finite
formal sum of words with nonzero integer coefficients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class Generator(enum.Enum):
    A = "a"
    B = "b"

    def __repr__(self) -> str:
        return self.value


Letter = tuple[Generator, int]


def reduce(letters: Iterable[Letter]) -> "FreeWord":
    """Freely reduce a raw letter sequence (merging equal neighbours, dropping zero powers)."""
    out: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] is gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return FreeWord(tuple(out), _reduced=True)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()
    _reduced: bool = field(default=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self._reduced:
            object.__setattr__(self, "letters", reduce(self.letters).letters)
            object.__setattr__(self, "_reduced", True)

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls((), _reduced=True)

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Parse words like ``"a b A B"``, ``"a^2 b^-1"`` or ``"abAB"`` (capital = inverse)."""
        letters = []
        for m in re.finditer(r"([abAB])(?:\^(-?\d+))?|(\S)", text.replace("*", " ")):
            if m.group(3):
                raise ValueError(f"bad character {m.group(3)!r} in word {text!r}")
            ch, exp = m.group(1), int(m.group(2) or 1)
            gen = Generator(ch.lower())
            letters.append((gen, -exp if ch.isupper() else exp))
        return reduce(letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other):
        if isinstance(other, FreeWord):
            return reduce(self.letters + other.letters)
        if isinstance(other, GroupRingElement):
            return GroupRingElement({self: 1}) * other
        return NotImplemented

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return self.inverse() ** (-k)
        return reduce(self.letters * k)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)), _reduced=True)

    def units(self) -> list[Letter]:
        """The word spelled out as a list of letters with exponent +-1."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g.value if e == 1 else f"{g.value}^{e}" for g, e in self.letters)


def exponent_sum(w: FreeWord) -> int:
    return w.exponent_sum()


a = FreeWord(((Generator.A, 1),), _reduced=True)
b = FreeWord(((Generator.B, 1),), _reduced=True)
ONE = FreeWord.identity()


@dataclass(frozen=True)
class GroupRingElement:
    """Element of Z[F_2]: a mapping word -> nonzero integer coefficient."""

    terms: Mapping[FreeWord, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {w: c for w, c in self.terms.items() if c})

    @classmethod
    def of(cls, x) -> "GroupRingElement":
        if isinstance(x, GroupRingElement):
            return x
        if isinstance(x, FreeWord):
            return cls({x: 1})
        if isinstance(x, int):
            return cls({ONE: x})
        raise TypeError(f"cannot coerce {type(x).__name__} into the group ring")

    def __add__(self, other):
        other = GroupRingElement.of(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-GroupRingElement.of(other))

    def __rsub__(self, other):
        return GroupRingElement.of(other) - self

    def __mul__(self, other):
        other = GroupRingElement.of(other)
        out: dict[FreeWord, int] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                uv = u * v
                out[uv] = out.get(uv, 0) + c * d
        return GroupRingElement(out)

    def __rmul__(self, other):
        return GroupRingElement.of(other) * self

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        try:
            other = GroupRingElement.of(other)
        except TypeError:
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = sorted((str(w), c) for w, c in self.terms.items())
        return " + ".join(f"{c}*({w})" for w, c in parts)


def fox_derivative(w: FreeWord, g: Generator) -> GroupRingElement:
    """Fox derivative of ``w`` with respect to ``g``.

    Walks the word one unit letter at a time applying the product rule
    d(uv) = du + u dv, with dg = 1 and d(g^-1) = -g^-1.
    """
    out: dict[FreeWord, int] = {}
    prefix: list[Letter] = []
    for gen, e in w.units():
        if gen is g:
            if e > 0:
                key = reduce(prefix)
                out[key] = out.get(key, 0) + 1
            else:
                key = reduce(prefix + [(g, -1)])
                out[key] = out.get(key, 0) - 1
        prefix.append((gen, e))
    return GroupRingElement(out)


def relator(w: FreeWord) -> FreeWord:
    """The relator w a w^-1 b^-1 of the presentation <a, b | wa = bw>."""
    return w * a * w.inverse() * b.inverse()


def relator_derivative(w: FreeWord, g: Generator) -> GroupRingElement:
    return fox_derivative(relator(w), g)
