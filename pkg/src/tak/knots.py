"""Knot group presentations <a, b | wa = bw> for 2-bridge knots and twist knots."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Union

from .chebyshev import IntPolynomial
from .group_words import FreeWord, Generator, a, b, relator_derivative, relator


class KnotParameterError(ValueError):
    pass


@dataclass(frozen=True)
class TwoBridgeKnot:
    p: int
    m: int

    def __post_init__(self):
        p, m = self.p, self.m
        if not (p % 2 and m % 2 and p > m > 1 and math.gcd(p, m) == 1):
            raise KnotParameterError(f"b({p},{m}) needs coprime odd integers p > m > 1")

    @property
    def spec(self) -> str:
        return f"b:{self.p},{self.m}"


@dataclass(frozen=True)
class TwistKnot:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise KnotParameterError(f"twist knot K_{self.m} needs m >= 1")

    @property
    def spec(self) -> str:
        return f"twist:{self.m}"

    @property
    def parity(self) -> str:
        return "even" if self.m % 2 == 0 else "odd"

    @property
    def n(self) -> int:
        """K_{2n} for even m, K_{2n-1} for odd m."""
        return self.m // 2 if self.m % 2 == 0 else (self.m + 1) // 2


Knot = Union[TwoBridgeKnot, TwistKnot]


@dataclass(frozen=True)
class KnotPresentation:
    knot: Knot
    word: FreeWord
    relator: FreeWord
    genus: Optional[int]
    fibered: Optional[bool]

    @property
    def name(self) -> str:
        return self.knot.spec

    @property
    def genus_bound(self) -> Optional[int]:
        return None if self.genus is None else 4 * self.genus - 2


def epsilon_word(p: int, m: int) -> FreeWord:
    """w = a^e1 b^e2 ... a^e_{p-2} b^e_{p-1} with e_j = (-1)^floor(j m / p); no validation."""
    letters = []
    for j in range(1, p):
        gen = Generator.A if j % 2 else Generator.B
        letters.append((gen, -1 if (j * m // p) % 2 else 1))
    return FreeWord(tuple(letters))


def two_bridge_word(k: TwoBridgeKnot) -> FreeWord:
    return epsilon_word(k.p, k.m)


def twist_standard_word(m: int) -> FreeWord:
    """Standard 2-bridge word of K_m, viewed as b(2m+1, 2m-1) (K_1 as b(3, 1)).

    In these generators tr(ab) = x^2 - y, and the alternating trace sum of this
    word equals (-1)^m times the twist-coordinate Riley polynomial.
    """
    return epsilon_word(2 * m + 1, 2 * m - 1) if m > 1 else epsilon_word(3, 1)


def twist_knot_word(k: TwistKnot) -> FreeWord:
    n = k.n
    ab_ = a * b.inverse()
    ba_ = b * a.inverse()
    if k.parity == "even":
        return ba_**n * b * ab_**n
    return ab_**n * b * ba_**n


def genus(knot: Knot) -> Optional[int]:
    """Knot genus.

    Twist knots have genus 1.  2-bridge knots are alternating, so the genus
    is half the degree of the Alexander polynomial.
    """
    if isinstance(knot, TwistKnot):
        return 1
    return _alexander_from_word(two_bridge_word(knot)).degree // 2


def is_fibered(knot: Knot) -> Optional[bool]:
    """Fiberedness; for alternating knots this is monicity of the Alexander polynomial."""
    if isinstance(knot, TwistKnot):
        return knot.m <= 2
    return abs(_alexander_from_word(two_bridge_word(knot)).leading) == 1


def presentation(knot: Knot) -> KnotPresentation:
    w = two_bridge_word(knot) if isinstance(knot, TwoBridgeKnot) else twist_knot_word(knot)
    return KnotPresentation(knot, w, relator(w), genus(knot), is_fibered(knot))


def parse_knot_spec(spec: str) -> KnotPresentation:
    """``b:p,m`` or ``twist:m``."""
    s = spec.strip().replace(" ", "")
    m = re.fullmatch(r"b:(\d+),(\d+)", s)
    if m:
        return presentation(TwoBridgeKnot(int(m.group(1)), int(m.group(2))))
    m = re.fullmatch(r"twist:(\d+)", s)
    if m:
        return presentation(TwistKnot(int(m.group(1))))
    raise KnotParameterError(f"unrecognised knot spec {spec!r}; use b:p,m or twist:m")


def classical_alexander(pres: Union[KnotPresentation, Knot]) -> IntPolynomial:
    """Classical Alexander polynomial from the abelianised Fox derivative d r / d a.

    Normalised to lowest exponent 0 and positive leading coefficient.
    """
    if not isinstance(pres, KnotPresentation):
        pres = presentation(pres)
    return _alexander_from_word(pres.word)


def _alexander_from_word(word: FreeWord) -> IntPolynomial:
    coeffs: dict[int, int] = {}
    for w, c in relator_derivative(word, Generator.A).terms.items():
        e = w.exponent_sum()
        coeffs[e] = coeffs.get(e, 0) + c
    coeffs = {e: c for e, c in coeffs.items() if c}
    lo = min(coeffs)
    poly = IntPolynomial([coeffs.get(lo + i, 0) for i in range(max(coeffs) - lo + 1)])
    return -poly if poly.leading < 0 else poly
