"""Twisted Alexander polynomials of 2-bridge and twist knots for SL2(C) representations."""

from .group_words import FreeWord, Generator, GroupRingElement, fox_derivative, relator_derivative
from .knots import TwistKnot, TwoBridgeKnot, classical_alexander, parse_knot_spec, presentation
from .representations import build_from_xy, build_from_xz
from .solver import Family, Mode, census, solve, theorem_count
from .twisted_alexander import twisted_alexander

__all__ = [
    "FreeWord", "Generator", "GroupRingElement", "fox_derivative", "relator_derivative",
    "TwistKnot", "TwoBridgeKnot", "classical_alexander", "parse_knot_spec", "presentation",
    "build_from_xy", "build_from_xz", "Family", "Mode", "census", "solve", "theorem_count",
    "twisted_alexander",
]
