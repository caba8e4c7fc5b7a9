"""Wada's twisted Alexander polynomial for <a, b | wa = bw> and an SL2(C) representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .group_words import Generator, GroupRingElement, a, b, relator_derivative
from .knots import KnotPresentation
from .laurent import ComplexLaurentPoly, ZERO_TOL, _fmt, det, divide_exact, phi
from .representations import Representation, TraceCoordsPlus, relative_relator_residual

MONIC_TOL = 1e-6
RELATOR_TOL = 1e-6


class NotARepresentationError(ValueError):
    """The matrices do not satisfy the knot group relation (or are abelian)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass
class DeltaReport:
    knot: str
    rep: Representation
    delta: ComplexLaurentPoly
    numerator: ComplexLaurentPoly
    span: int
    leading: complex
    trailing: complex
    monic: bool
    genus_bound: Optional[int]
    deficient: Optional[bool]
    residuals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        c = self.rep.coords
        key, val = ("z", c.z) if isinstance(c, TraceCoordsPlus) else ("y", c.y)
        return {
            "knot": self.knot,
            "x": _pair(c.x),
            "coord": {key: _pair(val)},
            "delta": self.delta.to_json(),
            "span": self.span,
            "genus_bound": self.genus_bound,
            "leading": _pair(self.leading),
            "trailing": _pair(self.trailing),
            "monic": self.monic,
            "deficient": self.deficient,
            "residuals": {k: _fmt(v) for k, v in sorted(self.residuals.items())},
        }


def _pair(z: complex) -> list[float]:
    z = complex(z)
    floor = 1e-14 * abs(z)
    return [_fmt(v if abs(v) > floor else 0.0) for v in (z.real, z.imag)]


def numerator(pres: KnotPresentation, rep: Representation, gen: Generator = Generator.A,
              tol: float = ZERO_TOL) -> ComplexLaurentPoly:
    """det Phi(d r / d gen)."""
    return det(phi(relator_derivative(pres.word, gen), rep), tol)


def denominator(rep: Representation, gen: Generator = Generator.B, tol: float = ZERO_TOL) -> ComplexLaurentPoly:
    """det Phi(1 - gen) = 1 - x t + t^2."""
    return det(phi(GroupRingElement.of(1) - (b if gen is Generator.B else a), rep), tol)


def check_representation(pres: KnotPresentation, rep: Representation) -> float:
    if not rep.nonabelian:
        raise NotARepresentationError("representation is abelian")
    res = relative_relator_residual(rep, pres.word)
    if res >= RELATOR_TOL:
        raise NotARepresentationError(f"relation wa = bw fails: relative residual {res:.3g}", res)
    return res


def twisted_alexander(pres: KnotPresentation, rep: Representation, tol: float = ZERO_TOL,
                      monic_tol: float = MONIC_TOL) -> DeltaReport:
    """Delta = det Phi(dr/da) / det Phi(1 - b), shifted to lowest exponent 0."""
    rel = check_representation(pres, rep)
    num = numerator(pres, rep, Generator.A, tol)
    if num.is_zero():
        raise NotARepresentationError("numerator vanishes identically")
    quot, rem = divide_exact(num, denominator(rep, Generator.B, tol), tol)
    delta = quot.canonical()
    sp = delta.span()
    lead = delta.leading()
    bound = pres.genus_bound
    return DeltaReport(
        knot=pres.name,
        rep=rep,
        delta=delta,
        numerator=num,
        span=sp,
        leading=lead,
        trailing=delta.trailing(),
        monic=abs(lead - 1) < monic_tol,
        genus_bound=bound,
        deficient=None if bound is None else sp < bound,
        residuals={"division": rem, "relator": rel},
    )


def wada_welldefined_check(pres: KnotPresentation, rep: Representation, rtol: float = 1e-8) -> bool:
    """Compare det Phi(dr/da)/det Phi(1-b) with det Phi(dr/db)/det Phi(1-a) up to a power of t."""
    check_representation(pres, rep)
    qa, _ = divide_exact(numerator(pres, rep, Generator.A), denominator(rep, Generator.B))
    qb, _ = divide_exact(numerator(pres, rep, Generator.B), denominator(rep, Generator.A))
    qa, qb = qa.canonical(), qb.canonical()
    if qa.span() != qb.span():
        return False
    scale = max(qa.norm(), qb.norm())
    return (qa - qb).norm() <= rtol * scale
