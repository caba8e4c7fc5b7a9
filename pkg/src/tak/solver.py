"""Exceptional representations of b(6n+1, 3), K_{2n} and K_{2n-1}.

A nonabelian representation is *deficient* when its twisted Alexander
polynomial has span below 4g - 2 and *monic* when its leading coefficient is 1.
Both are governed by the boundary coefficient (the common top and bottom
coefficient of the Fox-Jacobian determinant) being 0 or 1, so each count is the
number of solutions of {boundary = target, Riley = 0}.  Every solution found
here is re-checked by computing Delta from scratch.
"""

from __future__ import annotations

import cmath
import concurrent.futures
import enum
import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .chebyshev import S, T, IntPolynomial, eval_poly
from .knots import TwistKnot, TwoBridgeKnot, presentation
from .representations import (
    R_b3_parts, R_even_parts, R_odd_parts, boundary_coeff_b3, boundary_coeff_twist,
    build_from_xy, build_from_xz,
)
from .laurent import ZERO_TOL
from .twisted_alexander import MONIC_TOL, DeltaReport, _pair, twisted_alexander

log = logging.getLogger(__name__)

DEDUPE_TOL = 1e-6
RILEY_TOL = 1e-8
BOUNDARY_TOL = 1e-7
PARABOLIC_TOL = 1e-6


class Family(enum.Enum):
    B3 = "b3"
    TWIST_EVEN = "twist-even"
    TWIST_ODD = "twist-odd"


class Mode(enum.Enum):
    DEFICIENT = "deficient"
    MONIC = "monic"

    @property
    def target(self) -> int:
        return 0 if self is Mode.DEFICIENT else 1


class RootFindingError(ArithmeticError):
    pass


def roots(p, rtol: float = 1e-8) -> list[complex]:
    """All complex roots of a polynomial given by ascending coefficients.

    Eigenvalues of the companion matrix of the monic-normalised polynomial,
    then Newton polishing.  Sorted by (real, imaginary) part.
    """
    c = np.array(p.coeffs if isinstance(p, IntPolynomial) else p, dtype=complex)
    while len(c) and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg < 1:
        raise ValueError("roots() needs a polynomial of degree >= 1")
    monic = c / c[-1]
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic[:-1]
    rts = np.linalg.eigvals(comp)
    dc = np.array([k * c[k] for k in range(1, deg + 1)])
    out = []
    for r in rts:
        for _ in range(3):
            f = np.polyval(c[::-1], r)
            df = np.polyval(dc[::-1], r)
            if df == 0:
                break
            step = f / df
            if not np.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(r)):
                break
            r = r - step
        scale = float(np.sum(np.abs(c) * np.abs(r) ** np.arange(deg + 1)))
        resid = abs(np.polyval(c[::-1], r)) / (scale or 1.0)
        if resid > rtol:
            raise RootFindingError(f"root {r} of degree-{deg} polynomial has residual {resid:.3g}")
        out.append(complex(r))
    return sorted(out, key=lambda r: (round(r.real, 9), round(r.imag, 9)))


def h1_poly(n: int) -> IntPolynomial:
    """Riley polynomial of b(6n+1, 3) after imposing boundary coefficient 0."""
    z = IntPolynomial.z()
    return S(3 * n) - S(3 * n - 1) - (4 + (z * z - 4) * S(n - 1) ** 2) * (S(n) - S(n - 1))


def h3_poly(n: int) -> IntPolynomial:
    """Riley polynomial of b(6n+1, 3) after imposing boundary coefficient 1."""
    z = IntPolynomial.z()
    return S(3 * n) - S(3 * n - 1) - (3 + (z * z - 4) * S(n - 1) ** 2) * (S(n) - S(n - 1))


def twist_boundary_equation(n: int, mode: Mode) -> IntPolynomial:
    """Squarefree polynomial whose roots are the y != 2 with (T_n(y) - 2)/(y - 2) = target."""
    y_minus_2 = IntPolynomial((-2, 1))
    if mode is Mode.DEFICIENT:
        q = (T(n) - 2) // y_minus_2
    else:
        q = (T(n) - IntPolynomial.z()) // y_minus_2
    return q.squarefree() if q.degree > 0 else q


@dataclass
class WitnessReport:
    family: Family
    n: int
    mode: Mode
    x: complex
    coord_name: str
    coord: complex
    riley_residual: float
    boundary_value: complex
    delta: Optional[DeltaReport] = None
    multiplicity: int = 1
    error: Optional[str] = None

    @property
    def verified(self) -> bool:
        if self.delta is None or self.error:
            return False
        if self.riley_residual >= RILEY_TOL or abs(self.boundary_value - self.mode.target) >= BOUNDARY_TOL:
            return False
        d = self.delta
        if self.mode is Mode.DEFICIENT:
            return bool(d.deficient)
        return d.monic and d.deficient is False

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "mode": self.mode.value,
            "x": _pair(self.x),
            "coord": {self.coord_name: _pair(self.coord)},
            "riley_residual": float(f"{self.riley_residual:.12g}"),
            "boundary_value": _pair(self.boundary_value),
            "multiplicity": self.multiplicity,
            "verified": self.verified,
            "error": self.error,
            "delta": None if self.delta is None else self.delta.to_json(),
        }


@dataclass(frozen=True)
class Branch:
    """One root y of the twist boundary equation and what the Riley equation leaves over it."""

    y: complex
    kind: str  # "pair", "single" (x = 0) or "none"
    x2: Optional[complex]
    c0: complex
    c1: complex


def _riley_rel(c0: complex, c1: complex, x2: complex) -> float:
    return abs(c0 + c1 * x2) / max(1.0, abs(c0), abs(c1 * x2))


def _sqrt_pair(x2: complex) -> list[complex]:
    if abs(x2) <= 1e-12:
        return [0j]
    r = cmath.sqrt(x2)
    return [r, -r]


def _dedupe(ws: list[WitnessReport]) -> list[WitnessReport]:
    out: list[WitnessReport] = []
    for w in ws:
        for v in out:
            if abs(v.x - w.x) < DEDUPE_TOL and abs(v.coord - w.coord) < DEDUPE_TOL:
                v.multiplicity += 1
                break
        else:
            out.append(w)
    return out


def _attach_delta(w: WitnessReport, pres, tol: float, monic_tol: float) -> WitnessReport:
    try:
        rep = build_from_xz(w.x, w.coord) if w.coord_name == "z" else build_from_xy(w.x, w.coord)
        w.delta = twisted_alexander(pres, rep, tol, monic_tol)
    except (ValueError, ArithmeticError) as exc:
        w.error = f"{type(exc).__name__}: {exc}"
        log.warning("witness %s=%s x=%s failed: %s", w.coord_name, w.coord, w.x, exc)
    return w


def _b3_riley_on_line(n: int, mode: Mode, z: complex) -> complex:
    x2 = (z - 2) / 9 if mode is Mode.DEFICIENT else (z + 2) / 4
    c0, c1 = R_b3_parts(n, z)
    return c0 + c1 * x2


def _polish_b3(n: int, mode: Mode, z: complex, steps: int = 6) -> complex:
    """Secant steps on the Riley sum restricted to the boundary line.

    The Chebyshev recurrence is better conditioned near |z| = 2 than the
    monomial coefficients the companion matrix sees.
    """
    z0, z1 = z, z * (1 + 1e-7) + 1e-9
    f0, f1 = _b3_riley_on_line(n, mode, z0), _b3_riley_on_line(n, mode, z1)
    for _ in range(steps):
        if f1 == f0:
            break
        z2 = z1 - f1 * (z1 - z0) / (f1 - f0)
        if not cmath.isfinite(z2) or abs(z2 - z) > 1e-4 * max(1.0, abs(z)):
            break
        z0, f0, z1 = z1, f1, z2
        f1 = _b3_riley_on_line(n, mode, z1)
    return z1 if abs(f1) <= abs(_b3_riley_on_line(n, mode, z)) else z


def solve_b3(n: int, mode: Mode, tol: float = ZERO_TOL, monic_tol: float = MONIC_TOL) -> list[WitnessReport]:
    """Exceptional representations of b(6n+1, 3).

    Deficient: roots z of h1 with 9 x^2 = z - 2.  Monic: roots z of h3 with 4 x^2 = z + 2.
    """
    if n < 1:
        raise ValueError("b(6n+1, 3) needs n >= 1")
    pres = presentation(TwoBridgeKnot(6 * n + 1, 3))
    poly = h1_poly(n) if mode is Mode.DEFICIENT else h3_poly(n)
    found = []
    for z in roots(poly):
        z = _polish_b3(n, mode, z)
        x2 = (z - 2) / 9 if mode is Mode.DEFICIENT else (z + 2) / 4
        c0, c1 = R_b3_parts(n, z)
        for x in _sqrt_pair(x2):
            w = WitnessReport(Family.B3, n, mode, x, "z", z, _riley_rel(c0, c1, x * x),
                              boundary_coeff_b3(n, x, z))
            found.append(w)
    return [_attach_delta(w, pres, tol, monic_tol) for w in _dedupe(found)]


def twist_branches(parity: str, n: int, mode: Mode, tol: float = 1e-8) -> list[Branch]:
    """Classify each y with boundary coefficient = target by the solutions x of Riley = 0.

    The Riley polynomial is c0(y) + c1(y) x^2.  ``none``: c1 = 0 and c0 != 0;
    ``single``: the solution is x^2 = 0; ``pair``: x^2 != 0 gives +-x.
    """
    if n < 2:
        raise ValueError("twist families need n >= 2")
    parts = R_even_parts if parity == "even" else R_odd_parts
    eq = twist_boundary_equation(n, mode)
    ys = roots(eq) if eq.degree > 0 else []
    out = []
    for y in ys:
        if abs(y.imag) < 1e-12:
            y = complex(y.real, 0.0)
        c0, c1 = parts(n, y)
        if abs(c1) <= tol * max(1.0, abs(c0)):
            if abs(c0) <= tol:
                raise ArithmeticError(f"Riley polynomial vanishes identically over y = {y}")
            out.append(Branch(y, "none", None, c0, c1))
            continue
        x2 = -c0 / c1
        if abs(x2) <= tol:
            out.append(Branch(y, "single", 0j, c0, c1))
        else:
            out.append(Branch(y, "pair", x2, c0, c1))
    return out


def solve_twist(parity: str, n: int, mode: Mode, tol: float = ZERO_TOL,
                monic_tol: float = MONIC_TOL) -> list[WitnessReport]:
    family = Family.TWIST_EVEN if parity == "even" else Family.TWIST_ODD
    m = 2 * n if parity == "even" else 2 * n - 1
    pres = presentation(TwistKnot(m))
    found = []
    for br in twist_branches(parity, n, mode):
        if br.kind == "none":
            continue
        for x in _sqrt_pair(br.x2):
            w = WitnessReport(family, n, mode, x, "y", br.y, _riley_rel(br.c0, br.c1, x * x),
                              boundary_coeff_twist(n, br.y))
            found.append(w)
    return [_attach_delta(w, pres, tol, monic_tol) for w in _dedupe(found)]


def solve(family: Family, n: int, mode: Mode, tol: float = ZERO_TOL,
          monic_tol: float = MONIC_TOL) -> list[WitnessReport]:
    if family is Family.B3:
        return solve_b3(n, mode, tol, monic_tol)
    return solve_twist("even" if family is Family.TWIST_EVEN else "odd", n, mode, tol, monic_tol)


@dataclass(frozen=True)
class Corrections:
    a: int
    b: int
    c: int
    d: int
    e: int


def correction_terms(n: int) -> Corrections:
    return Corrections(
        a=2 if n % 6 == 1 else 0,
        b=2 if n % 5 == 1 else 0,
        c=1 if n % 3 == 1 else 0,
        d=2 if n % 6 == 5 else 0,
        e=2 if n % 5 == 4 else 0,
    )


def theorem_count(family: Family, n: int, mode: Mode) -> int:
    if family is Family.B3:
        return 2 * n
    if mode is Mode.DEFICIENT:
        return 1 + (-1) ** n
    c = correction_terms(n)
    if family is Family.TWIST_EVEN:
        return 2 * n - 2 - c.a - c.b
    return 2 * n - 2 - c.c - c.d - c.e


@dataclass
class CountResult:
    family: Family
    n: int
    mode: Mode
    found_count: int
    theorem_count: int
    witnesses: list[WitnessReport] = field(default_factory=list)
    parabolic_plus: list[complex] = field(default_factory=list)
    parabolic_minus: list[complex] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(w.verified for w in self.witnesses)

    @property
    def matches(self) -> bool:
        return self.found_count == self.theorem_count

    @property
    def ok(self) -> bool:
        return self.matches and self.all_verified and not self.parabolic_plus

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "mode": self.mode.value,
            "found": self.found_count,
            "theorem": self.theorem_count,
            "matches": self.matches,
            "all_verified": self.all_verified,
            "parabolic_plus": [_pair(x) for x in self.parabolic_plus],
            "parabolic_minus": [_pair(x) for x in self.parabolic_minus],
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def count(family: Family, n: int, mode: Mode, tol: float = ZERO_TOL,
          monic_tol: float = MONIC_TOL) -> CountResult:
    ws = solve(family, n, mode, tol, monic_tol)
    res = CountResult(family, n, mode, len(ws), theorem_count(family, n, mode), ws)
    res.parabolic_plus = [w.x for w in ws if abs(w.x - 2) < PARABOLIC_TOL]
    res.parabolic_minus = [w.x for w in ws if abs(w.x + 2) < PARABOLIC_TOL]
    if res.parabolic_minus:
        log.info("%s n=%d %s: x = -2 witnesses %s", family.value, n, mode.value, res.parabolic_minus)
    return res


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TAK_THREADS", "1")))
    except ValueError:
        return 1


def census(families: Iterable[Family], n_range: Iterable[int],
           modes: Sequence[Mode] = (Mode.DEFICIENT, Mode.MONIC),
           threads: Optional[int] = None, tol: float = ZERO_TOL,
           monic_tol: float = MONIC_TOL) -> list[CountResult]:
    """Solve and verify every (family, n, mode); results in input order."""
    jobs = [(f, n, m) for f in families for n in n_range for m in modes
            if not (f is not Family.B3 and n < 2)]
    workers = threads or _threads()
    if workers == 1:
        return [count(*j, tol, monic_tol) for j in jobs]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda j: count(*j, tol, monic_tol), jobs))


def grid_sweep_b3(n: int, mode: Mode, extent: float = 4.0, steps: int = 121) -> list[tuple[complex, complex]]:
    """Locate solutions of {boundary = target, Riley = 0} for b(6n+1, 3) without h1/h3.

    For each z on a grid, x^2 is chosen so the boundary coefficient hits the
    target; the generic alternating-trace Riley sum is then minimised over the
    grid and refined by secant steps.  Returns the (z, x) pairs found.
    """
    from .knots import two_bridge_word
    from .representations import riley_generic, riley_generic_batch

    word = two_bridge_word(TwoBridgeKnot(6 * n + 1, 3))
    target = mode.target

    def x2_of(z):
        den = (z - 2) * eval_poly(S(n - 1), z) ** 2
        return z + 2 - (target - 4) / den if den != 0 else complex("nan")

    def f(z):
        x2 = x2_of(z)
        if not cmath.isfinite(x2):
            return x2
        try:
            return riley_generic(word, build_from_xz(cmath.sqrt(x2), z))
        except ValueError:
            return complex("nan")

    # offset keeps grid points off the real-axis poles at z = 2 and zeros of S_{n-1}
    xs = np.linspace(-extent, extent, steps) + 0.5 * extent / steps
    zz = xs[None, :] + 1j * xs[:, None]
    s_prev = np.polyval(np.array(S(n - 1).coeffs[::-1], dtype=float), zz)
    with np.errstate(all="ignore"):
        x2 = zz + 2 - (target - 4) / ((zz - 2) * s_prev**2)
        grid = np.abs(riley_generic_batch(word, np.sqrt(x2), zz)).reshape(zz.shape)
    grid = np.where(np.isfinite(grid), grid, np.inf)
    found: list[complex] = []
    for i in range(1, steps - 1):
        for j in range(1, steps - 1):
            v = grid[i, j]
            if np.isfinite(v) and v == grid[i - 1:i + 2, j - 1:j + 2].min():
                z0 = complex(xs[j], xs[i])
                z1 = z0 + 1e-4
                f0, f1 = f(z0), f(z1)
                for _ in range(60):
                    if f1 == f0 or not cmath.isfinite(f1):
                        break
                    z0, z1 = z1, z1 - f1 * (z1 - z0) / (f1 - f0)
                    f0, f1 = f1, f(z1)
                    if abs(z1 - z0) < 1e-14 * max(1, abs(z1)):
                        break
                if abs(f1) < 1e-8 and abs(z1.real) <= extent and abs(z1.imag) <= extent:
                    if all(abs(z1 - g) > DEDUPE_TOL for g in found):
                        found.append(z1)
    out = []
    for z in found:
        for x in _sqrt_pair(x2_of(z)):
            out.append((z, x))
    return out
