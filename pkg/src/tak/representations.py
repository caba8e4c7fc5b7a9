"""SL2(C) representations from trace coordinates, Riley-type polynomials, boundary coefficients.

A nonabelian representation is put in the normal form

    A = [[s, 1], [0, 1/s]],   B = [[s, 0], [u, 1/s]],   s + 1/s = x,

so that tr AB = x^2 - 2 + u and tr AB^-1 = 2 - u.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

import numpy as np

from .chebyshev import S, T, IntPolynomial, s_value
from .group_words import FreeWord
from .laurent import sl2_inverse, sl2_matrix, word_matrix

U_TOL = 1e-10


class ReducibleRepresentationError(ValueError):
    """The requested trace coordinates only admit abelian (reducible) representations."""


@dataclass(frozen=True)
class TraceCoordsPlus:
    x: complex
    z: complex


@dataclass(frozen=True)
class TraceCoordsMinus:
    x: complex
    y: complex


Coords = Union[TraceCoordsPlus, TraceCoordsMinus]


@dataclass(frozen=True, eq=False)
class Representation:
    A: np.ndarray
    B: np.ndarray
    coords: Coords
    s: complex
    u: complex

    @property
    def x(self) -> complex:
        return self.coords.x

    @property
    def nonabelian(self) -> bool:
        return abs(self.u) > U_TOL

    def __call__(self, w: FreeWord) -> np.ndarray:
        return word_matrix(w, self.A, self.B)

    def conjugate(self, C) -> "Representation":
        """The representation C rho C^-1 (same coordinates, different matrices)."""
        C = sl2_matrix(C)
        Ci = sl2_inverse(C)
        return Representation(sl2_matrix(C @ self.A @ Ci), sl2_matrix(C @ self.B @ Ci), self.coords, self.s, self.u)


def _eigen_s(x: complex) -> complex:
    x = complex(x)
    return (x + cmath.sqrt(x * x - 4)) / 2


def _build(x: complex, u: complex, coords: Coords) -> Representation:
    if abs(u) <= U_TOL * max(1.0, abs(x) ** 2):
        raise ReducibleRepresentationError(f"u = {u:.3g}: coordinates {coords} give no nonabelian representation")
    s = _eigen_s(x)
    A = sl2_matrix([[s, 1], [0, 1 / s]])
    B = sl2_matrix([[s, 0], [u, 1 / s]])
    return Representation(A, B, coords, s, complex(u))


def build_from_xz(x: complex, z: complex) -> Representation:
    """Representation with tr A = tr B = x and tr AB = z."""
    x, z = complex(x), complex(z)
    rep = _build(x, z + 2 - x * x, TraceCoordsPlus(x, z))
    assert abs(np.trace(rep.A @ rep.B) - z) <= 1e-9 * max(1.0, abs(z), abs(x) ** 2)
    return rep


def build_from_xy(x: complex, y: complex) -> Representation:
    """Representation with tr A = tr B = x and tr AB^-1 = y."""
    x, y = complex(x), complex(y)
    rep = _build(x, 2 - y, TraceCoordsMinus(x, y))
    assert abs(np.trace(rep.A @ sl2_inverse(rep.B)) - y) <= 1e-9 * max(1.0, abs(y))
    return rep


def build(x: complex, coord: complex, kind: str) -> Representation:
    return build_from_xz(x, coord) if kind == "z" else build_from_xy(x, coord)


def riley_generic(w: FreeWord, rep: Representation) -> complex:
    """Alternating trace sum tr w - tr w' + ... + (-1)^(d-1) tr w^(d-1) + (-1)^d.

    ``w'`` drops the first and last letter of ``w``; ``d`` is half the word length.
    """
    units = w.units()
    if len(units) % 2:
        raise ValueError(f"riley_generic needs an even-length word, got length {len(units)}")
    d = len(units) // 2
    mats = {(g, e): rep(FreeWord(((g, e),))) for g, e in set(units)}
    total = (-1) ** d
    for i in range(d):
        m = np.eye(2, dtype=complex)
        for letter in units[i:len(units) - i]:
            m = m @ mats[letter]
        total += (-1) ** i * np.trace(m)
    return complex(total)


def riley_generic_batch(w: FreeWord, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorised :func:`riley_generic` over arrays of plus-coordinates (no reducibility check)."""
    units = w.units()
    if len(units) % 2:
        raise ValueError(f"riley_generic needs an even-length word, got length {len(units)}")
    x = np.asarray(x, dtype=complex).ravel()
    z = np.asarray(z, dtype=complex).ravel()
    s = (x + np.sqrt(x * x - 4)) / 2
    u = z + 2 - x * x
    one, zero = np.ones_like(s), np.zeros_like(s)
    A = np.stack([np.stack([s, one], -1), np.stack([zero, 1 / s], -1)], -2)
    B = np.stack([np.stack([s, zero], -1), np.stack([u, 1 / s], -1)], -2)
    Ai = np.stack([np.stack([1 / s, -one], -1), np.stack([zero, s], -1)], -2)
    Bi = np.stack([np.stack([1 / s, zero], -1), np.stack([-u, s], -1)], -2)
    mats = {("a", 1): A, ("a", -1): Ai, ("b", 1): B, ("b", -1): Bi}
    seq = [mats[(g.value, e)] for g, e in units]
    d = len(seq) // 2
    total = np.full(len(x), (-1.0) ** d, dtype=complex)
    for i in range(d):
        m = seq[i]
        for k in range(i + 1, len(seq) - i):
            m = m @ seq[k]
        total += (-1) ** i * (m[:, 0, 0] + m[:, 1, 1])
    return total


def _sn(j, z):
    return s_value(j, z)


def R_b3_closed(n: int, x: complex, z: complex) -> complex:
    """Riley polynomial of b(6n+1, 3) in (x, z) = (tr a, tr ab)."""
    return _sn(3 * n, z) - _sn(3 * n - 1, z) - x * x * (z - 2) * _sn(n - 1, z) ** 2 * (_sn(n, z) - _sn(n - 1, z))


def R_b3_parts(n: int, z: complex) -> tuple[complex, complex]:
    """(c0, c1) with R_b3 = c0 + c1 * x^2."""
    return _sn(3 * n, z) - _sn(3 * n - 1, z), -(z - 2) * _sn(n - 1, z) ** 2 * (_sn(n, z) - _sn(n - 1, z))


def R_even_parts(n: int, y: complex) -> tuple[complex, complex]:
    s0, s1 = _sn(n - 1, y), _sn(n, y)
    return (y + 1) * s0 * s0 - s1 * s1 - 2 * s0 * s1, s0 * (s1 - s0)


def R_odd_parts(n: int, y: complex) -> tuple[complex, complex]:
    s1, s2 = _sn(n - 1, y), _sn(n - 2, y)
    return -(y + 1) * s1 * s1 + s2 * s2 + 2 * s1 * s2, s1 * (s1 - s2)


def R_even(n: int, x: complex, y: complex) -> complex:
    """Riley-type polynomial of K_{2n} in (x, y) = (tr a, tr ab^-1)."""
    c0, c1 = R_even_parts(n, y)
    return c0 + c1 * x * x


def R_odd(n: int, x: complex, y: complex) -> complex:
    """Riley-type polynomial of K_{2n-1} in (x, y) = (tr a, tr ab^-1)."""
    c0, c1 = R_odd_parts(n, y)
    return c0 + c1 * x * x


def boundary_coeff_b3(n: int, x: complex, z: complex) -> complex:
    """det(I + A (AB)^-n (BA)^n A^-1) = 4 + (z-2)(z+2-x^2) S_{n-1}(z)^2."""
    return 4 + (z - 2) * (z + 2 - x * x) * _sn(n - 1, z) ** 2


def twist_boundary_poly(n: int) -> IntPolynomial:
    """(T_n(y) - 2) / (y - 2) as an exact integer polynomial."""
    return (T(n) - 2) // IntPolynomial((-2, 1))


def boundary_coeff_twist(n: int, y: complex) -> complex:
    """(T_n(y) - 2) / (y - 2), with the value n^2 at y = 2."""
    return twist_boundary_poly(n)(y)


def relator_residual(rep: Representation, w: FreeWord) -> float:
    """max |rho(w) A - B rho(w)| entrywise."""
    W = rep(w)
    return float(np.abs(W @ rep.A - rep.B @ W).max())


def relative_relator_residual(rep: Representation, w: FreeWord) -> float:
    W = rep(w)
    scale = float(np.abs(W).max()) * max(float(np.abs(rep.A).max()), float(np.abs(rep.B).max()))
    return float(np.abs(W @ rep.A - rep.B @ W).max()) / max(scale, 1.0)


def riley(pres, x: complex, coord: complex, kind: str) -> complex:
    """Riley-type polynomial of a presentation at (x, z) or (x, y).

    2-bridge knots use the alternating trace sum of their word in (x, z);
    twist knots use their closed form in (x, y).  The other coordinate is
    converted through tr(ab) + tr(ab^-1) = x^2.
    """
    from .knots import TwistKnot

    knot = pres.knot
    if isinstance(knot, TwistKnot):
        y = coord if kind == "y" else x * x - coord
        return (R_even if knot.parity == "even" else R_odd)(knot.n, x, y)
    z = coord if kind == "z" else x * x - coord
    return riley_generic(pres.word, build_from_xz(x, z))


def snap_x(pres, x: complex, coord: complex, kind: str, max_shift: float = 1e-3,
           iterations: int = 50) -> complex:
    """Newton-correct ``x`` (``coord`` fixed) onto the Riley curve.

    Raises ``ValueError`` when the correction would move x by more than
    ``max_shift * max(1, |x|)``, i.e. the input is not close to a representation.
    """
    x0 = x = complex(x)
    h = 1e-7
    for _ in range(iterations):
        f = riley(pres, x, coord, kind)
        df = (riley(pres, x + h, coord, kind) - riley(pres, x - h, coord, kind)) / (2 * h)
        if df == 0:
            break
        step = f / df
        x -= step
        if abs(x - x0) > max_shift * max(1.0, abs(x0)):
            raise ValueError(f"x = {x0} is not within {max_shift:g} of the Riley curve")
        if abs(step) < 1e-15 * max(1.0, abs(x)):
            break
    return x


def _poly_in_x(fn, degree: int) -> np.ndarray:
    """Ascending coefficients of a polynomial in x from samples on the unit circle."""
    N = degree + 1
    pts = np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.array([fn(p) for p in pts])
    return np.fft.fft(vals) / N


def coordinate_roots(pres, x: complex) -> tuple[str, list[complex]]:
    """All coordinates (y for twist knots, z otherwise) with Riley = 0 at fixed ``x``.

    Abelian points (u = 0) are discarded.
    """
    from .knots import TwistKnot
    from .solver import roots

    kind = "y" if isinstance(pres.knot, TwistKnot) else "z"
    degree = 2 * len(pres.word) + 2
    coeffs = _poly_in_x(lambda c: riley(pres, x, c, kind), degree)
    coeffs[np.abs(coeffs) < 1e-11 * np.abs(coeffs).max()] = 0
    out = []
    for c in roots(coeffs):
        rep = build(x, c, kind)
        if rep.nonabelian and relative_relator_residual(rep, pres.word) < 1e-8:
            out.append(c)
    return kind, out


def sample_representation(pres, rng: np.random.Generator, radius: float = 1.5) -> Representation:
    """A random nonabelian representation: random z (or y), then a root x of the Riley equation."""
    from .knots import TwistKnot
    from .solver import roots

    knot = pres.knot
    for _ in range(100):
        c = complex(*rng.uniform(-radius, radius, 2))
        if isinstance(knot, TwistKnot):
            c0, c1 = (R_even_parts if knot.parity == "even" else R_odd_parts)(knot.n, c)
            x = cmath.sqrt(-c0 / c1) * rng.choice([-1, 1])
            rep = build_from_xy(x, c)
        elif knot.m == 3 and knot.p % 6 == 1:
            c0, c1 = R_b3_parts((knot.p - 1) // 6, c)
            x = cmath.sqrt(-c0 / c1) * rng.choice([-1, 1])
            rep = build_from_xz(x, c)
        else:
            L = len(pres.word)
            coeffs = _poly_in_x(lambda x: riley_generic(pres.word, build_from_xz(x, c)), L)
            coeffs[np.abs(coeffs) < 1e-12 * np.abs(coeffs).max()] = 0
            xs = roots(coeffs)
            rep = build_from_xz(xs[rng.integers(len(xs))], c)
        if rep.nonabelian and relative_relator_residual(rep, pres.word) < 1e-9:
            return rep
    raise RuntimeError(f"could not sample a representation of {pres.name}")
