"""Laurent polynomials in ``t`` over C and over 2x2 complex matrices, plus the map Phi.

Zero-cleaning is relative: a coefficient is dropped when its magnitude is at
most ``tol`` times the largest coefficient magnitude.  Cleaning happens when a
determinant or a quotient is formed, never on plain arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .group_words import FreeWord, Generator, GroupRingElement

ZERO_TOL = 1e-9
SL2_TOL = 1e-9


class NotSL2Error(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    """Raised when a Laurent division leaves a remainder above tolerance."""

    def __init__(self, message, remainder_norm):
        super().__init__(message)
        self.remainder_norm = remainder_norm


def sl2_matrix(m) -> np.ndarray:
    """Validate and return a 2x2 complex matrix of determinant 1."""
    m = np.array(m, dtype=complex).reshape(2, 2)
    d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(d - 1) >= SL2_TOL * max(1.0, float(np.abs(m).max()) ** 2):
        raise NotSL2Error(f"det = {d}, expected 1")
    m.setflags(write=False)
    return m


def sl2_inverse(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def word_matrix(w: FreeWord, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """rho(w) for rho(a) = A, rho(b) = B."""
    mats = {Generator.A: (A, sl2_inverse(A)), Generator.B: (B, sl2_inverse(B))}
    out = np.eye(2, dtype=complex)
    for g, e in w.letters:
        m = mats[g][0] if e > 0 else mats[g][1]
        for _ in range(abs(e)):
            out = out @ m
    return out


def _fmt(v: float) -> float:
    return float(f"{v:.12g}") + 0.0


@dataclass(frozen=True)
class ComplexLaurentPoly:
    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(k): complex(v) for k, v in self.coeffs.items() if v != 0})

    @classmethod
    def from_list(cls, coeffs, min_exp: int = 0) -> "ComplexLaurentPoly":
        return cls({min_exp + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, c, k: int) -> "ComplexLaurentPoly":
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_exp(self) -> int:
        return min(self.coeffs)

    @property
    def max_exp(self) -> int:
        return max(self.coeffs)

    def norm(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def cleaned(self, tol: float = ZERO_TOL) -> "ComplexLaurentPoly":
        scale = self.norm()
        return ComplexLaurentPoly({k: c for k, c in self.coeffs.items() if abs(c) > tol * scale})

    def dense(self) -> tuple[int, np.ndarray]:
        """(min exponent, ascending coefficient array)."""
        if not self.coeffs:
            return 0, np.zeros(0, dtype=complex)
        lo, hi = self.min_exp, self.max_exp
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, c in self.coeffs.items():
            arr[k - lo] = c
        return lo, arr

    def shift(self, k: int) -> "ComplexLaurentPoly":
        return ComplexLaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def canonical(self) -> "ComplexLaurentPoly":
        return self.shift(-self.min_exp) if self.coeffs else self

    def span(self) -> int:
        if not self.coeffs:
            raise ValueError("span of the zero polynomial is undefined")
        return self.max_exp - self.min_exp

    def leading(self) -> complex:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[self.max_exp]

    def trailing(self) -> complex:
        if not self.coeffs:
            raise ValueError("zero polynomial has no trailing coefficient")
        return self.coeffs[self.min_exp]

    def __call__(self, t: complex) -> complex:
        return sum(c * t**k for k, c in self.coeffs.items())

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return ComplexLaurentPoly(out)

    def __neg__(self):
        return ComplexLaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ComplexLaurentPoly):
            return ComplexLaurentPoly({k: c * other for k, c in self.coeffs.items()})
        out: dict[int, complex] = {}
        for i, c in self.coeffs.items():
            for j, d in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + c * d
        return ComplexLaurentPoly(out)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        lo, arr = self.dense()
        return {"min_exp": lo, "coeffs": [[_fmt(c.real), _fmt(c.imag)] for c in arr]}

    @classmethod
    def from_json(cls, data: dict) -> "ComplexLaurentPoly":
        return cls.from_list([complex(re, im) for re, im in data["coeffs"]], data["min_exp"])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c:.6g})t^{k}" for k, c in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class MatrixLaurentPoly:
    coeffs: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs",
            {int(k): np.asarray(m, dtype=complex) for k, m in self.coeffs.items() if np.any(m != 0)},
        )

    @classmethod
    def constant(cls, m, k: int = 0) -> "MatrixLaurentPoly":
        return cls({k: np.asarray(m, dtype=complex)})

    def __add__(self, other):
        out = {k: m.copy() for k, m in self.coeffs.items()}
        for k, m in other.coeffs.items():
            out[k] = out[k] + m if k in out else m
        return MatrixLaurentPoly(out)

    def __neg__(self):
        return MatrixLaurentPoly({k: -m for k, m in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict[int, np.ndarray] = {}
        for i, m in self.coeffs.items():
            for j, n in other.coeffs.items():
                out[i + j] = out[i + j] + m @ n if i + j in out else m @ n
        return MatrixLaurentPoly(out)

    def entry(self, i: int, j: int) -> ComplexLaurentPoly:
        return ComplexLaurentPoly({k: m[i, j] for k, m in self.coeffs.items()})

    def __call__(self, t: complex) -> np.ndarray:
        return sum((m * t**k for k, m in self.coeffs.items()), np.zeros((2, 2), dtype=complex))

    def allclose(self, other, rtol: float = 1e-9) -> bool:
        mats = list(self.coeffs.values()) + list(other.coeffs.values())
        scale = max([float(np.abs(m).max()) for m in mats], default=0.0)
        z = np.zeros((2, 2))
        keys = set(self.coeffs) | set(other.coeffs)
        return all(np.abs(self.coeffs.get(k, z) - other.coeffs.get(k, z)).max() <= rtol * scale for k in keys)


def phi(elem, rep) -> MatrixLaurentPoly:
    """Image of a group-ring element: each word u goes to t^(exponent sum of u) * rho(u).

    ``rep`` is anything carrying SL2 matrices ``A`` and ``B``.
    """
    elem = GroupRingElement.of(elem)
    out: dict[int, np.ndarray] = {}
    for w, c in elem.terms.items():
        k = w.exponent_sum()
        m = c * word_matrix(w, rep.A, rep.B)
        out[k] = out[k] + m if k in out else m
    return MatrixLaurentPoly(out)


def det(M: MatrixLaurentPoly, tol: float = ZERO_TOL) -> ComplexLaurentPoly:
    """Determinant over C[t, t^-1], cleaned of relative noise."""
    p = M.entry(0, 0) * M.entry(1, 1) - M.entry(0, 1) * M.entry(1, 0)
    return p.cleaned(tol)


def divide_exact(num: ComplexLaurentPoly, den: ComplexLaurentPoly, tol: float = ZERO_TOL,
                 rtol: float = 1e-8) -> tuple[ComplexLaurentPoly, float]:
    """Exact division of Laurent polynomials.

    Both operands are shifted to lowest exponent 0 and the quotient is solved
    from the convolution system in the least-squares sense.  Plain long
    division amplifies rounding by |root|^k whenever the divisor has a root
    off the unit circle, which is the generic case for 1 - x t + t^2.

    Returns the quotient and the relative max-norm of the remainder; raises
    :class:`NotDivisibleError` when that remainder exceeds ``rtol``.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if num.is_zero():
        return num, 0.0
    nlo, n = num.dense()
    dlo, d = den.dense()
    if len(n) < len(d):
        raise NotDivisibleError("numerator span is smaller than denominator span", 1.0)
    qlen = len(n) - len(d) + 1
    conv = np.zeros((len(n), qlen), dtype=complex)
    for j in range(qlen):
        conv[j:j + len(d), j] = d
    q = np.linalg.lstsq(conv, n, rcond=None)[0]
    rem_norm = float(np.abs(conv @ q - n).max()) / num.norm()
    if rem_norm > rtol:
        raise NotDivisibleError(f"remainder norm {rem_norm:.3g} exceeds {rtol:g}", rem_norm)
    quot = ComplexLaurentPoly.from_list(q, nlo - dlo).cleaned(tol)
    return quot, rem_norm


def span(p: ComplexLaurentPoly) -> int:
    return p.span()


def leading(p: ComplexLaurentPoly) -> complex:
    return p.leading()


def trailing(p: ComplexLaurentPoly) -> complex:
    return p.trailing()
