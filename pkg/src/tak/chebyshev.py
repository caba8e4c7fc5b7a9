"""Exact integer polynomials and the two Chebyshev-type families S_j, T_j.

Both families satisfy f_{j+1} = z f_j - f_{j-1}; S starts from (1, z) and T
from (2, z).  Negative indices come from running the recurrence backwards.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import zip_longest

import numpy as np

SL2_TOL = 1e-9


class IntPolynomial:
    """Dense polynomial with Python-int coefficients, ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def z(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                coef = str(c) if (abs(c) != 1 or k == 0) else ("-" if c < 0 else "")
                terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _coerce(x) -> "IntPolynomial":
        return x if isinstance(x, IntPolynomial) else IntPolynomial((x,))

    def __add__(self, other):
        other = self._coerce(other)
        return IntPolynomial(p + q for p, q in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if p:
                for j, q in enumerate(other.coeffs):
                    out[i + j] += p * q
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def divmod_monic(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Exact division by a polynomial whose leading coefficient is +-1."""
        if abs(other.leading) != 1:
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * other.leading
            if c:
                quot[k - dq] = c
                for i, d in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * d
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other):
        q, r = self.divmod_monic(self._coerce(other))
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, z):
        return eval_poly(self, z)

    def squarefree(self) -> "IntPolynomial":
        """Primitive squarefree part: p / gcd(p, p') over Q, scaled back to integers."""
        g = _gcd_q(self.coeffs, self.derivative().coeffs)
        q = _div_q(self.coeffs, g)
        return _primitive(q)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs])


def eval_poly(poly: IntPolynomial, z):
    """Horner evaluation; exact for int/Fraction arguments, floating for complex."""
    acc = 0
    for c in reversed(poly.coeffs):
        acc = acc * z + c
    return acc


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod_q(p, q):
    p = [Fraction(x) for x in p]
    q = [Fraction(x) for x in _trim(q)]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    for k in range(len(p) - 1, len(q) - 2, -1):
        c = p[k] / q[-1]
        if c:
            quot[k - len(q) + 1] = c
            for i, d in enumerate(q):
                p[k - len(q) + 1 + i] -= c * d
    return _trim(quot), _trim(p)


def _gcd_q(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        _, r = _divmod_q(p, q)
        p, q = q, r
    return p


def _div_q(p, q):
    quot, rem = _divmod_q(p, q)
    assert not rem
    return quot


def _primitive(c) -> IntPolynomial:
    from math import gcd, lcm

    den = 1
    for x in c:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    if ints and ints[-1] < 0:
        ints = [-x for x in ints]
    return IntPolynomial(ints)


Z = IntPolynomial.z()


@lru_cache(maxsize=None)
def S(j: int) -> IntPolynomial:
    """S_0 = 1, S_1 = z, S_{j+1} = z S_j - S_{j-1}; S_{-1} = 0, S_{-2} = -1."""
    if j == 0:
        return IntPolynomial((1,))
    if j == 1:
        return Z
    if j > 1:
        return Z * S(j - 1) - S(j - 2)
    return Z * S(j + 1) - S(j + 2)


@lru_cache(maxsize=None)
def T(j: int) -> IntPolynomial:
    """T_0 = 2, T_1 = z, same recurrence; T_{-j} = T_j."""
    if j < 0:
        return T(-j)
    if j == 0:
        return IntPolynomial((2,))
    if j == 1:
        return Z
    return Z * T(j - 1) - T(j - 2)


def s_value(j: int, z):
    """S_j(z) by running the recurrence at z.

    Much better conditioned near |z| <= 2 than Horner on the integer
    coefficients, which grow like binomials.
    """
    if j < 0:
        return -s_value(-j - 2, z) if j < -1 else 0 * z
    prev, cur = 0 * z, 1 + 0 * z
    for _ in range(j):
        prev, cur = cur, z * cur - prev
    return cur


def t_value(j: int, z):
    """T_j(z) by running the recurrence at z."""
    j = abs(j)
    prev, cur = 2 + 0 * z, z
    if j == 0:
        return prev
    for _ in range(j - 1):
        prev, cur = cur, z * cur - prev
    return cur


def sl2_power(M, j: int, z=None) -> np.ndarray:
    """M**j for M in SL2(C) through M^j = S_{j-1}(z) M - S_{j-2}(z) I, z = tr M."""
    M = np.asarray(M, dtype=complex)
    if abs(np.linalg.det(M) - 1) >= SL2_TOL * max(1.0, float(np.abs(M).max()) ** 2):
        raise ValueError(f"matrix is not in SL2: det = {np.linalg.det(M)}")
    if z is None:
        z = complex(np.trace(M))
    return S(j - 1)(z) * M - S(j - 2)(z) * np.eye(2)
