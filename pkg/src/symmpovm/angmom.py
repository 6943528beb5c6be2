"""Exact Clebsch-Gordan coefficients and Wigner rotation matrices.

Angular momenta may be given as ints, ``Fraction``, half-integer floats or
strings such as ``"3/2"``; internally everything runs on twice the value so
the Racah sum is evaluated in pure integer/rational arithmetic. The
Condon-Shortley phase convention is used throughout and all
``(2j+1)``-dimensional bases are ordered ``m = +j, j-1, ..., -j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


class HalfIntegerError(ValueError):
    """Raised for values that are not integers or half-integers, or bad (j, m) pairs."""


def twice(x) -> int:
    """Return ``2*x`` as an int, rejecting anything that is not a multiple of 1/2."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    f = Fraction(x)
    d = 2 * f
    if d.denominator != 1:
        raise HalfIntegerError(f"{x!r} is not an integer or half-integer")
    return int(d)


def half(x) -> Fraction:
    """Parse ``x`` into an exact half-integer ``Fraction``."""
    return Fraction(twice(x), 2)


def m_values(j) -> list[Fraction]:
    """Projections ``+j, j-1, ..., -j``."""
    tj = twice(j)
    if tj < 0:
        raise HalfIntegerError(f"angular momentum must be non-negative, got {j}")
    return [Fraction(tm, 2) for tm in range(tj, -tj - 1, -2)]


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


@dataclass(frozen=True)
class ExactCoeff:
    """A real number ``sign * sqrt(num/den)`` with ``num/den`` in lowest terms."""

    sign: int
    num: int
    den: int = 1

    @classmethod
    def from_square(cls, sign: int, square: Fraction) -> "ExactCoeff":
        if square == 0:
            return cls(0, 0, 1)
        return cls(1 if sign > 0 else -1, square.numerator, square.denominator)

    @property
    def square(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        # sqrt of each side keeps large factorial ratios in range
        return self.sign * math.sqrt(self.num) / math.sqrt(self.den)

    def __bool__(self) -> bool:
        return self.sign != 0

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        s = "-" if self.sign < 0 else ""
        return f"{s}sqrt({self.num}/{self.den})"


ZERO = ExactCoeff(0, 0, 1)


def _check_pair(tj: int, tm: int, name: str) -> None:
    if (tj - tm) % 2:
        raise HalfIntegerError(f"{name}: j={tj}/2 and m={tm}/2 differ by a non-integer")


@lru_cache(maxsize=65536)
def _cg_twice(tj1: int, tj2: int, tj: int, tm1: int, tm2: int, tm: int) -> ExactCoeff:
    for a, b, n in ((tj1, tm1, "j1,m1"), (tj2, tm2, "j2,m2"), (tj, tm, "j,m")):
        _check_pair(a, b, n)
    if min(tj1, tj2, tj) < 0:
        raise HalfIntegerError("angular momenta must be non-negative")
    if tm1 + tm2 != tm:
        return ZERO
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm) > tj:
        return ZERO
    if tj < abs(tj1 - tj2) or tj > tj1 + tj2 or (tj1 + tj2 + tj) % 2:
        return ZERO

    # all of these are integers once the constraints above hold
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    s = (tj1 + tj2 + tj) // 2 + 1
    jpm, jmm = (tj + tm) // 2, (tj - tm) // 2
    j1pm, j1mm = (tj1 + tm1) // 2, (tj1 - tm1) // 2
    j2pm, j2mm = (tj2 + tm2) // 2, (tj2 - tm2) // 2

    radicand = Fraction(
        (tj + 1) * _fact(a) * _fact(b) * _fact(c)
        * _fact(jpm) * _fact(jmm) * _fact(j1pm) * _fact(j1mm) * _fact(j2pm) * _fact(j2mm),
        _fact(s),
    )

    d4 = (tj - tj2 + tm1) // 2
    d5 = (tj - tj1 - tm2) // 2
    kmin = max(0, -d4, -d5)
    kmax = min(a, j1mm, j2pm)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = _fact(k) * _fact(a - k) * _fact(j1mm - k) * _fact(j2pm - k) * _fact(d4 + k) * _fact(d5 + k)
        total += Fraction((-1) ** k, den)
    if total == 0:
        return ZERO
    return ExactCoeff.from_square(1 if total > 0 else -1, total * total * radicand)


def clebsch_gordan(j1, j2, j, m1, m2, m) -> ExactCoeff:
    """Exact Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>.

    Returns exact zero when the triangle rule or ``m1 + m2 = m`` fails.

    Raises
    ------
    HalfIntegerError
        If an argument is not a half-integer or some ``j - m`` is not integral.
    """
    return _cg_twice(twice(j1), twice(j2), twice(j), twice(m1), twice(m2), twice(m))


def cg_float(j1, j2, j, m1, m2, m) -> float:
    return float(clebsch_gordan(j1, j2, j, m1, m2, m))


def wigner_small_d(j, beta: float) -> np.ndarray:
    """Wigner's reduced rotation matrix d^j(beta), rows m' and columns m from +j down."""
    tj = twice(j)
    if tj < 0:
        raise HalfIntegerError(f"angular momentum must be non-negative, got {j}")
    dim = tj + 1
    cb, sb = math.cos(beta / 2.0), math.sin(beta / 2.0)
    out = np.zeros((dim, dim))
    for r in range(dim):
        jpmp = tj - r  # j + m'
        jmmp = r  # j - m'
        for col in range(dim):
            jpm = tj - col
            jmm = col
            mpmm = col - r  # m' - m
            pref = math.sqrt(_fact(jpmp) * _fact(jmmp) * _fact(jpm) * _fact(jmm))
            acc = 0.0
            for s in range(max(0, -mpmm), min(jpm, jmmp) + 1):
                den = _fact(jpm - s) * _fact(s) * _fact(mpmm + s) * _fact(jmmp - s)
                acc += (
                    (-1) ** (mpmm + s)
                    * cb ** (jpm + jmmp - 2 * s)  # 2j + m - m' - 2s
                    * sb ** (mpmm + 2 * s)
                    / den
                )
            out[r, col] = pref * acc
    return out


def wigner_D(j, alpha: float, beta: float, gamma: float) -> np.ndarray:
    """D^j_{m'm}(alpha, beta, gamma) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)."""
    ms = np.array([float(m) for m in m_values(j)])
    left = np.exp(-1j * ms * alpha)
    right = np.exp(-1j * ms * gamma)
    return left[:, None] * wigner_small_d(j, beta) * right[None, :]
