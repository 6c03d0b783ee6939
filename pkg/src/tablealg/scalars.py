"""Exact scalar kernel: rationals, Gaussian rationals, snapping, linear solves.

All structure constants in this package are `fractions.Fraction`. Character
theory needs complex values; when those are (Gaussian) rational we snap them
to the exact type `QC` so downstream checks can be exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

SNAP_MAX_DENOMINATOR = 10**6

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q'. Rejects floats and other notations."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def snap_real(x: float, tol: float) -> Fraction | None:
    """Nearest rational with denominator <= 10^6, if within tol of x."""
    if not math.isfinite(x):
        return None
    q = Fraction(x).limit_denominator(SNAP_MAX_DENOMINATOR)
    return q if abs(float(q) - x) <= tol else None


@dataclass(frozen=True)
class QC:
    """Gaussian rational a + b*i with exact Fraction parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QC") -> "QC":
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QC(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        return f"{format_rational(self.re)}{'+' if self.im >= 0 else ''}{format_rational(self.im)}i"

    @staticmethod
    def from_rational(x: Fraction | int) -> "QC":
        return QC(Fraction(x))


QC_ZERO = QC(Fraction(0))
QC_ONE = QC(Fraction(1))


def snap_complex(z: complex, tol: float) -> QC | None:
    """Snap both parts to rationals with denominator <= 10^6, or None."""
    re = snap_real(z.real, tol)
    if re is None:
        return None
    im = snap_real(z.imag, tol)
    if im is None:
        return None
    return QC(re, im)


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve A x = b by Gaussian elimination over an exact field.

    Entries may be Fraction or QC (any type with +,-,*,/ and a truthiness
    that is False exactly at zero). Raises ValueError on singular A.
    """
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if _nonzero(aug[r][col])), None)
        if piv is None:
            raise ValueError("singular matrix in exact solve")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col] / inv
            if not _nonzero(factor):
                continue
            for c in range(col, n + 1):
                aug[r][c] = aug[r][c] - factor * aug[col][c]
    return [aug[r][n] / aug[r][r] for r in range(n)]


def _nonzero(x) -> bool:
    if isinstance(x, QC):
        return not x.is_zero()
    return x != 0


def lcm_denominators(values) -> int:
    """LCM of the denominators of an iterable of Fractions."""
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out
