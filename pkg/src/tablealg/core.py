"""Table algebras with exact rational structure constants.

A table algebra is stored as the pair of a basis label list and the full
structure-constant tensor lam[a][b][c] (the coefficient of basis element c in
the product a*b), together with the involution permutation `star`. Degrees are
never stored: axiom III forces degree(a) = lam[a][a*][0], so they are derived
and any externally supplied degree vector is only cross-checked.

Basis index 0 is the identity by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .reports import AlgebraError, ValidationReport
from .scalars import format_rational, lcm_denominators

# int64 headroom for the accelerated associativity check
_INT64_SAFE = 2**62

Tensor = tuple[tuple[tuple[Fraction, ...], ...], ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise AlgebraError(f"structure constants must be exact rationals, got {type(x).__name__}")


def freeze_tensor(raw: Sequence[Sequence[Sequence]]) -> Tensor:
    return tuple(tuple(tuple(_as_fraction(v) for v in row) for row in plane) for plane in raw)


@dataclass(frozen=True)
class TableAlgebra:
    """Basis labels, structure tensor lam[a][b][c], involution permutation."""

    labels: tuple[str, ...]
    lam: Tensor
    star: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "star", tuple(int(s) for s in self.star))
        object.__setattr__(self, "lam", freeze_tensor(self.lam))
        d = len(self.labels)
        if d == 0:
            raise AlgebraError("empty basis")
        if len(set(self.labels)) != d:
            raise AlgebraError("basis labels must be distinct")
        if sorted(self.star) != list(range(d)):
            raise AlgebraError("star is not a permutation of the basis indices")
        if len(self.lam) != d or any(
            len(plane) != d or any(len(row) != d for row in plane) for plane in self.lam
        ):
            raise AlgebraError(f"tensor shape mismatch: expected {d}x{d}x{d}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def degrees(self) -> tuple[Fraction, ...]:
        """degree(a) = lam[a][a*][0], forced by axiom III."""
        return tuple(self.lam[a][self.star[a]][0] for a in range(self.dim))

    @cached_property
    def order(self) -> Fraction:
        return sum(self.degrees, Fraction(0))

    @cached_property
    def _int_tensor(self) -> tuple[np.ndarray, int]:
        """Tensor scaled to integers: (array, L) with array = L * lam."""
        scale = lcm_denominators(v for plane in self.lam for row in plane for v in row)
        arr = np.array(
            [[[int(v * scale) for v in row] for row in plane] for plane in self.lam],
            dtype=np.int64,
        )
        return arr, scale

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"no basis element labelled {label!r}") from None

    def basis_vector(self, i: int) -> "ElementVector":
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = Fraction(1)
        return ElementVector(self, tuple(coeffs))

    def element(self, coeffs: Sequence) -> "ElementVector":
        if len(coeffs) != self.dim:
            raise AlgebraError("coefficient vector has wrong length")
        return ElementVector(self, tuple(_as_fraction(c) for c in coeffs))

    def is_commutative(self) -> bool:
        arr, _ = self._int_tensor
        return bool(np.array_equal(arr, arr.transpose(1, 0, 2)))

    def __repr__(self) -> str:
        return f"TableAlgebra(dim={self.dim}, labels={list(self.labels)})"


@dataclass(frozen=True)
class ElementVector:
    """A vector of exact coefficients over the basis of one algebra."""

    alg: TableAlgebra
    coeffs: tuple[Fraction, ...]

    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coeffs) if c != 0)

    def degree(self) -> Fraction:
        return sum((c * d for c, d in zip(self.coeffs, self.alg.degrees)), Fraction(0))

    def _check_same(self, other: "ElementVector"):
        if self.alg is not other.alg and self.alg != other.alg:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "ElementVector") -> "ElementVector":
        self._check_same(other)
        return ElementVector(self.alg, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ElementVector") -> "ElementVector":
        self._check_same(other)
        return ElementVector(self.alg, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, ElementVector):
            return multiply(self, other)
        return ElementVector(self.alg, tuple(c * _as_fraction(other) for c in self.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __str__(self) -> str:
        terms = [
            f"{format_rational(c)}*{self.alg.labels[i]}"
            for i, c in enumerate(self.coeffs)
            if c != 0
        ]
        return " + ".join(terms) if terms else "0"


def multiply(x: ElementVector, y: ElementVector) -> ElementVector:
    """Bilinear product through the structure tensor."""
    x._check_same(y)
    alg = x.alg
    out = [Fraction(0)] * alg.dim
    for a, xa in enumerate(x.coeffs):
        if xa == 0:
            continue
        for b, yb in enumerate(y.coeffs):
            if yb == 0:
                continue
            row = alg.lam[a][b]
            f = xa * yb
            for c in range(alg.dim):
                if row[c] != 0:
                    out[c] += f * row[c]
    return ElementVector(alg, tuple(out))


def mul_basis(alg: TableAlgebra, a: int, b: int) -> ElementVector:
    return ElementVector(alg, alg.lam[a][b])


def regular_representation(b: int, alg: TableAlgebra) -> list[list[Fraction]]:
    """Matrix M with M[c][a] = lam[b][a][c]: left multiplication by b."""
    if not 0 <= b < alg.dim:
        raise AlgebraError(f"basis index {b} out of range")
    return [[alg.lam[b][a][c] for a in range(alg.dim)] for c in range(alg.dim)]


def order_and_sum(subset: Iterable[int], alg: TableAlgebra) -> tuple[Fraction, ElementVector]:
    """o(S) = sum of degrees over S, and the 0/1 vector S+."""
    idx = sorted(set(subset))
    if not idx:
        raise AlgebraError("empty subset")
    if idx[0] < 0 or idx[-1] >= alg.dim:
        raise AlgebraError("subset index out of range")
    coeffs = [Fraction(0)] * alg.dim
    for i in idx:
        coeffs[i] = Fraction(1)
    order = sum((alg.degrees[i] for i in idx), Fraction(0))
    return order, ElementVector(alg, tuple(coeffs))


def rescale(alg: TableAlgebra, factors: Sequence) -> TableAlgebra:
    """Change of basis b -> factor(b)*b; factors positive, fixing identity and star.

    The identity coefficient of b'b'* becomes factor(b)^2 |b|, so the strict
    degree axioms only survive for character-compatible factor vectors; the
    output is not auto-validated.
    """
    fs = [_as_fraction(f) for f in factors]
    if len(fs) != alg.dim:
        raise AlgebraError("factor vector has wrong length")
    if fs[0] != 1:
        raise AlgebraError("rescaling factor of the identity must be 1")
    for i, f in enumerate(fs):
        if f <= 0:
            raise AlgebraError(f"rescaling factor for {alg.labels[i]!r} must be positive")
        if f != fs[alg.star[i]]:
            raise AlgebraError(f"rescaling factor must agree on {alg.labels[i]!r} and its star")
    # (f_a a)(f_b b) = sum_c (f_a f_b / f_c) lam_abc (f_c c)
    lam = [
        [
            [fs[a] * fs[b] / fs[c] * alg.lam[a][b][c] for c in range(alg.dim)]
            for b in range(alg.dim)
        ]
        for a in range(alg.dim)
    ]
    labels = tuple(
        lab if f == 1 else f"{format_rational(f)}*{lab}" for lab, f in zip(alg.labels, fs)
    )
    return TableAlgebra(labels, freeze_tensor(lam), alg.star)


def _associativity_witness(alg: TableAlgebra):
    """First quadruple violating sum_t lam[a][b][t] lam[t][c][d] == sum_t lam[b][c][t] lam[a][t][d]."""
    arr, _ = alg._int_tensor
    d = alg.dim
    peak = int(np.abs(arr).max()) if arr.size else 0
    if peak * peak * d < _INT64_SAFE:
        lhs = (arr.reshape(d * d, d) @ arr.reshape(d, d * d)).reshape(d, d, d, d)
        rhs = np.einsum("bct,atd->abcd", arr, arr)
        if np.array_equal(lhs, rhs):
            return None
        bad = np.argwhere(lhs != rhs)[0]
        return tuple(int(v) for v in bad)
    # exact fallback, no overflow risk
    lam = alg.lam
    rng = range(d)
    for a in rng:
        for b in rng:
            for c in rng:
                for e in rng:
                    left = sum(lam[a][b][t] * lam[t][c][e] for t in rng)
                    right = sum(lam[b][c][t] * lam[a][t][e] for t in rng)
                    if left != right:
                        return (a, b, c, e)
    return None


def validate(alg: TableAlgebra, mode: str = "table-algebra") -> ValidationReport:
    """Check the defining axioms; report every failure with a witness.

    mode 'c-algebra' skips the nonnegativity requirement; mode 'table-algebra'
    includes it. Degrees are recomputed from the tensor; an optional degree
    vector can be cross-checked with `cross_check_degrees`.
    """
    if mode not in ("table-algebra", "c-algebra"):
        raise AlgebraError(f"unknown validation mode {mode!r}")
    report = ValidationReport(subject=f"algebra[{','.join(alg.labels)}]")
    d = alg.dim
    lam = alg.lam
    star = alg.star
    deg = alg.degrees

    witness = None
    for b in range(d):
        for c in range(d):
            want = Fraction(1 if b == c else 0)
            if lam[0][b][c] != want or lam[b][0][c] != want:
                witness = (alg.labels[0], alg.labels[b], alg.labels[c])
                break
        if witness:
            break
    report.add("identity-element", witness is None, witness=witness)

    witness = next(
        (
            (alg.labels[a], alg.labels[b], alg.labels[c])
            for a in range(d)
            for b in range(d)
            for c in range(d)
            if lam[a][b][c] != lam[star[b]][star[a]][star[c]]
        ),
        None,
    )
    report.add("star-anti-automorphism", witness is None, witness=witness)

    witness = None
    for a in range(d):
        if deg[a] <= 0:
            witness = (alg.labels[a], "degree", format_rational(deg[a]))
            break
        if deg[star[a]] != deg[a]:
            witness = (alg.labels[a], "degree(star)", format_rational(deg[star[a]]))
            break
        for b in range(d):
            want = deg[a] if b == star[a] else Fraction(0)
            if lam[a][b][0] != want:
                witness = (alg.labels[a], alg.labels[b], alg.labels[0])
                break
        if witness:
            break
    report.add("identity-coefficient-and-degrees", witness is None, witness=witness)

    witness = next(
        (
            (alg.labels[a], alg.labels[b])
            for a in range(d)
            for b in range(d)
            if sum(lam[a][b][c] * deg[c] for c in range(d)) != deg[a] * deg[b]
        ),
        None,
    )
    report.add("degree-map-multiplicative", witness is None, witness=witness)

    quad = _associativity_witness(alg)
    report.add(
        "associativity",
        quad is None,
        witness=None if quad is None else tuple(alg.labels[i] for i in quad),
    )

    if mode == "table-algebra":
        witness = next(
            (
                (alg.labels[a], alg.labels[b], alg.labels[c])
                for a in range(d)
                for b in range(d)
                for c in range(d)
                if lam[a][b][c] < 0
            ),
            None,
        )
        report.add("nonnegative-structure-constants", witness is None, witness=witness)
    return report


def cross_check_degrees(alg: TableAlgebra, degrees: Sequence) -> None:
    """Raise if a user-supplied degree vector disagrees with the tensor."""
    supplied = [_as_fraction(x) for x in degrees]
    if len(supplied) != alg.dim:
        raise AlgebraError("degree vector has wrong length")
    for i, (got, want) in enumerate(zip(supplied, alg.degrees)):
        if got != want:
            raise AlgebraError(
                f"degree mismatch at {alg.labels[i]!r}: supplied "
                f"{format_rational(got)}, tensor forces {format_rational(want)}"
            )


def validate_or_raise(alg: TableAlgebra, mode: str = "table-algebra", context: str = "") -> None:
    report = validate(alg, mode)
    if not report.passed:
        names = ", ".join(f"{c.name} (witness {c.witness})" for c in report.failures())
        prefix = f"{context}: " if context else ""
        raise AlgebraError(f"{prefix}axiom validation failed: {names}")
