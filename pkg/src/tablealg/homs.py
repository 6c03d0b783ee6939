"""Table-algebra homomorphisms, kernels, quotient maps, isomorphism search.

The image of a basis element under any table-algebra homomorphism is a
positive multiple of a single target basis element, and the multiple is
forced to |b|/|d|. A homomorphism is therefore stored as the target support
index per source basis element; the scalar is always derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .closed import ClosedSubset, QuotientResult, closed_subset, quotient, subalgebra
from .core import ElementVector, TableAlgebra, multiply
from .reports import AlgebraError, RefusalError, SearchBoundExceeded

DEFAULT_ISO_BOUND = 12


@dataclass(frozen=True)
class TableHomomorphism:
    source: TableAlgebra
    target: TableAlgebra
    assignment: tuple[int, ...]

    def scalar(self, b: int) -> Fraction:
        return self.source.degrees[b] / self.target.degrees[self.assignment[b]]

    def apply_basis(self, b: int) -> ElementVector:
        coeffs = [Fraction(0)] * self.target.dim
        coeffs[self.assignment[b]] = self.scalar(b)
        return ElementVector(self.target, tuple(coeffs))

    def apply(self, x: ElementVector) -> ElementVector:
        if x.alg is not self.source and x.alg != self.source:
            raise AlgebraError("element does not belong to the homomorphism source")
        coeffs = [Fraction(0)] * self.target.dim
        for b, xb in enumerate(x.coeffs):
            if xb != 0:
                coeffs[self.assignment[b]] += xb * self.scalar(b)
        return ElementVector(self.target, tuple(coeffs))

    def is_surjective(self) -> bool:
        return len(set(self.assignment)) == self.target.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_surjective()


def make_homomorphism(
    source: TableAlgebra,
    target: TableAlgebra,
    assignment: Sequence[int],
    scalars: Sequence[Fraction] | None = None,
) -> TableHomomorphism:
    """Validate and build the map b -> (|b|/|d_b|) d_b.

    Checks that the identity and involution are preserved and that the map is
    multiplicative on every basis pair. `scalars`, if given, are cross-checked
    against the forced values |b|/|d|.
    """
    assign = tuple(int(d) for d in assignment)
    if len(assign) != source.dim:
        raise AlgebraError("assignment must cover the whole source basis")
    if any(d < 0 or d >= target.dim for d in assign):
        raise AlgebraError("assignment target index out of range")
    if assign[0] != 0:
        raise AlgebraError("homomorphism must send the identity to the identity")
    for b in range(source.dim):
        if assign[source.star[b]] != target.star[assign[b]]:
            raise AlgebraError(
                f"involution not preserved at {source.labels[b]!r}"
            )
    phi = TableHomomorphism(source, target, assign)
    if scalars is not None:
        for b, s in enumerate(scalars):
            if Fraction(s) != phi.scalar(b):
                raise AlgebraError(
                    f"scalar mismatch at {source.labels[b]!r}: supplied {s}, "
                    f"forced value is |b|/|d| = {phi.scalar(b)}"
                )
    for x in range(source.dim):
        for y in range(source.dim):
            lhs = multiply(phi.apply_basis(x), phi.apply_basis(y))
            rhs = phi.apply(multiply(source.basis_vector(x), source.basis_vector(y)))
            if lhs != rhs:
                raise AlgebraError(
                    "multiplicativity fails at pair "
                    f"({source.labels[x]!r}, {source.labels[y]!r})"
                )
    return phi


def kernel(phi: TableHomomorphism) -> ClosedSubset:
    """ker phi = basis elements mapped onto the identity; closed and normal."""
    ker = closed_subset(phi.source, [b for b, d in enumerate(phi.assignment) if d == 0])
    if not ker.normal:
        raise AlgebraError("kernel of a validated homomorphism must be normal")
    return ker


def mapped_closed(
    phi: TableHomomorphism, n: ClosedSubset, direction: str = "forward"
) -> ClosedSubset:
    """Forward image or preimage of a closed subset; the result is verified closed."""
    if direction == "forward":
        if n.alg != phi.source:
            raise AlgebraError("subset does not live in the homomorphism source")
        return closed_subset(phi.target, {phi.assignment[b] for b in n.indices})
    if direction == "preimage":
        if n.alg != phi.target:
            raise AlgebraError("subset does not live in the homomorphism target")
        return closed_subset(
            phi.source, {b for b in range(phi.source.dim) if phi.assignment[b] in n.index_set}
        )
    raise AlgebraError(f"unknown direction {direction!r}")


def canonical_epimorphism(
    alg: TableAlgebra, n: ClosedSubset
) -> tuple[TableHomomorphism, QuotientResult]:
    """pi(b) = (|b|/|b//N|) (b//N) onto the quotient algebra, for normal N."""
    if not n.normal:
        raise RefusalError(
            "normal closed subset",
            detail="the quotient exists but the class map need not be a homomorphism",
        )
    q = quotient(alg, n)
    phi = make_homomorphism(alg, q.algebra, q.partition.cell_of)
    if kernel(phi).index_set != n.index_set:
        raise AlgebraError("kernel of the canonical epimorphism differs from the subset")
    return phi, q


def first_isomorphism(phi: TableHomomorphism) -> TableHomomorphism:
    """The induced isomorphism from source//ker(phi) onto the image subalgebra."""
    ker = kernel(phi)
    q = quotient(phi.source, ker)
    image = closed_subset(phi.target, set(phi.assignment))
    img_alg, img_idx = subalgebra(phi.target, image)
    pos = {b: p for p, b in enumerate(img_idx)}
    assign = []
    for cell in q.partition.cells:
        targets = {phi.assignment[b] for b in cell}
        if len(targets) != 1:
            raise AlgebraError("homomorphism is not constant on a kernel class")
        assign.append(pos[targets.pop()])
    induced = make_homomorphism(q.algebra, img_alg, assign)
    if not induced.is_bijective():
        raise AlgebraError("induced map on the quotient is not bijective")
    for i in range(q.algebra.dim):
        if induced.scalar(i) != 1:
            raise AlgebraError("induced bijection does not preserve degrees")
    return induced


def _common_int_tensors(b: TableAlgebra, c: TableAlgebra) -> tuple[list, list]:
    """Both tensors scaled by one common denominator, as nested int lists."""
    arr_b, scale_b = b._int_tensor
    arr_c, scale_c = c._int_tensor
    scale = lcm(scale_b, scale_c)
    tb = (arr_b * (scale // scale_b)).tolist()
    tc = (arr_c * (scale // scale_c)).tolist()
    return tb, tc


def find_isomorphism(
    b: TableAlgebra, c: TableAlgebra, max_dim: int = DEFAULT_ISO_BOUND
) -> tuple[int, ...] | None:
    """Search for a basis bijection with exactly equal structure constants.

    Returns the image index per basis index of `b`, or None if exhaustive
    backtracking finds none. The bijection preserves identity, degrees and
    involution by construction.
    """
    if b.dim != c.dim:
        return None
    if b.dim > max_dim:
        raise SearchBoundExceeded(
            f"isomorphism search bounded at dim {max_dim}, algebras have dim {b.dim}"
        )
    d = b.dim
    deg_b, deg_c = b.degrees, c.degrees
    if sorted(deg_b) != sorted(deg_c):
        return None
    self_b = [b.star[i] == i for i in range(d)]
    self_c = [c.star[i] == i for i in range(d)]
    if sorted(zip(deg_b, self_b)) != sorted(zip(deg_c, self_c)):
        return None
    tb, tc = _common_int_tensors(b, c)

    # deterministic position order: degree, then involution type, then index
    positions = [0] + sorted(range(1, d), key=lambda i: (deg_b[i], not self_b[i], i))
    image = [-1] * d
    image[0] = 0
    used = [False] * d
    used[0] = True
    assigned = [0]

    def consistent(p: int, q: int) -> bool:
        for x in assigned:
            fx = image[x]
            for y in assigned:
                fy = image[y]
                row_b, row_c = tb[x][y], tc[fx][fy]
                if x == p or y == p:
                    rest_b, rest_c = [], []
                    for z in range(d):
                        fz = image[z]
                        if fz >= 0:
                            if row_b[z] != row_c[fz]:
                                return False
                        else:
                            rest_b.append(row_b[z])
                    for z in range(d):
                        if not used[z]:
                            rest_c.append(row_c[z])
                    if sorted(rest_b) != sorted(rest_c):
                        return False
                elif row_b[p] != row_c[q]:
                    return False
        return True

    def extend(depth: int) -> bool:
        if depth == d:
            return True
        p = positions[depth]
        star_p = b.star[p]
        if image[star_p] >= 0:
            candidates = [c.star[image[star_p]]]
        else:
            candidates = range(d)
        for q in candidates:
            if used[q] or deg_c[q] != deg_b[p] or self_c[q] != self_b[p]:
                continue
            image[p] = q
            used[q] = True
            assigned.append(p)
            if consistent(p, q) and extend(depth + 1):
                return True
            assigned.pop()
            used[q] = False
            image[p] = -1
        return False

    if extend(1):
        return tuple(image)
    return None
