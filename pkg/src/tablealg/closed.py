"""Closed subsets, normality, double cosets, quotients and stabilizers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .core import ElementVector, TableAlgebra, multiply, order_and_sum, validate_or_raise
from .reports import AlgebraError, SearchBoundExceeded

DEFAULT_ENUM_BOUND = 16


@dataclass(frozen=True)
class ClosedSubset:
    """A basis subset N with 1 in N, N* = N and Supp(a*.b) inside N."""

    alg: TableAlgebra
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    @property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    @cached_property
    def order(self) -> Fraction:
        return order_and_sum(self.indices, self.alg)[0]

    @cached_property
    def plus(self) -> ElementVector:
        """The sum N+ of the subset's basis elements."""
        return order_and_sum(self.indices, self.alg)[1]

    @cached_property
    def idempotent(self) -> ElementVector:
        """e = o(N)^{-1} N+."""
        return (Fraction(1) / self.order) * self.plus

    @cached_property
    def normal(self) -> bool:
        """bN = Nb for every basis element b."""
        alg = self.alg
        for b in range(alg.dim):
            vb = alg.basis_vector(b)
            if multiply(vb, self.plus).support() != multiply(self.plus, vb).support():
                return False
        return True

    def labels(self) -> tuple[str, ...]:
        return tuple(self.alg.labels[i] for i in self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.index_set

    def __len__(self) -> int:
        return len(self.indices)


def closed_subset(alg: TableAlgebra, indices: Iterable[int]) -> ClosedSubset:
    """Wrap and verify a closed subset."""
    idx = frozenset(int(i) for i in indices)
    if not idx:
        raise AlgebraError("closed subset must be nonempty")
    if any(i < 0 or i >= alg.dim for i in idx):
        raise AlgebraError("subset index out of range")
    if 0 not in idx:
        raise AlgebraError("closed subset must contain the identity")
    for i in idx:
        if alg.star[i] not in idx:
            raise AlgebraError(f"subset is not star-closed at {alg.labels[i]!r}")
        for j in idx:
            bad = _supp_product(alg, alg.star[i], j) - idx
            if bad:
                raise AlgebraError(
                    f"subset not closed: {alg.labels[i]!r}* . {alg.labels[j]!r} "
                    f"meets {sorted(alg.labels[b] for b in bad)}"
                )
    return ClosedSubset(alg, tuple(idx))


def _supp_product(alg: TableAlgebra, a: int, b: int) -> frozenset[int]:
    return frozenset(c for c in range(alg.dim) if alg.lam[a][b][c] != 0)


def complex_product(subsets: Sequence[Iterable[int]], alg: TableAlgebra) -> frozenset[int]:
    """Union of supports of all products b_1 ... b_m with b_i from the i-th set.

    With nonnegative structure constants there is no cancellation, so the
    product can be folded pairwise.
    """
    if not subsets:
        raise AlgebraError("complex product needs at least one factor")
    sets = [frozenset(int(i) for i in s) for s in subsets]
    for s in sets:
        if not s:
            raise AlgebraError("complex product factor must be nonempty")
        if any(i < 0 or i >= alg.dim for i in s):
            raise AlgebraError("subset index out of range")
    acc = sets[0]
    for nxt in sets[1:]:
        acc = frozenset().union(*(_supp_product(alg, a, b) for a in acc for b in nxt))
    return acc


def closure(generators: Iterable[int], alg: TableAlgebra) -> ClosedSubset:
    """Smallest closed subset containing the generators (fixed point of Supp(x*.y))."""
    current = set(int(i) for i in generators)
    if not current:
        raise AlgebraError("closure of the empty set is undefined")
    current.add(0)
    current |= {alg.star[i] for i in current}
    while True:
        new = set()
        for a in current:
            for b in current:
                new |= _supp_product(alg, alg.star[a], b) - current
        if not new:
            break
        current |= new
        current |= {alg.star[i] for i in current}
    return closed_subset(alg, current)


def enumerate_closed_subsets(
    alg: TableAlgebra, max_dim: int = DEFAULT_ENUM_BOUND
) -> list[ClosedSubset]:
    """All closed subsets, by breadth-first closure of generator sets."""
    if alg.dim > max_dim:
        raise SearchBoundExceeded(
            f"closed-subset enumeration bounded at dim {max_dim}, algebra has dim {alg.dim}"
        )
    found: dict[frozenset[int], ClosedSubset] = {}
    frontier = []
    for i in range(alg.dim):
        n = closure([i], alg)
        if n.index_set not in found:
            found[n.index_set] = n
            frontier.append(n)
    while frontier:
        base = frontier.pop()
        for b in range(alg.dim):
            if b in base.index_set:
                continue
            n = closure(set(base.indices) | {b}, alg)
            if n.index_set not in found:
                found[n.index_set] = n
                frontier.append(n)
    return sorted(found.values(), key=lambda n: (len(n.indices), n.indices))


@dataclass(frozen=True)
class DoubleCosetPartition:
    """Cells NbN, each with its smallest index as representative."""

    subset: ClosedSubset
    cells: tuple[tuple[int, ...], ...]

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(cell[0] for cell in self.cells)

    @cached_property
    def cell_of(self) -> tuple[int, ...]:
        lookup = [-1] * self.subset.alg.dim
        for k, cell in enumerate(self.cells):
            for b in cell:
                lookup[b] = k
        return tuple(lookup)


def double_cosets(n: ClosedSubset) -> DoubleCosetPartition:
    """Partition of the basis into cells Supp(N+ . b . N+)."""
    alg = n.alg
    seen: set[int] = set()
    cells: list[tuple[int, ...]] = []
    for b in range(alg.dim):
        if b in seen:
            continue
        cell = multiply(multiply(n.plus, alg.basis_vector(b)), n.plus).support()
        cells.append(tuple(sorted(cell)))
        if b not in cell:
            raise AlgebraError(f"double coset of {alg.labels[b]!r} does not contain it")
        overlap = cell & seen
        if overlap:
            raise AlgebraError("double cosets do not partition the basis")
        seen |= cell
    if set(cells[0]) != n.index_set:
        raise AlgebraError("double coset of the identity differs from the subset")
    return DoubleCosetPartition(n, tuple(cells))


@dataclass(frozen=True)
class QuotientResult:
    algebra: TableAlgebra
    partition: DoubleCosetPartition

    def class_vector(self, b: int) -> ElementVector:
        """b//N = o(N)^{-1} (NbN)+ as a vector over the original basis."""
        n = self.partition.subset
        cell = self.partition.cells[self.partition.cell_of[b]]
        coeffs = [Fraction(0)] * n.alg.dim
        inv = Fraction(1) / n.order
        for x in cell:
            coeffs[x] = inv
        return ElementVector(n.alg, tuple(coeffs))


def quotient(alg: TableAlgebra, n: ClosedSubset) -> QuotientResult:
    """Quotient algebra on the double-coset classes b//N.

    gamma[i][j][k] = o(N)^{-1} * sum of lam[r][s][t] over r in cell_i, s in
    cell_j, for a class member t of cell_k. The sum is recomputed for every t
    in cell_k and must agree; disagreement signals a corrupted tensor.
    """
    part = double_cosets(n)
    cells = part.cells
    k = len(cells)
    inv_order = Fraction(1) / n.order
    lam = alg.lam
    gamma = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for i, ci in enumerate(cells):
        for j, cj in enumerate(cells):
            for kk, ck in enumerate(cells):
                values = set()
                for t in ck:
                    values.add(sum((lam[r][s][t] for r in ci for s in cj), Fraction(0)))
                    if len(values) > 1:
                        raise AlgebraError(
                            "quotient structure constant depends on the class member: "
                            f"classes ({alg.labels[ci[0]]}, {alg.labels[cj[0]]}, "
                            f"{alg.labels[ck[0]]})"
                        )
                gamma[i][j][kk] = inv_order * values.pop()
    star = tuple(part.cell_of[alg.star[cell[0]]] for cell in cells)
    labels = tuple(f"[{alg.labels[cell[0]]}]" for cell in cells)
    out = TableAlgebra(labels, gamma, star)
    validate_or_raise(out, "table-algebra", context="quotient output")

    for i, cell in enumerate(cells):
        want = sum((alg.degrees[x] for x in cell), Fraction(0)) / n.order
        if out.degrees[i] != want:
            raise AlgebraError(f"quotient degree mismatch at class {labels[i]}")
    if alg.order / n.order != out.order:
        raise AlgebraError("quotient order is not o(B)/o(N)")

    result = QuotientResult(out, part)
    if n.normal:
        e = n.idempotent
        for b in range(alg.dim):
            cls = result.class_vector(b)
            lhs = (alg.degrees[b] / cls.degree()) * cls
            rhs = multiply(multiply(e, alg.basis_vector(b)), e)
            if lhs != rhs:
                raise AlgebraError(
                    f"normal quotient identity (|b|/|b//N|) b//N = e.b.e fails at {alg.labels[b]!r}"
                )
    return result


def stabilizer(h: ClosedSubset, targets: Iterable[int]) -> frozenset[int]:
    """Elements x of H with x.b = |x|.b = b.x for every b in the target set."""
    alg = h.alg
    tgt = sorted(set(int(b) for b in targets))
    if not tgt:
        raise AlgebraError("stabilizer target set must be nonempty")
    out = set()
    for x in h.indices:
        vx = alg.basis_vector(x)
        ok = True
        for b in tgt:
            vb = alg.basis_vector(b)
            scaled = alg.degrees[x] * vb
            if multiply(vx, vb) != scaled or multiply(vb, vx) != scaled:
                ok = False
                break
        if ok:
            out.add(x)
    return frozenset(out)


def subalgebra(alg: TableAlgebra, n: ClosedSubset) -> tuple[TableAlgebra, tuple[int, ...]]:
    """The table algebra spanned by a closed subset, plus its index embedding."""
    idx = n.indices
    pos = {b: p for p, b in enumerate(idx)}
    lam = [
        [
            [
                alg.lam[a][b][c] if c in pos else Fraction(0)
                for c in idx
            ]
            for b in idx
        ]
        for a in idx
    ]
    # products of subset elements must not leave the subset
    for a in idx:
        for b in idx:
            for c in range(alg.dim):
                if c not in pos and alg.lam[a][b][c] != 0:
                    raise AlgebraError("subset is not closed; cannot form subalgebra")
    star = tuple(pos[alg.star[b]] for b in idx)
    labels = tuple(alg.labels[b] for b in idx)
    return TableAlgebra(labels, lam, star), idx
