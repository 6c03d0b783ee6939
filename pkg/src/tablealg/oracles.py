"""Independent generators and brute-force checks used to certify the engine.

Nothing here shares tensor-assembly code with the main modules: Schur rings
expand products in the group ring, Cayley schemes place relations from group
differences, and the associativity oracle sums the defining identity
directly. Agreement between these paths and the main pipeline is part of the
acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .core import TableAlgebra
from .reports import AlgebraError, ValidationReport
from .schemes import AssociationScheme


@dataclass(frozen=True)
class FiniteGroupTable:
    """Multiplication table with the identity at index 0."""

    name: str
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        row = self.table[a]
        return row.index(0)

    def verify(self) -> None:
        n = self.order
        rng = range(n)
        for a in rng:
            if self.table[a][0] != a or self.table[0][a] != a:
                raise AlgebraError(f"{self.name}: index 0 is not the identity")
            if sorted(self.table[a]) != list(rng):
                raise AlgebraError(f"{self.name}: row {a} is not a permutation")
            if sorted(self.table[b][a] for b in rng) != list(rng):
                raise AlgebraError(f"{self.name}: column {a} is not a permutation")
        for a in rng:
            for b in rng:
                for c in rng:
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise AlgebraError(f"{self.name}: associativity fails at {(a, b, c)}")


def cyclic_group(n: int) -> FiniteGroupTable:
    if not 1 <= n <= 64:
        raise AlgebraError("cyclic groups are generated for 1 <= n <= 64")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroupTable(f"Z{n}", table)


def direct_product(g: FiniteGroupTable, h: FiniteGroupTable) -> FiniteGroupTable:
    """Pairs (a, b) packed as a * |H| + b."""
    nh = h.order
    size = g.order * nh
    table = []
    for x in range(size):
        ax, bx = divmod(x, nh)
        row = []
        for y in range(size):
            ay, by = divmod(y, nh)
            row.append(g.mul(ax, ay) * nh + h.mul(bx, by))
        table.append(tuple(row))
    return FiniteGroupTable(f"{g.name}x{h.name}", tuple(table))


def symmetric_group_3() -> FiniteGroupTable:
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(3))] for q in perms) for p in perms
    )
    return FiniteGroupTable("S3", table)


def group_algebra(group: FiniteGroupTable) -> TableAlgebra:
    """The thin table algebra: basis = group elements, all degrees 1."""
    group.verify()
    n = group.order
    lam = [
        [[Fraction(1 if group.mul(a, b) == c else 0) for c in range(n)] for b in range(n)]
        for a in range(n)
    ]
    star = tuple(group.inverse(a) for a in range(n))
    labels = tuple(f"g{a}" for a in range(n))
    return TableAlgebra(labels, lam, star)


def _check_partition(group: FiniteGroupTable, partition: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    classes = [tuple(sorted(set(int(x) for x in cls))) for cls in partition]
    if not classes:
        raise AlgebraError("empty partition")
    seen: set[int] = set()
    for cls in classes:
        if not cls:
            raise AlgebraError("partition classes must be nonempty")
        if seen & set(cls):
            raise AlgebraError("partition classes overlap")
        seen |= set(cls)
    if seen != set(range(group.order)):
        raise AlgebraError("partition does not cover the group")
    if classes[0] != (0,):
        raise AlgebraError("the first class must be the identity singleton")
    class_sets = {cls for cls in classes}
    for cls in classes:
        inv = tuple(sorted(group.inverse(x) for x in cls))
        if inv not in class_sets:
            raise AlgebraError(f"class {cls} has no inverse class in the partition")
    return classes


def schur_ring(group: FiniteGroupTable, partition: Sequence[Sequence[int]]) -> TableAlgebra:
    """Table algebra on the class sums, by exact group-ring expansion.

    The class sums must close under products: the product counts have to be
    constant on every class, otherwise the offending product is reported.
    """
    group.verify()
    classes = _check_partition(group, partition)
    k = len(classes)
    class_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            class_of[x] = i
    lam = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            counts = [0] * group.order
            for x in ci:
                for y in cj:
                    counts[group.mul(x, y)] += 1
            for m, cm in enumerate(classes):
                vals = {counts[z] for z in cm}
                if len(vals) != 1:
                    raise AlgebraError(
                        f"class sums do not close: product of classes {ci} and {cj} "
                        f"is not constant on {cm}"
                    )
                lam[i][j][m] = Fraction(vals.pop())
    star = tuple(class_of[group.inverse(cls[0])] for cls in classes)
    labels = tuple("c" + "_".join(str(x) for x in cls) for cls in classes)
    return TableAlgebra(labels, lam, star)


def cayley_scheme(group: FiniteGroupTable, partition: Sequence[Sequence[int]]) -> AssociationScheme:
    """Points = group elements; the relation of (x, y) is the class of x^{-1} y."""
    group.verify()
    classes = _check_partition(group, partition)
    class_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            class_of[x] = i
    n = group.order
    rel = [
        [class_of[group.mul(group.inverse(x), y)] for y in range(n)] for x in range(n)
    ]
    return AssociationScheme(rel)


def brute_force_associativity(alg: TableAlgebra) -> ValidationReport:
    """Direct summation of the associativity identity over all quadruples.

    Deliberately shares no code with the validator in `core`.
    """
    report = ValidationReport(subject="brute-force-associativity")
    lam = alg.lam
    rng = range(alg.dim)
    witness = None
    for a in rng:
        for b in rng:
            ab = lam[a][b]
            for c in rng:
                bc = lam[b][c]
                for e in rng:
                    left = sum(ab[t] * lam[t][c][e] for t in rng)
                    right = sum(bc[t] * lam[a][t][e] for t in rng)
                    if left != right:
                        witness = (alg.labels[a], alg.labels[b], alg.labels[c], alg.labels[e])
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    report.add("associativity-quadruples", witness is None, witness=witness)
    return report
