"""Shared example algebras and small independent oracles for the tests."""

from fractions import Fraction
from functools import lru_cache

from tablealg import (
    AssociationScheme,
    TableAlgebra,
    adjacency_algebra,
    cayley_scheme,
    closed_subset,
    cyclic_group,
    direct_product,
    group_algebra,
    make_homomorphism,
    schur_ring,
    subalgebra,
    symmetric_group_3,
    wedge_input,
    wedge_product,
)

Z8S_PARTITION = [[0], [2], [4], [6], [1, 5], [3, 7]]
# Z8S basis order: c0, c2, c4, c6, c1_5 (= t1), c3_7 (= t3)
C0, C2, C4, C6, T1, T3 = range(6)


@lru_cache(maxsize=None)
def zn(n: int) -> TableAlgebra:
    return group_algebra(cyclic_group(n))


@lru_cache(maxsize=None)
def z8s() -> TableAlgebra:
    return schur_ring(cyclic_group(8), tuple(tuple(c) for c in Z8S_PARTITION))


@lru_cache(maxsize=None)
def k3_scheme() -> AssociationScheme:
    return AssociationScheme([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


@lru_cache(maxsize=None)
def k3() -> TableAlgebra:
    return adjacency_algebra(k3_scheme())


@lru_cache(maxsize=None)
def s3() -> TableAlgebra:
    return group_algebra(symmetric_group_3())


@lru_cache(maxsize=None)
def klein() -> TableAlgebra:
    return group_algebra(direct_product(cyclic_group(2), cyclic_group(2)))


@lru_cache(maxsize=None)
def z8_wedge():
    """The running example: Z4 wedged over Z2 into another Z4, giving Z8S."""
    left = zn(4)
    right = group_algebra(cyclic_group(4))
    n = closed_subset(right, [0, 2])
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0, 1, 0, 1])
    return wedge_product(wedge_input(left, right, n, phi))


def thin_scheme(n: int) -> AssociationScheme:
    return cayley_scheme(cyclic_group(n), [[i] for i in range(n)])


def group_ring_product(n: int, class_a, class_b) -> dict[int, int]:
    """Convolution counts of two subsets of Z_n, independent of schur_ring."""
    counts: dict[int, int] = {}
    for x in class_a:
        for y in class_b:
            z = (x + y) % n
            counts[z] = counts.get(z, 0) + 1
    return counts


def is_isomorphism(a: TableAlgebra, b: TableAlgebra, image) -> bool:
    """Exact check that `image` is a structure-preserving basis bijection."""
    if sorted(image) != list(range(a.dim)) or a.dim != b.dim:
        return False
    if image[0] != 0:
        return False
    for i in range(a.dim):
        if a.degrees[i] != b.degrees[image[i]]:
            return False
        if image[a.star[i]] != b.star[image[i]]:
            return False
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                if a.lam[i][j][k] != b.lam[image[i]][image[j]][image[k]]:
                    return False
    return True


def perturb(alg: TableAlgebra, i: int, j: int, k: int, delta=1) -> TableAlgebra:
    """Copy of the algebra with one tensor entry shifted by delta."""
    lam = [[list(row) for row in plane] for plane in alg.lam]
    lam[i][j][k] = lam[i][j][k] + Fraction(delta)
    return TableAlgebra(alg.labels, lam, alg.star)
