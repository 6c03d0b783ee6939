"""Wedge and wreath products: construction, recognition, round trips."""

import pytest

from tablealg import (
    closed_subset,
    find_isomorphism,
    group_algebra,
    make_homomorphism,
    multiply,
    quotient,
    recognize_wedge,
    schur_ring,
    subalgebra,
    validate,
    verify_wedge_identities,
    wedge_input,
    wedge_product,
    wreath_product,
)
from tablealg.oracles import cyclic_group, direct_product
from tablealg.reports import AlgebraError, RefusalError

from common import C0, C4, T1, is_isomorphism, k3, z8_wedge, z8s, zn


def test_z8_wedge_equals_schur_ring_exactly():
    w = z8_wedge().algebra
    target = z8s()
    assert w.dim == 6
    # canonical matching: (1, g, g2, g3, hbar, h3bar) -> (c0, c2, c4, c6, t1, t3)
    assert w.lam == target.lam
    assert w.star == target.star
    assert w.degrees == target.degrees


def test_z8_wedge_products():
    w = z8_wedge().algebra
    hbar = w.basis_vector(4)
    prod = multiply(hbar, hbar)
    assert prod.coeffs == (0, 2, 0, 2, 0, 0)
    assert w.degrees == (1, 1, 1, 1, 2, 2)


def test_wedge_dimension_and_order_formula():
    w = z8_wedge()
    left, right, n = w.source.left, w.source.right, w.source.n_subset
    assert w.algebra.dim == left.dim + right.dim - len(n)
    assert w.algebra.order == left.order + w.o_k * (right.order - n.order)
    assert w.algebra.order == 8


def test_wedge_output_validates():
    assert validate(z8_wedge().algebra).passed


def test_wedge_degenerate_n_equals_b():
    # N = B: the rescaled part is empty and the wedge is the left algebra
    left, right = zn(2), zn(2)
    n = closed_subset(right, [0, 1])
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0, 1])
    w = wedge_product(wedge_input(left, right, n, phi))
    assert w.algebra.lam == left.lam
    assert verify_wedge_identities(w).passed


def test_wedge_requires_surjective_phi():
    left, right = zn(2), zn(4)
    n = closed_subset(right, [0, 2])
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0, 0])  # lands on the identity only
    with pytest.raises(AlgebraError, match="surjective"):
        wedge_input(left, right, n, phi)


def test_wreath_z2_z2():
    w = wreath_product(zn(2), zn(2))
    alg = w.algebra
    assert alg.dim == 3
    assert alg.degrees == (1, 1, 2)
    bbar = alg.basis_vector(2)
    assert multiply(bbar, bbar).coeffs == (2, 2, 0)
    # oracle: Schur ring over Z2 x Z2 with classes {0}, {1}, {2,3}
    oracle = schur_ring(direct_product(cyclic_group(2), cyclic_group(2)), [[0], [1], [2, 3]])
    assert alg.lam == oracle.lam and alg.star == oracle.star


def test_wreath_with_trivial_right_factor():
    trivial = group_algebra(cyclic_group(1))
    w = wreath_product(zn(4), trivial)
    assert w.algebra.lam == zn(4).lam


def test_wreath_z2_k3():
    w = wreath_product(zn(2), k3())
    alg = w.algebra
    assert alg.dim == 3  # dim D + dim B - 1 = 2 + 2 - 1
    assert alg.degrees == (1, 1, 4)  # |gbar| = o(K)|g| = 2*2
    assert validate(alg).passed
    assert verify_wedge_identities(w).passed


def test_wreath_action_identity():
    # every d acts on the outer part by its degree
    w = wreath_product(zn(4), k3())
    alg = w.algebra
    for d in range(4):
        vd = alg.basis_vector(d)
        for x in range(4, alg.dim):
            vx = alg.basis_vector(x)
            assert multiply(vd, vx) == alg.degrees[d] * vx
            assert multiply(vx, vd) == alg.degrees[d] * vx


def test_mixed_degree_identity():
    for w in [z8_wedge(), wreath_product(zn(2), k3())]:
        alg = w.algebra
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = multiply(alg.basis_vector(i), alg.basis_vector(j))
                assert prod.degree() == alg.degrees[i] * alg.degrees[j]


def test_recognize_wedge_z8s():
    decomp = recognize_wedge(
        z8s(), closed_subset(z8s(), [C0, C4]), closed_subset(z8s(), [0, 1, 2, 3])
    )
    assert decomp.left.dim == 4 and decomp.right.dim == 4
    assert decomp.matching == (0, 1, 2, 3, 4, 5)
    # reconstruction equality is asserted inside recognize_wedge; spot-check
    assert decomp.reconstruction.algebra.lam[4][4] == z8s().lam[T1][T1]


def test_recognize_wedge_trivial_kernel():
    decomp = recognize_wedge(
        z8s(), closed_subset(z8s(), [0]), closed_subset(z8s(), [0, 1, 2, 3])
    )
    assert decomp.reconstruction.algebra.dim == 6


def test_recognize_wedge_refusal_with_witness():
    k = closed_subset(zn(4), [0, 2])
    with pytest.raises(RefusalError) as err:
        recognize_wedge(zn(4), k, k)
    assert err.value.witness == "g1"


def test_recognize_round_trip_on_constructed_wedges():
    for w in [z8_wedge(), wreath_product(zn(2), zn(2)), wreath_product(zn(2), k3())]:
        alg = w.algebra
        k = closed_subset(alg, w.kernel_part)
        d = closed_subset(alg, w.d_part)
        decomp = recognize_wedge(alg, k, d)
        assert decomp.reconstruction.algebra.lam == tuple(
            tuple(
                tuple(alg.lam[decomp.matching[i]][decomp.matching[j]][decomp.matching[z]]
                      for z in range(alg.dim))
                for j in range(alg.dim)
            )
            for i in range(alg.dim)
        )


def test_verify_wedge_identities_all_examples():
    for w in [
        z8_wedge(),
        wreath_product(zn(2), zn(2)),
        wreath_product(zn(2), k3()),
        wreath_product(k3(), zn(4)),
    ]:
        report = verify_wedge_identities(w)
        assert report.passed, report.to_text()


def test_verify_quotient_matches_right_factor_for_wreath():
    w = wreath_product(zn(2), zn(2))
    k = closed_subset(w.algebra, w.kernel_part)  # = the whole left factor
    assert k.indices == (0, 1)
    q = quotient(w.algebra, k)
    image = find_isomorphism(q.algebra, zn(2))
    assert image is not None and is_isomorphism(q.algebra, zn(2), image)


def test_chained_wreath_products():
    inner = wreath_product(zn(2), zn(2))
    outer = wreath_product(inner.algebra, zn(2))
    alg = outer.algebra
    assert alg.dim == 4
    assert [str(d) for d in alg.degrees] == ["1", "1", "2", "4"]
    assert alg.order == 8
    assert validate(alg).passed
    assert verify_wedge_identities(outer).passed


def test_wedge_with_schur_ring_left_factor():
    # Z8S maps onto <g2> inside Z4 by collapsing the even classes
    left = z8s()
    right = zn(4)
    n = closed_subset(right, [0, 2])
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0, 0, 0, 0, 1, 1])
    w = wedge_product(wedge_input(left, right, n, phi))
    assert w.algebra.dim == 8
    assert w.o_k == 4  # kernel = the four even classes
    assert w.algebra.order == 16
    assert [str(d) for d in w.algebra.degrees] == ["1", "1", "1", "1", "2", "2", "4", "4"]
    assert verify_wedge_identities(w).passed
    decomp = recognize_wedge(
        w.algebra,
        closed_subset(w.algebra, w.kernel_part),
        closed_subset(w.algebra, w.d_part),
    )
    assert decomp.matching == tuple(range(8))


def test_hom_rejected_when_classes_mix():
    # sending c2 to g2 while t1 also goes to g2 breaks multiplicativity
    left = z8s()
    right = zn(4)
    n_alg, _ = subalgebra(right, closed_subset(right, [0, 2]))
    with pytest.raises(AlgebraError, match="multiplicativity"):
        make_homomorphism(left, n_alg, [0, 1, 0, 1, 1, 1])


def test_verify_wedge_identities_reports_witnesses_on_tampered_algebra():
    from tablealg.wedge import WedgeAlgebra

    from common import perturb

    w = z8_wedge()
    broken = WedgeAlgebra(perturb(w.algebra, 4, 1, 4), w.source, w.bbar_source)
    report = verify_wedge_identities(broken)
    assert not report.passed
    assert any(c.witness is not None for c in report.failures())
