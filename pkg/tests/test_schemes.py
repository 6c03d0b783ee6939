"""Scheme validation, adjacency bridge, quotients, and the scheme wedge."""

import pytest

from tablealg import (
    AssociationScheme,
    SchemeWedgeInput,
    adjacency_algebra,
    cayley_scheme,
    closed_subset,
    find_isomorphism,
    find_scheme_isomorphism,
    group_algebra,
    quotient,
    quotient_scheme,
    scheme_wedge,
    scheme_wedge_via_quotient,
    subscheme,
    validate_scheme,
    verify_scheme_wedge_algebra,
)
from tablealg.oracles import cyclic_group
from tablealg.reports import AlgebraError, RefusalError

from common import Z8S_PARTITION, is_isomorphism, k3, k3_scheme, thin_scheme


def test_validate_k3_scheme():
    data = validate_scheme(k3_scheme())
    assert data.report.passed
    assert data.valencies == (1, 2)
    assert data.star == (0, 1)


def test_validate_thin_z4():
    data = validate_scheme(thin_scheme(4))
    assert data.report.passed
    assert data.valencies == (1, 1, 1, 1)
    assert data.star == (0, 3, 2, 1)


def test_validate_flipped_entry():
    rel = thin_scheme(4).rel.copy()
    rel.setflags(write=True)
    rel[1][2] = 2  # was 1
    data = validate_scheme(AssociationScheme(rel))
    assert not data.report.passed
    bad = [c for c in data.report.checks if c.status == "fail"]
    assert bad and bad[0].witness is not None


def test_validate_broken_diagonal():
    data = validate_scheme(AssociationScheme([[0, 1], [1, 1]]))
    names = {c.name for c in data.report.failures()}
    assert "diagonal-relation" in names


def test_adjacency_algebra_k3():
    assert adjacency_algebra(k3_scheme()).lam == k3().lam


def test_adjacency_algebra_thin_z8_is_group_algebra():
    alg = adjacency_algebra(thin_scheme(8))
    z8 = group_algebra(cyclic_group(8))
    assert alg.lam == z8.lam and alg.star == z8.star


def test_adjacency_algebra_one_point():
    alg = adjacency_algebra(AssociationScheme([[0]]))
    assert alg.dim == 1 and alg.order == 1


def test_sum_of_valencies_is_point_count():
    for scheme in [k3_scheme(), thin_scheme(4), cayley_scheme(cyclic_group(8), Z8S_PARTITION)]:
        assert adjacency_algebra(scheme).order == scheme.n


def test_subscheme_thin_z8():
    sub, points = subscheme(thin_scheme(8), [0, 2, 4, 6], 0)
    assert points == (0, 2, 4, 6)
    assert sub == thin_scheme(4)


def test_subscheme_identity_only():
    sub, points = subscheme(thin_scheme(8), [0], 3)
    assert sub.n == 1 and points == (3,)


def test_subscheme_of_z8s_cayley():
    scheme = cayley_scheme(cyclic_group(8), Z8S_PARTITION)
    sub, points = subscheme(scheme, [0, 2], 0)  # classes {0} and {4}
    assert points == (0, 4)
    assert sub == thin_scheme(2)


def test_quotient_scheme_thin_z8():
    quot, phi = quotient_scheme(thin_scheme(8), [0, 4])
    assert quot == thin_scheme(4)
    assert phi.kernel_relations() == (0, 4)
    assert phi.point_map == (0, 1, 2, 3, 0, 1, 2, 3)


def test_quotient_scheme_identity():
    quot, phi = quotient_scheme(thin_scheme(4), [0])
    assert quot == thin_scheme(4)
    assert phi.point_map == (0, 1, 2, 3)


def test_quotient_scheme_z4_by_half():
    quot, _ = quotient_scheme(thin_scheme(4), [0, 2])
    assert quot == thin_scheme(2)


def test_quotient_scheme_matches_algebra_quotient():
    cases = [
        (thin_scheme(8), [0, 4]),
        (thin_scheme(8), [0, 2, 4, 6]),
        (cayley_scheme(cyclic_group(8), Z8S_PARTITION), [0, 2]),
        (thin_scheme(12), [0, 6]),
    ]
    for scheme, h in cases:
        quot, _ = quotient_scheme(scheme, h)
        lhs = adjacency_algebra(quot)
        alg = adjacency_algebra(scheme)
        rhs = quotient(alg, closed_subset(alg, h)).algebra
        image = find_isomorphism(lhs, rhs, max_dim=max(12, lhs.dim))
        assert image is not None and is_isomorphism(lhs, rhs, image)


def test_scheme_wedge_z8_example():
    result = scheme_wedge_via_quotient(thin_scheme(4), [0, 2], thin_scheme(4), [0, 2])
    assert result.scheme.n == 8
    assert result.scheme.nrel == 6
    assert validate_scheme(result.scheme).report.passed
    oracle = cayley_scheme(cyclic_group(8), Z8S_PARTITION)
    assert find_scheme_isomorphism(result.scheme, oracle) is not None


def test_scheme_wedge_explicit_psi():
    result = scheme_wedge(
        SchemeWedgeInput(thin_scheme(4), (0, 2), thin_scheme(4), (0, 2, 0, 2))
    )
    assert result.scheme.n == 8
    assert verify_scheme_wedge_algebra(result).passed


def test_scheme_wedge_single_fiber():
    # D = G: one coset, the wedge is the fiber relabelled
    result = scheme_wedge_via_quotient(thin_scheme(4), [0, 1, 2, 3], thin_scheme(4), [0])
    assert result.scheme.n == 4
    report = verify_scheme_wedge_algebra(result)
    assert report.passed, report.to_text()


def test_scheme_wedge_point_fiber():
    # fiber = one point: the wedge is the base scheme unchanged
    result = scheme_wedge_via_quotient(thin_scheme(4), [0], AssociationScheme([[0]]), [0])
    assert result.scheme == thin_scheme(4)
    assert verify_scheme_wedge_algebra(result).passed


def test_scheme_wedge_rejects_bad_psi():
    with pytest.raises(AlgebraError):
        scheme_wedge(SchemeWedgeInput(thin_scheme(4), (0, 2), thin_scheme(4), (0, 0, 0, 0)))
    with pytest.raises(AlgebraError):
        scheme_wedge(SchemeWedgeInput(thin_scheme(4), (0, 2), thin_scheme(4), (0, 2, 0)))


def test_scheme_wedge_requires_normal_kernel():
    # fiber = thin S3, psi1 = projection onto the left cosets of a
    # transposition subgroup: a valid scheme epimorphism whose kernel
    # relations A({e, (01)}) are not normal, so the construction refuses
    from tablealg.oracles import symmetric_group_3

    s3_scheme = cayley_scheme(symmetric_group_3(), [[i] for i in range(6)])
    psi1 = (0, 1, 0, 2, 1, 2)
    with pytest.raises(RefusalError, match="normal"):
        scheme_wedge(SchemeWedgeInput(k3_scheme(), (0, 1), s3_scheme, psi1))


def test_verify_scheme_wedge_all_checks_z8():
    result = scheme_wedge_via_quotient(thin_scheme(4), [0, 2], thin_scheme(4), [0, 2])
    report = verify_scheme_wedge_algebra(result)
    assert report.passed, report.to_text()
    names = [c.name for c in report.checks]
    assert names == [
        "adjacency-algebra-valid",
        "induced-wedge-built",
        "tensor-equals-table-wedge",
        "quotient-by-kernel-is-base",
        "kernel-valency-is-point-ratio",
    ]


def test_scheme_isomorphism_search():
    a = cayley_scheme(cyclic_group(8), Z8S_PARTITION)
    assert find_scheme_isomorphism(a, a) is not None
    assert find_scheme_isomorphism(a, thin_scheme(8)) is None
    assert find_scheme_isomorphism(thin_scheme(4), thin_scheme(4)) is not None


def test_verify_scheme_wedge_on_supplied_provenance():
    # verification-only path: the wedge scheme and its provenance are supplied
    # directly instead of being built here (the Z8 Cayley scheme over thin Z4
    # with point map x -> x mod 4)
    from tablealg.schemes import SchemeWedgeResult

    manual = SchemeWedgeResult(
        scheme=cayley_scheme(cyclic_group(8), Z8S_PARTITION),
        base=thin_scheme(4),
        d_relations=(0, 2),
        tilde_count=4,
        outer_relations=(1, 3),
        psi=tuple(x % 4 for x in range(8)),
        kernel_tilde=(0, 2),
    )
    report = verify_scheme_wedge_algebra(manual)
    assert report.passed, report.to_text()


def test_verify_scheme_wedge_rejects_wrong_kernel_claim():
    from tablealg.schemes import SchemeWedgeResult

    manual = SchemeWedgeResult(
        scheme=cayley_scheme(cyclic_group(8), Z8S_PARTITION),
        base=thin_scheme(4),
        d_relations=(0, 2),
        tilde_count=4,
        outer_relations=(1, 3),
        psi=tuple(x % 4 for x in range(8)),
        kernel_tilde=(0,),  # wrong: the {4}-difference class also collapses
    )
    report = verify_scheme_wedge_algebra(manual)
    assert not report.passed


def test_scheme_wedge_over_fused_base():
    # base = the 8-point fusion scheme (not thin); fiber thin Z4 over <2>
    base = cayley_scheme(cyclic_group(8), Z8S_PARTITION)
    res = scheme_wedge_via_quotient(base, [0, 2], thin_scheme(4), [0, 2])
    assert res.scheme.n == 16 and res.scheme.nrel == 8
    report = verify_scheme_wedge_algebra(res)
    assert report.passed, report.to_text()

    # cross-check: the same object arises as the algebra-level wedge of the
    # fusion ring over Z4 (collapse the even classes onto <g2>)
    from tablealg import (
        closed_subset,
        find_isomorphism,
        group_algebra,
        make_homomorphism,
        schur_ring,
        subalgebra,
        wedge_input,
        wedge_product,
    )

    u = adjacency_algebra(res.scheme)
    left = schur_ring(cyclic_group(8), Z8S_PARTITION)
    right = group_algebra(cyclic_group(4))
    n = closed_subset(right, [0, 2])
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0, 0, 0, 0, 1, 1])
    w = wedge_product(wedge_input(left, right, n, phi))
    assert find_isomorphism(u, w.algebra) is not None
