"""Association schemes as relation matrices, and the scheme-level wedge.

A scheme on n points is an n x n matrix of relation indices with the diagonal
as relation 0. Validation counts intersection numbers exhaustively (with
adjacency-matrix products) and emits the structure tensor, which bridges to
the table-algebra side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .closed import closed_subset, double_cosets, quotient, subalgebra
from .core import TableAlgebra
from .homs import find_isomorphism, kernel, make_homomorphism
from .reports import AlgebraError, RefusalError, ValidationReport
from .wedge import wedge_input, wedge_product


class AssociationScheme:
    """Relation partition of X x X, stored as the index matrix."""

    def __init__(self, rel):
        arr = np.array(rel, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise AlgebraError("relation matrix must be square")
        if arr.size == 0:
            raise AlgebraError("scheme needs at least one point")
        if arr.min() < 0:
            raise AlgebraError("relation indices must be nonnegative")
        arr.setflags(write=False)
        self.rel = arr

    @property
    def n(self) -> int:
        return self.rel.shape[0]

    @property
    def nrel(self) -> int:
        return int(self.rel.max()) + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, AssociationScheme) and np.array_equal(self.rel, other.rel)

    def __repr__(self) -> str:
        return f"AssociationScheme(n={self.n}, relations={self.nrel})"


@dataclass
class SchemeValidation:
    report: ValidationReport
    lam: np.ndarray | None = None  # integer tensor lam[g][h][k]
    star: tuple[int, ...] | None = None
    valencies: tuple[int, ...] | None = None


def validate_scheme(scheme: AssociationScheme) -> SchemeValidation:
    """Check the scheme axioms by exhaustive counting; emit the tensor on success."""
    report = ValidationReport(subject=f"scheme[n={scheme.n}]")
    rel = scheme.rel
    n, nrel = scheme.n, scheme.nrel

    diag_ok = bool((np.diag(rel) == 0).all()) and bool(
        ((rel == 0) == np.eye(n, dtype=bool)).all()
    )
    witness = None
    if not diag_ok:
        bad = np.argwhere((rel == 0) != np.eye(n, dtype=bool))
        witness = tuple(int(v) for v in bad[0])
    report.add("diagonal-relation", diag_ok, witness=witness)

    counts = np.bincount(rel.ravel(), minlength=nrel)
    missing = [g for g in range(nrel) if counts[g] == 0]
    report.add("relations-nonempty", not missing, witness=missing or None)

    star: list[int] = []
    witness = None
    if not missing:
        relT = rel.T
        for g in range(nrel):
            vals = np.unique(relT[rel == g])
            if len(vals) != 1:
                xy = np.argwhere(rel == g)
                witness = (int(xy[0][0]), int(xy[0][1]))
                break
            star.append(int(vals[0]))
        if witness is None and sorted(star) != list(range(nrel)):
            witness = ("pairing-not-involutive",)
    report.add("pairing", witness is None and not missing, witness=witness)
    if not report.passed:
        return SchemeValidation(report)

    masks = np.stack([rel == g for g in range(nrel)])
    adj = masks.astype(np.int64)
    first = [tuple(int(v) for v in np.argwhere(masks[g])[0]) for g in range(nrel)]
    lam = np.zeros((nrel, nrel, nrel), dtype=np.int64)
    witness = None
    for g in range(nrel):
        prod = adj[g] @ adj  # stack of A_g A_h over h
        for h in range(nrel):
            c = prod[h]
            values = c[tuple(np.array(first).T)]
            lam[g][h] = values
            expected = values[rel]
            if not np.array_equal(c, expected):
                bad = np.argwhere(c != expected)[0]
                x, y = int(bad[0]), int(bad[1])
                xr, yr = first[int(rel[x][y])]
                witness = (x, y, xr, yr)
                break
        if witness:
            break
    report.add("intersection-numbers", witness is None, witness=witness)
    if witness:
        return SchemeValidation(report)

    valencies = tuple(int(lam[g][star[g]][0]) for g in range(nrel))
    return SchemeValidation(report, lam, tuple(star), valencies)


def validate_scheme_or_raise(scheme: AssociationScheme, context: str = "") -> SchemeValidation:
    data = validate_scheme(scheme)
    if not data.report.passed:
        names = ", ".join(f"{c.name} (witness {c.witness})" for c in data.report.failures())
        prefix = f"{context}: " if context else ""
        raise AlgebraError(f"{prefix}scheme axioms fail: {names}")
    return data


def adjacency_algebra(scheme: AssociationScheme) -> TableAlgebra:
    """Table algebra on the relations, with the intersection numbers as tensor."""
    cached = getattr(scheme, "_adjacency_algebra", None)
    if cached is not None:
        return cached
    data = validate_scheme_or_raise(scheme, context="adjacency algebra input")
    labels = tuple(f"r{g}" for g in range(scheme.nrel))
    alg = TableAlgebra(labels, data.lam.tolist(), data.star)
    if alg.order != scheme.n:
        raise AlgebraError("sum of valencies differs from the point count")
    scheme._adjacency_algebra = alg
    return alg


def subscheme(
    scheme: AssociationScheme, h_indices: Sequence[int], x: int
) -> tuple[AssociationScheme, tuple[int, ...]]:
    """The scheme induced on the point set xH, with its point list.

    H must be closed in the adjacency algebra; the relations of the result are
    the H relations relabelled in sorted order, and the adjacency algebra of
    the result is checked to be isomorphic to the subalgebra spanned by A(H).
    """
    alg = adjacency_algebra(scheme)
    h = closed_subset(alg, h_indices)
    if not 0 <= x < scheme.n:
        raise AlgebraError("base point out of range")
    points = [y for y in range(scheme.n) if scheme.rel[x][y] in h.index_set]
    relabel = {g: p for p, g in enumerate(h.indices)}
    sub = AssociationScheme(
        [[relabel[int(scheme.rel[p][q])] for q in points] for p in points]
    )
    sub_alg = adjacency_algebra(sub)
    h_alg, _ = subalgebra(alg, h)
    if find_isomorphism(sub_alg, h_alg, max_dim=max(12, len(h))) is None:
        raise AlgebraError("subscheme algebra is not isomorphic to the closed-subset algebra")
    return sub, tuple(points)


@dataclass(frozen=True)
class SchemeEpimorphism:
    source: AssociationScheme
    target: AssociationScheme
    point_map: tuple[int, ...]
    rel_map: tuple[int, ...]

    def kernel_relations(self) -> tuple[int, ...]:
        return tuple(g for g, img in enumerate(self.rel_map) if img == 0)


def check_scheme_epimorphism(phi: SchemeEpimorphism) -> None:
    """Surjective on points and relations; relation-compatible on every pair."""
    src, tgt = phi.source, phi.target
    if len(phi.point_map) != src.n or len(phi.rel_map) != src.nrel:
        raise AlgebraError("epimorphism maps have the wrong length")
    if set(phi.point_map) != set(range(tgt.n)):
        raise AlgebraError("point map is not onto the target points")
    if set(phi.rel_map) != set(range(tgt.nrel)):
        raise AlgebraError("relation map is not onto the target relations")
    pm = np.array(phi.point_map)
    rm = np.array(phi.rel_map)
    if not np.array_equal(tgt.rel[pm[:, None], pm[None, :]], rm[src.rel]):
        raise AlgebraError("pairs are not mapped into the image relation")


def quotient_scheme(
    scheme: AssociationScheme, h_indices: Sequence[int]
) -> tuple[AssociationScheme, SchemeEpimorphism]:
    """Points become the cosets xH; relations become the H-double-coset classes."""
    alg = adjacency_algebra(scheme)
    h = closed_subset(alg, h_indices)
    part = double_cosets(h)

    coset_of = [-1] * scheme.n
    cosets: list[list[int]] = []
    for x in range(scheme.n):
        if coset_of[x] >= 0:
            continue
        members = [y for y in range(scheme.n) if scheme.rel[x][y] in h.index_set]
        if x not in members:
            raise AlgebraError("coset of a point does not contain it")
        cid = len(cosets)
        for y in members:
            if coset_of[y] >= 0:
                raise AlgebraError("cosets do not partition the points")
            coset_of[y] = cid
        cosets.append(members)

    m = len(cosets)
    cell_of = part.cell_of
    out = np.zeros((m, m), dtype=np.int64)
    for i, pi in enumerate(cosets):
        for j, pj in enumerate(cosets):
            vals = {cell_of[int(scheme.rel[p][q])] for p in pi for q in pj}
            if len(vals) != 1:
                raise AlgebraError(
                    "induced relation between cosets is not well-defined "
                    f"(cosets {i}, {j})"
                )
            out[i][j] = vals.pop()
    result = AssociationScheme(out)
    validate_scheme_or_raise(result, context="quotient scheme")
    phi = SchemeEpimorphism(
        scheme, result, tuple(coset_of), tuple(cell_of)
    )
    check_scheme_epimorphism(phi)
    if set(phi.kernel_relations()) != h.index_set:
        raise AlgebraError("kernel of the quotient epimorphism differs from H")
    return result, phi


def find_scheme_isomorphism(
    a: AssociationScheme, b: AssociationScheme
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Joint point/relation bijection preserving the partition, or None."""
    if a.n != b.n or a.nrel != b.nrel:
        return None
    n, nrel = a.n, a.nrel
    ra, rb = a.rel.tolist(), b.rel.tolist()
    image = [-1] * n
    used = [False] * n
    rmap = [-1] * nrel
    rmap_inv = [-1] * nrel
    rmap[0] = 0
    rmap_inv[0] = 0
    assigned: list[int] = []

    def try_pair(g: int, h: int, undo: list[int]) -> bool:
        if rmap[g] == h:
            return True
        if rmap[g] != -1 or rmap_inv[h] != -1:
            return False
        rmap[g] = h
        rmap_inv[h] = g
        undo.append(g)
        return True

    def extend(p: int) -> bool:
        if p == n:
            return True
        for q in range(n):
            if used[q]:
                continue
            undo: list[int] = []
            ok = True
            for x in assigned:
                if not try_pair(ra[x][p], rb[image[x]][q], undo) or not try_pair(
                    ra[p][x], rb[q][image[x]], undo
                ):
                    ok = False
                    break
            if ok and not try_pair(ra[p][p], rb[q][q], undo):
                ok = False
            if ok:
                image[p] = q
                used[q] = True
                assigned.append(p)
                if extend(p + 1):
                    return True
                assigned.pop()
                used[q] = False
                image[p] = -1
            for g in undo:
                rmap_inv[rmap[g]] = -1
                rmap[g] = -1
        return False

    if extend(0):
        return tuple(image), tuple(rmap)
    return None


def _coset_translation(
    rel: np.ndarray, src: Sequence[int], dst: Sequence[int]
) -> dict[int, int] | None:
    """Point bijection src -> dst preserving the ambient relation entries."""
    if len(src) != len(dst):
        return None
    r = rel.tolist()
    k = len(src)
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == k:
            return True
        p = src[i]
        for q in dst:
            if q in used:
                continue
            if r[p][p] != r[q][q]:
                continue
            ok = all(
                r[p][x] == r[q][image[x]] and r[x][p] == r[image[x]][q]
                for x in src[:i]
            )
            if ok:
                image[p] = q
                used.add(q)
                if extend(i + 1):
                    return True
                used.discard(q)
                del image[p]
        return False

    return image if extend(0) else None


@dataclass(frozen=True)
class SchemeWedgeInput:
    """Identical-fiber wedge data: base scheme, closed D, one fiber, psi1.

    psi1 maps the fiber points onto the D-coset of base point 0; its relation
    map is derived and checked. Fiber copies and the coset bijections are
    generated internally.
    """

    base: AssociationScheme
    d_relations: tuple[int, ...]
    fiber: AssociationScheme
    psi1: tuple[int, ...]


@dataclass(frozen=True)
class SchemeWedgeResult:
    """A wedge scheme plus the provenance the verification checks need."""

    scheme: AssociationScheme
    base: AssociationScheme
    d_relations: tuple[int, ...]
    tilde_count: int  # wedge relations [0, tilde_count) live inside fibers
    outer_relations: tuple[int, ...]  # base relation behind each later index
    psi: tuple[int, ...]  # wedge point -> base point
    kernel_tilde: tuple[int, ...]  # tilde relations over the diagonal of the base


def scheme_wedge(inp: SchemeWedgeInput) -> SchemeWedgeResult:
    """Glue one fiber copy over every D-coset of the base and pull back relations.

    Within a fiber the relations are the fiber relations; across fibers the
    relation of (p, q) is the base relation of (psi(p), psi(q)). The output is
    fully revalidated.
    """
    base, fiber = inp.base, inp.fiber
    base_alg = adjacency_algebra(base)
    fiber_alg = adjacency_algebra(fiber)
    d_sub = closed_subset(base_alg, inp.d_relations)

    x1 = [y for y in range(base.n) if base.rel[0][y] in d_sub.index_set]
    psi1 = tuple(int(p) for p in inp.psi1)
    if len(psi1) != fiber.n:
        raise AlgebraError("psi1 must map every fiber point")
    if set(psi1) != set(x1):
        raise AlgebraError("psi1 must map the fiber onto the D-coset of base point 0")

    rel_map: list[int] = []
    for b in range(fiber.nrel):
        pairs = np.argwhere(fiber.rel == b)
        images = {int(base.rel[psi1[u]][psi1[v]]) for u, v in pairs}
        if len(images) != 1:
            raise AlgebraError(f"psi1 does not map fiber relation {b} into one base relation")
        img = images.pop()
        if img not in d_sub.index_set:
            raise AlgebraError(f"psi1 maps fiber relation {b} outside D")
        rel_map.append(img)
    if set(rel_map) != set(d_sub.indices):
        raise AlgebraError("psi1 relation image does not cover D")

    kernel_rels = tuple(b for b, img in enumerate(rel_map) if img == 0)
    if not closed_subset(fiber_alg, kernel_rels).normal:
        raise RefusalError("normal scheme epimorphism", detail="A(ker psi1) is not normal")

    coset_of = [-1] * base.n
    cosets: list[list[int]] = []
    for x in range(base.n):
        if coset_of[x] >= 0:
            continue
        members = [y for y in range(base.n) if base.rel[x][y] in d_sub.index_set]
        cid = len(cosets)
        for y in members:
            coset_of[y] = cid
        cosets.append(members)
    if cosets[0] != x1:
        raise AlgebraError("first D-coset is not the coset of point 0")

    translations: list[dict[int, int]] = []
    for i, coset in enumerate(cosets):
        if i == 0:
            translations.append({p: p for p in x1})
            continue
        tau = _coset_translation(base.rel, x1, coset)
        if tau is None:
            raise AlgebraError(
                f"D-coset {i} is not point-isomorphic to the first coset; "
                "the identical-fiber construction does not apply"
            )
        translations.append(tau)

    m = len(cosets)
    fn = fiber.n
    psi = tuple(translations[i][psi1[u]] for i in range(m) for u in range(fn))

    outer = tuple(g for g in range(base.nrel) if g not in d_sub.index_set)
    outer_pos = {g: fiber.nrel + p for p, g in enumerate(outer)}
    total = m * fn
    rel_out = np.empty((total, total), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            block = rel_out[i * fn : (i + 1) * fn, j * fn : (j + 1) * fn]
            if i == j:
                block[:, :] = fiber.rel
            else:
                base_block = base.rel[
                    np.array([psi[i * fn + u] for u in range(fn)])[:, None],
                    np.array([psi[j * fn + v] for v in range(fn)])[None, :],
                ]
                block[:, :] = np.vectorize(outer_pos.__getitem__)(base_block)

    result = AssociationScheme(rel_out)
    validate_scheme_or_raise(result, context="scheme wedge output")
    return SchemeWedgeResult(
        scheme=result,
        base=base,
        d_relations=d_sub.indices,
        tilde_count=fiber.nrel,
        outer_relations=outer,
        psi=psi,
        kernel_tilde=kernel_rels,
    )


def scheme_wedge_via_quotient(
    base: AssociationScheme,
    d_relations: Sequence[int],
    fiber: AssociationScheme,
    kernel_relations: Sequence[int],
) -> SchemeWedgeResult:
    """Build psi1 as the fiber quotient by a closed subset, matched onto the
    D-coset of base point 0, then run the wedge construction."""
    quot, phi = quotient_scheme(fiber, kernel_relations)
    base_alg = adjacency_algebra(base)
    d_sub = closed_subset(base_alg, d_relations)
    x1 = [y for y in range(base.n) if base.rel[0][y] in d_sub.index_set]
    sub_rel = base.rel[np.array(x1)[:, None], np.array(x1)[None, :]]
    relabel = {g: p for p, g in enumerate(sorted({int(v) for v in sub_rel.ravel()}))}
    sub = AssociationScheme([[relabel[int(v)] for v in row] for row in sub_rel])
    iso = find_scheme_isomorphism(quot, sub)
    if iso is None:
        raise AlgebraError("fiber quotient is not isomorphic to the D-coset subscheme")
    point_iso, _ = iso
    psi1 = tuple(x1[point_iso[phi.point_map[u]]] for u in range(fiber.n))
    return scheme_wedge(SchemeWedgeInput(base, tuple(d_relations), fiber, psi1))


def verify_scheme_wedge_algebra(result: SchemeWedgeResult, tolerance: float = 1e-9) -> ValidationReport:
    """The algebra-level statements a scheme wedge must satisfy.

    (1) the wedge scheme's adjacency algebra validates; (2) the tilde part is
    closed and the induced map onto A(D) is an epimorphism with kernel the
    diagonal classes, so the table-algebra wedge can be built; (3) that wedge
    has exactly the same tensor; (4) quotienting by the kernel classes gives
    back the base algebra; (5) the kernel valency equals |Y|/|X|.
    """
    report = ValidationReport(subject="scheme-wedge-algebra")
    try:
        u = adjacency_algebra(result.scheme)
        report.add("adjacency-algebra-valid", True)
    except AlgebraError as exc:
        report.add("adjacency-algebra-valid", False, witness=str(exc))
        return report

    base_alg = adjacency_algebra(result.base)
    tilde = tuple(range(result.tilde_count))
    try:
        tilde_sub = closed_subset(u, tilde)
        tilde_alg, _ = subalgebra(u, tilde_sub)
        n_sub = closed_subset(base_alg, result.d_relations)
        n_alg, n_idx = subalgebra(base_alg, n_sub)
        n_pos = {g: p for p, g in enumerate(n_idx)}
        assign = []
        for b in tilde:
            pairs = np.argwhere(result.scheme.rel == b)
            images = {
                int(result.base.rel[result.psi[p]][result.psi[q]]) for p, q in pairs
            }
            if len(images) != 1:
                raise AlgebraError(f"tilde relation {b} maps onto several base relations")
            assign.append(n_pos[images.pop()])
        phi = make_homomorphism(tilde_alg, n_alg, assign)
        if kernel(phi).indices != tuple(sorted(result.kernel_tilde)):
            raise AlgebraError("kernel of the induced map differs from the diagonal classes")
        ef = wedge_product(wedge_input(tilde_alg, base_alg, n_sub, phi))
        report.add("induced-wedge-built", True)
    except AlgebraError as exc:
        report.add("induced-wedge-built", False, witness=str(exc))
        return report

    e_alg = ef.algebra
    witness = None
    if e_alg.dim != u.dim:
        witness = ("dim", e_alg.dim, u.dim)
    else:
        for i in range(u.dim):
            for j in range(u.dim):
                if u.lam[i][j] != e_alg.lam[i][j]:
                    z = next(z for z in range(u.dim) if u.lam[i][j][z] != e_alg.lam[i][j][z])
                    witness = (u.labels[i], u.labels[j], u.labels[z])
                    break
            if witness:
                break
    report.add("tensor-equals-table-wedge", witness is None, witness=witness)

    try:
        k_sub = closed_subset(u, result.kernel_tilde)
        q = quotient(u, k_sub)
        iso = find_isomorphism(q.algebra, base_alg, max_dim=max(12, base_alg.dim))
        report.add("quotient-by-kernel-is-base", iso is not None)
    except AlgebraError as exc:
        report.add("quotient-by-kernel-is-base", False, witness=str(exc))
        k_sub = None

    if k_sub is not None:
        want = Fraction(result.scheme.n, result.base.n)
        report.add(
            "kernel-valency-is-point-ratio",
            k_sub.order == want,
            witness=None if k_sub.order == want else (str(k_sub.order), str(want)),
        )
    return report
