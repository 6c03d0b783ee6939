"""Wedge product of table algebras: construction, recognition, verification.

Given table algebras (C,D) and (A,B), a closed subset N of B and an
epimorphism phi: (C,D) -> (<N>,N) with kernel K, the wedge lives on the basis
D together with o(K)-rescaled copies of the elements of B outside N. Products
are assembled from three rules: D x D uses the structure constants of (C,D);
rescaled x rescaled uses o(K) times the constants of (A,B); mixed products
route the D factor through phi. Product mass landing on a rescaled element of
N is transferred back into the D part via the identification of o(K)h with
(|h|/|d|) d K+ for any preimage d of h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closed import ClosedSubset, QuotientResult, closed_subset, quotient, subalgebra
from .core import TableAlgebra, multiply, validate_or_raise
from .homs import TableHomomorphism, find_isomorphism, kernel, make_homomorphism
from .reports import AlgebraError, RefusalError, ValidationReport


@dataclass(frozen=True)
class WedgeInput:
    left: TableAlgebra
    right: TableAlgebra
    n_subset: ClosedSubset
    phi: TableHomomorphism


def wedge_input(
    left: TableAlgebra,
    right: TableAlgebra,
    n_subset: ClosedSubset,
    phi: TableHomomorphism,
) -> WedgeInput:
    """Check the wedge preconditions and bundle the data."""
    if n_subset.alg != right:
        raise AlgebraError("N must be a closed subset of the right algebra")
    if phi.source != left:
        raise AlgebraError("phi must start at the left algebra")
    n_alg, _ = subalgebra(right, n_subset)
    if phi.target != n_alg:
        raise AlgebraError("phi must land in the subalgebra spanned by N")
    if not phi.is_surjective():
        raise AlgebraError("phi must be surjective onto N")
    return WedgeInput(left, right, n_subset, phi)


@dataclass(frozen=True)
class WedgeAlgebra:
    """A wedge product together with its provenance."""

    algebra: TableAlgebra
    source: WedgeInput
    bbar_source: tuple[int, ...]  # right-basis index behind each rescaled element

    @property
    def d_dim(self) -> int:
        return self.source.left.dim

    @property
    def d_part(self) -> tuple[int, ...]:
        return tuple(range(self.d_dim))

    @property
    def bbar_part(self) -> tuple[int, ...]:
        return tuple(range(self.d_dim, self.algebra.dim))

    @property
    def kernel_part(self) -> tuple[int, ...]:
        """Indices of ker(phi) inside the wedge basis (within the D part)."""
        return kernel(self.source.phi).indices

    @property
    def o_k(self) -> Fraction:
        return kernel(self.source.phi).order


def _bbar_label(label: str, taken: set[str]) -> str:
    out = label + "~"
    while out in taken:
        out += "~"
    taken.add(out)
    return out


def wedge_product(inp: WedgeInput) -> WedgeAlgebra:
    """Assemble the wedge of (C,D) and (A,B) relative to phi and validate it."""
    left, right, n, phi = inp.left, inp.right, inp.n_subset, inp.phi
    k = kernel(phi)
    o_k = k.order
    n_idx = n.indices
    bbar = [b for b in range(right.dim) if b not in n.index_set]
    bbar_pos = {b: p for p, b in enumerate(bbar)}
    d_dim = left.dim
    m = d_dim + len(bbar)

    # phi support as a right-basis index per left-basis element
    support = tuple(n_idx[phi.assignment[i]] for i in range(d_dim))

    # transfer of o(K)h back into the D part: (|h|/|d|) d K+ for any preimage d,
    # checked to be independent of the choice of d
    transfer: dict[int, tuple[Fraction, ...]] = {}
    for h in n_idx:
        preimages = [i for i in range(d_dim) if support[i] == h]
        coeff_sets = {
            ((right.degrees[h] / left.degrees[i]) * multiply(left.basis_vector(i), k.plus)).coeffs
            for i in preimages
        }
        if len(coeff_sets) != 1:
            raise AlgebraError(
                f"identification of the rescaled element over {right.labels[h]!r} "
                "depends on the preimage; phi is not a table-algebra epimorphism"
            )
        transfer[h] = coeff_sets.pop()

    taken = set(left.labels)
    labels = tuple(left.labels) + tuple(_bbar_label(right.labels[b], taken) for b in bbar)

    lam = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]

    def add_right_mass(acc: list[Fraction], t: int, coeff: Fraction) -> None:
        if coeff == 0:
            return
        if t in bbar_pos:
            acc[d_dim + bbar_pos[t]] += coeff
        else:
            for z, c in enumerate(transfer[t]):
                if c != 0:
                    acc[z] += coeff * c

    for i in range(d_dim):
        for j in range(d_dim):
            row = lam[i][j]
            for z in range(d_dim):
                row[z] = left.lam[i][j][z]

    for pi, bi in enumerate(bbar):
        for pj, bj in enumerate(bbar):
            row = lam[d_dim + pi][d_dim + pj]
            lam_row = right.lam[bi][bj]
            for t in range(right.dim):
                add_right_mass(row, t, o_k * lam_row[t])

    for i in range(d_dim):
        h = support[i]
        factor = left.degrees[i] / right.degrees[h]
        for pj, bj in enumerate(bbar):
            row = lam[i][d_dim + pj]
            lam_row = right.lam[h][bj]
            for t in range(right.dim):
                add_right_mass(row, t, factor * lam_row[t])
            row = lam[d_dim + pj][i]
            lam_row = right.lam[bj][h]
            for t in range(right.dim):
                add_right_mass(row, t, factor * lam_row[t])

    star = tuple(left.star[i] for i in range(d_dim)) + tuple(
        d_dim + bbar_pos[right.star[b]] for b in bbar
    )
    out = TableAlgebra(labels, lam, star)
    for p, b in enumerate(bbar):
        if out.degrees[d_dim + p] != o_k * right.degrees[b]:
            raise AlgebraError(
                f"wedge degree of {labels[d_dim + p]!r} is not o(K).|b|"
            )
    validate_or_raise(out, "table-algebra", context="wedge output (invalid phi?)")
    return WedgeAlgebra(out, inp, tuple(bbar))


def wreath_product(left: TableAlgebra, right: TableAlgebra) -> WedgeAlgebra:
    """Wedge with the trivial epimorphism d -> |d|.1, i.e. N = {1}."""
    n = closed_subset(right, {0})
    n_alg, _ = subalgebra(right, n)
    phi = make_homomorphism(left, n_alg, [0] * left.dim)
    return wedge_product(WedgeInput(left, right, n, phi))


@dataclass(frozen=True)
class WedgeDecomposition:
    """A certified decomposition of an algebra as a wedge product."""

    algebra: TableAlgebra
    left: TableAlgebra
    left_embedding: tuple[int, ...]
    right: TableAlgebra
    right_quotient: QuotientResult
    n_subset: ClosedSubset
    phi: TableHomomorphism
    reconstruction: WedgeAlgebra
    matching: tuple[int, ...]  # wedge basis index -> original basis index


def recognize_wedge(
    alg: TableAlgebra, k: ClosedSubset, d: ClosedSubset
) -> WedgeDecomposition:
    """Decompose alg as the wedge of <D> and alg//K, or refuse with a witness.

    Requires K normal in <D> and in the whole algebra, and b.K+ = o(K).b =
    K+.b for every basis element b outside D. The reconstruction is certified
    by exact tensor equality under the canonical basis matching.
    """
    if k.alg != alg or d.alg != alg:
        raise AlgebraError("K and D must be closed subsets of the given algebra")
    if not k.index_set <= d.index_set:
        raise AlgebraError("K must be contained in D")

    d_alg, d_idx = subalgebra(alg, d)
    d_pos = {b: p for p, b in enumerate(d_idx)}
    k_in_d = closed_subset(d_alg, [d_pos[b] for b in k.indices])
    if not k_in_d.normal:
        raise RefusalError("K normal in <D>")
    if not k.normal:
        raise RefusalError("K normal in the whole algebra")
    o_k = k.order
    for b in range(alg.dim):
        if b in d.index_set:
            continue
        vb = alg.basis_vector(b)
        scaled = o_k * vb
        if multiply(vb, k.plus) != scaled or multiply(k.plus, vb) != scaled:
            raise RefusalError(
                "b.K+ = o(K).b = K+.b outside D",
                witness=alg.labels[b],
            )

    q = quotient(alg, k)
    cells = q.partition.cells
    n_positions = []
    for idx, cell in enumerate(cells):
        inside = set(cell) <= d.index_set
        if inside:
            n_positions.append(idx)
        elif set(cell) & d.index_set:
            raise AlgebraError("a K-class straddles the boundary of D")
    n_q = closed_subset(q.algebra, n_positions)
    n_alg, n_idx = subalgebra(q.algebra, n_q)
    n_pos = {cell_idx: p for p, cell_idx in enumerate(n_idx)}
    pi = make_homomorphism(
        d_alg, n_alg, [n_pos[q.partition.cell_of[b]] for b in d_idx]
    )

    reconstruction = wedge_product(wedge_input(d_alg, q.algebra, n_q, pi))

    matching = list(d_idx)
    for cell_idx in reconstruction.bbar_source:
        cell = cells[cell_idx]
        if len(cell) != 1:
            raise AlgebraError("K-class outside D is not a singleton")
        matching.append(cell[0])
    if sorted(matching) != list(range(alg.dim)):
        raise AlgebraError("canonical matching is not a bijection")

    w = reconstruction.algebra
    for i in range(w.dim):
        for j in range(w.dim):
            for z in range(w.dim):
                if w.lam[i][j][z] != alg.lam[matching[i]][matching[j]][matching[z]]:
                    raise AlgebraError(
                        "reconstructed wedge tensor differs from the input at "
                        f"({w.labels[i]}, {w.labels[j]}, {w.labels[z]})"
                    )
    return WedgeDecomposition(
        algebra=alg,
        left=d_alg,
        left_embedding=d_idx,
        right=q.algebra,
        right_quotient=q,
        n_subset=n_q,
        phi=pi,
        reconstruction=reconstruction,
        matching=tuple(matching),
    )


def verify_wedge_identities(w: WedgeAlgebra, iso_bound: int | None = None) -> ValidationReport:
    """Check the structural identities every wedge product must satisfy.

    (1) ker(phi) is closed and normal in the wedge; (2) each kernel element
    acts on every basis element outside D as its degree; (3) K+ acts there as
    o(K); (4) the quotient of the wedge by the kernel is isomorphic to the
    right factor.
    """
    report = ValidationReport(subject="wedge-identities")
    alg = w.algebra
    k_idx = w.kernel_part
    o_k = w.o_k

    try:
        k = closed_subset(alg, k_idx)
        report.add("kernel-closed-normal", k.normal, witness=None if k.normal else k.labels())
    except AlgebraError as exc:
        report.add("kernel-closed-normal", False, witness=str(exc))
        return report

    outside = [x for x in range(alg.dim) if x >= w.d_dim]
    witness = None
    for x in outside:
        vx = alg.basis_vector(x)
        for kk in k_idx:
            vk = alg.basis_vector(kk)
            scaled = alg.degrees[kk] * vx
            if multiply(vk, vx) != scaled or multiply(vx, vk) != scaled:
                witness = (alg.labels[kk], alg.labels[x])
                break
        if witness:
            break
    report.add("kernel-acts-by-degree", witness is None, witness=witness)

    witness = None
    for x in outside:
        vx = alg.basis_vector(x)
        scaled = o_k * vx
        if multiply(vx, k.plus) != scaled or multiply(k.plus, vx) != scaled:
            witness = alg.labels[x]
            break
    report.add("kernel-sum-acts-by-order", witness is None, witness=witness)

    right = w.source.right
    bound = iso_bound if iso_bound is not None else max(12, right.dim)
    try:
        q = quotient(alg, k)
        iso = find_isomorphism(q.algebra, right, max_dim=bound)
        report.add(
            "quotient-isomorphic-to-right-factor",
            iso is not None,
            detail=f"dim {q.algebra.dim}",
        )
    except AlgebraError as exc:
        report.add("quotient-isomorphic-to-right-factor", False, witness=str(exc))
    return report
