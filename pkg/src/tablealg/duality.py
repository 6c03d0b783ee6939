"""Characters of commutative table algebras, eigenmatrices, dual C-algebras.

Characters are computed by simultaneous diagonalization: a random integer
combination of the commuting left-multiplication matrices is diagonalized;
if its eigenvalues separate, its eigenvectors are common eigenvectors and the
character values are read off per basis element. Values within tolerance of
a rational with denominator <= 10^6 are snapped to exact Gaussian rationals,
and every snapped table is re-verified exactly.

Conventions: the principal character (the degree map) is row 0. P has rows
indexed by characters and columns by basis elements with entry chi(b); Q has
rows indexed by basis elements and columns by characters with entry
zeta_chi . chi(b*) / |b|; then PQ = QP = o(B) I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .closed import ClosedSubset, closed_subset, double_cosets, quotient, stabilizer, subalgebra
from .core import TableAlgebra, validate
from .homs import find_isomorphism, kernel
from .reports import AlgebraError, RefusalError, ValidationReport
from .scalars import QC, QC_ZERO, snap_complex, snap_real, solve_exact
from .wedge import WedgeDecomposition, recognize_wedge

DEFAULT_TOLERANCE = 1e-9
_ATTEMPTS = 8


@dataclass
class CharacterTable:
    """All irreducible characters of a commutative table algebra."""

    algebra: TableAlgebra
    values: np.ndarray  # complex, values[chi][b]
    zeta: np.ndarray  # complex, one weight per character
    tolerance: float
    conjugate_of: tuple[int, ...]
    exact_values: tuple[tuple[QC, ...], ...] | None = None
    exact_zeta: tuple[Fraction, ...] | None = None
    snap_notes: list[str] = field(default_factory=list)

    principal = 0

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def is_exact(self) -> bool:
        return self.exact_values is not None and self.exact_zeta is not None

    @property
    def P(self) -> np.ndarray:
        return self.values

    @cached_property
    def Q(self) -> np.ndarray:
        alg = self.algebra
        deg = np.array([float(x) for x in alg.degrees])
        q = np.empty((alg.dim, alg.dim), dtype=complex)
        for b in range(alg.dim):
            q[b] = self.zeta * self.values[:, alg.star[b]] / deg[b]
        return q

    def exact_value(self, chi: int, b: int) -> QC:
        if self.exact_values is None:
            raise AlgebraError("character table is not exact")
        return self.exact_values[chi][b]


def _left_matrices(alg: TableAlgebra) -> np.ndarray:
    arr, scale = alg._int_tensor
    lam = arr.astype(np.float64) / scale
    return lam.transpose(0, 2, 1)  # L[b][c][a] = lam[b][a][c]


def _extract_characters(lmats: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    d = lmats.shape[0]
    chars = np.empty((d, d), dtype=complex)
    for i in range(d):
        v = vectors[:, i]
        j = int(np.argmax(np.abs(v)))
        chars[i] = (lmats @ v)[:, j] / v[j]
    return chars


def _multiplicativity_residual(alg: TableAlgebra, chars: np.ndarray) -> float:
    arr, scale = alg._int_tensor
    lam = arr.astype(np.float64) / scale
    prods = np.einsum("abt,it->iab", lam, chars)
    direct = chars[:, :, None] * chars[:, None, :]
    return float(np.abs(prods - direct.transpose(0, 2, 1)).max())


def _try_snap_table(alg: TableAlgebra, chars: np.ndarray, tol: float):
    """Snap all values to Gaussian rationals and verify multiplicativity exactly."""
    rows: list[tuple[QC, ...]] = []
    for i in range(alg.dim):
        row = []
        for b in range(alg.dim):
            q = snap_complex(complex(chars[i][b]), tol)
            if q is None:
                return None
            row.append(q)
        rows.append(tuple(row))
    for i, row in enumerate(rows):
        for x in range(alg.dim):
            for y in range(alg.dim):
                acc = QC_ZERO
                for c in range(alg.dim):
                    if alg.lam[x][y][c] != 0:
                        acc = acc + QC.from_rational(alg.lam[x][y][c]) * row[c]
                if acc != row[x] * row[y]:
                    return None
    if len(set(rows)) != alg.dim:
        return None
    for row in rows:
        for b in range(alg.dim):
            if row[alg.star[b]] != row[b].conjugate():
                return None
    return tuple(rows)


def character_table(
    alg: TableAlgebra, tolerance: float = DEFAULT_TOLERANCE, seed: int = 0
) -> CharacterTable:
    """Compute Irr(B) for a commutative table algebra.

    Refuses non-commutative input. Raises if no random combination separates
    the spectrum within the retry policy.
    """
    if not alg.is_commutative():
        raise RefusalError("commutative table algebra", detail="structure tensor is not symmetric")
    d = alg.dim
    lmats = _left_matrices(alg)
    rng = np.random.default_rng(seed)

    last_error = "no attempt made"
    best = None  # (separation, eigvals, eigvecs, combination)
    for attempt in range(_ATTEMPTS + 1):
        refine = attempt == _ATTEMPTS
        if refine:
            # last resort: polish the best-separated attempt by inverse iteration
            if best is None:
                break
            _, eigvals, eigvecs, m = best
            eigvals, eigvecs = _refine_eigenpairs(m, eigvals, eigvecs)
        else:
            coeffs = rng.integers(1, 1024, size=d).astype(np.float64)
            m = np.tensordot(coeffs, lmats, axes=1)
            eigvals, eigvecs = np.linalg.eig(m)
        if d > 1:
            diffs = np.abs(eigvals[:, None] - eigvals[None, :])
            sep = float(diffs[~np.eye(d, dtype=bool)].min())
            if best is None or sep > best[0]:
                best = (sep, eigvals, eigvecs, m)
            if sep <= 10 * tolerance:
                last_error = f"eigenvalue separation {sep:.3e} too small"
                continue
        chars = _extract_characters(lmats, eigvecs)

        exact = _try_snap_table(alg, chars, max(tolerance, 1e-7))
        if exact is not None:
            chars = np.array([[complex(v) for v in row] for row in exact])
        residual = _multiplicativity_residual(alg, chars)
        if residual > tolerance:
            last_error = f"multiplicativity residual {residual:.3e}"
            continue

        table = _assemble_table(alg, chars, exact, tolerance)
        if table is not None:
            return table
        last_error = "table assembly failed (principal or conjugate rows missing)"
    raise AlgebraError(f"character computation failed after {_ATTEMPTS} attempts: {last_error}")


def _refine_eigenpairs(m: np.ndarray, eigvals: np.ndarray, eigvecs: np.ndarray):
    """A few inverse-iteration steps per eigenpair with Rayleigh updates."""
    d = m.shape[0]
    vals = eigvals.astype(complex).copy()
    vecs = eigvecs.astype(complex).copy()
    eye = np.eye(d)
    for i in range(d):
        v = vecs[:, i]
        lam = vals[i]
        for _ in range(3):
            try:
                v = np.linalg.solve(m - (lam + 1e-12) * eye, v)
            except np.linalg.LinAlgError:
                break
            v = v / np.linalg.norm(v)
            lam = (np.conj(v) @ (m @ v)) / (np.conj(v) @ v)
        vecs[:, i] = v
        vals[i] = lam
    return vals, vecs


def _assemble_table(alg, chars, exact, tolerance) -> CharacterTable | None:
    d = alg.dim
    deg_float = np.array([float(x) for x in alg.degrees])

    principal = None
    for i in range(d):
        if np.abs(chars[i] - deg_float).max() <= max(tolerance, 1e-8):
            principal = i
            break
    if principal is None:
        return None
    others = [i for i in range(d) if i != principal]
    others.sort(key=lambda i: tuple((round(v.real, 9), round(v.imag, 9)) for v in chars[i]))
    order = [principal] + others
    chars = chars[order]
    exact_rows = tuple(exact[i] for i in order) if exact is not None else None

    conj = []
    for i in range(d):
        target = np.conj(chars[i])
        match = next(
            (j for j in range(d) if np.abs(chars[j] - target).max() <= max(tolerance, 1e-8)),
            None,
        )
        if match is None:
            return None
        conj.append(match)
    if sorted(conj) != list(range(d)):
        return None

    notes: list[str] = []
    exact_zeta = None
    rhs_order = float(alg.order)
    zeta = np.linalg.solve(chars.T, np.array([rhs_order] + [0.0] * (d - 1), dtype=complex))
    if exact_rows is not None:
        matrix = [[exact_rows[i][b] for i in range(d)] for b in range(d)]
        rhs = [QC.from_rational(alg.order)] + [QC_ZERO] * (d - 1)
        sol = solve_exact(matrix, rhs)
        if all(z.is_real() for z in sol):
            exact_zeta = tuple(z.re for z in sol)
            zeta = np.array([float(z) for z in exact_zeta], dtype=complex)
            notes.append("character values and zeta weights snapped to exact rationals")
    else:
        snapped = [snap_real(float(z.real), tolerance) for z in zeta]
        if all(s is not None for s in snapped) and np.abs(zeta.imag).max() <= tolerance:
            exact_zeta = tuple(snapped)
            notes.append("zeta weights snapped to exact rationals")

    if np.abs(zeta).min() <= tolerance:
        raise AlgebraError("a zeta weight vanishes; the table is degenerate")
    if np.abs(zeta.imag).max() > max(tolerance, 1e-8) or zeta.real.min() <= 0:
        raise AlgebraError("zeta weights are not positive reals")

    table = CharacterTable(
        algebra=alg,
        values=chars,
        zeta=zeta,
        tolerance=tolerance,
        conjugate_of=tuple(conj),
        exact_values=exact_rows,
        exact_zeta=exact_zeta,
        snap_notes=notes,
    )
    pq = table.P @ table.Q
    qp = table.Q @ table.P
    target = rhs_order * np.eye(d)
    if np.abs(pq - target).max() > max(tolerance, 1e-8) or np.abs(qp - target).max() > max(
        tolerance, 1e-8
    ):
        return None
    return table


def inner_product(chi, phi, alg: TableAlgebra):
    """[chi, phi] = o(B)^{-1} sum_b chi(b) phi(b*) / |b|; exact on QC inputs."""
    star = alg.star
    if all(isinstance(v, QC) for v in chi) and all(isinstance(v, QC) for v in phi):
        total = QC_ZERO
        for b in range(alg.dim):
            total = total + chi[b] * phi[star[b]] / QC.from_rational(alg.degrees[b])
        return total / QC.from_rational(alg.order)
    total = 0j
    for b in range(alg.dim):
        total += complex(chi[b]) * complex(phi[star[b]]) / float(alg.degrees[b])
    return total / float(alg.order)


def _row(table: CharacterTable, i: int):
    if table.exact_values is not None:
        return table.exact_values[i]
    return tuple(complex(v) for v in table.values[i])


def _zeta(table: CharacterTable, i: int):
    if table.is_exact:
        return QC.from_rational(table.exact_zeta[i])
    return complex(table.zeta[i])


def _pointwise_product(table: CharacterTable, i: int, j: int):
    """The functional b -> chi(b) psi(b) / |b|."""
    alg = table.algebra
    ri, rj = _row(table, i), _row(table, j)
    if table.exact_values is not None:
        return tuple(
            ri[b] * rj[b] / QC.from_rational(alg.degrees[b]) for b in range(alg.dim)
        )
    return tuple(ri[b] * rj[b] / float(alg.degrees[b]) for b in range(alg.dim))


def _product_coeffs_raw(table: CharacterTable, i: int, j: int):
    """Coefficients of chi_i chi_j over Irr(B), via zeta-weighted projections."""
    alg = table.algebra
    prod = _pointwise_product(table, i, j)
    return [
        _zeta(table, phi) * inner_product(prod, _row(table, phi), alg)
        for phi in range(table.dim)
    ]


def character_product_coeffs(table: CharacterTable, i: int, j: int):
    """Expansion coefficients of the character product, with residual and
    symmetry assertions."""
    alg = table.algebra
    coeffs = _product_coeffs_raw(table, i, j)
    prod = _pointwise_product(table, i, j)
    tol = table.tolerance
    for b in range(alg.dim):
        acc = QC_ZERO if table.exact_values is not None else 0j
        for phi in range(table.dim):
            acc = acc + coeffs[phi] * _row(table, phi)[b]
        if table.exact_values is not None:
            if acc != prod[b]:
                raise AlgebraError("character product does not project back onto Irr(B)")
        elif abs(acc - prod[b]) > max(tol, 1e-8) * max(1.0, abs(prod[b])):
            raise AlgebraError("character product residual exceeds tolerance")
    conj_i = table.conjugate_of[i]
    for phi in range(table.dim):
        lhs = coeffs[phi] / _zeta(table, phi)
        rhs = _product_coeffs_raw(table, conj_i, phi)[j] / _zeta(table, j)
        if table.is_exact and isinstance(lhs, QC) and isinstance(rhs, QC):
            if lhs != rhs:
                raise AlgebraError("coefficient symmetry fails exactly")
        elif abs(complex(lhs) - complex(rhs)) > max(tol, 1e-8):
            raise AlgebraError("coefficient symmetry fails within tolerance")
    return coeffs


@dataclass
class DualAlgebra:
    """The C-algebra on the dual basis, one element per irreducible character."""

    table: CharacterTable
    labels: tuple[str, ...]
    star: tuple[int, ...]
    q_float: np.ndarray  # real structure constants, q[chi][psi][phi]
    q_exact: tuple | None
    algebra: TableAlgebra | None  # exact algebra when q_exact is available
    is_table_algebra: bool
    margin: float

    # construction validates the axioms (exactly or within tolerance) and
    # raises otherwise, so an existing instance is always a C-algebra
    is_c_algebra: bool = True

    @property
    def dim(self) -> int:
        return len(self.labels)


def dual_algebra(table: CharacterTable, require_exact: bool = False) -> DualAlgebra:
    """Structure constants q^phi_{chi psi} = (zeta_chi zeta_psi / zeta_phi) lambda^phi.

    Validates the C-algebra axioms (exactly when the table snapped, within
    tolerance otherwise) and flags whether all constants are nonnegative.
    """
    d = table.dim
    alg = table.algebra
    tol = table.tolerance
    q_float = np.zeros((d, d, d), dtype=float)
    exact_entries: list[list[list[Fraction]]] | None = (
        [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)] if table.is_exact else None
    )
    for i in range(d):
        for j in range(d):
            coeffs = _product_coeffs_raw(table, i, j)
            zi, zj = _zeta(table, i), _zeta(table, j)
            for phi in range(d):
                q = zi * zj * coeffs[phi] / _zeta(table, phi)
                if isinstance(q, QC):
                    if not q.is_real():
                        raise AlgebraError("dual structure constant has an imaginary part")
                    exact_entries[i][j][phi] = q.re
                    q_float[i][j][phi] = float(q.re)
                else:
                    if abs(q.imag) > max(tol, 1e-8):
                        raise AlgebraError("dual structure constant has an imaginary part")
                    q_float[i][j][phi] = q.real

    q_exact = None
    if exact_entries is not None:
        q_exact = tuple(tuple(tuple(row) for row in plane) for plane in exact_entries)
    else:
        snapped = [
            [[snap_real(q_float[i][j][k], tol) for k in range(d)] for j in range(d)]
            for i in range(d)
        ]
        if all(v is not None for plane in snapped for row in plane for v in row):
            q_exact = tuple(tuple(tuple(row) for row in plane) for plane in snapped)
            table.snap_notes.append("dual structure constants snapped to exact rationals")

    labels = tuple(f"chi{i}^" for i in range(d))
    star = table.conjugate_of
    exact_alg = None
    if q_exact is not None:
        exact_alg = TableAlgebra(labels, q_exact, star)
        report = validate(exact_alg, mode="c-algebra")
        if not report.passed:
            raise AlgebraError(
                "dual fails the C-algebra axioms: "
                + ", ".join(c.name for c in report.failures())
            )
    else:
        _validate_c_float(q_float, star, tol)
    if require_exact and q_exact is None:
        raise RefusalError(
            "rational dual structure constants",
            detail="dual tensor did not snap to rationals within tolerance",
        )

    if q_exact is not None:
        margin = float(min(v for plane in q_exact for row in plane for v in row))
        flag = margin >= 0
    else:
        margin = float(q_float.min())
        flag = margin >= -tol
    return DualAlgebra(
        table=table,
        labels=labels,
        star=star,
        q_float=q_float,
        q_exact=q_exact,
        algebra=exact_alg,
        is_table_algebra=flag,
        margin=margin,
    )


def _validate_c_float(q: np.ndarray, star: tuple[int, ...], tol: float) -> None:
    """Approximate C-algebra axioms for a non-snappable dual tensor."""
    d = q.shape[0]
    bound = max(tol, 1e-8)
    eye = np.eye(d)
    if np.abs(q[0] - eye).max() > bound or np.abs(q[:, 0, :] - eye).max() > bound:
        raise AlgebraError("dual identity axiom fails within tolerance")
    deg = np.array([q[i][star[i]][0] for i in range(d)])
    if deg.min() <= 0:
        raise AlgebraError("dual degrees are not positive")
    for i in range(d):
        if np.abs(q[i] @ deg - deg[i] * deg).max() > bound * max(1.0, float(deg.max()) ** 2):
            raise AlgebraError("dual degree map is not multiplicative within tolerance")
        for j in range(d):
            want = deg[i] if j == star[i] else 0.0
            if abs(q[i][j][0] - want) > bound * max(1.0, abs(want)):
                raise AlgebraError("dual identity-coefficient axiom fails within tolerance")
    lhs = np.einsum("abt,tcd->abcd", q, q)
    rhs = np.einsum("bct,atd->abcd", q, q)
    scale = max(1.0, float(np.abs(lhs).max()))
    if np.abs(lhs - rhs).max() > bound * scale:
        raise AlgebraError("dual associativity fails within tolerance")
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if abs(q[i][j][k] - q[star[j]][star[i]][star[k]]) > bound:
                    raise AlgebraError("dual star axiom fails within tolerance")


def char_kernel(table: CharacterTable, i: int) -> ClosedSubset:
    """ker(chi) = {b : chi(b) = |b|}; verified closed."""
    alg = table.algebra
    members = [b for b in range(alg.dim) if _char_fixes(table, i, b)]
    return closed_subset(alg, members)


def _char_fixes(table: CharacterTable, i: int, b: int) -> bool:
    deg = table.algebra.degrees[b]
    if table.exact_values is not None:
        return table.exact_values[i][b] == QC.from_rational(deg)
    return abs(complex(table.values[i][b]) - float(deg)) <= max(table.tolerance, 1e-8)


def irr_of_quotient(table: CharacterTable, n: ClosedSubset) -> tuple[int, ...]:
    """Indices of the characters trivial on N, i.e. Irr(B//N) inside Irr(B)."""
    return tuple(
        i
        for i in range(table.dim)
        if all(_char_fixes(table, i, b) for b in n.indices)
    )


def ker_closed(table: CharacterTable, n: ClosedSubset, dual: DualAlgebra) -> tuple[int, ...]:
    """Dual-side closed subset of the characters trivial on N.

    Verified closed in the dual and checked to have dim(B//N) elements.
    """
    members = irr_of_quotient(table, n)
    expected = len(double_cosets(n).cells)
    if len(members) != expected:
        raise AlgebraError(
            f"|ker(N)| = {len(members)} but the quotient has dimension {expected}"
        )
    if dual.algebra is not None:
        closed_subset(dual.algebra, members)  # raises if not closed
    else:
        mset = set(members)
        for i in members:
            for j in members:
                supp = {
                    k
                    for k in range(dual.dim)
                    if abs(dual.q_float[dual.star[i]][j][k]) > dual.table.tolerance
                }
                if not supp <= mset:
                    raise AlgebraError("ker(N) is not closed in the dual")
    return members


def vanishing_check(
    alg: TableAlgebra,
    k: ClosedSubset,
    d: ClosedSubset,
    table: CharacterTable | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
) -> ValidationReport:
    """Characters outside Irr(B//K) vanish outside D, provided K stabilizes B-D."""
    report = ValidationReport(subject="character-vanishing")
    if not k.index_set <= d.index_set:
        report.refuse("k-inside-d", "K is not contained in D")
        return report
    outside = [b for b in range(alg.dim) if b not in d.index_set]
    if not outside:
        report.add("vanishing-outside-d", True, detail="B equals D; vacuous")
        return report
    full = closed_subset(alg, range(alg.dim))
    st = stabilizer(full, outside)
    if not k.index_set <= st:
        report.refuse(
            "k-stabilizes-complement",
            "K does not act by degrees on B minus D",
            witness=sorted(alg.labels[b] for b in k.index_set - st),
        )
        return report
    if table is None:
        if not alg.is_commutative():
            report.refuse("commutative", "character theory needs a commutative algebra")
            return report
        table = character_table(alg, tolerance, seed)
    trivial_on_k = set(irr_of_quotient(table, k))
    witness = None
    for i in range(table.dim):
        if i in trivial_on_k:
            continue
        for b in outside:
            if table.exact_values is not None:
                ok = table.exact_values[i][b].is_zero()
            else:
                ok = abs(complex(table.values[i][b])) <= max(tolerance, 1e-8)
            if not ok:
                witness = (f"chi{i}", alg.labels[b])
                break
        if witness:
            break
    report.add("vanishing-outside-d", witness is None, witness=witness)
    return report


def dual_sufficiency_check(
    alg: TableAlgebra,
    k: ClosedSubset,
    d: ClosedSubset,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
) -> ValidationReport:
    """If duals of <D> and B//K are table algebras, so is the dual of B."""
    report = ValidationReport(subject="dual-sufficiency")
    if not alg.is_commutative():
        report.refuse("commutative", "dual theory needs a commutative algebra")
        return report
    if not k.index_set <= d.index_set:
        report.refuse("k-inside-d", "K is not contained in D")
        return report
    outside = [b for b in range(alg.dim) if b not in d.index_set]
    if outside:
        st = stabilizer(closed_subset(alg, range(alg.dim)), outside)
        if not k.index_set <= st:
            report.refuse("k-stabilizes-complement", "K does not act by degrees on B minus D")
            return report

    d_alg, _ = subalgebra(alg, d)
    q_alg = quotient(alg, k).algebra
    flag_d = dual_algebra(character_table(d_alg, tolerance, seed)).is_table_algebra
    flag_q = dual_algebra(character_table(q_alg, tolerance, seed)).is_table_algebra
    report.add("dual-of-sub-is-table-algebra", True, detail=str(flag_d))
    report.add("dual-of-quotient-is-table-algebra", True, detail=str(flag_q))
    dual_b = dual_algebra(character_table(alg, tolerance, seed))
    if flag_d and flag_q:
        report.add(
            "dual-is-table-algebra",
            dual_b.is_table_algebra,
            margin=dual_b.margin,
        )
    else:
        report.refuse(
            "dual-is-table-algebra",
            "factor duals are not both table algebras; no conclusion",
        )
    return report


def dual_positivity_equivalence(
    table: CharacterTable, dual: DualAlgebra | None = None
) -> ValidationReport:
    """The dual is a table algebra iff all character products have nonnegative
    coefficients; both sides are computed independently and compared."""
    report = ValidationReport(subject="dual-positivity")
    dual = dual or dual_algebra(table)
    tol = table.tolerance
    min_coeff = None
    for i in range(table.dim):
        for j in range(table.dim):
            for c in _product_coeffs_raw(table, i, j):
                if isinstance(c, QC):
                    if not c.is_real():
                        raise AlgebraError("character product coefficient is not real")
                    value = float(c.re)
                else:
                    if abs(c.imag) > max(tol, 1e-8):
                        raise AlgebraError("character product coefficient is not real")
                    value = c.real
                min_coeff = value if min_coeff is None else min(min_coeff, value)
    coeffs_nonneg = min_coeff >= (-tol if table.exact_values is None else 0)
    report.add(
        "flag-matches-product-coefficients",
        coeffs_nonneg == dual.is_table_algebra,
        margin=min_coeff,
        detail=f"dual flag {dual.is_table_algebra}",
    )
    return report


def dual_of_wedge_check(
    decomp: WedgeDecomposition,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
) -> ValidationReport:
    """Dualize a recognized wedge and check it decomposes as the reversed
    wedge of the factor duals."""
    report = ValidationReport(subject="dual-of-wedge")
    alg = decomp.algebra
    if not alg.is_commutative():
        report.refuse("commutative", "dual theory needs a commutative algebra")
        return report

    dual_left = dual_algebra(character_table(decomp.left, tolerance, seed))
    dual_right = dual_algebra(character_table(decomp.right, tolerance, seed))
    if not (dual_left.is_table_algebra and dual_right.is_table_algebra):
        report.refuse(
            "factor-duals-are-table-algebras",
            f"left {dual_left.is_table_algebra}, right {dual_right.is_table_algebra}",
        )
        return report

    table = character_table(alg, tolerance, seed)
    dual_u = dual_algebra(table, require_exact=True)
    report.add("dual-is-table-algebra", dual_u.is_table_algebra, margin=dual_u.margin)
    if not dual_u.is_table_algebra:
        # negative constants would poison the closure machinery below
        return report

    k_orig = closed_subset(
        alg, [decomp.left_embedding[p] for p in kernel(decomp.phi).indices]
    )
    d_orig = closed_subset(alg, decomp.left_embedding)
    ker_k = ker_closed(table, k_orig, dual_u)
    ker_d = ker_closed(table, d_orig, dual_u)
    dual_alg = dual_u.algebra
    ker_k_sub = closed_subset(dual_alg, ker_k)
    ker_d_sub = closed_subset(dual_alg, ker_d)

    contained = set(ker_d) <= set(ker_k)
    outside = [i for i in range(dual_u.dim) if i not in set(ker_k)]
    if outside:
        st = stabilizer(closed_subset(dual_alg, range(dual_u.dim)), outside)
        stab_ok = set(ker_d) <= st
    else:
        stab_ok = True
    report.add("ker-d-inside-ker-k-and-stabilizing", contained and stab_ok)

    try:
        dual_decomp = recognize_wedge(dual_alg, ker_d_sub, ker_k_sub)
        report.add("dual-recognized-as-wedge", True)
    except (RefusalError, AlgebraError) as exc:
        report.add("dual-recognized-as-wedge", False, witness=str(exc))
        return report

    bound = max(12, dual_u.dim)
    left_match = (
        dual_right.algebra is not None
        and find_isomorphism(dual_decomp.left, dual_right.algebra, max_dim=bound) is not None
    )
    right_match = (
        dual_left.algebra is not None
        and find_isomorphism(dual_decomp.right, dual_left.algebra, max_dim=bound) is not None
    )
    report.add("dual-factors-are-reversed-duals", left_match and right_match)
    return report


def double_dual_isomorphic(
    alg: TableAlgebra, tolerance: float = DEFAULT_TOLERANCE, seed: int = 0
) -> bool:
    """dual(dual(B)) isomorphic to B, through exact snapped duals."""
    dual_once = dual_algebra(character_table(alg, tolerance, seed), require_exact=True)
    dual_twice = dual_algebra(
        character_table(dual_once.algebra, tolerance, seed), require_exact=True
    )
    return find_isomorphism(dual_twice.algebra, alg, max_dim=max(12, alg.dim)) is not None
