"""Command-line surface.

The machine-readable report goes to stdout in the chosen --format (json by
default); a one-line human summary goes to stderr. Exit codes: 0 all checks
pass, 1 verification failure or refusal, 2 usage error, 3 I/O or parse
failure. Subset arguments name generators; the closed subset used is their
closure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as formats
from .closed import closure, enumerate_closed_subsets, quotient, subalgebra
from .core import validate
from .duality import (
    character_table,
    dual_algebra,
    dual_of_wedge_check,
    dual_positivity_equivalence,
    dual_sufficiency_check,
    vanishing_check,
)
from .homs import kernel
from .reports import AlgebraError, RefusalError, ValidationReport
from .scalars import QC, format_rational
from .schemes import (
    adjacency_algebra,
    scheme_wedge,
    scheme_wedge_via_quotient,
    SchemeWedgeInput,
    validate_scheme,
    verify_scheme_wedge_algebra,
)
from .wedge import recognize_wedge, verify_wedge_identities, wedge_input, wedge_product, wreath_product

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _labels_to_subset(alg, labels_csv: str):
    labels = [s.strip() for s in labels_csv.split(",") if s.strip()]
    if not labels:
        raise AlgebraError("empty label list")
    return closure([alg.index_of(lab) for lab in labels], alg)


def _int_csv(csv: str) -> list[int]:
    try:
        return [int(s) for s in csv.split(",") if s.strip()]
    except ValueError:
        raise AlgebraError(f"index list {csv!r} must be integers") from None


def _fmt_value(v) -> str:
    if isinstance(v, QC):
        return str(v)
    z = complex(v)
    if z.imag == 0:
        return repr(z.real)
    return repr(z)


def cmd_validate(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    return validate(alg, args.mode)


def cmd_closed_subsets(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    bound = args.max_dim if args.max_dim else 16
    subsets = enumerate_closed_subsets(alg, max_dim=bound)
    report = ValidationReport(subject=f"closed-subsets[{Path(args.algebra).name}]")
    listing = []
    for n in subsets:
        listing.append({"labels": list(n.labels()), "order": format_rational(n.order), "normal": n.normal})
    report.data = {"count": len(subsets), "subsets": listing}
    report.add("enumeration", True, detail=f"{len(subsets)} closed subsets")
    return report


def cmd_quotient(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    n = _labels_to_subset(alg, args.n)
    q = quotient(alg, n)
    report = ValidationReport(subject=f"quotient[{Path(args.algebra).name}]")
    report.add("quotient-built", True, detail=f"dim {q.algebra.dim}")
    report.data = {
        "subset": list(n.labels()),
        "classes": [list(alg.labels[b] for b in cell) for cell in q.partition.cells],
    }
    if args.out:
        _write(args.out, formats.serialize_table_algebra(q.algebra))
    return report


def cmd_hom_check(args) -> ValidationReport:
    source = formats.parse_table_algebra(_read(args.source))
    target = formats.parse_table_algebra(_read(args.target))
    report = ValidationReport(subject="homomorphism")
    try:
        phi = formats.parse_homomorphism(_read(args.phi), source, target)
    except formats.ParseError:
        raise
    except AlgebraError as exc:
        report.add("homomorphism-valid", False, witness=str(exc))
        return report
    ker = kernel(phi)
    report.add("homomorphism-valid", True)
    report.data = {
        "kernel": list(ker.labels()),
        "kernel_normal": ker.normal,
        "surjective": phi.is_surjective(),
    }
    return report


def cmd_wedge(args) -> ValidationReport:
    left = formats.parse_table_algebra(_read(args.left))
    right = formats.parse_table_algebra(_read(args.right))
    n = _labels_to_subset(right, args.n)
    n_alg, _ = subalgebra(right, n)
    phi = formats.parse_homomorphism(_read(args.phi), left, n_alg)
    w = wedge_product(wedge_input(left, right, n, phi))
    report = verify_wedge_identities(w)
    report.subject = "wedge"
    report.data = {"dim": w.algebra.dim, "o_k": format_rational(w.o_k)}
    if args.out:
        _write(args.out, formats.serialize_table_algebra(w.algebra))
    return report


def cmd_wreath(args) -> ValidationReport:
    left = formats.parse_table_algebra(_read(args.left))
    right = formats.parse_table_algebra(_read(args.right))
    w = wreath_product(left, right)
    report = verify_wedge_identities(w)
    report.subject = "wreath"
    report.data = {"dim": w.algebra.dim}
    if args.out:
        _write(args.out, formats.serialize_table_algebra(w.algebra))
    return report


def cmd_recognize(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    k = _labels_to_subset(alg, args.k)
    d = _labels_to_subset(alg, args.d)
    report = ValidationReport(subject=f"recognize[{Path(args.algebra).name}]")
    try:
        decomp = recognize_wedge(alg, k, d)
    except RefusalError as exc:
        report.refuse("wedge-recognition", exc.hypothesis, witness=exc.witness)
        return report
    report.add("wedge-recognition", True, detail="exact tensor reconstruction")
    report.data = {
        "left_dim": decomp.left.dim,
        "right_dim": decomp.right.dim,
        "n_labels": list(decomp.right.labels[i] for i in decomp.n_subset.indices),
    }
    return report


def cmd_characters(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    report = ValidationReport(subject=f"characters[{Path(args.algebra).name}]")
    try:
        table = character_table(alg, args.tolerance, args.seed)
    except RefusalError as exc:
        report.refuse("character-table", exc.hypothesis)
        return report
    report.add("character-table", True, detail="exact" if table.is_exact else "approximate")
    if table.exact_values is not None:
        p_rows = [[str(v) for v in row] for row in table.exact_values]
    else:
        p_rows = [[_fmt_value(v) for v in row] for row in table.values]
    q_rows = [[_fmt_value(v) for v in row] for row in table.Q]
    zeta = (
        [format_rational(z) for z in table.exact_zeta]
        if table.exact_zeta is not None
        else [_fmt_value(z) for z in table.zeta]
    )
    report.data = {
        "basis": list(alg.labels),
        "P": p_rows,
        "Q": q_rows,
        "zeta": zeta,
        "notes": table.snap_notes,
    }
    return report


def cmd_dual(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    report = ValidationReport(subject=f"dual[{Path(args.algebra).name}]")
    try:
        table = character_table(alg, args.tolerance, args.seed)
    except RefusalError as exc:
        report.refuse("dual", exc.hypothesis)
        return report
    dual = dual_algebra(table)
    report.add("dual-c-algebra", True, detail="exact" if dual.q_exact else "approximate")
    report.add("dual-is-table-algebra", dual.is_table_algebra, margin=dual.margin)
    if args.out:
        if dual.algebra is None:
            report.add("dual-written", False, detail="dual tensor is not rational; nothing written")
        else:
            _write(args.out, formats.serialize_table_algebra(dual.algebra))
            report.add("dual-written", True)
    return report


def cmd_scheme_validate(args) -> ValidationReport:
    scheme = formats.parse_scheme(_read(args.scheme))
    return validate_scheme(scheme).report


def cmd_scheme_to_algebra(args) -> ValidationReport:
    scheme = formats.parse_scheme(_read(args.scheme))
    report = ValidationReport(subject=f"scheme-to-algebra[{Path(args.scheme).name}]")
    try:
        alg = adjacency_algebra(scheme)
    except AlgebraError as exc:
        report.add("adjacency-algebra", False, witness=str(exc))
        return report
    report.add("adjacency-algebra", True, detail=f"dim {alg.dim}")
    if args.out:
        _write(args.out, formats.serialize_table_algebra(alg))
    return report


def _build_scheme_wedge(args):
    base = formats.parse_scheme(_read(args.base))
    fiber = formats.parse_scheme(_read(args.fiber))
    d_rels = _int_csv(args.d)
    if args.psi:
        psi1 = tuple(_int_csv(args.psi))
        return scheme_wedge(SchemeWedgeInput(base, tuple(d_rels), fiber, psi1))
    if args.ker:
        return scheme_wedge_via_quotient(base, d_rels, fiber, _int_csv(args.ker))
    raise AlgebraError("scheme wedge needs either --psi or --ker")


def cmd_scheme_wedge(args) -> ValidationReport:
    result = _build_scheme_wedge(args)
    report = ValidationReport(subject="scheme-wedge")
    report.add("scheme-wedge-built", True, detail=f"{result.scheme.n} points")
    if args.out:
        _write(args.out, formats.serialize_scheme(result.scheme))
    return report


def cmd_verify_suite(args) -> ValidationReport:
    if args.algebra:
        return _verify_suite_algebra(args)
    if args.base:
        return _verify_suite_scheme(args)
    raise AlgebraError("verify-suite needs --algebra or --base/--fiber")


def _copy_status(report: ValidationReport, name: str, sub: ValidationReport) -> None:
    """Summarize a sub-report as one named check."""
    refused = [c for c in sub.checks if c.status == "refused"]
    if refused:
        report.refuse(name, refused[0].detail or refused[0].name, witness=refused[0].witness)
        return
    bad = sub.failures()
    report.add(
        name,
        not bad,
        witness=None if not bad else (bad[0].name, bad[0].witness),
    )


def _verify_suite_algebra(args) -> ValidationReport:
    alg = formats.parse_table_algebra(_read(args.algebra))
    report = ValidationReport(subject=f"verify-suite[{Path(args.algebra).name}]")
    tol, seed = args.tolerance, args.seed

    if alg.is_commutative():
        table = character_table(alg, tol, seed)
        _copy_status(report, "lemma-es", dual_positivity_equivalence(table))
    else:
        report.refuse("lemma-es", "algebra is not commutative")
        table = None

    if not (args.k and args.d):
        report.refuse("corollary-wg1", "needs --k and --d")
        report.refuse("lemma-kd", "needs --k and --d")
        report.refuse("lemma-iso", "needs --k and --d")
        report.refuse("lemma-tars", "needs --k and --d")
        report.refuse("theorem-main01", "needs --k and --d")
        report.refuse("corollary-dualwedge", "needs --k and --d")
        return report

    k = _labels_to_subset(alg, args.k)
    d = _labels_to_subset(alg, args.d)

    decomp = None
    try:
        decomp = recognize_wedge(alg, k, d)
        report.add("corollary-wg1", True, detail="decomposed; tensor reconstructed exactly")
    except RefusalError as exc:
        report.refuse("corollary-wg1", exc.hypothesis, witness=exc.witness)
    if decomp is not None:
        identities = verify_wedge_identities(decomp.reconstruction)
        kd = [c for c in identities.checks if c.name != "quotient-isomorphic-to-right-factor"]
        iso = [c for c in identities.checks if c.name == "quotient-isomorphic-to-right-factor"]
        report.add(
            "lemma-kd",
            all(c.status == "pass" for c in kd),
            witness=next((c.witness for c in kd if c.status != "pass"), None),
        )
        report.add("lemma-iso", all(c.status == "pass" for c in iso))
    else:
        report.refuse("lemma-kd", "no wedge decomposition")
        report.refuse("lemma-iso", "no wedge decomposition")

    _copy_status(report, "lemma-tars", vanishing_check(alg, k, d, table, tol, seed))
    _copy_status(report, "theorem-main01", dual_sufficiency_check(alg, k, d, tol, seed))
    if decomp is not None and table is not None:
        _copy_status(report, "corollary-dualwedge", dual_of_wedge_check(decomp, tol, seed))
    else:
        report.refuse("corollary-dualwedge", "needs a commutative wedge decomposition")
    return report


def _verify_suite_scheme(args) -> ValidationReport:
    result = _build_scheme_wedge(args)
    sub = verify_scheme_wedge_algebra(result, args.tolerance)
    report = ValidationReport(subject="verify-suite[scheme-wedge]")
    by_name = {c.name: c for c in sub.checks}
    iso_names = ("adjacency-algebra-valid", "induced-wedge-built", "tensor-equals-table-wedge")
    bad = [by_name[n] for n in iso_names if n in by_name and by_name[n].status != "pass"]
    report.add(
        "theorem-scheme-iso",
        not bad and all(n in by_name for n in iso_names),
        witness=(bad[0].name, bad[0].witness) if bad else None,
    )
    quot = by_name.get("quotient-by-kernel-is-base")
    report.add(
        "theorem-quotient-scheme",
        quot is not None and quot.status == "pass",
        witness=quot.witness if quot else None,
    )
    note = by_name.get("kernel-valency-is-point-ratio")
    report.add(
        "lemma-note",
        note is not None and note.status == "pass",
        witness=note.witness if note else None,
    )
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tablealg",
        description="Exact engine for table algebras and association schemes.",
    )
    parser.add_argument("--tolerance", type=float, default=1e-9, help="numeric tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized diagonalization")
    parser.add_argument("--max-dim", type=int, default=None, help="search bound override")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the table-algebra axioms")
    p.add_argument("--algebra", required=True)
    p.add_argument("--mode", choices=("table-algebra", "c-algebra"), default="table-algebra")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("closed-subsets", help="enumerate all closed subsets")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_closed_subsets)

    p = sub.add_parser("quotient", help="quotient by a closed subset")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", required=True, help="comma-separated generator labels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("hom-check", help="validate a homomorphism document")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--phi", required=True)
    p.set_defaults(func=cmd_hom_check)

    p = sub.add_parser("wedge", help="wedge product relative to an epimorphism")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--n", required=True, help="generators of N inside the right algebra")
    p.add_argument("--phi", required=True, help="homomorphism document left -> <N>")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("wreath", help="wreath product (trivial epimorphism)")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_wreath)

    p = sub.add_parser("recognize", help="decompose as a wedge over K inside D")
    p.add_argument("--algebra", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("characters", help="character table of a commutative algebra")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("dual", help="dual C-algebra of a commutative algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("scheme-validate", help="check the association-scheme axioms")
    p.add_argument("--scheme", required=True)
    p.set_defaults(func=cmd_scheme_validate)

    p = sub.add_parser("scheme-to-algebra", help="adjacency algebra of a scheme")
    p.add_argument("--scheme", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scheme_to_algebra)

    p = sub.add_parser("scheme-wedge", help="identical-fiber wedge of schemes")
    p.add_argument("--base", required=True)
    p.add_argument("--d", required=True, help="comma-separated base relation indices")
    p.add_argument("--fiber", required=True)
    p.add_argument("--psi", help="comma-separated base point per fiber point")
    p.add_argument("--ker", help="fiber relation indices generating ker(psi1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scheme_wedge)

    p = sub.add_parser("verify-suite", help="run every named check applicable to the input")
    p.add_argument("--algebra")
    p.add_argument("--k")
    p.add_argument("--d")
    p.add_argument("--base")
    p.add_argument("--fiber")
    p.add_argument("--psi")
    p.add_argument("--ker")
    p.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (OSError, formats.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RefusalError as exc:
        report = ValidationReport(subject=args.command)
        report.refuse(exc.hypothesis, exc.detail, witness=exc.witness)
    except AlgebraError as exc:
        report = ValidationReport(subject=args.command)
        report.add("operation", False, witness=str(exc))

    if args.format == "json":
        print(json.dumps(report.to_json(), indent=1, sort_keys=True))
    else:
        print(report.to_text())
    done = sum(1 for c in report.checks if c.status == "pass")
    print(
        f"{report.subject}: {report.verdict} ({done}/{len(report.checks)} checks pass)",
        file=sys.stderr,
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
