"""File formats: algebra documents (JSON), homomorphism documents (JSON),
scheme documents (plain text).

Algebra document:
    {"basis": [labels, identity first],
     "star":  [permutation of 0..dim-1],
     "lambda": [[i, j, k, "p/q"], ...]}   # omitted triples are zero

Homomorphism document: a JSON list of [source-label, target-label] pairs; the
scalar |b|/|d| is always derived, never stored.

Scheme document: a header line "n d", then n rows of n relation indices,
whitespace-separated; d is the number of non-diagonal relations.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import TableAlgebra
from .homs import TableHomomorphism, make_homomorphism
from .reports import AlgebraError
from .schemes import AssociationScheme
from .scalars import format_rational, parse_rational


class ParseError(AlgebraError):
    """Malformed document; the message carries the position."""


def parse_table_algebra(text: str) -> TableAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    for key in ("basis", "star", "lambda"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(x, str) for x in basis):
        raise ParseError("'basis' must be a list of strings")
    dim = len(basis)
    if len(set(basis)) != dim or dim == 0:
        raise ParseError("'basis' must be a nonempty list of distinct labels")
    star = doc["star"]
    if (
        not isinstance(star, list)
        or len(star) != dim
        or sorted(star) != list(range(dim))
    ):
        raise ParseError("'star' must be a permutation of 0..dim-1")
    entries = doc["lambda"]
    if not isinstance(entries, list):
        raise ParseError("'lambda' must be a list of [i, j, k, value] entries")
    lam = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    seen: set[tuple[int, int, int]] = set()
    for pos, entry in enumerate(entries):
        where = f"lambda[{pos}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(f"{where}: expected [i, j, k, value]")
        i, j, k, value = entry
        for name, idx in (("i", i), ("j", j), ("k", k)):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise ParseError(f"{where}: index {name}={idx!r} out of bounds for dim {dim}")
        if (i, j, k) in seen:
            raise ParseError(f"{where}: duplicate entry for ({i}, {j}, {k})")
        seen.add((i, j, k))
        if isinstance(value, int):
            lam[i][j][k] = Fraction(value)
        elif isinstance(value, str):
            try:
                lam[i][j][k] = parse_rational(value)
            except ValueError:
                raise ParseError(f"{where}: malformed rational {value!r}") from None
        else:
            raise ParseError(f"{where}: value must be an integer or a 'p/q' string")
    for j in range(dim):
        for k in range(dim):
            want = Fraction(1 if j == k else 0)
            if lam[0][j][k] != want or lam[j][0][k] != want:
                raise ParseError(
                    f"the first basis label {basis[0]!r} is not the identity "
                    f"(offending product with {basis[j]!r})"
                )
    return TableAlgebra(tuple(basis), lam, tuple(star))


def serialize_table_algebra(alg: TableAlgebra) -> str:
    entries = [
        [i, j, k, format_rational(alg.lam[i][j][k])]
        for i in range(alg.dim)
        for j in range(alg.dim)
        for k in range(alg.dim)
        if alg.lam[i][j][k] != 0
    ]
    doc = {"basis": list(alg.labels), "star": list(alg.star), "lambda": entries}
    return json.dumps(doc, indent=1) + "\n"


def parse_homomorphism(text: str, source: TableAlgebra, target: TableAlgebra) -> TableHomomorphism:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, list):
        raise ParseError("homomorphism document must be a JSON list of label pairs")
    assignment = [-1] * source.dim
    for pos, pair in enumerate(doc):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"pair {pos}: expected [source-label, target-label]")
        src, dst = pair
        try:
            b = source.index_of(src)
            d = target.index_of(dst)
        except AlgebraError as exc:
            raise ParseError(f"pair {pos}: {exc}") from None
        if assignment[b] != -1:
            raise ParseError(f"pair {pos}: duplicate assignment for {src!r}")
        assignment[b] = d
    missing = [source.labels[b] for b, d in enumerate(assignment) if d == -1]
    if missing:
        raise ParseError(f"assignment missing for {missing}")
    return make_homomorphism(source, target, assignment)


def serialize_homomorphism(phi: TableHomomorphism) -> str:
    pairs = [
        [phi.source.labels[b], phi.target.labels[d]] for b, d in enumerate(phi.assignment)
    ]
    return json.dumps(pairs, indent=1) + "\n"


def parse_scheme(text: str) -> AssociationScheme:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty scheme document")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("line 1: header must be 'n d'")
    try:
        n, d = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("line 1: header must be two integers") from None
    if n <= 0 or d < 0:
        raise ParseError("line 1: need n > 0 and d >= 0")
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rel = []
    for r, line in enumerate(lines[1:], start=2):
        row = line.split()
        if len(row) != n:
            raise ParseError(f"line {r}: expected {n} entries, found {len(row)}")
        try:
            row_vals = [int(v) for v in row]
        except ValueError:
            raise ParseError(f"line {r}: entries must be integers") from None
        for v in row_vals:
            if not 0 <= v <= d:
                raise ParseError(f"line {r}: relation index {v} out of range 0..{d}")
        rel.append(row_vals)
    return AssociationScheme(rel)


def serialize_scheme(scheme: AssociationScheme) -> str:
    lines = [f"{scheme.n} {scheme.nrel - 1}"]
    for row in scheme.rel.tolist():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
