"""Document formats and the command-line surface."""

import json

import pytest

from tablealg import closed_subset, make_homomorphism, subalgebra
from tablealg.cli import main
from tablealg.io import (
    ParseError,
    parse_homomorphism,
    parse_scheme,
    parse_table_algebra,
    serialize_homomorphism,
    serialize_scheme,
    serialize_table_algebra,
)

from common import k3_scheme, thin_scheme, z8s, zn

Z2_DOC = """
{"basis": ["e", "b"],
 "star": [0, 1],
 "lambda": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"], [1,1,0,1]]}
"""

K3_SCHEME_DOC = "3 1\n0 1 1\n1 0 1\n1 1 0\n"


def test_parse_z2_document():
    alg = parse_table_algebra(Z2_DOC)
    assert alg.labels == ("e", "b")
    assert alg.lam[1][1][0] == 1


def test_round_trip_serialize_then_parse():
    for alg in [zn(4), z8s()]:
        again = parse_table_algebra(serialize_table_algebra(alg))
        assert again.labels == alg.labels
        assert again.lam == alg.lam
        assert again.star == alg.star


def test_round_trip_parse_then_serialize():
    text = serialize_table_algebra(parse_table_algebra(Z2_DOC))
    assert serialize_table_algebra(parse_table_algebra(text)) == text


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError, match="lambda"):
        parse_table_algebra('{"basis": ["e","b"], "star": [0,1], "lambda": [[0,0,5,"1"]]}')
    with pytest.raises(ParseError, match="malformed rational"):
        parse_table_algebra('{"basis": ["e","b"], "star": [0,1], "lambda": [[0,0,0,"1.5"]]}')
    with pytest.raises(ParseError, match="line"):
        parse_table_algebra("{not json")
    with pytest.raises(ParseError, match="star"):
        parse_table_algebra('{"basis": ["e","b"], "star": [0,0], "lambda": []}')
    with pytest.raises(ParseError, match="identity"):
        # b placed first: the document format requires the identity at index 0
        parse_table_algebra(
            '{"basis": ["b","e"], "star": [0,1],'
            ' "lambda": [[1,1,1,"1"], [1,0,0,"1"], [0,1,0,"1"], [0,0,1,"1"]]}'
        )


def test_parse_scheme_document():
    scheme = parse_scheme(K3_SCHEME_DOC)
    assert scheme == k3_scheme()


def test_parse_scheme_errors():
    with pytest.raises(ParseError, match="rows"):
        parse_scheme("3 1\n0 1 1\n1 0 1\n")
    with pytest.raises(ParseError, match="entries"):
        parse_scheme("2 1\n0 1\n1 0 0\n")
    with pytest.raises(ParseError, match="out of range"):
        parse_scheme("2 1\n0 2\n2 0\n")


def test_scheme_round_trip():
    text = serialize_scheme(thin_scheme(4))
    assert parse_scheme(text) == thin_scheme(4)


def test_hom_round_trip():
    left = zn(4)
    n = closed_subset(left, [0, 2])
    n_alg, _ = subalgebra(left, n)
    phi = make_homomorphism(left, n_alg, [0, 1, 0, 1])
    text = serialize_homomorphism(phi)
    again = parse_homomorphism(text, left, n_alg)
    assert again.assignment == phi.assignment
    with pytest.raises(ParseError, match="missing"):
        parse_homomorphism("[]", left, n_alg)


def _write_examples(tmp_path):
    (tmp_path / "z8s.ta").write_text(serialize_table_algebra(z8s()))
    (tmp_path / "z4.ta").write_text(serialize_table_algebra(zn(4)))
    (tmp_path / "z4p.ta").write_text(serialize_table_algebra(zn(4)))
    left = zn(4)
    n_alg, _ = subalgebra(left, closed_subset(left, [0, 2]))
    phi = make_homomorphism(left, n_alg, [0, 1, 0, 1])
    (tmp_path / "phi.hom").write_text(serialize_homomorphism(phi))
    (tmp_path / "z4.sch").write_text(serialize_scheme(thin_scheme(4)))


def test_cli_validate(tmp_path, capsys):
    _write_examples(tmp_path)
    code = main(["validate", "--algebra", str(tmp_path / "z8s.ta")])
    out = capsys.readouterr()
    assert code == 0
    payload = json.loads(out.out)
    assert payload["verdict"] == "pass"
    assert {c["name"] for c in payload["checks"]} >= {"associativity", "identity-element"}


def test_cli_validate_failure_exit_code(tmp_path, capsys):
    doc = '{"basis": ["e","b"], "star": [0,1], "lambda": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"], [1,1,0,"-1"]]}'
    (tmp_path / "bad.ta").write_text(doc)
    assert main(["validate", "--algebra", str(tmp_path / "bad.ta")]) == 1


def test_cli_wedge_recognize_round_trip(tmp_path, capsys):
    _write_examples(tmp_path)
    out_file = tmp_path / "wedge.ta"
    code = main([
        "wedge",
        "--left", str(tmp_path / "z4.ta"),
        "--right", str(tmp_path / "z4p.ta"),
        "--n", "g2",
        "--phi", str(tmp_path / "phi.hom"),
        "--out", str(out_file),
    ])
    assert code == 0
    assert out_file.exists()
    capsys.readouterr()
    code = main([
        "recognize",
        "--algebra", str(out_file),
        "--k", "g2",
        "--d", "g0,g1,g2,g3",
    ])
    assert code == 0


def test_cli_dual_refuses_noncommutative(tmp_path, capsys):
    from tablealg.oracles import group_algebra, symmetric_group_3

    (tmp_path / "s3.ta").write_text(serialize_table_algebra(group_algebra(symmetric_group_3())))
    code = main(["dual", "--algebra", str(tmp_path / "s3.ta")])
    out = capsys.readouterr()
    assert code == 1
    payload = json.loads(out.out)
    assert payload["checks"][0]["status"] == "refused"


def test_cli_characters_deterministic(tmp_path, capsys):
    _write_examples(tmp_path)
    assert main(["characters", "--algebra", str(tmp_path / "z8s.ta")]) == 0
    first = capsys.readouterr().out
    assert main(["characters", "--algebra", str(tmp_path / "z8s.ta")]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_cli_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 2
    assert main(["validate", "--algebra", str(tmp_path / "missing.ta")]) == 3
    (tmp_path / "garbage.ta").write_text("{broken")
    assert main(["validate", "--algebra", str(tmp_path / "garbage.ta")]) == 3
    capsys.readouterr()


def test_cli_scheme_pipeline(tmp_path, capsys):
    _write_examples(tmp_path)
    assert main(["scheme-validate", "--scheme", str(tmp_path / "z4.sch")]) == 0
    out_alg = tmp_path / "z4s.ta"
    assert main([
        "scheme-to-algebra", "--scheme", str(tmp_path / "z4.sch"), "--out", str(out_alg),
    ]) == 0
    assert parse_table_algebra(out_alg.read_text()).dim == 4
    out_sch = tmp_path / "wedge.sch"
    assert main([
        "scheme-wedge",
        "--base", str(tmp_path / "z4.sch"),
        "--d", "0,2",
        "--fiber", str(tmp_path / "z4.sch"),
        "--ker", "0,2",
        "--out", str(out_sch),
    ]) == 0
    assert parse_scheme(out_sch.read_text()).n == 8
    capsys.readouterr()


def test_cli_verify_suite_algebra(tmp_path, capsys):
    _write_examples(tmp_path)
    code = main([
        "verify-suite",
        "--algebra", str(tmp_path / "z8s.ta"),
        "--k", "c4",
        "--d", "c2",
    ])
    out = capsys.readouterr()
    assert code == 0
    payload = json.loads(out.out)
    names = [c["name"] for c in payload["checks"]]
    assert names == [
        "lemma-es",
        "corollary-wg1",
        "lemma-kd",
        "lemma-iso",
        "lemma-tars",
        "theorem-main01",
        "corollary-dualwedge",
    ]
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_cli_verify_suite_scheme(tmp_path, capsys):
    _write_examples(tmp_path)
    code = main([
        "verify-suite",
        "--base", str(tmp_path / "z4.sch"),
        "--d", "0,2",
        "--fiber", str(tmp_path / "z4.sch"),
        "--ker", "0,2",
    ])
    out = capsys.readouterr()
    assert code == 0
    payload = json.loads(out.out)
    names = [c["name"] for c in payload["checks"]]
    assert names == ["theorem-scheme-iso", "theorem-quotient-scheme", "lemma-note"]
    assert payload["verdict"] == "pass"


def test_cli_text_format(tmp_path, capsys):
    _write_examples(tmp_path)
    assert main(["--format", "text", "validate", "--algebra", str(tmp_path / "z4.ta")]) == 0
    out = capsys.readouterr()
    assert "verdict: pass" in out.out


def test_cli_max_dim_bounds_enumeration(tmp_path, capsys):
    from tablealg.oracles import cyclic_group, group_algebra

    (tmp_path / "z16.ta").write_text(serialize_table_algebra(group_algebra(cyclic_group(16))))
    assert main(["--max-dim", "8", "closed-subsets", "--algebra", str(tmp_path / "z16.ta")]) == 1
    assert main(["closed-subsets", "--algebra", str(tmp_path / "z16.ta")]) == 0
    capsys.readouterr()


def test_cayley_scheme_document_round_trip():
    from tablealg import cayley_scheme
    from tablealg.oracles import cyclic_group

    from common import Z8S_PARTITION

    scheme = cayley_scheme(cyclic_group(8), Z8S_PARTITION)
    assert parse_scheme(serialize_scheme(scheme)) == scheme
