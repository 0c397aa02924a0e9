"""Input parsing, serialization, and the command-line pipeline."""

import json
import warnings

import pytest

from wildbraid import cli, fission
from wildbraid.cli import (
    InputError,
    TraceProjectionWarning,
    emit_decomposition,
    emit_input,
    emit_tree,
    main,
    parse_blocks,
    parse_input,
    tree_from_json,
)
from wildbraid.fission import Factor, GroupDecomposition

SL3_DOC = json.dumps(
    {
        "lie_type": "A",
        "rank": 2,
        "p": 2,
        "coefficients": [["-1", "1", "0"], ["-1", "-1", "2"]],
    }
)

QI_DOC = json.dumps(
    {
        "lie_type": "A",
        "rank": 8,
        "p": 3,
        "coefficients": [
            ["4", "3", "2", "1", "0", "-1", "-2", "-3", "-4"],
            ["4", "4", "3", "2", "1", "0", "-3", "-4", "-7"],
            ["2", "2", "1", "1", "1", "0", "0", "0", "-7"],
        ],
    }
)

QIII_DOC = json.dumps(
    {
        "lie_type": "A",
        "rank": 8,
        "p": 4,
        "coefficients": [
            [4, 3, 2, 1, 0, -1, -2, -3, -4],
            [4, 4, 3, 2, 1, 0, -3, -4, -7],
            [2, 2, 2, 2, 1, 0, -3, -3, -3],
            [1, 1, 1, 1, 1, 1, 0, -2, -4],
        ],
    }
)

G2_DOC = json.dumps(
    {"lie_type": "G2", "rank": 2, "p": 1, "coefficients": [["-4/3", "-1/3", "5/3"]]}
)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def test_parse_sl3_document():
    rs, q = parse_input(SL3_DOC)
    assert (rs.family, rs.rank) == ("A", 2)
    assert q.p == 2
    assert [tuple(map(int, c.coords)) for c in q.coefficients] == [
        (-1, 1, 0),
        (-1, -1, 2),
    ]


def test_parse_from_file(tmp_path):
    path = tmp_path / "sl3.json"
    path.write_text(SL3_DOC)
    rs, q = parse_input(str(path))
    assert rs.family == "A" and q.p == 2


def test_parse_missing_file():
    with pytest.raises(InputError, match="no such input file"):
        parse_input("does/not/exist.json")


def test_parse_empty_coefficients_rejected():
    doc = json.dumps({"lie_type": "A", "rank": 2, "coefficients": []})
    with pytest.raises(InputError, match="p >= 1 required"):
        parse_input(doc)


def test_parse_qi_rank8():
    rs, q = parse_input(QI_DOC)
    assert rs.rank == 8
    assert q.p == 3


def test_parse_dimension_mismatch():
    doc = json.dumps({"lie_type": "B", "rank": 3, "coefficients": [["1", "2"]]})
    with pytest.raises(InputError, match="expected 3 entries"):
        parse_input(doc)


def test_parse_invalid_rational():
    doc = json.dumps({"lie_type": "B", "rank": 2, "coefficients": [["1", "x/y"]]})
    with pytest.raises(InputError, match="invalid rational"):
        parse_input(doc)


def test_parse_float_rejected():
    doc = json.dumps({"lie_type": "B", "rank": 2, "coefficients": [[0.5, 1]]})
    with pytest.raises(InputError, match="not an exact rational"):
        parse_input(doc)


def test_parse_bad_family_and_rank():
    with pytest.raises(InputError, match="unknown family"):
        parse_input(json.dumps({"lie_type": "E", "rank": 6, "coefficients": [[]]}))
    with pytest.raises(InputError, match="unsupported rank"):
        parse_input(json.dumps({"lie_type": "D", "rank": 1, "coefficients": [["1"]]}))


def test_parse_trace_projection_warns():
    doc = json.dumps(
        {"lie_type": "A", "rank": 2, "coefficients": [["3", "4", "0"], ["0", "0", "1"]]}
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        _, q = parse_input(doc)
    assert any(issubclass(w.category, TraceProjectionWarning) for w in caught)
    assert all(sum(c.coords) == 0 for c in q.coefficients)
    # Root values (differences) are untouched by the projection.
    assert q.coefficients[0].root_value((1, -1, 0)) == -1


def test_parse_zero_pads_to_p():
    doc = json.dumps(
        {"lie_type": "B", "rank": 2, "p": 3, "coefficients": [["1", "2"]]}
    )
    _, q = parse_input(doc)
    assert q.p == 3
    assert q.coefficients[1].is_zero() and q.coefficients[2].is_zero()


def test_parse_many_point():
    doc = json.dumps({"points": [json.loads(SL3_DOC), json.loads(G2_DOC)]})
    blocks = parse_input(doc)
    assert [rs.family for rs, _ in blocks] == ["A", "G2"]


def test_parse_roundtrip():
    rs, q = parse_input(SL3_DOC)
    again_rs, again_q = parse_input(emit_input(rs, q))
    assert again_rs == rs and again_q == q
    assert emit_input(again_rs, again_q) == emit_input(rs, q)


# ---------------------------------------------------------------------------
# Emitters
# ---------------------------------------------------------------------------


def sl3_tree():
    _, q = parse_input(SL3_DOC)
    return fission.fission_tree(q)


def test_emit_tree_json_roundtrip():
    tree = sl3_tree()
    text = emit_tree(tree, "json")
    parsed = tree_from_json(text)
    assert emit_tree(parsed, "json") == text
    assert parsed.level_sizes() == (3, 2, 1)


def test_emit_tree_json_deterministic():
    tree = sl3_tree()
    assert emit_tree(tree, "json") == emit_tree(tree, "json")
    doc = json.loads(emit_tree(tree, "json"))
    assert set(doc) == {"family", "nodes", "leaf_order"}
    assert set(doc["nodes"][0]) == {"id", "level", "parent", "colour", "diameter"}


def test_emit_tree_dot_fig3():
    text = emit_tree(sl3_tree(), "dot")
    assert text.count("rank=same") == 3
    assert text.count(" -> ") == 5
    assert sum(line.strip().startswith("n") and "[" in line for line in text.splitlines()) == 6
    for label in ('"1"', '"2"', '"3"'):
        assert label in text


def test_emit_tree_dot_star_graph():
    doc = json.dumps({"lie_type": "A", "rank": 3, "coefficients": [["1", "2", "4", "-7"]]})
    _, q = parse_input(doc)
    text = emit_tree(fission.fission_tree(q), "dot")
    assert text.count("rank=same") == 2
    assert text.count(" -> ") == 4


def test_emit_tree_qiii_rank_count():
    _, q = parse_input(QIII_DOC)
    tree = fission.fission_tree(q)
    assert tree.level_sizes() == (9, 8, 6, 4, 1)
    assert emit_tree(tree, "dot").count("rank=same") == 5


def test_emit_tree_dot_marks_decorations():
    doc = json.dumps({"lie_type": "D", "rank": 4, "coefficients": [["1", "2", "4", "8"]]})
    _, q = parse_input(doc)
    text = emit_tree(fission.fission_tree(q), "dot")
    assert "fillcolor=lightblue" in text
    assert "shape=point" in text


def test_emit_decomposition_strings():
    _, q = parse_input(QI_DOC)
    assert emit_decomposition(fission.decompose(q)) == "PB_2 x PB_3^2 x PB_4"
    assert emit_decomposition(GroupDecomposition(())) == "1"
    exotic = GroupDecomposition.from_factors([Factor("PBBCD", 1, 1)])
    assert emit_decomposition(exotic) == "PB_BCD(1,1) [~ PB_3]"


# ---------------------------------------------------------------------------
# Command-line pipeline
# ---------------------------------------------------------------------------


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc)
    return str(path)


def test_cmd_decompose_check_sl3(tmp_path, capsys):
    path = write_doc(tmp_path, "sl3.json", SL3_DOC)
    assert main(["decompose", "--check", path]) == 0
    assert capsys.readouterr().out.strip() == "PB_2 x PB_2"


def test_cmd_decompose_oracle_equals_tree(tmp_path, capsys):
    path = write_doc(tmp_path, "qi.json", QI_DOC)
    assert main(["decompose", path]) == 0
    tree_out = capsys.readouterr().out
    assert main(["decompose", "--oracle", path]) == 0
    assert capsys.readouterr().out == tree_out == "PB_2 x PB_3^2 x PB_4\n"


def test_cmd_decompose_g2(tmp_path, capsys):
    path = write_doc(tmp_path, "g2.json", G2_DOC)
    assert main(["decompose", "--check", path]) == 0
    assert capsys.readouterr().out.strip() == "PBraid(G2)"


def test_cmd_decompose_json_payload(tmp_path, capsys):
    path = write_doc(tmp_path, "sl3.json", SL3_DOC)
    assert main(["decompose", "--json", "--check", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["decomposition"] == "PB_2 x PB_2"
    assert payload["factors"] == ["PB_2", "PB_2"]
    assert payload["method"] == "check"
    assert len(payload["trees"]) == 1 and len(payload["trees"][0]["nodes"]) == 6


def test_cmd_decompose_exotic_annotation(tmp_path, capsys):
    doc = json.dumps(
        {"lie_type": "D", "rank": 3, "p": 2,
         "coefficients": [["1", "2", "4"], ["1", "1", "0"]]}
    )
    path = write_doc(tmp_path, "d3.json", doc)
    assert main(["decompose", "--check", path]) == 0
    assert capsys.readouterr().out.strip() == "PB_2 x PB_BCD(1,1) [~ PB_3]"


def test_cmd_decompose_many_point_product(tmp_path, capsys):
    doc = json.dumps({"points": [json.loads(SL3_DOC), json.loads(SL3_DOC)]})
    path = write_doc(tmp_path, "two.json", doc)
    assert main(["decompose", "--check", path]) == 0
    assert capsys.readouterr().out.strip() == "PB_2 x PB_2 x PB_2 x PB_2"


def test_cmd_tree_dot(tmp_path, capsys):
    path = write_doc(tmp_path, "sl3.json", SL3_DOC)
    assert main(["tree", "--format", "dot", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph fission_tree")
    assert out.count(" -> ") == 5


def test_cmd_cable_fig3(tmp_path, capsys):
    path = write_doc(tmp_path, "sl3.json", SL3_DOC)
    assert main(["cable", path]) == 0
    out = capsys.readouterr().out
    assert "strands 3" in out
    assert "s1 s1" in out


def test_cmd_tree_rejects_g2(tmp_path, capsys):
    path = write_doc(tmp_path, "g2.json", G2_DOC)
    assert main(["tree", path]) == 2
    assert "no fission tree for G2" in capsys.readouterr().err


def test_cmd_cable_rejects_family_b(tmp_path, capsys):
    doc = json.dumps({"lie_type": "B", "rank": 2, "coefficients": [["1", "2"]]})
    path = write_doc(tmp_path, "b2.json", doc)
    assert main(["cable", path]) == 2
    assert "family A" in capsys.readouterr().err


def test_cmd_parse_error_exit_code(tmp_path, capsys):
    path = write_doc(tmp_path, "bad.json", "{not json")
    assert main(["decompose", path]) == 2
    assert "error:" in capsys.readouterr().err


def test_cmd_parse_error_json_envelope(tmp_path, capsys):
    path = write_doc(tmp_path, "bad.json", "{not json")
    assert main(["decompose", "--json", path]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "input-error"


def test_cmd_trace_warning_on_stderr(tmp_path, capsys):
    doc = json.dumps(
        {"lie_type": "A", "rank": 2, "coefficients": [["3", "4", "0"], ["0", "0", "1"]]}
    )
    path = write_doc(tmp_path, "warn.json", doc)
    assert main(["decompose", path]) == 0
    captured = capsys.readouterr()
    assert "warning:" in captured.err
    assert captured.out.strip() == "PB_2 x PB_2"


def test_cmd_stokes_verify(capsys):
    assert main(["stokes-verify", "--count", "5", "--seed", "3"]) == 0
    assert "0 failures" in capsys.readouterr().out


def test_cmd_stokes_verify_json(capsys):
    assert main(["stokes-verify", "--count", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True


def test_cmd_selftest_fast(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 9 and "FAIL" not in out
