import json

from click.testing import CliRunner

from chevlab.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_ring_decompose_artinian_z360():
    res = run("ring", "decompose-artinian", "Z/360")
    assert res.exit_code == 0
    assert "Z/8 x Z/9 x Z/5" in res.output
    assert "PASS" in res.output


def test_ring_decompose_artinian_json():
    res = run("ring", "decompose-artinian", "Z/360", "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["schema"] == "chevlab-report/1"
    assert doc["factors"] == ["Z/8", "Z/9", "Z/5"]
    assert doc["passed"] is True


def test_ring_malformed_input_exit_2():
    res = run("ring", "decompose-artinian", "Z/1")
    assert res.exit_code == 2


def test_roots_show():
    res = run("roots", "show", "--type", "G2")
    assert res.exit_code == 0
    assert "12 roots" in res.output


def test_chevalley_constants_g2():
    res = run("chevalley", "constants", "G2", "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert "unit_signs" in doc
    assert set(doc["unit_signs"]) == {"eps1", "eps2", "eps3", "eps4", "eps5"}


def test_chevalley_bad_type_exit_2():
    res = run("chevalley", "constants", "F5")
    assert res.exit_code == 2


def test_verify_relations_a2():
    res = run(
        "group", "verify-relations", "--type", "A2", "--ring", "Z/4"
    )
    assert res.exit_code == 0
    assert "exhaustive" in res.output


def test_verify_relations_g2_adjoint_z4():
    res = run(
        "group",
        "verify-relations",
        "--type",
        "G2",
        "--ring",
        "Z/4",
        "--rep",
        "adjoint",
        "--format",
        "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["passed"] and doc["exhaustive"]


def test_group_decompose_prop2():
    ident = json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    res = run(
        "group",
        "decompose",
        "--type",
        "A2",
        "--ring",
        "Z/8",
        "--algorithm",
        "prop2",
        "--input",
        ident,
        "--format",
        "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["length"] == 0 and doc["verified"]


def test_group_decompose_nontrivial():
    mat = json.dumps([[1, 0, 0], [2, 1, 0], [3, 5, 1]])
    res = run(
        "group", "decompose", "--type", "A2", "--ring", "Z/8",
        "--algorithm", "prop2", "--input", mat, "--format", "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["length"] <= doc["bound"]


def test_group_decompose_tavgen():
    mat = json.dumps([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    res = run(
        "group", "decompose", "--type", "A2", "--ring", "Z/4",
        "--algorithm", "tavgen", "--input", mat,
    )
    assert res.exit_code == 0


def test_group_decompose_bad_matrix_exit_2():
    res = run(
        "group", "decompose", "--type", "A2", "--ring", "Z/8",
        "--algorithm", "prop2", "--input", "[[1,0],[0,1]]",
    )
    assert res.exit_code == 2


def test_group_closure():
    res = run(
        "group", "closure", "--type", "A2", "--ring", "GF(2)",
        "--format", "json",
    )
    assert res.exit_code == 0
    assert json.loads(res.output)["order"] == 168


def test_congruence_certify_kernel():
    res = run(
        "congruence", "certify", "--type", "A2", "--ring", "Z/4",
        "--subgroup", "kernel:(2)", "--format", "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["ideal"] == [0, 2]


def test_congruence_certify_refusal_exit_1():
    res = run(
        "congruence", "certify", "--type", "C2", "--ring", "Z/4",
        "--subgroup", "kernel:(2)",
    )
    assert res.exit_code == 1
    assert "2 is not a unit" in res.output


def test_congruence_levels():
    res = run(
        "congruence", "levels", "--type", "A2", "--ring", "Z/4",
        "--subgroup", "kernel:(2)", "--format", "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert all(row["values"] == [0, 2] for row in doc["levels"])


def test_ebg_check_a2_gf2():
    res = run("ebg", "check", "--type", "A2", "--ring", "GF(2)")
    assert res.exit_code == 0
    assert "168/168 elements in (U+U-)^4" in res.output


def test_deterministic_output():
    args = [
        "group", "verify-relations", "--type", "B2", "--ring", "GF(3)",
        "--format", "json", "--seed", "7",
    ]
    assert run(*args).output == run(*args).output


def test_invalid_rep_exit_2():
    res = run(
        "group", "verify-relations", "--type", "G2", "--ring", "Z/4",
        "--rep", "defining-G",
    )
    assert res.exit_code == 2


def test_group_decompose_merge_product_ring():
    one, zero = [1, 1], [0, 0]
    ident = json.dumps(
        [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
    )
    res = run(
        "group", "decompose", "--type", "A2", "--ring", "Z/4 x GF(3)",
        "--algorithm", "merge", "--input", ident, "--format", "json",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["verified"] and doc["length"] <= doc["bound"]
