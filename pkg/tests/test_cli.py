import json

from catspan.cli import main
from catspan.corpus import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fx(name):
    return str(fixture_path(name))


def test_validate_cat_ok(capsys):
    code, out, err = run(capsys, "validate-cat", fx("terminal.category.json"))
    assert code == 0
    assert "valid: true" in out


def test_validate_cat_law_failure(capsys, tmp_path):
    doc = {
        "format": 1,
        "kind": "category",
        "objects": ["A", "B"],
        "morphisms": [
            {"id": "id_A", "src": "A", "tgt": "A"},
            {"id": "id_B", "src": "B", "tgt": "B"},
            {"id": "f", "src": "A", "tgt": "B"},
        ],
        "identities": {"A": "id_A", "B": "id_B"},
        "compose": [["id_A", "id_A", "id_A"], ["id_B", "id_B", "id_B"], ["id_B", "f", "f"]],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate-cat", str(path), "--format", "structured")
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False
    witnesses = [v["witness"] for v in report["results"]["violations"]]
    assert ["f", "id_A"] in witnesses  # concrete witness required on exit 1


def test_parse_error_names_offending_field(capsys, tmp_path):
    doc = {
        "format": 1,
        "kind": "category",
        "objects": ["A"],
        "morphisms": [{"id": "f", "src": "A", "tgt": "Ghost"}],
        "identities": {"A": "f"},
        "compose": [],
    }
    path = tmp_path / "dangling.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate-cat", str(path))
    assert code == 2
    assert "f" in err and "Ghost" in err


def test_validate_fun_ok(capsys):
    code, out, err = run(capsys, "validate-fun", fx("arrow_pq_r.presheaf.json"))
    assert code == 0


def test_validate_fun_law_failure(capsys, tmp_path):
    doc = {
        "format": 1,
        "kind": "functor",
        "category": str(fixture_path("z2.category.json")),
        "variance": "co",
        "objects": {"*": ["0", "1"]},
        "morphisms": {"s": {"0": "0", "1": "0"}},
    }
    path = tmp_path / "badfun.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate-fun", str(path), "--format", "structured")
    assert code == 1
    report = json.loads(out)
    assert report["results"]["law"] == "composition"
    assert report["results"]["witness"]


def test_variance_mismatch_diagnostic(capsys):
    code, out, err = run(capsys, "unit", fx("z2_single.copresheaf.json"))
    assert code == 2
    assert "contra" in err


def test_hom(capsys):
    code, out, err = run(capsys, "hom", fx("z2.category.json"), "*", "*", "--format", "structured")
    assert code == 0
    assert json.loads(out)["results"]["morphisms"] == ["e", "s"]


def test_hom_unknown_object(capsys):
    code, out, err = run(capsys, "hom", fx("z2.category.json"), "*", "nope")
    assert code == 2


def test_nat(capsys):
    code, out, err = run(
        capsys, "nat", fx("z2_regular.presheaf.json"), fx("z2_regular.presheaf.json"),
        "--format", "structured",
    )
    assert code == 0
    assert json.loads(out)["results"]["count"] == 2


def test_nat_base_mismatch(capsys):
    code, out, err = run(capsys, "nat", fx("z2_regular.presheaf.json"), fx("arrow_pq_r.presheaf.json"))
    assert code == 2


def test_yoneda(capsys):
    code, out, err = run(capsys, "yoneda", fx("arrow.category.json"), "B", "--format", "structured")
    assert code == 0
    functor = json.loads(out)["results"]["functor"]
    assert functor["objects"] == {"A": ["f"], "B": ["id_B"]}


def test_yoneda_check(capsys):
    code, out, err = run(
        capsys, "yoneda-check", fx("arrow_pq_r.presheaf.json"), "A", "--format", "structured"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["transformation_count"] == results["value_count"] == 2


def test_sum(capsys):
    code, out, err = run(
        capsys, "sum", fx("z2_regular.presheaf.json"), fx("z2_regular.presheaf.json"),
        "--format", "structured",
    )
    assert code == 0
    functor = json.loads(out)["results"]["functor"]
    assert functor["objects"]["*"] == ["L.0", "L.1", "R.0", "R.1"]


def test_conjugate(capsys):
    code, out, err = run(capsys, "conjugate", fx("terminal_pair.presheaf.json"), "--format", "structured")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["direction"] == "presheaf-to-copresheaf"
    assert results["conjugate"]["objects"]["*"] == ["t0"]


def test_adjunction_check(capsys):
    code, out, err = run(
        capsys, "adjunction-check", fx("arrow_pq_r.presheaf.json"), fx("arrow_point.copresheaf.json"),
        "--format", "structured",
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["counts_equal"] and results["round_trip_ok"]
    assert results["left_count"] == results["right_count"]


def test_unit(capsys):
    code, out, err = run(capsys, "unit", fx("terminal_pair.presheaf.json"), "--format", "structured")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["is_isomorphism"] is False
    assert results["components"]["*"] == {"a": "t0", "b": "t0"}


def test_reflexive_scan(capsys):
    code, out, err = run(
        capsys, "reflexive-scan", fx("terminal.category.json"), "--max-set-size", "1",
        "--format", "structured",
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["total"] == 2 and results["reflexive_count"] == 1


def test_metric_validate_ok(capsys):
    code, out, err = run(capsys, "metric-validate", fx("random5.metric.json"))
    assert code == 0


def test_metric_validate_violation(capsys, tmp_path):
    doc = {
        "format": 1,
        "kind": "metric",
        "points": ["1", "2", "3"],
        "d": [[0, 1, 10], [1, 0, 1], [10, 1, 0]],
    }
    path = tmp_path / "badmetric.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "metric-validate", str(path), "--format", "structured")
    assert code == 1
    report = json.loads(out)
    assert any(v["axiom"] == "triangle" for v in report["results"]["violations"])


def test_tripod(capsys):
    code, out, err = run(capsys, "tripod", fx("triangle345.metric.json"), "--format", "structured")
    assert code == 0
    assert json.loads(out)["results"]["legs"] == [1.0, 2.0, 3.0]


def test_tripod_wrong_point_count(capsys):
    code, out, err = run(capsys, "tripod", fx("two_point.metric.json"))
    assert code == 2


def test_project(capsys):
    code, out, err = run(
        capsys, "project", fx("two_point.metric.json"), "2", "2", "--format", "structured"
    )
    assert code == 0
    assert json.loads(out)["results"]["output"] == {"x1": 1.0, "x2": 1.0}


def test_project_inadmissible_exit_one(capsys):
    code, out, err = run(
        capsys, "project", fx("two_point.metric.json"), "0.5", "1.0", "--format", "structured"
    )
    assert code == 1
    results = json.loads(out)["results"]
    assert results["reason"] == "inadmissible" and results["witness"]


def test_geodesic_check_samples(capsys):
    code, out, err = run(
        capsys, "geodesic-check", fx("triangle345.metric.json"), "--samples", "10",
        "--format", "structured",
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["all_ok"] and results["pairs_checked"] == 30


def test_geodesic_check_explicit_not_extremal(capsys):
    code, out, err = run(
        capsys, "geodesic-check", fx("two_point.metric.json"), "2", "2", "--format", "structured"
    )
    assert code == 1
    assert json.loads(out)["results"]["reason"] == "input-not-extremal"


def test_sample_span(capsys):
    code, out, err = run(
        capsys, "sample-span", fx("two_point.metric.json"), "--count", "5", "--format", "structured"
    )
    assert code == 0
    assert len(json.loads(out)["results"]["samples"]) == 5


def test_unknown_subcommand(capsys):
    assert main(["no-such-command"]) == 2


def test_budget_exceeded_exit_two(capsys):
    code, out, err = run(
        capsys, "nat", fx("z2_regular.presheaf.json"), fx("z2_regular.presheaf.json"),
        "--budget", "1",
    )
    assert code == 2
    assert "budget" in err


def test_output_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(
        capsys, "tripod", fx("triangle345.metric.json"), "--format", "structured",
        "--output", str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["results"]["legs"] == [1.0, 2.0, 3.0]


def test_structured_reports_byte_identical(capsys):
    args = ["geodesic-check", fx("random5.metric.json"), "--samples", "25", "--format", "structured"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
