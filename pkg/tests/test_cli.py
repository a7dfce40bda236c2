import io
import json
import shutil

import pytest

from hhx.cli import bundled_document_path, main

BUNDLED = str(bundled_document_path())
CORRUPTED = str(bundled_document_path("dual-numbers-corrupted.hhx.json"))


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate_bundled_document():
    code, out, _ = run(["validate", BUNDLED])
    assert code == 0
    assert "overall: ok" in out


def test_validate_corrupted_document_fails_and_names_objects():
    code, out, _ = run(["validate", CORRUPTED])
    assert code == 1
    assert "comodule measuring phi" in out
    assert "FAIL" in out


def test_validate_names_non_cocommutative_coalgebra(tmp_path):
    doc = json.loads(bundled_document_path().read_text(encoding="utf-8"))
    # twist the comultiplication of d so it is no longer symmetric
    doc["coalgebras"]["C"]["comul"] = [
        [0, 0, 0, "1"], [1, 0, 1, "1"], [1, 1, 0, "2"]
    ]
    path = tmp_path / "doc.hhx.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(["validate", str(path)])
    assert code == 1
    assert "coalgebra C is not cocommutative" in out


def test_unresolved_reference_exit_code(tmp_path):
    doc = json.loads(bundled_document_path().read_text(encoding="utf-8"))
    doc["modules"]["M"]["algebra"] = "nope"
    path = tmp_path / "doc.hhx.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(["validate", str(path)])
    assert code == 2
    assert "nope" in err


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "doc.hhx.json"
    path.write_text("{ not json", encoding="utf-8")
    code, _, err = run(["validate", str(path)])
    assert code == 2
    assert "line" in err


def test_homology_table_circle():
    code, out, _ = run(["homology", BUNDLED, "Y", "A", "M", "--max-degree", "2"])
    assert code == 0
    lines = [l.split() for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    dims = [int(l[1]) for l in lines]
    assert dims == [2, 1, 1]


def test_homology_point_collapses():
    code, out, _ = run(["homology", BUNDLED, "Z", "A", "M", "--max-degree", "2"])
    assert code == 0
    lines = [l.split() for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    assert [int(l[1]) for l in lines] == [2, 0, 0]


def test_homology_builtin_space_and_module_default():
    code, out, _ = run(["homology", BUNDLED, "sphere:2", "A", "--max-degree", "1"])
    assert code == 0
    lines = [l.split() for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    assert [int(l[1]) for l in lines] == [2, 0]


def test_homology_truncation_too_shallow():
    code, _, err = run(["homology", BUNDLED, "Y", "A", "M", "--max-degree", "4"])
    assert code == 2
    assert "truncation" in err


def test_homology_unnormalized_agrees():
    _, out_n, _ = run(["homology", BUNDLED, "Y", "A", "M", "--max-degree", "2"])
    _, out_u, _ = run(
        ["homology", BUNDLED, "Y", "A", "M", "--max-degree", "2", "--unnormalized"]
    )
    dims = lambda text: [
        int(l.split()[1]) for l in text.splitlines() if l.strip() and l.strip()[0].isdigit()
    ]
    assert dims(out_n) == dims(out_u)


def test_homology_prime_field_advisory(tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        ["homology", BUNDLED, "Y", "A", "M", "--max-degree", "2",
         "--field", "prime:2", "--json-out", str(out_path)]
    )
    assert code == 0
    assert "advisory" in out
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert report["field"] == "prime:2"
    assert "advisory" in report


def test_homology_rejects_non_prime_field():
    code, _, err = run(
        ["homology", BUNDLED, "Y", "A", "M", "--max-degree", "1", "--field", "prime:6"]
    )
    assert code == 2
    assert "prime" in err


def test_induced_identity_for_group_like():
    code, out, _ = run(["induced", BUNDLED, "phi", "g", "Y", "--max-degree", "1"])
    assert code == 0
    assert "degree 0: 1x2 matrix" in out


def test_induced_zero_element():
    code, out, _ = run(["induced", BUNDLED, "phi", "0*g", "Y", "--max-degree", "0"])
    assert code == 0


def test_induced_d_matrix_and_json(tmp_path):
    out_path = tmp_path / "induced.json"
    code, out, _ = run(
        ["induced", BUNDLED, "phi", "d", "Y", "--max-degree", "1",
         "--chain", "--json-out", str(out_path)]
    )
    assert code == 0
    report = json.loads(out_path.read_text(encoding="utf-8"))
    deg0 = report["degrees"][0]
    assert deg0["matrix"]["entries"] == [[0, 1, "1"]]
    assert deg0["source"]["dimension"] == 2
    assert deg0["target"]["dimension"] == 1
    assert "chain_level" in report


def test_induced_accepts_plain_measuring_name():
    # Eq-style self measuring: psi with D = C on the regular modules
    code, out, _ = run(["induced", BUNDLED, "psi", "d", "Y", "--max-degree", "0"])
    assert code == 0


def test_induced_unknown_basis_name():
    code, _, err = run(["induced", BUNDLED, "phi", "zz", "Y", "--max-degree", "0"])
    assert code == 2
    assert "zz" in err


def test_square_bundled_equal():
    code, out, _ = run(["square", BUNDLED, "collapse", "phi", "d", "--max-degree", "1"])
    assert code == 0
    assert "square verdict: ok" in out
    assert "UNEQUAL" not in out


def test_square_corrupted_reports_unequal():
    code, out, _ = run(["square", CORRUPTED, "collapse", "phi", "d", "--max-degree", "1"])
    assert code == 1
    assert "UNEQUAL" in out
    assert "difference:" in out


def test_square_element_combination():
    code, out, _ = run(["square", BUNDLED, "collapse", "phi", "2*g + d", "--max-degree", "1"])
    assert code == 0
    assert "square verdict: ok" in out


def test_demo_runs(tmp_path):
    out_path = tmp_path / "demo.json"
    code, out, _ = run(["demo", "--json-out", str(out_path)])
    assert code == 0
    assert "overall: ok" in out
    assert "square verdict: ok" in out
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert report["command"] == "demo"
    assert len(report["reports"]) == 5


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(
            ["homology", BUNDLED, "Y", "A", "M", "--max-degree", "2",
             "--json-out", str(path)]
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_code():
    code, _, _ = run(["homology"])  # missing required arguments
    assert code == 2


def test_console_entry_point_installed():
    assert shutil.which("hhx") is not None
