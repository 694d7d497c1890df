import json

import pytest

from liemd.catalog import FamilyParams, build
from liemd.cli import main
from liemd.exact import MatrixQ
from liemd.lie_core import LieAlgebra


def write_algebra(path, g: LieAlgebra):
    path.write_text(json.dumps(g.to_dict()), encoding="utf-8")
    return str(path)


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def g51_file(tmp_path):
    return write_algebra(tmp_path / "g51.json", build("5.1"))


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def test_check_clean_analysis(g51_file, capsys):
    assert main(["check", g51_file]) == 0
    out = capsys.readouterr().out
    assert "IsMD" in out and "max orbit dimension 4" in out


def test_check_json_mode(g51_file, capsys):
    assert main(["check", g51_file, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["md"]["verdict"] == "IsMD"
    assert doc["md"]["max_dim"] == 4
    assert doc["jacobi"]["status"] == "pass"
    assert doc["derived_dims"] == [5, 1, 0]


def test_check_duplicate_bracket_exit2(tmp_path, capsys):
    doc = {"dim": 5, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"5": 1}},
        {"i": 1, "j": 2, "coeffs": {"4": 1}},
    ]}
    path = write_json(tmp_path / "dup.json", doc)
    assert main(["check", path]) == 2
    err = capsys.readouterr().err
    assert "(1, 2)" in err


def test_check_invalid_json_exit2_with_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 5,', encoding="utf-8")
    assert main(["check", str(path)]) == 2
    assert "line" in capsys.readouterr().err


def test_check_unknown_field_exit2(tmp_path, capsys):
    path = write_json(tmp_path / "unknown.json",
                      {"dim": 2, "brackets": [], "comment": "hi"})
    assert main(["check", path]) == 2
    assert "unknown fields" in capsys.readouterr().err


def test_check_garbage_coefficient_exit2(tmp_path, capsys):
    path = write_json(tmp_path / "coef.json", {
        "dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "x/y"}}]})
    assert main(["check", path]) == 2
    assert "rational" in capsys.readouterr().err


def test_check_bad_grid_flags_exit2(g51_file, capsys):
    assert main(["check", g51_file, "--grid-radius", "0"]) == 2


def test_check_jacobi_failure_exit3(tmp_path, capsys):
    bad = {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"1": 1}},
        {"i": 1, "j": 3, "coeffs": {"2": 1}},
    ]}
    path = write_json(tmp_path / "bad.json", bad)
    assert main(["check", path]) == 3
    out = capsys.readouterr().out
    assert "(1, 2, 3)" in out


def test_check_grid_flags_shape_the_histogram(g51_file, capsys):
    assert main(["check", g51_file, "--json",
                 "--grid-radius", "1", "--samples", "5", "--seed", "9"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert sum(doc["md"]["histogram"].values()) == 3 ** 5 + 5


def test_check_non_solvable_is_clean_without_verdict(tmp_path, capsys):
    sl2ish = LieAlgebra.from_brackets(
        3, [(1, 2, {3: 1}), (1, 3, {1: -2}), (2, 3, {2: 2})])
    path = write_algebra(tmp_path / "sl2.json", sl2ish)
    assert main(["check", path, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["md"] is None
    assert doc["solvable"] is False


# ---------------------------------------------------------------------------
# orbit-dim
# ---------------------------------------------------------------------------

def test_orbit_dim_basic(g51_file, capsys):
    assert main(["orbit-dim", g51_file, "--f", "0,0,0,0,1"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_orbit_dim_zero_covector(g51_file, capsys):
    assert main(["orbit-dim", g51_file, "--f", "0,0,0,0,0"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_orbit_dim_rank_two(tmp_path, capsys):
    path = write_algebra(tmp_path / "g521.json", build("5.2.1"))
    assert main(["orbit-dim", path, "--f", "0,0,0,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_orbit_dim_shows_matrix(g51_file, capsys):
    assert main(["orbit-dim", g51_file, "--f", "0,0,0,0,1", "--show-matrix"]) == 0
    out = capsys.readouterr().out
    assert "b[i][j] = <F, [X_j, X_i]>" in out


def test_orbit_dim_arity_mismatch(g51_file, capsys):
    assert main(["orbit-dim", g51_file, "--f", "1,2"]) == 2
    assert "dimension" in capsys.readouterr().err


def test_orbit_dim_decimal_input_is_parsed_exactly(g51_file, capsys):
    # "0.5" is read as the exact rational 1/2, never as a float
    assert main(["orbit-dim", g51_file, "--f", "0.5,0,0,0,1"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_orbit_dim_rejects_garbage_coordinates(g51_file, capsys):
    assert main(["orbit-dim", g51_file, "--f", "a,b,c,d,e"]) == 2


# ---------------------------------------------------------------------------
# catalog build
# ---------------------------------------------------------------------------

def test_catalog_build_round_trip(tmp_path, capsys):
    out_path = tmp_path / "g538.json"
    assert main(["catalog", "build", "5.3.8", "l=1,angle=3/5:4/5",
                 "-o", str(out_path)]) == 0
    loaded = LieAlgebra.from_dict(json.loads(out_path.read_text()))
    from liemd.exact import UnitPoint
    from fractions import Fraction as F
    expected = build("5.3.8", FamilyParams(
        lambdas=(1,), angle=UnitPoint(F(3, 5), F(4, 5))))
    assert loaded.brackets == expected.brackets


def test_catalog_build_invalid_params(capsys):
    assert main(["catalog", "build", "5.4.1", "l1=2,l2=2,l3=3"]) == 2
    assert "λ1 ≠ λ2" in capsys.readouterr().err


def test_catalog_build_to_stdout(capsys):
    assert main(["catalog", "build", "rejected.5.2.3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 5


# ---------------------------------------------------------------------------
# fingerprint / iso / separate
# ---------------------------------------------------------------------------

def test_fingerprint_command(g51_file, capsys):
    assert main(["fingerprint", g51_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dims"]["derived"] == [5, 1, 0]
    assert doc["kirillov"]["verdict"] == "IsMD"


def test_iso_command_on_basis_changed_copy(tmp_path, capsys):
    g = build("5.4.5")
    moved = g.change_of_basis(MatrixQ([
        [1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 2, 1, 0, 0],
        [0, 0, 0, 1, 0], [0, 0, 0, -1, 1]]))
    a = write_algebra(tmp_path / "a.json", g)
    b = write_algebra(tmp_path / "b.json", moved)
    assert main(["iso", a, b, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "Iso"
    assert "witness" in doc


def test_iso_command_not_iso(tmp_path, capsys):
    a = write_algebra(tmp_path / "a.json", build("5.4.3", FamilyParams(lambdas=(2,))))
    b = write_algebra(tmp_path / "b.json", build("5.4.4", FamilyParams(lambdas=(2,))))
    assert main(["iso", a, b]) == 0
    assert "NotIso" in capsys.readouterr().out


def test_iso_command_precondition_exit2(tmp_path, capsys):
    a = write_algebra(tmp_path / "a.json", build("5.3.4"))
    assert main(["iso", a, a]) == 2


def test_separate_files(tmp_path, capsys):
    a = write_algebra(tmp_path / "a.json", build("5.1"))
    b = write_algebra(tmp_path / "b.json", build("5.2.1"))
    assert main(["separate", a, b, "--json",
                 "--grid-radius", "1", "--samples", "10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["pairs"]) == 1
    assert doc["pairs"][0]["outcome"] == "separated"


# ---------------------------------------------------------------------------
# verify-catalog
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def verify_json():
    import io
    import contextlib
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["verify-catalog", "--json"])
    return code, buf.getvalue()


def test_verify_catalog_exits_clean(verify_json):
    code, _ = verify_json
    assert code == 0


def test_verify_catalog_structure(verify_json):
    _, out = verify_json
    doc = json.loads(out)
    assert doc["summary"]["families"] == 25
    assert doc["summary"]["rejected_confirmed"] is True
    assert doc["summary"]["failures"] == []
    assert doc["summary"]["discrepancies"] == ["5.2.2"]
    assert doc["config"] == {"grid_radius": 2, "samples": 200, "seed": 1}


def test_verify_catalog_flags_known_discrepancy(verify_json):
    _, out = verify_json
    doc = json.loads(out)
    records = [r for r in doc["instances"] if r["family"] == "5.2.2"]
    assert records
    for r in records:
        d = r["discrepancy"]
        assert d["found"] == "NotMD"
        assert {"F": [0, 0, 0, 1, 0], "rank": 2} in d["witnesses"]
        assert {"F": [0, 0, 0, 0, 1], "rank": 4} in d["witnesses"]


def test_verify_catalog_confirms_rejections(verify_json):
    _, out = verify_json
    doc = json.loads(out)
    rejected = [r for r in doc["instances"] if r["family"].startswith("rejected")]
    assert len(rejected) == 2
    for r in rejected:
        assert r["md"]["verdict"] == "NotMD"
        ranks = sorted(w["rank"] for w in r["md"]["witnesses"])
        assert ranks == [2, 4]


def test_verify_catalog_reports_maximality(verify_json):
    _, out = verify_json
    doc = json.loads(out)
    for r in doc["instances"]:
        if r["md"] and r["md"]["verdict"] == "IsMD":
            assert r["maximality"] == "holds"


def test_verify_catalog_json_round_trips(verify_json):
    _, out = verify_json
    doc = json.loads(out)
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == out


def test_verify_catalog_is_byte_deterministic(verify_json):
    import io
    import contextlib
    _, first = verify_json
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(["verify-catalog", "--json"])
    assert buf.getvalue() == first


def test_no_floats_anywhere_in_reports(verify_json):
    _, out = verify_json

    def walk(node):
        if isinstance(node, float):
            raise AssertionError("float leaked into report")
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(json.loads(out))
