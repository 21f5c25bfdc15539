import csv
import io
import json

import pytest

from swcengine.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, SWC_CSV_COLUMNS, main, parse_sum, UsageError


@pytest.fixture
def run(tmp_path, capsys):
    cache = tmp_path / "cache"

    def _run(*argv):
        code = main([*argv, "--cache-dir", str(cache)])
        out, err = capsys.readouterr()
        return code, out, err

    _run.cache = cache
    return _run


def test_gen_sl2_5(run):
    code, out, _ = run("gen", "sl2", "5")
    assert code == EXIT_OK
    assert "SL(2,5): order 120, 9 classes" in out
    assert (run.cache / "sl2-5" / "chartab.json").exists()
    meta = json.loads((run.cache / "sl2-5" / "meta.json").read_text())
    assert {"schema", "engine"} <= set(meta)


def test_gen_cyclic_8_json(run):
    code, out, _ = run("gen", "cyclic", "8", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["order"] == 8


def test_gen_sp6_refused_with_hint(run):
    code, _, err = run("gen", "sp6", "3")
    assert code == EXIT_BUDGET
    assert "9170703360" in err and "import-chartab" in err


def test_bad_arguments_exit_1(run):
    assert run("gen", "gl7", "3")[0] == EXIT_INVALID
    assert run("gen", "sl2", "6")[0] == EXIT_INVALID
    assert run("swc", "sl2", "3", "--row", "99")[0] == EXIT_INVALID


def test_swc_sl2_7_all_orthogonal(run):
    code, out, _ = run("swc", "sl2", "7")
    assert code == EXIT_OK
    ws = [line.strip() for line in out.splitlines() if line.strip().startswith("w =")]
    assert ws and set(ws) == {"w = 1"}


def test_swc_sl2_4_steinberg(run):
    code, out, _ = run("swc", "sl2", "4", "--row", "3")
    assert code == EXIT_OK
    assert "w = 1 + v1^2 + v1*v2 + v2^2 + v1^2*v2 + v1*v2^2" in out


def test_swc_symplectic_row_needs_doubling(run):
    code, out, _ = run("swc", "sp4", "3", "--row", "13")
    assert code == EXIT_INVALID and "--doubled-row" in out
    code, out, _ = run("swc", "sp4", "3", "--doubled-row", "13")
    assert code == EXIT_OK
    assert "r = 5 [integral]" in out


def test_swc_csv_header_and_sum(run):
    code, out, _ = run("swc", "sl2", "3", "--sum", "2*6+0", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == SWC_CSV_COLUMNS
    assert rows[0][:3] == ["group", "selection", "degree"]
    assert len(rows) == 2 and rows[1][2] == "7"


def test_parse_sum():
    assert parse_sum("2*3+5", 7).tolist() == [0, 0, 0, 2, 0, 1, 0]
    for bad in ("2*9", "x", "1++2"):
        with pytest.raises(UsageError):
            parse_sum(bad, 7)


def test_output_is_deterministic(run):
    first = run("swc", "sl2", "5", "--format", "json")
    second = run("swc", "sl2", "5", "--format", "json")
    assert first == second
    js = json.loads(first[1])
    assert all(entry["total_class"]["rendered"] == "1" for entry in js)


def test_verify_sl2_3_and_8(run):
    code, out, _ = run("verify", "sl2", "3")
    assert code == EXIT_OK and out.rstrip().endswith("SL(2,3): PASS")
    code, out, _ = run("verify", "sl2", "8", "--trials", "20")
    assert code == EXIT_OK


def test_verify_synthetic_sp6(run):
    code, out, _ = run("verify", "sp6", "--synthetic", "--trials", "30", "--seed", "7")
    assert code == EXIT_OK and "PASS" in out


def test_verify_unknown_suite(run):
    assert run("verify", "sl2", "3", "--suites", "bogus")[0] == EXIT_INVALID


def test_export_import_round_trip(run, tmp_path):
    path = tmp_path / "sl2_3.json"
    assert run("export-chartab", "sl2", "3", str(path))[0] == EXIT_OK
    code, out, _ = run("import-chartab", str(path))
    assert code == EXIT_OK and out.startswith("accepted SL(2,3)")


def test_import_rejects_missing_g2(run, tmp_path):
    path = tmp_path / "sp6.json"
    assert run("export-chartab", "sp6", "3", str(path), "--synthetic")[0] == EXIT_OK
    data = json.loads(path.read_text())
    for cl in data["classes"]:
        if "g2" in cl["tags"]:
            cl["tags"].remove("g2")
    path.write_text(json.dumps(data))
    code, _, err = run("import-chartab", str(path))
    assert code == EXIT_INVALID and "g2" in err


def test_import_rejects_broken_json(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run("import-chartab", str(path))[0] == EXIT_INVALID


def test_synthetic_sp6_flows_through_swc(run, tmp_path):
    path = tmp_path / "sp6.json"
    run("export-chartab", "sp6", "3", str(path), "--synthetic")
    code, out, _ = run("import-chartab", str(path))
    assert code == EXIT_OK and "(synthetic)" in out
    code, out, _ = run("swc", "sp6", "3", "--row", "0")
    assert code == EXIT_OK and "synthetic table" in out and "w = 1" in out
    code, out, _ = run("swc", "sp6", "3", "--format", "json")
    js = json.loads(out)
    assert [e["selection"] for e in js if "error" not in e] == ["row 0", "row 3", "row 5"]
    assert code == EXIT_INVALID


def test_verify_mismatch_exit_code(run, tmp_path, monkeypatch):
    from swcengine import verify

    def broken(*args, **kwargs):
        rep = verify.SuiteReport("forced")
        rep.add(False, reason="forced failure")
        return rep

    monkeypatch.setattr(verify, "whitney_sum_suite", broken)
    code, out, _ = run("verify", "sl2", "3", "--suites", "whitney")
    assert code == EXIT_MISMATCH and "FAIL" in out
