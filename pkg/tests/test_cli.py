import csv
import io
import json
import subprocess
import sys

import pytest

from acsums.cli import CEILING_ENV, SCHEMA_VERSION, TABLE_COLUMNS, main, table_rows
from acsums.ktheory import SacsCoefficients


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_coeffs(tmp_path, blob, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(blob))
    return str(path)


def test_witness_text_and_json(capsys):
    code, out, _ = run(capsys, "witness", "--m", "3", "--n", "2")
    assert code == 0
    assert "c_4=11" in out and "verdict=true" in out
    code, out, _ = run(capsys, "witness", "--m", "3", "--n", "2", "--format", "json")
    blob = json.loads(out)
    assert blob["schema_version"] == SCHEMA_VERSION
    assert blob["c_top"] == "11" and blob["chi"] == 11 and blob["verdict"] is True


def test_witness_even_m_is_usage_error(capsys):
    code, _, err = run(capsys, "witness", "--m", "4", "--n", "2")
    assert code == 2 and "error" in err


def test_verify_exit_codes(tmp_path, capsys):
    good = write_coeffs(tmp_path, SacsCoefficients(3, 1, {(1, 1): 2}).to_dict(), "good.json")
    bad = write_coeffs(tmp_path, SacsCoefficients(2, 1).to_dict(), "bad.json")
    code, out, _ = run(capsys, "verify", "--coeffs", good)
    assert code == 0 and "c_2=5" in out
    code, out, _ = run(capsys, "verify", "--coeffs", bad, "--format", "json")
    blob = json.loads(out)
    assert code == 1 and blob["c_top"] == "6" and blob["chi"] == 4 and blob["verdict"] is False


def test_verify_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(SacsCoefficients(1, 2).to_dict())))
    code, out, _ = run(capsys, "verify", "--coeffs", "-")
    assert code == 0 and "c_4=5" in out


@pytest.mark.parametrize("text", ["{not json", '{"m": 2, "n": 1, "a": [{"j": 1, "k": 2, "value": 1}]}',
                                  '{"m": 2, "n": 1, "bogus": []}'])
def test_verify_rejects_bad_input(tmp_path, capsys, text):
    path = tmp_path / "c.json"
    path.write_text(text)
    code, out, err = run(capsys, "verify", "--coeffs", str(path))
    assert code == 2 and out == "" and "error" in err


def test_verify_missing_file_and_mn_mismatch(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", "--coeffs", str(tmp_path / "nope.json"))
    assert code == 2
    path = write_coeffs(tmp_path, SacsCoefficients(3, 1).to_dict())
    code, _, err = run(capsys, "verify", "--coeffs", path, "--m", "2")
    assert code == 2 and "--m" in err
    code, _, _ = run(capsys, "verify", "--coeffs", path, "--m", "3", "--n", "1")
    assert code == 1


def test_argparse_rejects_nonpositive():
    with pytest.raises(SystemExit) as exc:
        main(["witness", "--m", "0", "--n", "1"])
    assert exc.value.code == 2


def test_search_jsonl_round_trips_through_verify(tmp_path, capsys):
    code, out, err = run(capsys, "search", "--m", "3", "--n", "1", "--bound", "2", "--format", "jsonl")
    assert code == 0
    summary = json.loads(err.strip().removeprefix("# "))
    assert summary["witnesses"] == 6 and summary["candidates"] == 125
    lines = out.splitlines()
    assert len(lines) == 6
    for i, line in enumerate(lines):
        rec = json.loads(line)
        path = write_coeffs(tmp_path, rec["coeffs"], f"w{i}.json")
        code, vout, _ = run(capsys, "verify", "--coeffs", path, "--format", "json")
        again = json.loads(vout)
        assert code == 0 and again["c_top"] == rec["c_top"] and again["verdict"] is True


def test_search_modes_and_formats_agree(capsys):
    outs = {}
    for mode in ("brute", "decomposed"):
        code, out, _ = run(capsys, "search", "--m", "3", "--n", "2", "--bound", "1",
                           "--mode", mode, "--format", "json")
        assert code == 0
        outs[mode] = json.loads(out)["witnesses"]
    assert outs["brute"] == outs["decomposed"]
    code, out, _ = run(capsys, "search", "--m", "3", "--n", "2", "--bound", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == len(outs["brute"]) and all(r["verdict"] == "true" for r in rows)


def test_search_ceiling_from_flag_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "search", "--m", "3", "--n", "1", "--bound", "2", "--ceiling", "10")
    assert code == 2 and "error" in err
    monkeypatch.setenv(CEILING_ENV, "10")
    code, _, _ = run(capsys, "search", "--m", "3", "--n", "1", "--bound", "2")
    assert code == 2
    monkeypatch.setenv(CEILING_ENV, "1000")
    code, _, _ = run(capsys, "search", "--m", "3", "--n", "1", "--bound", "2")
    assert code == 0
    monkeypatch.setenv(CEILING_ENV, "lots")
    code, _, _ = run(capsys, "search", "--m", "3", "--n", "1", "--bound", "2")
    assert code == 2


def test_table_rows_values():
    rows = table_rows(4, 2)
    assert len(rows) == 8
    r = {(row["m"], row["n"]): row for row in rows}
    assert r[(3, 2)] == {"m": 3, "n": 2, "chi": 11, "sigma": 3, "hirzebruch": "true",
                         "c_top": "11", "verdict": "true"}
    assert r[(2, 1)]["hirzebruch"] == "false" and r[(2, 1)]["c_top"] == ""


def test_table_csv_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert run(capsys, "table", "--m-max", "5", "--n-max", "3", "--format", "csv", "-o", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    header = paths[0].read_text().splitlines()[0]
    assert header.split(",") == TABLE_COLUMNS


def test_table_text_and_json(capsys):
    code, out, _ = run(capsys, "table", "--m-max", "2", "--n-max", "2")
    assert code == 0 and out.splitlines()[0].split() == TABLE_COLUMNS
    code, out, _ = run(capsys, "table", "--m-max", "2", "--n-max", "2", "--format", "json")
    assert len(json.loads(out)["rows"]) == 4


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--m-max", "2", "--n-max", "2", "--samples", "5", "--format", "json")
    blob = json.loads(out)
    assert code == 0 and blob["failed"] == 0 and blob["passed"] > 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "acsums", "witness", "--m", "1", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "c_2=3" in proc.stdout
