import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from babylon.cli import main
from babylon.records import OutputRecord, format_decimal
from babylon.sexagesimal import RoundingMode, round_to_places, sex


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run("--json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_eval_power():
    rec = run_json("eval", "(1;20)^7")
    assert rec["sex"] == "7;29,29,32,50,22,13,20"
    assert rec["exact"] is True
    assert rec["rational"] == "16384/2187"


def test_eval_text_output():
    code, out, _ = run("eval", "7;30 * 5,20,0,0")
    assert code == 0
    assert "sex: 40,0,0,0" in out
    assert "rational: 8640000/1" in out
    assert run_json("eval", "0+0")["sex"] == "0"


def test_global_flags_after_subcommand():
    rec = json.loads(run("eval", "1/7", "--json", "--places", "3")[1])
    assert rec == {"sex": "0;8,34,17", "decimal": format_decimal(Fraction(1, 7)),
                   "rational": "1/7", "exact": False}
    rec = run_json("--places", "1", "--mode", "ceiling", "eval", "(1;20)^7")
    assert (rec["sex"], rec["exact"]) == ("7;30", False)
    assert run_json("--places", "1", "--mode", "nearest", "eval", "(1;20)^7")["sex"] == "7;29"


@pytest.mark.parametrize("argv,code", [
    (["eval", "1 +"], 2),
    (["eval", "1,60"], 2),
    (["eval", "1/0"], 3),
    (["bogus"], 1),
    (["eval"], 1),
    (["convert", "1(gur₇)"], 1),
    (["convert", "1(xyz)", "--to", "gur"], 2),
    (["convert", "1(gur)", "--to", "xyz"], 3),
    (["solve", "duration", "--k", "3", "--method", "table"], 3),
    (["solve", "duration", "--k", "2", "--rate", "0;12", "--method", "interpolate", "--months-per-year", "12"], 0),
    (["solve", "duration", "--k", "7", "--rate", "0;20", "--method", "log-approx"], 3),
    (["solve", "principal", "--total", "1", "--rate", "0;12"], 1),
    (["--units", "/nonexistent/file", "convert", "1(gur)", "--to", "gur"], 1),
    (["paper", "nope"], 1),
])
def test_exit_codes(argv, code):
    got, _, err = run(*argv)
    assert got == code
    if code:
        assert err


def test_convert_examples():
    assert run_json("convert", "4(šar'u-gal) gur₇", "--to", "gur₇")["sex"] == "7;30"
    assert run_json("convert", "1(gur₇)", "--to", "sìla")["rational"] == "1152000/1"
    rec = run_json("convert", "1(PI) 4(bán)", "--to", "gur")
    assert (rec["sex"], rec["rational"]) == ("0;20", "1/3")


def test_convert_with_unit_file(tmp_path):
    path = tmp_path / "units.txt"
    path.write_text("# extra\nunit sixty 60\n", encoding="utf-8")
    rec = run_json("--units", str(path), "convert", "1(gur)", "--to", "sixty")
    assert rec["rational"] == "5/1"


def test_unit_file_error_exit(tmp_path):
    path = tmp_path / "units.txt"
    path.write_text("unit a 1\nunit b\n", encoding="utf-8")
    code, _, err = run("--units", str(path), "convert", "1(gur)", "--to", "gur")
    assert code == 2
    assert "line 2" in err


def test_solve_interpolate():
    rec = run_json("solve", "duration", "--k", "2", "--rate", "0;12", "--method", "interpolate")
    assert rec["sex"] == "3;47,13,20"
    assert rec["months"]["sex"] == "2;33,20"
    assert rec["bracket"] == [3, 4]
    assert rec["method"] == "interpolation"


def test_solve_table():
    rec = run_json("solve", "duration", "--k", "1,4", "--base", "2", "--period", "5", "--method", "table")
    assert rec["sex"] == "30"
    assert rec["method"] == "table"
    assert "bracket" not in rec and "months" not in rec


def test_solve_table_from_file(tmp_path):
    path = tmp_path / "logs.txt"
    path.write_text("logentry 3 1 0\nlogentry 3 9 2\n", encoding="utf-8")
    rec = run_json("--units", str(path), "solve", "duration", "--k", "9", "--base", "3", "--method", "table")
    assert rec["sex"] == "2"
    code, _, _ = run("--units", str(path), "solve", "duration", "--k", "27", "--base", "3", "--method", "table")
    assert code == 3


def test_solve_principal():
    rec = run_json("solve", "principal", "--total", "1", "--rate", "0;12", "--n", "3")
    assert rec["sex"] == "0;34,43,20"
    assert run_json("solve", "principal", "--total", "1", "--rate", "1/5", "--n", "3")["sex"] == "0;34,43,20"


def test_solve_log_approx_and_modern():
    rec = run_json("solve", "duration", "--k", "7;30", "--rate", "0;20", "--method", "log-approx")
    assert rec["rational"] == "7/1"
    rec = run_json("solve", "duration", "--k", "7.5", "--rate", "1/3", "--method", "log-approx",
                   "--log2", "0.301", "--log3", "0.477")
    assert rec["rational"] == "7/1"
    rec = run_json("--places", "2", "solve", "duration", "--k", "2", "--rate", "0;12", "--method", "modern")
    assert rec["sex"] == "3;48,6"


@pytest.mark.parametrize("scenario", ["enmetena", "ybc4669", "vat8528", "ao6770", "all"])
def test_paper_scenarios_pass(scenario):
    code, out, err = run("paper", scenario)
    assert code == 0, err
    assert "FAIL" not in out


def test_paper_enmetena_report():
    _, out, _ = run("paper", "enmetena")
    for fragment in ("5,20,0,0", "0;20", "years (approximate logs): 7", "7;29,29,32,50,22,13,20",
                     "7;30", "40,0,0,0", "in gur₇: 10"):
        assert fragment in out


def test_paper_json():
    code, out, _ = run("--json", "paper", "ao6770")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert {c["expected"] for c in data["checks"]} >= {"3;47,13,20", "2;33,20", "3;48,6"}


def test_paper_mismatch_exit(monkeypatch):
    from babylon import scenarios
    from babylon.scenarios import Check

    monkeypatch.setitem(scenarios.SCENARIOS, "ao6770", lambda: [Check("broken", "1", "2")])
    code, out, err = run("paper", "ao6770")
    assert code == 4
    assert "FAIL" in out


def test_tables():
    code, out, _ = run("tables")
    assert code == 0 and "gur₇" in out and "5,20,0,0" in out and "šar'u-gal" in out
    _, out, _ = run("tables", "log")
    assert "1,4  6" in out
    _, out, _ = run("tables", "reciprocals")
    assert "  2  0;30" in out and "  7" not in out


@pytest.mark.parametrize("argv", [
    ["eval", "(1;20)^7"], ["eval", "1/7"], ["--places", "2", "--mode", "nearest", "eval", "1/7"],
    ["solve", "duration", "--k", "2", "--rate", "0;12"],
    ["solve", "duration", "--k", "7;30", "--rate", "0;20"],
])
def test_record_renderings_agree(argv):
    rec = run_json(*argv)
    record = OutputRecord.from_dict(rec)
    assert OutputRecord.from_dict(json.loads(record.to_json())) == record
    value = record.value
    places = int(argv[argv.index("--places") + 1]) if "--places" in argv else 20
    mode = argv[argv.index("--mode") + 1] if "--mode" in argv else "floor"
    assert sex(record.sex) == round_to_places(value, places, mode)
    if not record.decimal.endswith("..."):
        assert Fraction(record.decimal) == value
    else:
        assert abs(Fraction(record.decimal[:-3]) - value) < Fraction(1, 10 ** 19)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "babylon", "paper", "vat8528"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "30" in proc.stdout
