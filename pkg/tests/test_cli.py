import json

import pytest

from gtt.cli import main


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_bundled_example(capsys):
    assert main(["run", "examples/retract.gtt", "--interp", "natural"]) == 0
    assert capsys.readouterr().out.strip() == "RESULT: true"


def test_run_timeout(capsys):
    assert main(["run", "loop.gtt", "--fuel", "1000"]) == 0
    assert capsys.readouterr().out.strip() == "RESULT: timeout(1000)"


def test_run_scheme(tmp_path, capsys):
    path = _write(tmp_path, "p.gtt", "(dn (F bool) (F ?) (ret (up bool ? false)))")
    assert main(["run", path, "--interp", "scheme"]) == 0
    assert capsys.readouterr().out.strip() == "RESULT: false"


def test_dyn(capsys):
    assert main(["dyn", "(U (F 1))", "(U (F ?))"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("UMon")
    assert "FMon" in out and "ToDyn" in out


def test_dyn_not_derivable(capsys):
    assert main(["dyn", "?", "1"]) == 1
    assert "NOT DERIVABLE" in capsys.readouterr().out


def test_check_ok(tmp_path, capsys):
    path = _write(tmp_path, "ok.gtt", "(lam (x bool) (ret x))")
    assert main(["check", path]) == 0
    assert capsys.readouterr().out.strip() == "OK: (-> (+ 1 1) (F (+ 1 1)))"


def test_check_parse_error(tmp_path, capsys):
    path = _write(tmp_path, "bad.gtt", "(ret true\n")
    assert main(["check", path]) == 1
    assert capsys.readouterr().out.startswith("ERR ")


def test_check_type_error(tmp_path, capsys):
    path = _write(tmp_path, "bad.gtt", "(ret (app unit unit))")
    assert main(["check", path]) == 1
    out = capsys.readouterr().out
    assert out.startswith("ERR 1:") and "E-" in out


def test_check_program_flag(tmp_path, capsys):
    path = _write(tmp_path, "unit.gtt", "(ret unit)")
    assert main(["check", path]) == 0
    capsys.readouterr()
    assert main(["check", path, "--program"]) == 1


def test_missing_file(capsys):
    assert main(["check", "/nonexistent/nothing.gtt"]) == 1
    assert "E-IO" in capsys.readouterr().out


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 2


@pytest.mark.parametrize("emit", ["cbpvstar", "cbpv"])
def test_elab(emit, capsys):
    assert main(["elab", "retract.gtt", "--emit", emit]) == 0
    out = capsys.readouterr().out
    assert "(up " not in out and "(dn " not in out


def test_simplify(capsys):
    assert main(["simplify", "retract.gtt", "--interp", "scheme"]) == 0
    assert "rollmu" in capsys.readouterr().out


def test_laws_json(capsys):
    assert main(["test", "laws", "--law", "identity", "--depth", "2", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows and all(r["law"] == "identity" and r["failures"] == [] for r in rows)


def test_laws_text(capsys):
    assert main(["test", "laws", "--law", "err-bot", "--depth", "2", "--interp", "scheme"]) == 0
    assert capsys.readouterr().out.startswith("PASS err-bot")


def test_graduality_failure_is_reported(tmp_path, capsys):
    path = _write(tmp_path, "bad_pair.gtt", "(graduality (ret true) (ret false))")
    assert main(["test", "graduality", path, "--json"]) == 1
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["failures"][0]["lhs_result"] == "true"


def test_graduality_corpus(capsys):
    assert main(["test", "graduality", "--depth", "2"]) == 0
    assert capsys.readouterr().out.count("PASS") >= 20
