import json

import pytest

from dioph import cli
from dioph.report import FAIL, Verdict

SQ2 = "surd:(0+1*sqrt2)/1"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cf_csv_rows(capsys):
    code, out, _ = run(capsys, "cf", "--alpha", "golden", "--depth", "10", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 12
    assert lines[0].startswith("k,a_k,p_k,q_k")


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--alpha", "golden", "--eps", "1/20", "--N", "200")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["overall"] == "pass"
    assert doc["report"]["count"] == 20 and "verdicts" not in doc["report"]


@pytest.mark.parametrize("alpha,N", [("sqrt:(0+1*sqrt2)/1", "10000"), ("golden", "1000"), ("e", "1000")])
def test_verify_all(capsys, alpha, N):
    code, out, _ = run(capsys, "verify-all", "--alpha", alpha, "--N", N)
    doc = json.loads(out)
    assert code == 0 and doc["overall"] == "pass"
    assert not any(v["status"] == "fail" for v in doc["verdicts"])


@pytest.mark.parametrize("argv", [
    ["count", "--alpha", "nonsense", "--eps", "1/8", "--N", "10"],
    ["count", "--alpha", "golden", "--N", "10"],
    ["norm", "--alpha", "golden", "--n", "5", "--gamma", "bogus"],
    ["cf", "--depth", "x"],
    ["no-such-command"],
    ["cf", "--precision", "2"],
    ["construct-t8", "--alpha", "golden"],
])
def test_bad_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_help_exit_0(capsys):
    assert cli.main(["--help"]) == 0
    assert cli.main(["cf", "--help"]) == 0
    assert "CSV columns" in capsys.readouterr().out


def test_deterministic_with_threads(capsys):
    args = ["sum", "--alpha", "e", "--N", "3000"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--threads", "4")
    assert a == b


def test_failed_verdict_exit_1(capsys, monkeypatch):
    def broken(args):
        return {"command": "cf"}, [Verdict("x", FAIL)], None
    monkeypatch.setitem(cli.COMMANDS, "cf", (broken, "broken"))
    code, out, _ = run(capsys, "cf")
    assert code == 1 and json.loads(out)["overall"] == "fail"


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "x.csv"
    code, out, _ = run(capsys, "fiber-scan", "--alpha", "golden", "--beta", "e;1/3",
                       "--psi", "1/(n log^2(n+2) loglog(n+16))", "--N", "2000",
                       "--format", "csv", "--out", str(dest))
    assert code == 0 and out == ""
    assert dest.read_text().startswith("beta,n,product_hi,psi_n_lo")


@pytest.mark.parametrize("argv", [
    ["ostrowski", "--alpha", "e", "--n", "12345"],
    ["ostrowski", "--alpha", "golden", "--gamma", "1/3", "--depth", "20"],
    ["norm", "--alpha", SQ2, "--n", "77", "--gamma", "2/5"],
    ["gaps", "--alpha", "golden", "--prefix", "0,0", "--N", "500"],
    ["split", "--alpha", "golden", "--N", "1000"],
    ["trim", "--alpha", "golden", "--N", "1000", "--c", "1"],
    ["linforms", "--alpha", "golden", "--T", "64", "--L", "64"],
    ["psi-sum", "--alpha", "golden", "--psi", "1/(n log^2(n+2))", "--N", "500"],
    ["construct-t5", "--alpha", "surd:(-1+1*sqrt5)/2"],
    ["construct-t8"],
    ["liouville", "--rule", "qk", "--depth", "6"],
])
def test_commands_run(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    json.loads(out)
