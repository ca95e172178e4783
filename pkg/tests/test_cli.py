import csv
import io
import json
import subprocess
import sys

import pytest

from satpow.asymptotics import run_sequence
from satpow.cli import (
    JobParseError,
    emit,
    execute,
    format_job,
    main,
    parse_job,
    parse_polynomial,
    report_from_json,
)
from satpow.ideal_ops import Ideal


def test_parse_examples():
    job = parse_job("ring Q[x,y]; ideal(x^2, x*y); K=5; cmd=epsilon")
    assert job.d == 2 and job.K == 5 and job.command == "epsilon"
    assert [str(g) for g in job.generators] == ["x^2", "x*y"]
    job = parse_job("ring Q[x]; ideal(x^2); cmd=saturate")
    assert job.d == 1 and job.command == "saturate"
    with pytest.raises(JobParseError, match="ring not declared"):
        parse_job("ideal(x)")


def test_parse_module_and_whitespace():
    job = parse_job("  ring Q[ x , y ] ;\n module( [x, 0] , [y,0] ) ; format = json ; tol=0.15;")
    assert job.target == "module" and job.gamma == 2 and job.format == "json"
    assert str(job.tol) == "3/20"


@pytest.mark.parametrize(
    "text, message",
    [
        ("ring Q[x]; ideal(y)", "unknown variable 'y'"),
        ("ring Q[x]; ring Q[y]; ideal(x)", "duplicate ring"),
        ("ring Q[x]; ideal(x); ideal(x)", "duplicate target"),
        ("ring Q[x]; ideal(x); K=2; K=3", "duplicate setting"),
        ("ring Q[x,x]; ideal(x)", "duplicate variable"),
        ("ring Q[x]; ideal(x +)", "unexpected"),
        ("ring Q[x,y]; module([x,0],[y])", "different lengths"),
        ("ring Q[x]; ideal(x); cmd=fly", "cmd must be one of"),
        ("ring Q[x]; ideal(x); K=0", "positive integer"),
        ("ring Q[x]", "no ideal or module"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(JobParseError, match=message):
        parse_job(text)


def test_comments():
    text = "# header\nring Q[x,y];  # ring\nideal(x^2, # first\n x*y);\nK=2 # last"
    assert parse_job(text) == parse_job("ring Q[x,y]; ideal(x^2, x*y); K=2")


def test_parse_error_position():
    with pytest.raises(JobParseError) as info:
        parse_job("ring Q[x];\nideal(x, q)")
    assert info.value.line == 2 and info.value.col == 10


def test_polynomial_grammar(R2):
    x, y = R2.gens()
    assert parse_polynomial("-(x - 2*y)^2 + 3", R2) == -((x - 2 * y) ** 2) + 3
    assert parse_polynomial("x/2", R2) == x * (1 / R2.const(2).lead_coeff)


def test_pretty_print_roundtrip():
    texts = [
        "ring Q[x,y]; ideal(x^2, x*y); K=5; cmd=epsilon",
        "ring Q[x,y,z]; module([x, 0, y^2 - 3*z], [y, 1, 0]); cmd=tau-check; format=plotdata; cap=9",
        "ring Q[a,b]; ideal((a+b)^3 - 2*a*b); tol=1/20",
    ]
    for t in texts:
        once = format_job(parse_job(t))
        assert format_job(parse_job(once)) == once
        assert parse_job(once) == parse_job(t)


def test_emit_csv_one_row(R2):
    x, y = R2.gens()
    rep = run_sequence(Ideal(R2, [x**2, x * y]), 1)
    rows = list(csv.reader(io.StringIO(emit(rep, "csv").decode())))
    assert rows == [["k", "lambda", "n_k", "ratio", "eps_k"], ["1", "1", "1", "1/1", "2/1"]]


def test_emit_json_roundtrip(R2):
    x, y = R2.gens()
    rep = run_sequence(Ideal(R2, [x**2, x * y, y**3]), 4)
    back = report_from_json(emit(rep, "json"))
    assert back == rep
    data = json.loads(emit(rep, "json"))
    assert data["rows"][0]["eps_k"].count("/") == 1


def test_emit_plotdata(R2):
    x, y = R2.gens()
    rep = run_sequence(Ideal(R2, [x**2, x * y]), 3)
    assert emit(rep, "plotdata").decode().splitlines() == ["1 2", "2 1.5", "3 1.33333"]


def test_execute_commands():
    out = execute(parse_job("ring Q[x,y]; ideal(x^2, x*y); cmd=saturate; format=json"), check=True)
    assert json.loads(out) == {"command": "saturate", "generators": ["x"], "n_stab": 1, "length": 1}
    out = execute(parse_job("ring Q[x,y]; module([x,0],[y,0]); cmd=saturate; format=json"), check=True)
    assert json.loads(out)["generators"] == ["[1, 0]"]
    out = execute(parse_job("ring Q[x,y]; module([x,0],[y,0]); cmd=saturate"))
    assert out.decode().splitlines() == ["generator", '"[1, 0]"', "# n_stab=1", "# length=1"]
    out = execute(parse_job("ring Q[x,y]; ideal(x^2, x*y); K=4; cmd=oracle-diff; format=json"))
    assert json.loads(out)["agree"]
    out = execute(parse_job("ring Q[x,y]; ideal(x^2, x*y); K=6; cmd=tau-check; format=json"))
    assert json.loads(out)["tau_check"]["tau_hat"] == 1


def test_main_exit_codes(capsys, tmp_path):
    assert main(["eval", "ring Q[x,y]; ideal(x^2, x*y); K=3"]) == 0
    assert capsys.readouterr().out.startswith("k,lambda")
    assert main(["eval", "ideal(x)"]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "parse" and err["position"] == 0
    assert main(["eval", "ring Q[x,y]; ideal(x^2, y^2); K=2", "--cap", "2"]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "algebra"
    job = tmp_path / "job.txt"
    job.write_text("ring Q[x,y]\n; ideal(x^2, x*y);\ncmd=epsilon;")
    assert main(["run", str(job), "--K", "4", "--format", "json", "--oracle"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["method"] == "oracle" and data["epsilon"]["point"] == "5/4"
    assert main(["eval", "ring Q[x,y]; ideal(x+y)", "--oracle"]) == 2


def test_console_script_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "satpow.cli", "eval", "ring Q[x]; ideal(x^2); cmd=saturate; format=json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["generators"] == ["1"]
