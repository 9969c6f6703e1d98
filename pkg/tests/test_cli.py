import json
import subprocess
import sys

import pytest

from qlommel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_r1_first():
    # subprocess, so the console script path is exercised as well
    res = subprocess.run([sys.executable, "-m", "qlommel", "poly", "q_lommel_R1", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "x - 1/[1-c]"


def test_poly_formats(capsys):
    code, out, _ = run(capsys, "poly", "q_lommel_evenodd", "--n", "3")
    assert code == 0 and out.strip() == "x^3 - ((1 + c*q)/[1-c][1-c*q^2])*x"
    code, out, _ = run(capsys, "poly", "q_lommel_R1", "--n", "1", "--latex")
    assert out.strip() == r"x - \frac{1}{(1 - c)}"
    code, out, _ = run(capsys, "poly", "q_lommel_evenodd", "--n", "2", "--json")
    row = json.loads(out)
    assert row["n"] == 2 and row["pretty"] == "x^2 - 1/[1-c][1-c*q]"


def test_poly_param_binding(capsys):
    code, out, _ = run(capsys, "poly", "q_lommel_R1", "--n", "1", "--param", "c=c*q")
    assert code == 0 and out.strip() == "x - 1/[1-c*q]"
    code, _, err = run(capsys, "poly", "q_lommel_R1", "--n", "1", "--param", "c=1")
    assert code == 2 and "singular-parameter" in err
    code, _, err = run(capsys, "poly", "q_lommel_R1", "--n", "1", "--param", "c=__import__('os')")
    assert code == 2


def test_series_and_moments(capsys):
    code, out, _ = run(capsys, "series", "cf", "--order", "2", "--json")
    row = json.loads(out)
    assert row["coeffs"][:2] == ["1", "0"]
    code, out, _ = run(capsys, "moments", "L_p", "--order", "4")
    lines = [json.loads(line) for line in out.splitlines()]
    assert [r["n"] for r in lines] == list(range(5)) and lines[1]["moment"] == "0"


def test_enumerate(capsys):
    code, out, err = run(capsys, "enumerate", "motzkin", "--length", "2", "--height", "1")
    assert code == 0 and len(out.splitlines()) == 5 and "5" in err
    code, out, _ = run(capsys, "enumerate", "schroder", "--from", "0", "--to", "1")
    assert sorted(json.loads(line)["steps"] for line in out.splitlines()) == ["E", "US"]


def test_verify_equalmom(capsys):
    code, out, _ = run(capsys, "verify", "thm:equalmom", "--max-m", "8", "--json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["order"] for r in rows] == list(range(9))
    assert all(r["status"] == "pass" and r["id"] == "thm:equalmom" for r in rows)


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "list")
    assert code == 0 and "thm:equalmom" in out


@pytest.mark.parametrize("argv", [
    ("verify", "unknown:id"),
    ("verify", "thm:equalmom", "--max-n", "3"),
    ("verify", "thm:equalmom", "--max-m", "-1"),
    ("poly", "nonexistent", "--n", "2"),
    ("series", "classical"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(list(argv)))
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QLOMMEL_MAX_ORDER", "3")
    code, _, err = run(capsys, "verify", "thm:equalmom", "--max-m", "8")
    assert code == 2 and err
    code, _, _ = run(capsys, "verify", "thm:equalmom", "--max-m", "3")
    assert code == 0


def test_fail_rows_exit_1(capsys, monkeypatch):
    from qlommel import registry
    ident = registry.REGISTRY["thm:equalmom"]
    monkeypatch.setitem(registry.REGISTRY, "thm:equalmom", ident.__class__(
        ident.id, ident.group, ident.defaults,
        lambda b: [{"id": "thm:equalmom", "order": 0, "status": "fail"}], ident.summary, ident.keys))
    code, _, _ = run(capsys, "verify", "thm:equalmom")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("verify", "eq:BM1", "--json"),
    ("poly", "q_lommel_classical", "--n", "4", "--json"),
    ("enumerate", "polyomino", "--max-area", "4"),
    ("conjecture", "gamma", "--max-n", "2", "--variant", "heine"),
])
def test_output_byte_identical(argv):
    cmd = [sys.executable, "-m", "qlommel", *argv]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
