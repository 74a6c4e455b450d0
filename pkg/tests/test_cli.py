import json
import subprocess
import sys

from christol import cli
from christol.automaton import parse_json
from christol.pipeline import REPORT_KEYS, compile_instance

F2 = "p=2,e=1"


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_compile_smooth_example(capsys):
    code, out, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+y+x",
                         "--root-index", "0", "--verify", "4096")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == list(REPORT_KEYS)
    assert (rep["d"], rep["h"], rep["r"], rep["smooth"]) == (2, 1, 0, True)
    assert rep["comp_reverse"] == 3
    assert rep["bounds"]["smooth_bound"] == 17
    assert rep["verification"]["ok"] is True
    assert "comp_reverse=3" in err


def test_compile_singular_example(capsys):
    code, out, _ = run(capsys, "compile", "--field", F2, "--poly", "y^2+x*y+x^3",
                       "--root-index", "0")
    assert code == 0
    rep = json.loads(out)
    assert (rep["r"], rep["s"], rep["comp_reverse"]) == (2, 3, 5)
    assert rep["bounds"]["general_bound"] == 514
    assert rep["verification"]["ok"] is True
    assert rep["comp_forward"] is None


def test_not_separable_exit(capsys):
    code, out, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+x",
                         "--root-index", "0")
    assert code == 3 and out == ""
    assert "NotSeparable" in err


def test_parse_errors_exit(capsys):
    assert run(capsys, "compile", "--field", F2, "--poly", "y^+x")[0] == 2
    assert run(capsys, "compile", "--field", "p=4", "--poly", "y+x")[0] == 2
    assert run(capsys, "compile", "--field", F2)[0] == 2


def test_root_ambiguity_exit(capsys):
    code, _, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+y+x")
    assert code == 4
    assert "0: (0)" in err and "1: (1)" in err
    code, _, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+y+x",
                       "--root-index", "7")
    assert code == 4
    code, _, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+x*y+x^3",
                       "--root-prefix", "1,0,0")
    assert code == 4 and "r=2" in err


def test_invariant_breach_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "compile_instance",
                        lambda *a, **k: compile_instance(*a, **{**k, "cap": 1}))
    code, _, err = run(capsys, "compile", "--field", F2, "--poly", "y^2+y+x",
                       "--root-index", "0")
    assert code == 5 and "invariant" in err


def test_unique_root_is_used(capsys):
    code, out, _ = run(capsys, "compile", "--field", F2, "--poly", "(1+x)*y+x",
                       "--verify", "256")
    assert code == 0 and json.loads(out)["comp_reverse"] == 2


def test_list_roots(capsys):
    assert run(capsys, "list-roots", "--field", "p=3", "--poly", "y^2-(1+x)")[1] == \
        "r=0\n0: (1)\n1: (2)\n"
    assert run(capsys, "list-roots", "--field", F2, "--poly", "y^2+y+x")[1] == \
        "r=0\n0: (0)\n1: (1)\n"
    code, out, _ = run(capsys, "list-roots", "--field", F2, "--poly", "y^2+x*y+x")
    assert code == 0 and out.splitlines()[1:] == []


def test_job_file_and_emits(capsys, tmp_path):
    job = {"field": "p=2,e=1", "poly": "(1+x)^3*y^2 + (1+x)^2*y + x", "root_prefix": [0],
           "forward": True, "verify": 1024,
           "emit_dot": str(tmp_path / "tm.dot"), "emit_json": str(tmp_path / "tm.json")}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    code, out, _ = run(capsys, "compile", "--job", str(path))
    assert code == 0
    rep = json.loads(out)
    assert (rep["comp_reverse"], rep["comp_forward"]) == (2, 2)
    rev = parse_json((tmp_path / "tm.json").read_text())
    fwd = parse_json((tmp_path / "tm.forward.json").read_text())
    assert (rev.reading, fwd.reading) == ("reverse", "forward")
    assert (tmp_path / "tm.dot").read_text().count("shape=circle") == 2
    assert (tmp_path / "tm.forward.dot").exists()
    # flags override the job file
    code, out, _ = run(capsys, "compile", "--job", str(path), "--verify", "0")
    assert json.loads(out)["verification"]["ok"] is None
    path.write_text(json.dumps({**job, "bogus": 1}))
    assert run(capsys, "compile", "--job", str(path))[0] == 2


def test_extension_field_job(capsys):
    code, out, _ = run(capsys, "compile", "--field", "p=2,e=2,modulus=1,1,1",
                       "--poly", "(g+1)*y^2 + y + g*x", "--root-prefix", "0", "--forward")
    assert code == 0
    rep = json.loads(out)
    assert rep["q"] == 4 and rep["verification"]["ok"] is True


def test_determinism(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        code, out, _ = run(capsys, "compile", "--field", F2, "--poly", "y^2+x*y+x^3",
                           "--root-index", "0", "--forward", "--emit-dot", str(d / "a.dot"))
        outs.append((out, (d / "a.dot").read_text(), (d / "a.forward.dot").read_text()))
    assert outs[0] == outs[1]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "christol.cli", "list-roots", "--field", F2,
                          "--poly", "y^2+y+x"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("r=0")
