import io
import json
import subprocess
import sys

import pytest

from gradecone import __version__
from gradecone.cli import run

from conftest import INSTANCES, ROOT

GOLDEN = INSTANCES / "golden"
MANIFEST = json.loads((GOLDEN / "manifest.json").read_text())


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    args = [str(ROOT / a) if a.startswith("instances/") else a for a in argv]
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,argv", MANIFEST, ids=[m[0] for m in MANIFEST])
def test_golden(name, argv):
    _, out, _ = cli(*argv)
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("argv,code", [
    (["check", "thm-3.3", "instances/ex351.json"], 2),
    (["check", "thm-3.3", "instances/ex352.json"], 0),
    (["check", "cor-3.4", "instances/ex353.json"], 0),
    (["check", "thm-5.7", "instances/sci_x2y2_k.json"], 2),
    (["betti", "instances/missing.json"], 1),
    (["loewy", "instances/cusp.json"], 1),
    (["superficial", "instances/ex353.json"], 1),
])
def test_exit_codes(argv, code):
    assert cli(*argv)[0] == code


def test_fail_exit_code(tmp_path):
    inst = json.loads((INSTANCES / "ex351.json").read_text())
    inst["declared"] = {"cm": True}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(inst))
    assert cli("check", "cor-3.4", str(path))[0] == 3


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vars": ["x", "y"], "ideal": ["x^2 + y^"]}))
    code, out, err = cli("betti", str(path))
    assert code == 1 and out == ""
    assert "position 8" in err and "x^2 + y^" in err


def test_usage_errors():
    assert cli("koszul", "instances/cusp.json", "--window", "5:2")[0] == 1
    assert cli("frobnicate")[0] == 1
    assert cli("betti", "instances/ex351.json", "--field", "fp:91")[0] == 1


def test_json_output_parses():
    code, out, _ = cli("hilbert", "instances/ex354.json", "--json")
    data = json.loads(out)
    assert code == 0 and data["e0"] == 6 and data["e1"] == 11


def test_field_override():
    _, out_q, _ = cli("gb", "instances/cusp_xy.json", "--field", "q")
    _, out_p, _ = cli("gb", "instances/cusp_xy.json")
    assert out_q == out_p
    _, out, _ = cli("nf", "instances/cusp_xy.json", "--poly", "x^2*y + y^3")
    assert out == "x^2\n"


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("GRADECONE_SEED", "7")
    env_run = cli("superficial", "instances/cusp.json", "--json")[1]
    monkeypatch.delenv("GRADECONE_SEED")
    assert env_run == cli("superficial", "instances/cusp.json", "--json", "--seed", "7")[1]
    assert json.loads(env_run)["seed"] == 7


def test_corpus_workers_do_not_change_output():
    argv = ["corpus", "--kind", "perturbed-homogeneous", "--nvars", "3", "--count", "30", "--seed", "5",
            "--check", "thm-3.3", "--json"]
    assert cli(*argv)[1] == cli(*argv, "--workers", "3")[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gradecone", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == __version__
