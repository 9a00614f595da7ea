import json
import subprocess
import sys

import pytest

from tmf13.cli import main, parse_form
from tmf13.gradedmf import GradedMF


@pytest.fixture(autouse=True)
def fast_profile(monkeypatch):
    monkeypatch.setenv("TMF13_PROFILE", "fast")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_form():
    a1, a3 = GradedMF.a1(), GradedMF.a3()
    assert parse_form("a1^3 - 27*a3") == a1 ** 3 - 27 * a3
    assert parse_form("a1**12/Delta") == a1 ** 12 * GradedMF.delta_inv()
    assert parse_form("(1/3)*a3") == a3 / 3


def test_fgl_prints_the_a1_term(capsys):
    code, out, _ = run(capsys, "fgl", "--bound", "6")
    assert code == 0
    assert "(-a1)*x*y" in out


def test_fgl_json(capsys):
    code, out, _ = run(capsys, "fgl", "--bound", "5", "--json", "--typical")
    obj = json.loads(out)
    assert code == 0 and obj["schema"] == 1
    assert obj["v1"]["terms"] == [{"a1": 1, "a3": 0, "c": "1"}]
    assert obj["v2"]["terms"] == [{"a1": 0, "a3": 1, "c": "1"}]


def test_qexpand(capsys):
    code, out, _ = run(capsys, "qexpand", "1/Delta", "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["value"]["low"] == -3


def test_decompose_fixture(capsys):
    code, out, _ = run(capsys, "decompose", "--class", "fixture:tmf-p1", "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["kind"] == "pontryagin_poly"
    assert obj["terms"] == [{"index": [1], "coeff": "1"}]


def test_lift_round_trip_fixture(capsys):
    code, out, _ = run(capsys, "lift", "--class", "fixture:seeded", "--json", "--seed", "3")
    assert code == 0
    assert json.loads(out)["status"] == "liftable"


def test_lift_perturbed_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "lift", "--class", "fixture:perturbed", "--json")
    assert code == 1
    obj = json.loads(out)
    assert obj["status"] == "not_liftable"
    assert obj["witness"]["certificate_value"] != "0"


def test_lift_from_json_file(capsys, tmp_path):
    code, out, _ = run(capsys, "character", "--to", "ktate", "--class", "fixture:tmf-p1", "--json")
    assert code == 0
    path = tmp_path / "k.json"
    path.write_text(out)
    code, out, _ = run(capsys, "lift", "--class", str(path))
    assert code == 0 and out.startswith("liftable")


def test_witten(capsys):
    code, out, _ = run(capsys, "witten", "--dim", "8", "--pontryagin", '{"2": 5}', "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["a_hat"] == "-1/288"


def test_jacobi_exit_codes(capsys):
    assert run(capsys, "jacobi", "check", "--fn", "e4", "--weight", "4")[0] == 0
    assert run(capsys, "jacobi", "check", "--fn", "e4", "--weight", "2")[0] == 1


def test_phi_numeric(capsys):
    code, out, _ = run(capsys, "phi", "--tau", "0.1+1j", "--z", "0", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["re"] == 0.0 and obj["im"] == 0.0


@pytest.mark.parametrize("argv", [
    ["fgl", "--no-such-flag"],
    ["nonsense"],
    ["lift", "--class", "fixture:unknown"],
    ["pontryagin", "--rank", "0"],
    ["qexpand", "a2 + 1"],
    ["fgl", "--bound", "4", "--typical"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_output_is_byte_identical(capsys):
    argv = ["lift", "--class", "fixture:seeded", "--json", "--seed", "5"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tmf13.cli", "tate", "--json"],
                          capture_output=True, text=True, env={"TMF13_PROFILE": "fast", "PATH": ""})
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == 1
