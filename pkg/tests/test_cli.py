import json
import subprocess
import sys

import pytest

from gcfibers.cli import main, run
from gcfibers.polytope import GCPoint


def gcl(*args):
    proc = subprocess.run([sys.executable, "-m", "gcfibers.cli", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_center_text():
    out, _ = run(["center", "--shape", "1,2:3"])
    assert out.strip() == "1,1=0/1;1,2=1/1;2,1=-1/1"


def test_maslov_negative_weights():
    assert run(["maslov", "--weights", "-2,-1"])[0].strip() == "6"
    assert run(["maslov", "--weights=1,-1"])[0].strip() == "0"


def test_monotone_json_gr36():
    out, _ = run(["monotone", "--shape", "3:6", "--format", "json"])
    data = json.loads(out)
    assert data["schema"] == 1 and data["count"] == 7 and len(data["reports"]) == 7
    first = data["reports"][0]
    assert list(first) == ["face_id", "dim", "center", "topology", "generators"]
    assert list(first["generators"][0]) == [
        "a", "b", "c", "psi_center", "psi_point", "maslov", "area_num", "area_den",
    ]


def test_text_and_json_agree():
    text, _ = run(["monotone", "--shape", "1,2:3"])
    data = json.loads(run(["monotone", "--shape", "1,2:3", "--format", "json"])[0])
    for rep in data["reports"]:
        center = GCPoint.from_json(rep["center"])
        assert center.serialize() in text
        for g in rep["generators"]:
            assert f"maslov={g['maslov']}" in text


def test_codim_and_carrier():
    assert run(["codim", "--lambda", "8,8,3,3,3,-2,-2,-5,-8,-8", "--box", "4,3"])[0].strip() == "28"
    out, _ = run(["carrier", "--lambda", "2,0,-2", "--point", "1,1=0;1,2=0;2,1=0", "--format", "json"])
    assert json.loads(out)["dim"] == 0


def test_ascii_drawing():
    out, _ = run(["lagrangian", "--shape", "1,2:3"])
    assert "#" in out and " 2 " in out


def test_byte_identical_runs():
    a = run(["faces", "--shape", "1,2,3:4", "--format", "json"])[0]
    b = run(["faces", "--shape", "1,2,3:4", "--format", "json"])[0]
    assert a == b
    assert json.loads(a)["count"] == 567


def test_exit_codes():
    assert main(["center", "--shape", "1,2:3"]) == 0
    assert main(["bogus"]) == 1
    assert main(["center"]) == 1
    assert main(["center", "--shape", "1,2:3", "--lambda", "1,0"]) == 1
    assert main(["center", "--lambda", "1,0,-1"]) == 2
    assert main(["carrier", "--lambda", "2,0,-2", "--point", "1,1=3;1,2=0;2,1=0"]) == 2
    assert main(["center", "--shape", "1,2:3", "--face", "H:0,0"]) == 2
    assert main(["faces", "--shape", "3:6", "--guard", "10"]) == 2


def test_out_file(tmp_path):
    dest = tmp_path / "c.txt"
    assert main(["center", "--shape", "1,2:3", "--out", str(dest)]) == 0
    assert dest.read_text() == "1,1=0/1;1,2=1/1;2,1=-1/1\n"


def test_subprocess_entry():
    code, out, err = gcl("verify", "--lambda", "1,0", "--samples", "10", "--format", "json")
    assert code == 0, err
    assert json.loads(out)["failures"] == 0
    code, _, err = gcl("maslov")
    assert code == 1 and "weights" in err
