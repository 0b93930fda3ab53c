import json
import shutil
import subprocess

import pytest

from planedefect.cli import main
from planedefect.generators import plant_configuration, sample_in_class
from planedefect.plane_graph import dumps, load

C5 = "vertices 5\n0: 1 4\n1: 2 0\n2: 3 1\n3: 4 2\n4: 0 3\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "sample.pg": dumps(sample_in_class(12, 1)),
        "seven.pg": dumps(sample_in_class(12, 4, outer=7)),
        "c5.pg": C5,
        "bad.pg": "vertices 3\n0: 1\n",
        "planted.pg": dumps(plant_configuration("no-333-path", seed=0)[0]),
    }.items():
        (tmp_path / name).write_text(text)
        paths[name] = str(tmp_path / name)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fullaudit_in_class_sample(files, capsys):
    code, out, _ = run(capsys, "fullaudit", files["sample.pg"], "--json")
    rep = json.loads(out)
    assert code == 0 and rep["exit"] == 0
    assert [st["stage"] for st in rep["files"][0]["stages"]] == ["parse", "class", "color", "superextend", "discharge", "scan"]


def test_fullaudit_c5_is_violation(files, capsys):
    code, out, _ = run(capsys, "fullaudit", files["c5.pg"])
    assert code == 2 and "class       FAIL" in out


def test_fullaudit_malformed_is_input_error(files, capsys):
    assert run(capsys, "fullaudit", files["bad.pg"])[0] == 1


def test_fullaudit_directory_is_sorted_and_deterministic(files, tmp_path, capsys):
    code, a, _ = run(capsys, "fullaudit", str(tmp_path))
    _, b, _ = run(capsys, "fullaudit", str(tmp_path), "--jobs", "2")
    assert a == b
    rep = json.loads(a)
    names = [f["file"] for f in rep["files"]]
    assert names == sorted(names)
    assert code == max(f["exit"] for f in rep["files"]) == 2


def test_classcheck_json(files, capsys):
    code, out, _ = run(capsys, "classcheck", files["c5.pg"])
    assert code == 2 and len(json.loads(out)["five_cycle_witness"]) == 5


def test_classcheck_adjacency_text(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("graph 4\n0: 1 2\n1: 0 2\n2: 0 1 3\n3: 2\n")
    code, out, _ = run(capsys, "classcheck", str(p))
    assert code == 0 and json.loads(out)["embedding_unverified"] is True


def test_color_lines_and_pins(files, capsys):
    code, out, _ = run(capsys, "color", files["sample.pg"], "--pin", "0=3", "1=1")
    lines = dict(line.split("=") for line in out.split())
    assert code == 0 and lines["0"] == "3" and lines["1"] == "1"


def test_color_rejects_bad_pin(files, capsys):
    code, _, err = run(capsys, "color", files["sample.pg"], "--pin", "0=7")
    assert code == 1 and "bad pin" in err


def test_color_caps_flag(files, capsys):
    code, out, _ = run(capsys, "color", files["sample.pg"], "--caps", "0,0,0", "--json")
    assert json.loads(out)["status"] in ("SAT", "UNSAT")


def test_superextend(files, capsys):
    g = load(open(files["sample.pg"]).read())
    c0 = ",".join(map(str, g.outer_face.vertices))
    code, out, _ = run(capsys, "superextend", files["sample.pg"], "--c0", c0, "--json")
    assert code == 0 and json.loads(out)["boundary_colorings"] == 18


def test_superextend_rejects_non_cycle(files, capsys):
    assert run(capsys, "superextend", files["sample.pg"], "--c0", "0,5")[0] == 1


def test_discharge_json_is_byte_stable(files, capsys):
    _, a, _ = run(capsys, "discharge", files["seven.pg"], "--json")
    _, b, _ = run(capsys, "discharge", files["seven.pg"], "--json")
    assert a == b and set(json.loads(a)) == {"initial", "transfers", "final", "negatives"}


def test_discharge_needs_triangle_or_heptagon(files, capsys):
    assert run(capsys, "discharge", files["c5.pg"])[0] == 1


def test_scan_and_oracle(files, capsys):
    code, out, _ = run(capsys, "scan", files["planted.pg"], "--lemma", "no-333-path")
    matches = json.loads(out)
    assert code == 0 and matches and matches[0]["lemma"] == "no-333-path"
    code, out, _ = run(capsys, "oracle", files["planted.pg"], "--match", "no-333-path")
    assert code == 0 and json.loads(out)["verdict"]["verdict"] == "PASS"


def test_oracle_bad_match(files, capsys):
    assert run(capsys, "oracle", files["planted.pg"], "--match", "999")[0] == 1


def test_gen_outputs_parse(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "sample", "--n", "20", "--seed", "7")
    assert code == 0 and load(out).n == 20
    code, out, _ = run(capsys, "gen", "plant", "--lemma", "no-333-path")
    assert code == 0 and load(out).outer_face.degree == 7
    code, _, _ = run(capsys, "gen", "enum", "--n", "5", "--out", str(tmp_path / "e"))
    assert code == 0 and len(list((tmp_path / "e").glob("*.pg"))) == 20


def test_config_file(files, tmp_path, capsys):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"json": True, "caps": "1,1,0"}))
    code, out, _ = run(capsys, "--config", str(conf), "color", files["sample.pg"])
    assert code == 0 and json.loads(out)["status"] == "SAT"
    conf.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "--config", str(conf), "color", files["sample.pg"])[0] == 1


def test_console_script(files):
    exe = shutil.which("planedefect")
    if exe is None:
        pytest.skip("package not installed")
    proc = subprocess.run([exe, "check", files["sample.pg"]], capture_output=True, text=True)
    assert proc.returncode == 0 and "euler=2" in proc.stdout


def test_invalid_precolor_is_input_error(tmp_path, capsys):
    p = tmp_path / "pre.pg"
    p.write_text("vertices 3\n0: 1 2\n1: 2 0\n2: 0 1\nprecolor: 0=3 1=3\n")
    assert run(capsys, "fullaudit", str(p))[0] == 1
