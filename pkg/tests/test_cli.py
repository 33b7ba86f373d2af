import io
import json
import subprocess
import sys

import pytest

from bbdeciders.cli import main
from bbdeciders.db import HEADER_SIZE, encode_db_record
from bbdeciders.tm import parse_machine
from conftest import BOUNCER, CHAMPION, CYCLER, FAR_EXAMPLE


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_simulate(capsys):
    code, out = run(capsys, "simulate", "--machine", "1RB1LB_1LA---", "--steps", "100")
    assert code == 0
    assert json.loads(out) == {"verdict": "halt", "step": 6, "state": "B", "read": 1}
    _, out = run(capsys, "simulate", "--machine", BOUNCER, "--steps", "64")
    res = json.loads(out)
    # the printed tape spans every visited cell, including the head's blank one
    assert res["verdict"] == "running" and res["tape"] == "111111011000" and res["state"] == "D"
    assert res["head"] - res["tape_start"] == 11


def test_decide_machines(capsys):
    code, out = run(capsys, "decide", "--machine", CYCLER, "--machine", "1RB1LB_1LA---", "--halt-limit", "1000")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert [(l["decider"], l["verdict"]) for l in lines] == [("cyclers", "nonhalt"), ("simulation", "halt")]


def test_decide_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(CYCLER + "\n\n" + "1RA---\n"))
    _, out = run(capsys, "decide", "--pipeline", "translated-cyclers", "--halt-limit", "500")
    lines = [json.loads(l) for l in out.splitlines()]
    assert [l["verdict"] for l in lines] == ["unknown", "nonhalt"]


def test_config_file_and_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("pipeline = cyclers\nhalt_limit = 1000\n")
    _, out = run(capsys, "decide", "--config", str(cfg), "--machine", FAR_EXAMPLE)
    assert json.loads(out)["verdict"] == "unknown"
    _, out = run(capsys, "decide", "--config", str(cfg), "--pipeline", "far-direct", "--set",
                 "far-direct.n_max=2", "--machine", FAR_EXAMPLE)
    assert json.loads(out)["decider"] == "far-direct"


def test_out_dir_and_verify(capsys, tmp_path):
    out_dir = tmp_path / "run"
    run(capsys, "decide", "--machine", FAR_EXAMPLE, "--machine", BOUNCER, "--halt-limit", "10000",
        "--out", str(out_dir))
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == ["000000-far-direct.json", "000001-bouncers.json", "results.jsonl"]
    code, out = run(capsys, "verify", "--kind", "far", str(out_dir / "000000-far-direct.json"))
    assert code == 0 and json.loads(out)["ok"] is True
    code, out = run(capsys, "verify", "--kind", "bouncer", str(out_dir / "results.jsonl"))
    assert code == 0 and json.loads(out)["ok"] is True

    cert = json.loads((out_dir / "000001-bouncers.json").read_text())
    cert["macro_steps"] -= 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    code, out = run(capsys, "verify", "--kind", "bouncer", str(bad))
    assert code == 1 and "not a special case" in json.loads(out)["violation"]


def test_parallel_output_is_identical(capsys, tmp_path):
    machines = [FAR_EXAMPLE, BOUNCER, CYCLER, "1RB1LB_1LA---", "1RA---"]
    args = [x for m in machines for x in ("--machine", m)] + ["--halt-limit", "20000"]
    run(capsys, "decide", *args, "--jobs", "1", "--out", str(tmp_path / "a"))
    run(capsys, "decide", *args, "--jobs", "2", "--out", str(tmp_path / "b"))
    for name in sorted(p.name for p in (tmp_path / "a").iterdir()):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_diagram(capsys, tmp_path):
    path = tmp_path / "d.ppm"
    code, out = run(capsys, "diagram", "--machine", BOUNCER, "--steps", "200", "--out", str(path))
    assert code == 0 and "26x201" in out
    assert path.read_bytes().startswith(b"P6\n26 201\n255\n")


def test_db_scan(capsys, tmp_path):
    db = tmp_path / "seed.db"
    db.write_bytes(bytes(HEADER_SIZE) + b"".join(
        encode_db_record(parse_machine(c)) for c in [BOUNCER, CHAMPION, BOUNCER]))
    _, out = run(capsys, "db", "scan", str(db), "--index", "1..3", "--pipeline", "bouncers",
                 "--halt-limit", "1000")
    lines = [json.loads(l) for l in out.splitlines()]
    assert [l["machine"] for l in lines] == [CHAMPION, BOUNCER]
    assert [l["verdict"] for l in lines] == ["unknown", "nonhalt"]
    _, out = run(capsys, "decide", "--db", str(db), "--index", "0", "--pipeline", "bouncers",
                 "--halt-limit", "1000", "--flip-move")
    assert json.loads(out)["machine"] == parse_machine(BOUNCER).mirrored().__str__()


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["decide", "--machine", CYCLER, "--jobs", "x"])
    with pytest.raises(ValueError):
        main(["decide", "--machine", CYCLER, "--pipeline", "nope"])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bbdeciders", "simulate", "--machine", "1RB1LB_1LA---",
                          "--steps", "10"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["step"] == 6
