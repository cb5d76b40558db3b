import json

from segalbench.cli import config_to_runs, main


def test_empty_suite(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suite": []}))
    assert main(["run", "--config", str(cfg)]) == 0
    assert "0 checks" in capsys.readouterr().out


def test_config_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "suite": [1,\n}\n')
    assert main(["run", "--config", str(bad)]) == 2
    assert "bad.json:3" in capsys.readouterr().err
    assert main(["verify", "bpq", "--trunc", "0"]) == 2
    assert main(["demo", "n-failure", "--group", "Q8"]) == 2
    assert main(["demo", "n-failure", "--group", "e"]) == 2
    assert main(["run", "--suite", "nope"]) == 2
    assert main(["bogus"]) == 2


def test_demo_and_jsonl(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    assert main(["demo", "n-failure", "--group", "C2", "--output", str(out)]) == 0
    text = capsys.readouterr().out
    assert "[PASS] n-failure/regular is a point" in text
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["status"] for r in recs] == ["pass", "pass"]
    assert {"check", "statement", "status", "data", "seconds"} <= set(recs[0])


def test_machine_run_stability(capsys):
    code = main(["machine", "run", "--trunc", "1", "2", "--qmax", "2", "--dmax", "2", "--spheres", "1"])
    text = capsys.readouterr().out
    assert "N=2: H_0 = 0; H_1 = Z/2" in text
    # N=1 and N=2 disagree in degree 1: the stability check fails
    assert code == 1


def test_config_sections_order():
    runs = config_to_runs({"group": "C2", "machine": {"trunc": 2}, "suite": ["n-failure", "iso-r"]})
    assert [n for n, _ in runs] == ["n-failure", "iso-r"]
    assert runs[1][1] == {"group": "C2", "trunc": 2}


def test_describe(capsys):
    assert main(["describe", "cats", "--group", "C2", "--trunc", "2", "--tags", "F_G"]) == 0
    assert "object (2, 1): 2 points, action reg" in capsys.readouterr().out
