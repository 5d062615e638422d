import json
import subprocess
import sys

import pytest

from p3hardcore.cli import main


def run(args, tmp_path, capsys):
    code = main(list(args) + ["--out", str(tmp_path)])
    return code, capsys.readouterr()


def test_density_exact(tmp_path, capsys):
    code, out = run(["density", "--exact"], tmp_path, capsys)
    assert code == 0
    assert "41-25φ" in out.out and "0.549150" in out.out
    man = json.loads((tmp_path / "density_manifest.json").read_text())
    assert man["status"] == "ok" and man["report"]["exact"] == "41-25φ"


def test_verify_lemma1_all(tmp_path, capsys):
    code, out = run(["verify-lemma1", "--all"], tmp_path, capsys)
    assert code == 0
    lines = [l for l in out.out.splitlines() if l.startswith("PASS")]
    assert len(lines) == 5
    for n in (16, 51, 23, 63, 75):
        assert any(f"best {n}," in l for l in lines)
    report = json.loads((tmp_path / "lemma1_report.json").read_text())
    assert report["bat"]["best"] == 75


def test_generate_k0(tmp_path, capsys):
    code, out = run(["generate", "--seed", "sun", "--k", "0"], tmp_path, capsys)
    assert code == 0 and "rhombi 5" in out.out
    tiling = json.loads((tmp_path / "sun_0_tiling.json").read_text())
    assert tiling
    assert (tmp_path / "sun_0_tiling.svg").read_text().count("<polygon") == 5


def test_generate_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["generate", "--k", "3", "--out", str(a), "--style", "scale=10"]) == 0
    assert main(["generate", "--k", "3", "--out", str(b), "--style", "scale=10"]) == 0
    ma = json.loads((a / "generate_manifest.json").read_text())
    mb = json.loads((b / "generate_manifest.json").read_text())
    assert ma == mb
    for name in ma["artifacts"]:
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.mark.parametrize("argv", [
    ["generate", "--k", "-1"],
    ["generate", "--seed", "moon"],
    ["density", "--bogus"],
    ["sample", "--u", "abc"],
    ["loop-z", "--u", "-1"],
])
def test_bad_flags_exit_2(argv, tmp_path, capsys):
    code, _ = run(argv, tmp_path, capsys)
    assert code == 2


def test_bad_style_exit_2(tmp_path, capsys):
    code, out = run(["generate", "--k", "0", "--style", "nope=1"], tmp_path, capsys)
    assert code == 2 and "unknown style key" in out.err


def test_pipeline_needs_k4(tmp_path, capsys):
    code, _ = run(["partition", "--k", "2"], tmp_path, capsys)
    assert code == 2


def test_loop_z_and_bounds(tmp_path, capsys):
    code, out = run(["loop-z", "--u", "1"], tmp_path, capsys)
    assert code == 0 and "7 = 7.000000" in out.out and "18 = 18.000000" in out.out
    code, out = run(["bounds"], tmp_path, capsys)
    assert code == 0 and "tau0 = 654.878786" in out.out
    assert "u = 100000: " in out.out


def test_partition_ground_state_sample(tmp_path, capsys):
    code, out = run(["partition", "--k", "8"], tmp_path, capsys)
    assert code == 0 and "uncovered 0; doubly covered 0" in out.out
    code, out = run(["ground-state", "--k", "8"], tmp_path, capsys)
    assert code == 0 and (tmp_path / "sun_8_ground.svg").exists()
    code, out = run(["density", "--k", "8"], tmp_path, capsys)
    assert code == 0 and "window sun k=8" in out.out
    code, out = run(["sample", "--k", "8", "--steps", "50", "--u", "1000000"], tmp_path, capsys)
    assert code == 0
    run_doc = json.loads((tmp_path / "sample_run.json").read_text())
    assert run_doc["boundary"] == "ground" and run_doc["summary"]["overlap_with_ground_state"] == "1.000000"


def test_breach_exit_3(tmp_path, capsys, monkeypatch):
    import p3hardcore.cli as cli

    def boom(run):
        raise RuntimeError("invariant")

    monkeypatch.setattr(cli, "cmd_loop_z", boom)
    parser = cli.build_parser
    monkeypatch.setattr(cli, "build_parser", lambda: _patched(parser(), boom))
    code, out = run(["loop-z"], tmp_path, capsys)
    assert code == 3
    assert json.loads((tmp_path / "loop-z_witness.json").read_text())["message"] == "invariant"


def _patched(ap, func):
    sub = next(a for a in ap._actions if a.dest == "command")
    sub.choices["loop-z"].set_defaults(func=func)
    return ap


def test_verification_failure_exit_1(tmp_path, capsys, monkeypatch):
    import p3hardcore.counting as counting

    monkeypatch.setattr(counting, "verify_lemma1", lambda adj, perfect, expected: {
        "best": 0, "second_best": 0, "n_maximizers": 2, "passed": False})
    code, out = run(["verify-lemma1", "--kind", "urchin"], tmp_path, capsys)
    assert code == 1 and "FAIL urchin" in out.out


def test_console_script_module(tmp_path):
    res = subprocess.run([sys.executable, "-m", "p3hardcore.cli", "density", "--exact", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "0.549150" in res.stdout
