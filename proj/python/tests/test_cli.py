import json
import os
import subprocess

import pytest

CLI = os.environ.get("HYPERSPEC_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="HYPERSPEC_CLI not set")


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def test_eval_closed_form():
    r = run("eval", "--a=-1/3", "--b=0.5", "--c=0.5", "--z=0.5")
    assert r.returncode == 0
    data = r.stdout.strip().splitlines()
    assert data[0].startswith("z_re")
    fields = data[1].split(",")
    assert abs(float(fields[2]) - 0.5 ** (1 / 3)) < 1e-12
    assert fields[4] == "I"
    assert float(fields[5]) < 1e-12  # dF against the series reference


def test_eval_at_zero_and_large_argument():
    r = run("eval", "--a=-0.1", "--b=0.2", "--c=0.3", "--z=0", "--z=100", "--format=json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    pts = doc["points"]
    assert pts[0]["F"][0] == pytest.approx(1.0, abs=1e-13)
    assert pts[1]["F"][0] == pytest.approx(1.365, abs=6e-4)
    assert pts[1]["F"][1] == pytest.approx(0.400, abs=6e-4)
    assert pts[1]["domain"] == "III"


def test_eval_complex_point_json_schema():
    r = run("eval", "--a=0.1", "--b=0.2", "--c=-0.3", "--z=-0.5+0.5i", "--format=json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["a"] == [0.1, 0.0]
    pt = doc["points"][0]
    assert pt["z"] == [-0.5, 0.5]
    assert pt["F"][0] == pytest.approx(1.027, abs=2e-3)
    assert pt["F"][1] == pytest.approx(-0.013, abs=2e-3)


def test_exit_codes():
    assert run("eval", "--a=1", "--b=1", "--c=2", "--z=0.3").returncode == 2
    assert run("eval", "--a=0.1", "--b=0.2", "--c=0.3", "--z=bogus").returncode == 64
    assert run("table", "--file=/nonexistent.csv").returncode == 66


def test_table_runs_shipped_file():
    table = os.environ.get("HYPERSPEC_TABLE")
    assert table
    r = run("table", f"--file={table}")
    assert r.returncode == 0, r.stdout + r.stderr
    assert "19/19 rows pass" in r.stdout


def test_table_empty_file(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    r = run("table", f"--file={p}")
    assert r.returncode == 0
    assert "0 rows" in r.stdout


def test_grid_deterministic_and_matches_eval():
    args = ("grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=real-line",
            "--resolution=11", "--xmin=-2", "--xmax=2")
    r1, r2 = run(*args), run(*args)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout  # byte-identical output

    lines = [l for l in r1.stdout.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    assert header[:4] == ["x", "F_re", "F_im", "domain"]
    assert "rel_err" in header  # test example carries the error column
    row = lines[3].split(",")
    x = row[0]
    e = run("eval", "--a=-1/3", "--b=0.5", "--c=0.5", f"--z={x}")
    efields = e.stdout.strip().splitlines()[1].split(",")
    assert efields[2] == row[1]  # bit-identical F through either command
    assert efields[3] == row[2]


def test_grid_single_point():
    r = run("grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=real-line",
            "--resolution=1", "--xmin=0.5", "--xmax=0.5")
    assert r.returncode == 0
    lines = [l for l in r.stdout.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 2
    assert abs(float(lines[1].split(",")[1]) - 0.5 ** (1 / 3)) < 1e-12


def test_threads_env_respected():
    env = dict(os.environ, HYPERSPEC_THREADS="2")
    r = subprocess.run(
        [CLI, "grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=real-line",
         "--resolution=101", "--xmin=-3", "--xmax=3"],
        capture_output=True, text=True, env=env)
    assert r.returncode == 0
    assert len([l for l in r.stdout.splitlines() if not l.startswith("#")]) == 102


def test_bench_conditioning_small():
    r = run("bench", "--a=-1/3", "--b=0.5", "--c=0.5", "--study=conditioning",
            "--method=us", "--n-list=40,80")
    assert r.returncode == 0
    assert "# fit us" in r.stdout


def test_bench_convergence():
    r = run("bench", "--a=-1/3", "--b=0.5", "--c=0.5", "--study=convergence",
            "--n-list=16,24,32,40")
    assert r.returncode == 0
    rows = [l.split(",") for l in r.stdout.splitlines()
            if l.startswith("us,")]
    errs = {int(n): float(e) for _, n, e in rows}
    assert errs[40] < 1e-13  # resolved by n = 40
    assert errs[16] > errs[40]


def test_grid_sphere_and_rect():
    r = run("grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=sphere",
            "--resolution=12")
    assert r.returncode == 0
    lines = [l for l in r.stdout.splitlines() if l and not l.startswith("#")]
    assert lines[0].startswith("domain,r,phi")
    assert len(lines) == 1 + 3 * 12 * 12
    # every finite record of the test example carries a small relative error
    for l in lines[1:]:
        parts = l.split(",")
        if len(parts) == 8 and parts[7]:
            assert float(parts[7]) < 1e-9

    r2 = run("grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=complex-rect",
             "--resolution=9", "--re-min=-1", "--re-max=2", "--im-min=-1", "--im-max=1")
    assert r2.returncode == 0
    rows = [l for l in r2.stdout.splitlines() if l and not l.startswith("#")]
    assert len(rows) == 1 + 81


def test_grid_full_real_line_accuracy():
    r = run("grid", "--a=-1/3", "--b=0.5", "--c=0.5", "--region=real-line",
            "--resolution=1000", "--xmin=-10", "--xmax=10")
    assert r.returncode == 0
    worst = 0.0
    for l in r.stdout.splitlines():
        if l.startswith("#") or l.startswith("x,"):
            continue
        parts = l.split(",")
        x, err = float(parts[0]), parts[4]
        if abs(x - 1.0) < 0.05 or not err:
            continue
        worst = max(worst, float(err))
    assert worst <= 1e-12


def test_eval_branch_note():
    r = run("eval", "--a=-1/3", "--b=0.5", "--c=0.5", "--z=4", "--format=json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert "cut" in doc["points"][0].get("note", "")
