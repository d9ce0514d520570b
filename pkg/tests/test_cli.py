import csv
import io
import json
import subprocess
import sys

import pytest

from stringzeta.cli import main, parse_orders
from stringzeta.sumrules import SumRuleTable


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_orders():
    assert parse_orders("1..4") == [1, 2, 3, 4]
    assert parse_orders("3,4,5") == [3, 4, 5]


def test_zeta_json_roundtrip(capsys):
    code, out, _ = run(capsys, "zeta", "--density", "borg:alpha=2", "--bc", "nn",
                       "--orders", "1..3")
    assert code == 0
    tab = SumRuleTable.from_json(out)
    assert tab.bc.value == "NN" and tab.orders == (1, 2, 3)
    assert tab[2] == pytest.approx(0.0618369052158, rel=1e-10)


def test_zeta_uniform_pp(capsys):
    code, out, _ = run(capsys, "zeta", "--density", "uniform", "--bc", "pp")
    assert code == 0
    assert json.loads(out)["values"][0] == pytest.approx(1 / 12)


def test_zeta_projected_differs(capsys):
    _, reg, _ = run(capsys, "zeta", "--density", "borg:alpha=2", "--bc", "nn")
    _, proj, _ = run(capsys, "zeta", "--density", "borg:alpha=2", "--bc", "nn",
                     "--zero-mode", "projected")
    assert json.loads(proj)["values"][0] < json.loads(reg)["values"][0]


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--density", "uniform", "--orders", "1..2",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[0]["lower"]) == pytest.approx(90 ** 0.5)
    assert float(rows[0]["upper"]) == pytest.approx(15.0)


def test_estimate_fixtures(capsys):
    code, out, _ = run(capsys, "estimate", "--fixtures", "horgan-chan", "--orders", "1..5")
    assert code == 0
    d = json.loads(out)
    assert d["waring"]["estimate"][0] == pytest.approx(6.13866459, abs=1e-8)
    assert d["waring"]["best_str"].startswith("10.2180907833")


def test_spectrum_and_diagrams(capsys):
    code, out, _ = run(capsys, "spectrum", "--density", "uniform", "--modes", "2")
    assert code == 0
    assert json.loads(out)["eigenvalues"][0] == pytest.approx(9.8696044, rel=1e-7)
    code, out, _ = run(capsys, "diagrams", "--order", "4")
    assert json.loads(out)["diagrams"] == ["1-2-3-4-1", "1-2-4-3-1", "1-3-2-4-1"]


def test_sweep_csv_and_thread_determinism(capsys):
    args = ["sweep", "--density", "borg:alpha={}", "--values", "0.5,1,2",
            "--orders", "2,3,4", "--no-oracle"]
    code, one, _ = run(capsys, *args, "--threads", "1")
    assert code == 0
    _, many, _ = run(capsys, *args, "--threads", "3")
    assert one == many
    rows = list(csv.DictReader(io.StringIO(one)))
    assert [r["param"] for r in rows] == ["0.5", "1.0", "2.0"]
    assert all(r["oracle"] == "" and r["status"] == "ok" for r in rows)
    assert all(float(r["lower"]) <= 9.8697 <= float(r["upper"]) for r in rows)


def test_sweep_negative_values(capsys):
    code, out, _ = run(capsys, "sweep", "--density", "borg:alpha={}",
                       "--values=-0.5,1", "--orders", "2,3,4", "--no-oracle")
    assert code == 0
    assert out.splitlines()[1].startswith("-0.5")


def test_sweep_needs_template(capsys):
    code, _, err = run(capsys, "sweep", "--density", "borg", "--values", "1")
    assert code == 2 and "template" in err


def test_out_file(tmp_path, capsys):
    path = tmp_path / "z.json"
    code, _, _ = run(capsys, "zeta", "--density", "uniform", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["values"][0] == pytest.approx(1 / 6)


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample\ndensity = borg:alpha=2\nbc = nn\norders = 1..2\n")
    code, out, _ = run(capsys, "zeta", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["bc"] == "NN"
    code, out, _ = run(capsys, "zeta", "--config", str(cfg), "--bc", "dd")
    assert json.loads(out)["bc"] == "DD"
    cfg.write_text("nonsense = 1\n")
    code, _, _ = run(capsys, "zeta", "--config", str(cfg))
    assert code == 2


def test_accuracy_error_exit_3(capsys):
    code, out, err = run(capsys, "zeta", "--density", "uniform", "--orders", "3",
                         "--tol", "1e-30")
    assert code == 3 and out == ""
    payload = json.loads(err)
    assert payload["partial"]["values"][0] == pytest.approx(1 / 945)


@pytest.mark.parametrize("argv", [
    ["zeta", "--density", "bogus"],
    ["zeta", "--density", "uniform", "--bc", "xx"],
    ["zeta", "--density", "uniform", "--orders", "1..7", "--method", "diagram"],
    ["bounds", "--density", "uniform", "--orders", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_argparse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nosuchcommand"])
    assert info.value.code == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "stringzeta", "diagrams", "--order", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["count"] == 1
