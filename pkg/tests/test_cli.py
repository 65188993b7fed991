import csv
import io
import math

import pytest

from zzbound.cli import main
from zzbound.bounds import COSINE_LPI_CONSTANT, LINEAR_LPI_CONSTANT


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_fig2a_rows(capsys):
    code, out, _ = run_cli(capsys, "fig2a")
    assert code == 0
    rows = parse(out)
    assert len(rows) == 200
    assert list(rows[0]) == ["z0", "dy_lb_closed", "dy_lb_quadrature", "hl_line", "prior_line"]
    last = rows[-1]
    assert float(last["z0"]) == pytest.approx(100.0)
    assert float(last["dy_lb_closed"]) == pytest.approx(0.1548, rel=0.01)
    assert float(last["hl_line"]) == pytest.approx(LINEAR_LPI_CONSTANT)
    first = rows[0]
    assert float(first["prior_line"]) == pytest.approx(0.01 / math.sqrt(3))
    for r in rows:
        assert float(r["dy_lb_closed"]) == pytest.approx(float(r["dy_lb_quadrature"]), rel=1e-6)


def test_fig2b_last_row(capsys):
    code, out, _ = run_cli(capsys, "fig2b")
    rows = parse(out)
    assert code == 0
    assert float(rows[-1]["dy_lb_closed"]) == pytest.approx(0.3418, rel=0.01)
    assert float(rows[-1]["hl_line"]) == pytest.approx(COSINE_LPI_CONSTANT)


def test_fig4_rows(capsys):
    code, out, _ = run_cli(capsys, "fig4")
    rows = parse(out)
    assert code == 0 and len(rows) == 500
    assert rows[0] == {"theta": "0", "f_ssw": "1", "f_dualfock": "1", "f_noonlike": "1"}
    assert float(rows[-1]["theta"]) == pytest.approx(2 * math.pi)
    mid = min(rows, key=lambda r: abs(float(r["theta"]) - math.pi))
    assert float(mid["f_dualfock"]) == pytest.approx(0.75, abs=1e-4)
    assert float(mid["f_noonlike"]) == pytest.approx(0.125, abs=1e-4)


def test_csv_format(capsys):
    _, out, _ = run_cli(capsys, "fig2a", "--points", "3")
    assert "\r" not in out and out.endswith("\n")
    for line in out.splitlines():
        assert not line.endswith(",")
        for cell in line.split(","):
            if cell[0].isdigit():
                assert len(cell.replace(".", "").replace("-", "").split("e")[0].lstrip("0")) <= 12


def test_bounds_linear_example(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--model", "linear", "--mean-h", "1", "--width", "20")
    rows = parse(out)
    assert code == 0 and len(rows) == 1
    z0 = 10.0
    eq = math.sqrt((5 / 12 - math.pi / 8) - (0.25 - 5 * math.pi / 64) / z0)
    assert float(rows[0]["z0"]) == z0
    assert float(rows[0]["dy_lb_closed"]) == pytest.approx(eq, rel=1e-11)
    assert float(rows[0]["dy_lb_quadrature"]) == pytest.approx(eq, rel=1e-8)


def test_bounds_state_tolerance_halving(capsys):
    _, a, _ = run_cli(capsys, "bounds", "--model", "state:tmsv", "--nbar", "5", "--width", "3")
    _, b, _ = run_cli(capsys, "bounds", "--model", "state:tmsv", "--param", "nbar=5", "--width", "3", "--tol", "5e-10")
    va, vb = float(parse(a)[0]["dy_lb_quadrature"]), float(parse(b)[0]["dy_lb_quadrature"])
    assert abs(va - vb) <= 1e-5 * va


def test_bounds_mixed_fock_uses_distance(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--model", "state:mixed_fock", "--n", "20", "--p", "1", "--width", "1")
    assert code == 0
    assert float(parse(out)[0]["dy_lb_quadrature"]) == pytest.approx(0.046383732017, abs=1e-11)


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--model", "cosine", "--std-h", "0", "--width", "1"],
        ["bounds", "--model", "banana", "--width", "1"],
        ["bounds", "--model", "state:coherent", "--width", "1"],
        ["bounds", "--model", "state:coherent", "--alpha", "1", "--param", "zeta=2", "--width", "1"],
        ["bounds", "--model", "linear", "--width", "-1"],
        ["bounds", "--model", "linear", "--width", "1", "--tol", "0.1"],
        ["fig2a", "--points", "1"],
        ["fig2a", "--plot-script"],
        ["compare-cr", "--std-h", "0"],
        ["detect", "--state", "cat"],
        ["detect", "--state", "coherent", "--threshold", "1.2"],
        ["nonsense"],
        ["bounds", "--param", "alpha"],
    ],
)
def test_parameter_errors_exit_2(capsys, argv):
    code, out, _ = run_cli(capsys, *argv)
    assert code == 2
    assert out == ""


def test_nonconvergence_exit_3(capsys, monkeypatch):
    import functools

    import zzbound.bounds as bounds_mod

    # a tiny panel budget makes the real quadrature give up
    monkeypatch.setattr(bounds_mod, "adaptive_simpson", functools.partial(bounds_mod.adaptive_simpson, max_panels=50))
    code, _, err = run_cli(capsys, "bounds", "--model", "state:scv", "--alpha", "30", "--width", "6")
    assert code == 3
    assert "numerical failure" in err


def test_detect_coherent_fit(capsys):
    code, out, _ = run_cli(capsys, "detect", "--state", "coherent", "--nbar-min", "100", "--nbar-max", "1e6")
    assert code == 0
    fit = [ln for ln in out.splitlines() if ln.startswith("# fit")][0]
    alpha = float(fit.split("alpha=")[1].split()[0])
    assert alpha == pytest.approx(0.5, abs=0.05)


def test_detect_scv_fit(capsys):
    _, out, _ = run_cli(capsys, "detect", "--state", "scv")
    fit = [ln for ln in out.splitlines() if ln.startswith("# fit")][0]
    assert float(fit.split("alpha=")[1].split()[0]) == pytest.approx(1.0, abs=0.05)


def test_detect_fock_like_flagged(capsys):
    _, out, _ = run_cli(capsys, "detect", "--state", "noonlike", "--gamma-max", "0.3")
    rows = parse(out)
    assert rows[0]["detectable"] == "0" and rows[0]["gamma_m"] == "nan"
    _, out, _ = run_cli(capsys, "detect", "--state", "dual_fock_like")
    assert parse(out)[0]["detectable"] == "0"


def test_compare_cr_regimes(capsys):
    code, out, _ = run_cli(capsys, "compare-cr", "--std-h", "2")
    rows = parse(out)
    assert code == 0
    lpi, hpi = rows[-1], rows[0]
    assert float(lpi["cr_bound"]) == pytest.approx(0.25, rel=1e-3)
    assert float(lpi["cr_bound"]) > float(lpi["zz_cosine_closed"])
    assert float(lpi["zz_cosine_closed"]) == pytest.approx(COSINE_LPI_CONSTANT / 2, rel=1e-2)
    assert float(hpi["cr_bound"]) == pytest.approx(float(hpi["dx"]), rel=1e-3)


def test_out_and_plot_script(tmp_path, capsys):
    target = tmp_path / "fig2b.csv"
    code, out, _ = run_cli(capsys, "fig2b", "--points", "5", "--out", str(target), "--plot-script")
    assert code == 0 and out == ""
    script = (tmp_path / "fig2b.gp").read_text()
    assert "'fig2b.csv'" in script and str(tmp_path) not in script
    assert target.read_text().startswith("z0,")


@pytest.mark.parametrize("cmd", ["fig2a", "fig2b", "fig4"])
def test_deterministic_bytes(tmp_path, capsys, cmd):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([cmd, "--out", str(a)]) == 0
    assert main([cmd, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_is_accepted_and_ignored(capsys):
    _, a, _ = run_cli(capsys, "fig2a", "--points", "4", "--seed", "1")
    _, b, _ = run_cli(capsys, "fig2a", "--points", "4", "--seed", "2")
    assert a == b


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "zzbound", "compare-cr", "--points", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("dx,cr_bound,zz_cosine_closed\n")
