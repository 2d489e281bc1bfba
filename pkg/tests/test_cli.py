import math

import numpy as np
import pytest

from pdmcs.cli import main, parse_grid, parse_n, parse_z
from pdmcs.errors import UsageError
from pdmcs.numerics import read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    rows = out.strip().splitlines()[1:]
    assert code == 0 and len(rows) == 8
    assert [r.split(",")[0] for r in rows] == ["V1", "V2", "V3", "V4", "V5", "V6", "V7", "LinearPdm"]
    code, out, _ = run(capsys, "catalog", "MDNT")
    assert [r.split(",")[0] for r in out.strip().splitlines()[1:]] == ["V1", "V2"]
    code, out, _ = run(capsys, "catalog", "nothing-matches")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--g0", "2", "--n", "0..3")
    cols = read_csv(out)
    assert code == 0
    assert np.max(np.abs(cols["E"] - (4 * np.arange(4) + 2 + math.sqrt(5)))) < 1e-12
    assert [round(v, 5) for v in cols["E"]] == [4.23607, 8.23607, 12.23607, 16.23607]
    code, out, _ = run(capsys, "spectrum", "--g0", "0", "--n", "0")
    assert read_csv(out)["E"][0] == 3.0


def test_wavefunction_and_roundtrip(capsys, tmp_path):
    from pdmcs.xspace import make_system

    path = tmp_path / "wf.csv"
    code, _, _ = run(capsys, "wavefunction", "--profile", "V5", "--n", "0,2", "--out", str(path))
    assert code == 0
    cols = read_csv(path)
    sys_ = make_system("V5")
    assert np.array_equal(cols["psi2"], sys_.psi_n(2, cols["x"]))
    assert cols["psi0"][0] == 0.0


def test_potential_record(capsys):
    code, out, _ = run(capsys, "potential", "--profile", "kind=MdntN n=2 x0=1 lambda=1",
                       "--grid", "0,2,5")
    cols = read_csv(out)
    u = 1 + cols["x"]
    s = 5 * u ** 0.2
    assert code == 0
    assert np.max(np.abs(cols["V"] - (s * s + 1 / (s * s)))) < 1e-12


def test_coherent(capsys, tmp_path):
    coeffs = tmp_path / "c.csv"
    code, out, _ = run(capsys, "coherent", "--profile", "V5", "--z", "2,1", "--coeffs", str(coeffs))
    assert code == 0
    cols = read_csv(out)
    assert list(cols) == ["x", "re", "im", "abs2"]
    c = read_csv(coeffs)
    assert list(c) == ["n", "re", "im"]
    assert abs(np.sum(c["re"] ** 2 + c["im"] ** 2) - 1) < 1e-12
    code, out, _ = run(capsys, "coherent", "--profile", "LinearPdm", "--z", "1,1", "--grid=-2,2,9")
    assert code == 0 and len(read_csv(out)["x"]) == 9


def test_exit_codes(capsys):
    assert run(capsys, "coherent", "--kind", "Perelomov", "--profile", "V5", "--z", "0.3,0")[0] == 2
    assert run(capsys, "spectrum", "--profile", "V42")[0] == 2
    assert run(capsys, "spectrum", "--n", "x")[0] == 2
    assert run(capsys, "verify", "nope")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    code, out, err = run(capsys, "verify", "eigen_y", "--tolerance", "eigen_y=1e-20")
    assert code == 1 and "false" in out
    code, out, err = run(capsys, "verify", "casimir", "mdnt_ode")
    assert code == 0 and out.count("\n") == 6


def test_figure1(capsys, tmp_path):
    assert run(capsys, "figure", "1", "--out", str(tmp_path))[0] == 0
    cols = read_csv(tmp_path / "figure1.csv")
    assert list(cols) == ["x", "V1", "V2", "V3", "V5", "Vsing"]
    i = int(np.argmin(np.abs(cols["x"] - 1.0)))
    x = cols["x"][i]
    assert abs(cols["Vsing"][i] - (x * x + 1 / (x * x))) < 1e-12
    assert abs(x - 1.0) < 1e-12 and abs(cols["Vsing"][i] - 2.0) < 1e-10
    levels = read_csv(tmp_path / "figure1_levels.csv")
    assert np.allclose(levels["E"], 4 * np.arange(4) + 2 + math.sqrt(5), rtol=0, atol=1e-12)


def test_figure2(capsys, tmp_path):
    assert run(capsys, "figure", "2", "--out", str(tmp_path))[0] == 0
    for pid in ("V5", "V1"):
        cols = read_csv(tmp_path / f"figure2_{pid}.csv")
        assert list(cols) == ["x", "psi0", "psi1", "psi2"]
        assert cols["x"][0] == 0.0
        assert all(cols[f"psi{n}"][0] == 0.0 for n in range(3))


def test_figure3(capsys, tmp_path):
    assert run(capsys, "figure", "3", "--out", str(tmp_path))[0] == 0
    for pid in ("V5", "Sing"):
        cols = read_csv(tmp_path / f"figure3_{pid}.csv")
        assert abs(np.trapezoid(cols["abs2_psi2"], cols["x"]) - 1) < 1e-6


def test_figure_unwritable(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "figure", "1", "--out", str(blocker))
    assert code == 2


def test_parsers():
    assert parse_n("0..3") == [0, 1, 2, 3]
    assert parse_n("0,2,5") == [0, 2, 5]
    assert parse_n("4") == [4]
    assert parse_z("1.5,-2") == 1.5 - 2j
    assert parse_z("2") == 2
    assert parse_grid("0,1,11") == (0.0, 1.0, 11)
    for bad in ("-1", "a..b"):
        with pytest.raises(UsageError):
            parse_n(bad)
    with pytest.raises(UsageError):
        parse_grid("1,0,10")
    with pytest.raises(UsageError):
        parse_z("1,2,3")


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "pdmcs", "spectrum", "--g0", "0", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[1] == "1,7"
