import csv
import io
import math

import pytest

from ngmp.cases import TABLE2_PAIRS
from ngmp.cli import PROFILE_HEADER, REPORT_HEADER, main
from ngmp.molecules import builtin_molecules, dump_molecules

HULTHEN = ["--custom", "20,1.9426,0.50391", "--shape", "1,-0.99,1,-1"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


@pytest.mark.parametrize("argv,expected", [
    (["--molecule", "H2"], -0.003913142),
    (["--molecule", "CO"], -0.00040269),
    (["--molecule", "H2", "--delta", "5"], -0.013043805),
])
def test_levels_spot_values(capsys, argv, expected):
    code, out, _ = run(capsys, "levels", "--n-max", "0", "--l-max", "0", *argv)
    assert code == 0
    (row,) = rows(out)
    assert float(row["E_eV"]) == pytest.approx(expected, abs=1e-6)
    assert row["status"] == "ok"


def test_levels_header_and_order(capsys):
    code, out, _ = run(capsys, "levels", "--molecule", "LiH", "--molecule", "H2", "--n-max", "1", "--l-max", "1")
    assert out.splitlines()[0] == "molecule,n,l,delta,E_eV,status"
    got = [(r["molecule"], int(r["n"]), int(r["l"])) for r in rows(out)]
    assert got == [(m, n, l) for m in ("LiH", "H2") for n in range(2) for l in range(2)]
    assert float(rows(out)[3]["E_eV"]) == pytest.approx(-0.006295146, abs=1e-6)


def test_levels_trend_in_l(capsys):
    code, out, _ = run(capsys, "levels", *sum((["--molecule", m.name] for m in builtin_molecules()), []))
    table = rows(out)
    for name in {r["molecule"] for r in table}:
        for n in range(6):
            Es = [float(r["E_eV"]) for r in table if r["molecule"] == name and int(r["n"]) == n]
            assert len(Es) == 6 and all(b < a for a, b in zip(Es, Es[1:]))


def test_unknown_molecule(capsys):
    code, _, err = run(capsys, "levels", "--molecule", "XeF")
    assert code == 2
    assert "XeF" in err


def test_strict_missing_level(capsys):
    argv = ["levels", "--molecule", "H2", "--shape", "1,-2,1,-1", "--n-max", "0", "--l-max", "0"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and rows(out)[0]["status"] == "NoRealBoundState"
    code, _, _ = run(capsys, *argv, "--strict")
    assert code == 3


def test_molecules_file(capsys, tmp_path):
    path = tmp_path / "m.csv"
    dump_molecules(builtin_molecules()[:2], path)
    code, out, _ = run(capsys, "table2", "--molecules-file", str(path))
    assert out.splitlines()[0] == "n,l,H2_eV,LiH_eV"


def test_reduced_units(capsys):
    # hbar = 1, mu = 0.5, alpha = 1, V == 0: E = -(n + 1)^2 / 4
    code, out, _ = run(capsys, "levels", "--units", "reduced", "--custom", "1,1,0.5", "--n-max", "2", "--l-max", "0")
    assert [float(r["E_reduced"]) for r in rows(out)] == pytest.approx([-0.25, -1.0, -2.25], abs=1e-9)


def test_table2_layout_and_cells(capsys, tmp_path, reference_table):
    path = tmp_path / "t2.csv"
    code, out, _ = run(capsys, "table2", "--out", str(path))
    assert code == 0 and out == ""
    table = list(csv.DictReader(path.open()))
    assert [(int(r["n"]), int(r["l"])) for r in table] == list(TABLE2_PAIRS)
    names = [m.name for m in builtin_molecules()]
    assert list(table[0].keys()) == ["n", "l"] + [f"{m}_eV" for m in names]
    cells = {(int(r["n"]), int(r["l"]), m): r[f"{m}_eV"] for r in table for m in names}
    assert len(cells) == 220
    assert all(len(v.split(".")[1]) == 9 for v in cells.values())
    assert float(cells[2, 2, "H2"]) == pytest.approx(-0.090002256, abs=1e-9)
    assert float(cells[5, 5, "TiC"]) == pytest.approx(-0.014051187, abs=1e-9)
    for (n, l), row in reference_table.items():
        for m, expected in row.items():
            assert float(cells[n, l, m]) == pytest.approx(expected, abs=1e-6)


def test_curve_figure_one(capsys, tmp_path):
    path = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "curve", "--shape", "1,-2,1,-1", "--out", str(path))
    assert code == 0
    table = list(csv.DictReader(path.open()))
    assert len(table) == 1000
    for m in builtin_molecules():
        V = [float(r[f"V_{m.name}_eV"]) for r in table]
        assert abs(V[-1]) <= 1e-6 * m.De
        assert 0.99 * m.De < max(V) <= m.De


def test_curve_figure_two(capsys, tmp_path):
    path = tmp_path / "fig2.csv"
    code, _, _ = run(capsys, "curve", "--molecule", "H2", "--shape", "1,-2,1,-1", "--companion", "--out", str(path))
    table = list(csv.DictReader(path.open()))
    assert list(table[0].keys()) == ["r_angstrom", "V_H2_eV", "DengFan_H2_eV"]
    for r in table:
        # 12 significant digits are written, and V reaches -1e6 eV near the origin
        V = float(r["V_H2_eV"])
        assert V + float(r["DengFan_H2_eV"]) == pytest.approx(4.744984, abs=1e-11 * max(1.0, abs(V)))
    assert abs(float(table[-1]["V_H2_eV"])) <= 1e-6 * 4.744984


def test_curve_default_shape_is_zero(capsys):
    code, out, _ = run(capsys, "curve", "--molecule", "CO", "--points", "50")
    assert all(float(r["V_CO_eV"]) == 0.0 for r in rows(out))


def test_curve_through_pole(capsys):
    code, _, err = run(capsys, "curve", "--molecule", "H2", "--shape", "1,1,1,-2")
    assert code == 4
    assert "pole" in err


@pytest.mark.parametrize("n", [0, 1, 2])
def test_wavefunction_sign_changes(capsys, n):
    code, out, _ = run(capsys, "wavefunction", *HULTHEN, "--n", str(n), "--l", "1")
    assert code == 0
    comment = out.splitlines()[0]
    assert comment.startswith("# ") and f"sign_changes={n}" in comment
    residual = float(comment.split("normalization_residual=")[1].split()[0])
    assert residual < 1e-8
    R = [float(r["R_per_sqrt_angstrom"]) for r in rows(out)]
    assert abs(R[-1]) < 1e-6 * max(abs(v) for v in R)


def test_wavefunction_literal_sign(capsys):
    code, _, err = run(capsys, "wavefunction", *HULTHEN, "--l", "1", "--literal-sign", "--r-max", "20")
    assert code == 5


def test_wavefunction_without_level(capsys):
    code, _, _ = run(capsys, "wavefunction", "--molecule", "H2", "--shape", "1,-2,1,-1")
    assert code == 3


def test_verify_report(capsys, tmp_path):
    out = tmp_path / "report.csv"
    argv = ["verify", "--case", "hulthen-core-h2", "--l-max", "1", "--n-max", "1", "--points", "600",
            "--out", str(out)]
    code, summary, _ = run(capsys, *argv)
    assert code == 0
    table = list(csv.DictReader(out.open()))
    assert list(table[0].keys()) == REPORT_HEADER
    assert [(int(r["n"]), int(r["l"])) for r in table] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert "validation: hulthen-core-h2" in summary and "discrepancies:" in summary

    profile = out.with_name("report_profile.csv")
    prof = list(csv.DictReader(profile.open()))
    assert list(prof[0].keys()) == PROFILE_HEADER
    alpha = 1.9426
    for r in prof:
        assert float(r["difference_per_A2"]) == pytest.approx(alpha**2 / 12, rel=1e-9)

    first = out.read_bytes(), profile.read_bytes()
    code, again, _ = run(capsys, *argv)
    assert (out.read_bytes(), profile.read_bytes()) == first
    assert again == summary


def test_verify_flags_free_shape(capsys):
    code, summary, _ = run(capsys, "verify", "--molecule", "H2", "--points", "600")
    assert code == 0
    assert "DISCREPANCY" in summary and "not a decaying solution" in summary


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["levels", "--shape", "1,2,3"])
    assert info.value.code == 2
    capsys.readouterr()


def test_fraction_d0(capsys):
    _, a, _ = run(capsys, "levels", "--n-max", "0", "--l-max", "1", "--d0", "1/12")
    _, b, _ = run(capsys, "levels", "--n-max", "0", "--l-max", "1")
    _, c, _ = run(capsys, "levels", "--n-max", "0", "--l-max", "1", "--d0", "0")
    assert a == b != c
    assert math.isfinite(float(rows(c)[1]["E_eV"]))
