import csv
import math
import io
import json

import pytest

from nuosc.cli import main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_default():
    code, out, _ = run(["spectrum"])
    assert code == 0
    data = rows(out)
    assert len(data) == 4 * 2 * 2 * 3 * 4
    assert data[0] == {"molecule": "CO", "g": "0", "m": "0", "omega_L": "0", "n": "0", "E": "6.90572"}
    keys = [(r["molecule"], float(r["g"]), int(r["m"]), float(r["omega_L"]), int(r["n"])) for r in data]
    assert keys == sorted(keys)
    assert out.endswith("\n") and "\r" not in out
    assert out.splitlines()[0] == "molecule,g,m,omega_L,n,E"


def test_spectrum_single_point(tmp_path):
    path = tmp_path / "mol.csv"
    path.write_text("name,omega_1e13_s,mass_amu\nCO,6.471,6.8606719\n")
    code, out, _ = run(["spectrum", "--molecules", str(path), "--n", "0", "--m", "0", "--g", "0", "--omega-l", "0"])
    assert code == 0
    assert out == "molecule,g,m,omega_L,n,E\nCO,0,0,0,0,6.90572\n"


def test_output_deterministic(tmp_path):
    assert run(["observables"])[1] == run(["observables"])[1]
    run(["spectrum", "--out", str(tmp_path / "a")])
    run(["spectrum", "--out", str(tmp_path / "b")])
    assert (tmp_path / "a" / "spectrum.csv").read_bytes() == (tmp_path / "b" / "spectrum.csv").read_bytes()


def test_observables_rows():
    code, out, _ = run(["observables"])
    data = {(r["molecule"], r["g"], r["m"], r["omega_L"], r["n"]): r for r in rows(out)}
    co = data[("CO", "1", "1", "0", "0")]
    assert (co["r2"], co["T"], co["V"]) == ("0.395622", "-9.43338", "28.3002")
    assert float(co["chi"]) == -3.87265e31
    assert co["mu_B"] == "0"
    assert data[("HCl", "1", "1", "10", "3")]["r2"] == "0.822756"


def half_ulp(text):
    """Half a unit in the sixth significant digit of a printed value."""
    return 0.5 * 10.0 ** (math.floor(math.log10(abs(float(text)))) - 5)


def test_energy_equals_t_plus_v_at_printed_precision():
    key = ("molecule", "g", "m", "omega_L", "n")
    spectrum = {tuple(r[k] for k in key): r["E"] for r in rows(run(["spectrum"])[1])}
    for r in rows(run(["observables"])[1]):
        e = spectrum[tuple(r[k] for k in key)]
        slack = half_ulp(e) + half_ulp(r["T"]) + half_ulp(r["V"])
        assert abs(float(e) - (float(r["T"]) + float(r["V"]))) <= slack


def test_susceptibility_overrides():
    base = rows(run(["observables", "--n", "0", "--m", "1", "--g", "1", "--omega-l", "0"])[1])
    scaled = rows(run(["observables", "--n", "0", "--m", "1", "--g", "1", "--omega-l", "0", "--z", "2", "--e", "3"])[1])
    for a, b in zip(base, scaled):
        assert float(b["chi"]) == pytest.approx(18 * float(a["chi"]), rel=1e-5)


def test_dimensionless_units():
    code, out, _ = run(["spectrum", "--units", "dimensionless", "--n", "0", "--m", "0", "--g", "0", "--omega-l", "0"])
    data = rows(out)
    co = next(r for r in data if r["molecule"] == "CO")
    assert float(co["E"]) == pytest.approx((6.8606719 * 6.471**2) ** 0.5, rel=1e-5)


def test_figures(tmp_path):
    code, out, _ = run(["figures", "--out", str(tmp_path)])
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["figure_T.csv", "figure_V.csv", "figure_chi.csv", "figure_p2.csv", "figure_r2.csv"]
    data = rows((tmp_path / "figure_r2.csv").read_text())
    assert len(data) == 4 * 4 * 241
    assert data[0].keys() == {"molecule", "n", "omega_L", "value"}
    sweep = [r["omega_L"] for r in data if r["molecule"] == "CO" and r["n"] == "0"]
    assert sweep[0] == "0" and sweep[1] == "0.05" and sweep[-1] == "12"


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": [0], "m": [0], "g": [0], "omega_L": [0], "molecules": "mol.csv"}))
    (tmp_path / "mol.csv").write_text("name,omega_1e13_s,mass_amu\nCO,6.471,6.8606719\n")
    code, out, _ = run(["spectrum", "--config", str(cfg)])
    assert code == 0 and len(rows(out)) == 1
    code, out, _ = run(["spectrum", "--config", str(cfg), "--n", "0,1,2"])
    assert [r["n"] for r in rows(out)] == ["0", "1", "2"]


@pytest.mark.parametrize(
    "content,needle",
    [
        ('{"n": [0],\n "omega_L": "x"}', "line 2, field 'omega_L'"),
        ('{"n": [-1]}', "n values must be >= 0"),
        ('{"n": [0.5]}', "not an integer"),
        ('{"colour": 1}', "field 'colour'"),
        ('{"n": [0],}', "line 1"),
        ('{"tolerances": {"bogus": 1}}', "unknown tolerance"),
        ('{"n": []}', "must not be empty"),
    ],
)
def test_config_errors(tmp_path, content, needle):
    cfg = tmp_path / "bad.json"
    cfg.write_text(content)
    code, _, err = run(["spectrum", "--config", str(cfg)])
    assert code == 2
    assert needle in err


def test_missing_molecules_file(tmp_path):
    missing = tmp_path / "nowhere.csv"
    code, _, err = run(["verify", "--molecules", str(missing)])
    assert code == 2
    assert str(missing) in err


def test_bad_molecules_file(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("name,omega_1e13_s,mass_amu\nCO,abc,1\n")
    code, _, err = run(["spectrum", "--molecules", str(path)])
    assert code == 2
    assert "line 2" in err and "omega_1e13_s" in err


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        run(["spectrum", "--n", "a,b"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        run([])
    assert info.value.code == 2


def test_verify_pristine(tmp_path):
    code, out, _ = run(["verify", "--out", str(tmp_path)])
    assert code == 0
    assert "0 failures" in out
    assert out.count("MISPRINT") == 3
    assert (tmp_path / "verify.txt").read_text() == out


def test_verify_perturbed_mass(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text(
        "name,omega_1e13_s,mass_amu\n"
        f"CO,6.471,{6.8606719 * 1.01!r}\nHCl,8.814,0.9801045\nI2,0.642,63.45223502\nH2,12.960,0.50391\n"
    )
    code, out, _ = run(["verify", "--molecules", str(path)])
    assert code == 1
    assert "FAIL     reference E CO" in out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "nuosc", "spectrum", "--n", "0", "--m", "0", "--g", "0", "--omega-l", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "CO,0,0,0,0,6.90572"


def test_figure_gaps():
    from nuosc.cli import RunConfig, figure_series
    from nuosc.model import DEFAULT_MOLECULES, working_units

    config = RunConfig()
    chi, v = figure_series(config, "chi"), figure_series(config, "V")
    for mol in DEFAULT_MOLECULES:
        k = working_units(mol).stiffness
        chi_gap = abs(chi[(mol.name, 3)] - chi[(mol.name, 0)])
        # the n-gap scales as 1/Gamma, so its shrink factor is Gamma(0)/Gamma(12)
        assert chi_gap[-1] / chi_gap[0] == pytest.approx(math.sqrt(k / (144.0 + k)), rel=1e-9)
        assert chi_gap[-1] / chi_gap[0] < 0.5
        v_gap = v[(mol.name, 3)] - v[(mol.name, 0)]
        assert v_gap[-1] > v_gap[0]
    r2 = figure_series(config, "r2")
    for values in r2.values():
        assert (values[1:] < values[:-1]).all()
