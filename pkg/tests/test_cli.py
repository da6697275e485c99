"""Command-line behaviour: formats, determinism, exit codes."""
import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from vdwcp.cli import main
from vdwcp.quad import ConvergenceError, QuadratureResult

ATOMS = Path(__file__).resolve().parents[1] / "atoms"
ELEC = str(ATOMS / "electric_unit.yaml")
PARA = str(ATOMS / "paramagnetic_unit.yaml")
DIA = str(ATOMS / "diamagnetic_unit.yaml")


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _parse_csv(text):
    """Split a CSV document into its metadata dict and data rows."""
    meta, data_lines = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
        else:
            data_lines.append(line)
    rows = list(csv.reader(io.StringIO("\n".join(data_lines))))
    return meta, rows[0], rows[1:]


def test_mirror_csv_shape_and_metadata(capsys):
    code, out, err = _run(
        capsys, "mirror", "--atom", DIA, "--plate", "conducting",
        "--grid", "0.5:4:7", "--units", "natural",
    )
    assert code == 0 and err == ""
    meta, header, rows = _parse_csv(out)
    assert header == ["distance", "channel:e", "channel:p", "channel:d", "total"]
    assert meta["engine"] == "vdwcp 0.1.0"
    assert meta["plate"] == "conducting"
    assert meta["units"] == "natural"
    assert len(rows) == 7
    d_col = np.array([float(r[3]) for r in rows])
    assert np.all(d_col < 0.0)
    assert np.all(np.diff(d_col) > 0.0)  # attraction weakens with distance
    # pure z^-4 law, visible directly in the emitted numbers
    z = np.array([float(r[0]) for r in rows])
    slopes = np.diff(np.log(-d_col)) / np.diff(np.log(z))
    assert np.max(np.abs(slopes + 4.0)) <= 1e-6


def test_mirror_plate_swap_negates_every_channel(capsys):
    base = ["mirror", "--atom", DIA, "--grid", "0.5:4:5", "--units", "natural"]
    _, out_cond, _ = _run(capsys, *base, "--plate", "conducting")
    _, out_perm, _ = _run(capsys, *base, "--plate", "permeable")
    _, _, rows_cond = _parse_csv(out_cond)
    _, _, rows_perm = _parse_csv(out_perm)
    for rc, rp in zip(rows_cond, rows_perm):
        assert rc[0] == rp[0]
        for a, b in zip(rc[1:], rp[1:]):
            assert float(a) == -float(b)


def test_pair_csv_matches_closed_form_and_roundtrips(capsys):
    code, out, _ = _run(
        capsys, "pair", "--atom", DIA, "--atom-b", DIA,
        "--grid", "0.1:100:20", "--units", "natural",
    )
    assert code == 0
    _, header, rows = _parse_csv(out)
    assert header[-2:] == ["channel:dd", "total"]
    from vdwcp.units import UnitSystem, constants_for
    consts = constants_for(UnitSystem.NATURAL)
    coeff = 23.0 * consts.hbar * consts.mu0**2 * consts.c / (64.0 * np.pi**3)
    for row in rows:
        distance = float(row[0])
        value = float(row[-1])
        expected = -coeff / distance**7
        assert abs(value - expected) <= 1e-9 * abs(expected)
        # 17 significant digits reproduce the float exactly
        assert float(format(value, ".17g")) == value


def test_pair_atom_order_is_irrelevant_to_the_byte(capsys):
    grid = "0.3:30:9"
    _, out_ab, _ = _run(
        capsys, "pair", "--atom", ELEC, "--atom-b", PARA,
        "--grid", grid, "--units", "natural",
    )
    _, out_ba, _ = _run(
        capsys, "pair", "--atom", PARA, "--atom-b", ELEC,
        "--grid", grid, "--units", "natural",
    )
    _, header_ab, rows_ab = _parse_csv(out_ab)
    _, header_ba, rows_ba = _parse_csv(out_ba)
    ep, pe = header_ab.index("channel:ep"), header_ba.index("channel:pe")
    total = header_ab.index("total")
    for ra, rb in zip(rows_ab, rows_ba):
        assert ra[ep] == rb[pe]
        assert ra[total] == rb[total]


def test_slopes_deep_retarded_pair(capsys):
    code, out, _ = _run(
        capsys, "slopes", "--atom", DIA, "--atom-b", DIA,
        "--grid", "400:2500:7", "--units", "natural", "--channel", "dd",
    )
    assert code == 0
    _, header, rows = _parse_csv(out)
    assert header == ["distance", "slope", "sign"]
    for row in rows:
        assert abs(float(row[1]) + 7.0) <= 1e-6
        assert row[2] == "-1"


@pytest.mark.parametrize(
    "grid, power",
    [("5e-4:2e-3:7", -5.0), ("5e2:2e3:7", -7.0)],
)
def test_slopes_electric_diamagnetic_regimes(capsys, grid, power):
    code, out, _ = _run(
        capsys, "slopes", "--atom", ELEC, "--atom-b", DIA,
        "--grid", grid, "--units", "natural", "--channel", "ed",
    )
    assert code == 0
    _, _, rows = _parse_csv(out)
    mid = rows[len(rows) // 2]
    assert abs(float(mid[1]) - power) <= 0.05
    assert mid[2] == "-1"


def test_slopes_mirror_needs_plate(capsys):
    code, _, err = _run(capsys, "slopes", "--atom", DIA, "--grid", "0.5:2:7")
    assert code == 2
    assert "--plate" in err


def test_slopes_mirror_channel(capsys):
    code, out, _ = _run(
        capsys, "slopes", "--atom", DIA, "--plate", "conducting",
        "--grid", "0.5:2:7", "--units", "natural", "--channel", "d",
    )
    assert code == 0
    _, _, rows = _parse_csv(out)
    assert all(abs(float(r[1]) + 4.0) <= 1e-6 for r in rows)


def test_tables_pass_in_both_formats(capsys):
    code, out, _ = _run(capsys, "tables")
    assert code == 0
    _, header, rows = _parse_csv(out)
    assert header[0] == "channel" and header[-1] == "status"
    assert len(rows) == 23
    assert all(row[-1] == "PASS" for row in rows)

    code, out, _ = _run(capsys, "tables", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    assert len(doc["cells"]) == 23
    assert all(cell["passed"] is True for cell in doc["cells"])


def test_tables_reject_positive_diamagnetisability(capsys):
    code, _, err = _run(capsys, "tables", "--diamagnetic-beta", "0.5")
    assert code == 2
    assert "Lenz" in err


def test_tables_reject_si_units(capsys):
    code, _, err = _run(capsys, "tables", "--units", "si")
    assert code == 2
    assert "natural" in err


def test_selftest_text_contains_adjudication(capsys):
    code, out, _ = _run(capsys, "selftest")
    assert code == 0
    assert "all 12 checks passed" in out
    assert "32π²" in out and "SUPPORTED" in out
    assert "NOT SUPPORTED (deviates by factor π" in out
    pass_lines = [l for l in out.splitlines() if l.startswith("PASS ")]
    assert len(pass_lines) == 12


def test_selftest_json_document(capsys):
    code, out, _ = _run(capsys, "selftest", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    assert len(doc["checks"]) == 12
    assert doc["metadata"]["subcommand"] == "selftest"


def test_selftest_loosened_tolerance_still_passes(capsys):
    code, _, _ = _run(capsys, "selftest", "--rel-tol", "1e-4")
    assert code == 0


def test_selftest_rejects_out_of_range_tolerance(capsys):
    code, _, err = _run(capsys, "selftest", "--rel-tol", "1e-1")
    assert code == 2
    assert "rel_tol" in err


def test_missing_atom_file_is_a_usage_error(capsys):
    code, _, err = _run(
        capsys, "mirror", "--atom", "/nope/missing.yaml",
        "--plate", "conducting", "--grid", "1:2:5",
    )
    assert code == 2
    assert "/nope/missing.yaml" in err


def test_malformed_grid_is_a_usage_error(capsys):
    code, _, err = _run(
        capsys, "mirror", "--atom", DIA, "--plate", "conducting", "--grid", "5:1:9",
    )
    assert code == 2
    assert "grid" in err


def test_numerical_failure_maps_to_exit_three(capsys, monkeypatch):
    def explode(*args, **kwargs):
        raise ConvergenceError(QuadratureResult(0.0, 1.0, 15), 1e-10)

    monkeypatch.setattr("vdwcp.cli.mirror_curve", explode)
    code, _, err = _run(
        capsys, "mirror", "--atom", DIA, "--plate", "conducting", "--grid", "1:2:5",
    )
    assert code == 3
    assert "numerical failure" in err


def test_output_file_is_byte_deterministic(tmp_path, capsys):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    argv = ["pair", "--atom", ELEC, "--atom-b", DIA, "--grid", "0.01:10:9"]
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes().startswith(b"# engine: vdwcp")


def test_module_entry_point_runs_selftest():
    proc = subprocess.run(
        [sys.executable, "-m", "vdwcp", "selftest", "--format", "json",
         "--rel-tol", "1e-8"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["all_passed"] is True


def test_version_flag():
    proc = subprocess.run(
        [sys.executable, "-m", "vdwcp", "--version"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "vdwcp 0.1.0"
