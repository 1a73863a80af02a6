"""Command-line behaviors: export, validate, converge, bench."""

import csv
import json
import math

import numpy as np
import pytest

from gridsplines.basis import SplineKind, derive_beta
from gridsplines.cli import FUNCTIONS, main, run_convergence, run_validation
from gridsplines.exact import RationalPolynomial, rational_from_str
from gridsplines.field import GridField, save_field


def test_export_json_roundtrips_to_exact_family(tmp_path):
    out = tmp_path / "beta54.json"
    assert main(["export", "--n", "5", "--q", "4", "--out", str(out)]) == 0
    records = json.loads(out.read_text())
    beta = derive_beta(SplineKind(5, 4))
    assert [rec["i"] for rec in records] == [-1, 0, 1, 2]
    for rec in records:
        rebuilt = RationalPolynomial([rational_from_str(c) for c in rec["coeffs_exact"]])
        assert rebuilt == beta.poly(rec["i"])


def test_export_outer_rows_vanish_for_linear_kind(tmp_path):
    out = tmp_path / "beta14.json"
    assert main(["export", "--n", "1", "--q", "4", "--out", str(out)]) == 0
    records = json.loads(out.read_text())
    assert records[0]["coeffs_exact"] == []
    assert records[3]["coeffs_exact"] == []
    assert records[0]["coeffs_horner"] == []


def test_export_rejects_invalid_kind(tmp_path, capsys):
    rc = main(["export", "--n", "7", "--q", "4", "--out", str(tmp_path / "x.json")])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_export_surfaces_path_errors(tmp_path, capsys):
    rc = main(["export", "--n", "5", "--q", "4", "--out", str(tmp_path / "no" / "dir" / "x.json")])
    assert rc == 2
    assert "no/dir" in capsys.readouterr().err.replace("\\", "/")


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_export_is_deterministic(tmp_path, fmt):
    a = tmp_path / f"a.{fmt}"
    b = tmp_path / f"b.{fmt}"
    for path in (a, b):
        assert main(["export", "--n", "5", "--q", "6", "--out", str(path), "--format", fmt]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_export_csv_columns(tmp_path):
    out = tmp_path / "beta54.csv"
    assert main(["export", "--n", "5", "--q", "4", "--out", str(out), "--format", "csv"]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "q", "i", "coeffs_exact", "coeffs_horner"]
    assert len(rows) == 5


def test_validate_passes(capsys):
    assert main(["validate", "--max-n", "5", "--max-q", "6"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "checks passed" in out


def test_validate_inject_defect_fails(capsys):
    assert main(["validate", "--max-n", "3", "--max-q", "4", "--inject-defect"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_run_validation_full_supported_range():
    report = run_validation(19, 12)
    assert report.ok, str(report)
    names = [name for name, _, _ in report.checks]
    assert any("closed-form" in name for name in names)
    assert any("(19,12)" in name for name in names)
    assert any("route agreement" in name for name in names)


def test_converge_constant_function(tmp_path):
    out = tmp_path / "c.csv"
    rc = main(
        [
            "converge",
            "--function", "constant",
            "--kind", "3,4",
            "--h-coarse", "1/8",
            "--h-fine", "1/16",
            "--samples", "50",
            "--out", str(out),
        ]
    )
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["kind", "h", "max_error", "observed_order"]
    assert len(rows) == 3
    for row in rows[1:]:
        assert float(row[2]) <= 1e-13


def test_converge_csv_deterministic(tmp_path):
    args = [
        "converge",
        "--function", "sin",
        "--kind", "5,4",
        "--h-coarse", "1/8",
        "--h-fine", "1/32",
        "--samples", "100",
        "--seed", "7",
    ]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_converge_order_for_sin():
    rows = run_convergence(FUNCTIONS["sin"], 1, [(5, 4)], [1 / 16, 1 / 32, 1 / 64], 400, seed=3)
    final = rows[-1]
    assert final.observed_order == pytest.approx(3.0, abs=0.3)


def test_wider_stencil_is_more_accurate():
    rows = run_convergence(FUNCTIONS["sin"], 1, [(5, 4), (5, 6)], [1 / 64], 400, seed=3)
    errors = {row.kind: row.max_error for row in rows}
    assert errors[(5, 6)] < errors[(5, 4)]


def test_converge_rejects_unknown_function(capsys):
    with pytest.raises(SystemExit):
        main(["converge", "--function", "nope"])
    assert "invalid choice" in capsys.readouterr().err


def test_bench_reports_kernels(capsys):
    rc = main(
        ["bench", "--dims", "2", "--n", "3", "--q", "4", "--grid", "8", "--points", "64", "--seed", "3"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "generic" in out
    assert "unrolled" in out
    assert "bitwise identical: True" in out
    assert "evals/s" in out


def test_bench_generic_only_for_wide_stencil(capsys):
    rc = main(
        ["bench", "--dims", "1", "--n", "5", "--q", "6", "--grid", "16", "--points", "32", "--seed", "3"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "unrolled" not in out


def test_bench_narrow_stencil_outpaces_wide_one():
    # 64 terms per evaluation versus 216: the q = 4 kind must be faster
    from gridsplines.cli import run_benchmark

    rng = np.random.default_rng(1)
    field = GridField(rng.standard_normal((16, 16, 16)), h=(1.0, 1.0, 1.0))
    points = rng.uniform(0.0, 16.0, size=(500, 3))
    fast = run_benchmark(field, SplineKind(5, 4), points)
    slow = run_benchmark(field, SplineKind(5, 6), points)
    assert (
        fast["kernels"]["generic"]["evals_per_second"]
        > slow["kernels"]["generic"]["evals_per_second"]
    )


def test_bench_consumes_field_container(tmp_path, capsys):
    rng = np.random.default_rng(0)
    field = GridField(rng.standard_normal((12, 12)), h=(0.5, 0.5))
    path = tmp_path / "field.gfd"
    save_field(field, path)
    rc = main(["bench", "--n", "3", "--q", "4", "--points", "32", "--field", str(path)])
    assert rc == 0
    assert "12x12" in capsys.readouterr().out


def test_catalog_functions_are_unit_periodic():
    for name, func in FUNCTIONS.items():
        for x in (0.13, 0.77):
            a = func((x, x))
            b = func((x + 1.0, x))
            assert math.isclose(a, b, rel_tol=0, abs_tol=1e-12), name
