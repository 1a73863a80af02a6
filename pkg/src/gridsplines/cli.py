"""Command-line surface: coefficient export, validation runs, convergence studies, benchmarks.

The consumers are batch scripts and developers; every command is
non-interactive, seeds its randomness, and exits nonzero on failure.
"""

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from .basis import (
    MAX_NODES,
    MAX_ORDER,
    BetaFamily,
    SplineKind,
    ValidationReport,
    alpha_closed_form,
    derive_alpha,
    derive_beta,
    derive_beta_direct,
    export_records,
    validate_family,
)
from .errors import InvalidKind, InvalidOrder, OutOfDomain
from .exact import RationalPolynomial, rational_from_str
from .field import PERIODIC, GridField, evaluate, load_field


@dataclass
class ConvergenceRow:
    """One measurement of a convergence study."""

    kind: tuple
    h: float
    max_error: float
    observed_order: "float | None" = None


def _fn_constant(point):
    return 0.75


def _fn_sin(point):
    return math.sin(2.0 * math.pi * point[0])


def _fn_sinprod(point):
    out = 1.0
    for x in point:
        out *= math.sin(2.0 * math.pi * x)
    return out


def _fn_fourier(point):
    out = 0.0
    for j, x in enumerate(point):
        out += 0.6**j * math.sin(2.0 * math.pi * x + 0.3 * (j + 1))
        out += 0.2 * 0.5**j * math.cos(4.0 * math.pi * x - 0.1 * j)
    return out


FUNCTIONS = {
    "constant": _fn_constant,
    "sin": _fn_sin,
    "sinprod": _fn_sinprod,
    "fourier": _fn_fourier,
}


def run_validation(max_n: int, max_q: int, inject_defect: bool = False) -> ValidationReport:
    """Exact invariants for every valid kind in range, plus the closed-form check.

    ``inject_defect`` perturbs the first derived family before checking; it
    exists so the failure path of the harness can itself be tested.
    """
    checks = []
    for n in range(1, min(max_n, MAX_ORDER) + 1, 2):
        family = derive_alpha(n)
        bad = [
            (i, l)
            for i in (0, 1)
            for l in range(family.m + 1)
            if alpha_closed_form(n, l, i) != family.polys[i][l]
        ]
        checks.append((f"alpha(n={n}) closed-form equivalence", not bad, f"(i, l) {bad}" if bad else ""))

    pending_defect = inject_defect
    for q in range(4, min(max_q, MAX_NODES) + 1, 2):
        for n in range(1, min(2 * q - 3, max_n, MAX_ORDER) + 1, 2):
            kind = SplineKind(n, q)
            beta = derive_beta(kind)
            if pending_defect:
                polys = list(beta.polys)
                polys[beta.g] = polys[beta.g] + RationalPolynomial.monomial(1)
                beta = BetaFamily(n=beta.n, q=beta.q, polys=tuple(polys))
                pending_defect = False
            report = validate_family(beta)
            checks.extend(report.checks)
            routes_agree = derive_beta_direct(kind).polys == beta.polys
            checks.append((f"({n},{q}) derivation route agreement", routes_agree, ""))
    return ValidationReport(checks=checks)


def run_convergence(func, dims: int, kinds, spacings, samples: int, seed: int) -> list:
    """Max interpolation error of ``func`` over random points, per kind and spacing."""
    rows = []
    for n, q in kinds:
        kind = SplineKind(n, q)
        prev = None
        for h in spacings:
            nodes = int(round(1.0 / h))
            if abs(nodes * h - 1.0) > 1e-12:
                raise ValueError(f"spacing {h} does not divide the unit period")
            field = GridField.sample(func, (nodes,) * dims, h, PERIODIC)
            rng = np.random.default_rng(seed)
            points = rng.random((samples, dims))
            err = 0.0
            for p in points:
                p = tuple(p)
                err = max(err, abs(evaluate(field, p, kind) - func(p)))
            order = None
            if prev is not None and err > 0.0 and prev > 0.0:
                order = math.log2(prev / err)
            rows.append(ConvergenceRow(kind=(n, q), h=float(h), max_error=err, observed_order=order))
            prev = err
    return rows


def write_convergence_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["kind", "h", "max_error", "observed_order"])
    for row in rows:
        writer.writerow(
            [
                f"({row.kind[0]},{row.kind[1]})",
                repr(row.h),
                repr(row.max_error),
                "" if row.observed_order is None else repr(row.observed_order),
            ]
        )


def run_benchmark(field: GridField, kind: SplineKind, points, warmup: int = 200):
    """Time the evaluation kernels on a fixed workload.

    Returns a dict per kernel with evaluations/second and mean ns/evaluation;
    when the unrolled q = 4 kernel exists its results are compared bitwise
    against the generic kernel on the same points.
    """
    kernels = ["generic"]
    if kind.q == 4:
        kernels.append("unrolled")
    evaluate(field, tuple(points[0]), kind)  # derive the family outside the timed loop
    report = {"kernels": {}, "bitwise_identical": None}
    results = {}
    for kernel in kernels:
        for p in points[: min(warmup, len(points))]:
            evaluate(field, tuple(p), kind, kernel=kernel)
        out = []
        start = time.perf_counter()
        for p in points:
            out.append(evaluate(field, tuple(p), kind, kernel=kernel))
        elapsed = time.perf_counter() - start
        results[kernel] = out
        report["kernels"][kernel] = {
            "evals_per_second": len(points) / elapsed,
            "ns_per_eval": 1e9 * elapsed / len(points),
        }
    if len(kernels) == 2:
        report["bitwise_identical"] = results["generic"] == results["unrolled"]
    return report


def _parse_kind(text: str):
    try:
        n_text, q_text = text.split(",")
        return int(n_text), int(q_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'n,q', got {text!r}") from exc


def _parse_spacing(text: str) -> float:
    return float(rational_from_str(text))


def cmd_export(args) -> int:
    kind = SplineKind(args.n, args.q)
    records = export_records(derive_beta(kind))
    with open(args.out, "w", newline="") as fh:
        if args.format == "json":
            json.dump(records, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "q", "i", "coeffs_exact", "coeffs_horner"])
            for rec in records:
                writer.writerow(
                    [
                        rec["n"],
                        rec["q"],
                        rec["i"],
                        ";".join(rec["coeffs_exact"]),
                        ";".join(repr(v) for v in rec["coeffs_horner"]),
                    ]
                )
    print(f"wrote {len(records)} records for kind {kind} to {args.out}")
    return 0


def cmd_validate(args) -> int:
    report = run_validation(args.max_n, args.max_q, inject_defect=args.inject_defect)
    print(report)
    total = len(report.checks)
    failed = len(report.failures())
    print(f"{total - failed}/{total} checks passed")
    return 0 if report.ok else 1


def cmd_converge(args) -> int:
    func = FUNCTIONS[args.function]
    spacings = []
    h = _parse_spacing(args.h_coarse)
    h_fine = _parse_spacing(args.h_fine)
    while h >= h_fine * (1.0 - 1e-12):
        spacings.append(h)
        h /= 2.0
    kinds = args.kind or [(3, 4), (5, 4)]
    rows = run_convergence(func, args.dims, kinds, spacings, args.samples, args.seed)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_convergence_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        write_convergence_csv(rows, sys.stdout)
    return 0


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.field:
        field = load_field(args.field)
    else:
        dims = (args.grid,) * args.dims
        field = GridField(rng.standard_normal(dims), h=args.h, boundary=PERIODIC)
    kind = SplineKind(args.n, args.q)
    extents = [d * hj for d, hj in zip(field.dims, field.h)]
    points = rng.uniform(0.0, extents, size=(args.points, field.ndim))
    report = run_benchmark(field, kind, points)
    grid_text = "x".join(str(d) for d in field.dims)
    print(f"kind {kind}, grid {grid_text}, {len(points)} evaluations")
    for kernel, stats in report["kernels"].items():
        print(
            f"  {kernel:8s} {stats['evals_per_second']:12.0f} evals/s"
            f"  {stats['ns_per_eval']:10.0f} ns/eval"
        )
    if report["bitwise_identical"] is not None:
        print(f"  unrolled vs generic bitwise identical: {report['bitwise_identical']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsplines",
        description="Derive, validate, and benchmark high-order grid-spline interpolation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("export", help="dump exact and Horner coefficients for one kind")
    p.add_argument("--n", type=int, required=True, help="spline order (odd)")
    p.add_argument("--q", type=int, required=True, help="nodes per axis (even)")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("validate", help="run the exact invariant suite over a range of kinds")
    p.add_argument("--max-n", type=int, default=MAX_ORDER)
    p.add_argument("--max-q", type=int, default=MAX_NODES)
    p.add_argument("--inject-defect", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("converge", help="empirical order-of-accuracy study on the unit torus")
    p.add_argument("--function", choices=sorted(FUNCTIONS), default="sin")
    p.add_argument("--dims", type=int, default=1)
    p.add_argument("--kind", type=_parse_kind, action="append", help="spline kind as 'n,q' (repeatable)")
    p.add_argument("--h-coarse", default="1/16", help="coarsest spacing, e.g. 1/16")
    p.add_argument("--h-fine", default="1/256", help="finest spacing; sweep halves down to it")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("bench", help="evaluation throughput on a seeded workload")
    p.add_argument("--dims", type=int, default=3)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--grid", type=int, default=32, help="nodes per axis for the synthetic field")
    p.add_argument("--h", type=float, default=1.0, help="grid constant for the synthetic field")
    p.add_argument("--points", type=int, default=20000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--field", help="evaluate a saved field container instead of a synthetic one")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidKind, InvalidOrder, OutOfDomain, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
