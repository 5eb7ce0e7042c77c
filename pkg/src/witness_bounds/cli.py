"""Command-line front end.

    witness-bounds bound STATE.json
    witness-bounds sweep --family pure2x2 --a-min 0 --a-max 2 --steps 201 --out fig1.csv
    witness-bounds selftest --seed 42 --samples 200

``bound`` exits 0 when entanglement is certified, 1 when inconclusive and 2
on bad input. ``sweep`` and ``selftest`` exit 0 on success and 2 on bad
arguments; ``selftest`` exits 1 if any suite fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as B
from . import states as st
from .errors import WitnessError
from .properties import run_all
from .stateio import read_state

EXIT_ENTANGLED = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2

FAMILIES = {
    "pure2x2": (st.pure_family_2x2, False),
    "mixed2x2": (st.pure_family_2x2, True),
    "pure3x3": (st.pure_family_3x3, False),
    "mixed3x3": (st.pure_family_3x3, True),
}
CSV_HEADER = ["a", "bound_thm2", "bound_thm4", "bound_thm5"]


def fmt(value) -> str:
    """12 significant digits, shortest form, no negative zero; ``''`` for None."""
    if value is None:
        return ""
    value = float(value)
    if value == 0:
        return "0"
    return format(value, ".12g")


def sweep_rows(family: str, x, a_min: float, a_max: float, steps: int) -> list[list]:
    """Raw bound values on the inclusive grid ``linspace(a_min, a_max, steps)``.

    Each row is ``[a, thm2, thm4, thm5]`` with ``None`` for columns that do
    not apply to the family.
    """
    if family not in FAMILIES:
        raise WitnessError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    make_state, mixed = FAMILIES[family]
    if mixed and x is None:
        raise WitnessError(f"family {family} needs --x")
    if not mixed and x is not None:
        raise WitnessError(f"family {family} is pure; --x is not allowed")
    if not (math.isfinite(a_min) and math.isfinite(a_max)) or not a_min < a_max:
        raise WitnessError(f"need finite a-min < a-max, got [{a_min}, {a_max}]")
    if a_min < 0:
        raise WitnessError(f"family parameter must be >= 0, got a-min = {a_min}")
    if steps < 2:
        raise WitnessError(f"need at least 2 steps, got {steps}")
    rows = []
    for a in np.linspace(a_min, a_max, steps):
        psi = make_state(float(a))
        if mixed:
            rho = st.isotropic_mix(x, psi)
            thm2 = None
        else:
            rho = psi.density()
            thm2 = B.bound_pure(psi)
        thm5 = B.bound_qubit(rho) if (rho.d1, rho.d2) == (2, 2) else None
        rows.append([float(a), thm2, B.bound_mixed(rho), thm5])
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def render_report(report: B.BoundReport) -> str:
    lines = [
        f"d1: {report.d1}",
        f"d2: {report.d2}",
        f"purity: {fmt(report.purity)}",
        f"bound_pure: {fmt(report.bound_pure) if report.bound_pure is not None else 'n/a'}",
        f"bound_mixed: {fmt(report.bound_mixed)}",
        f"bound_qubit: {fmt(report.bound_qubit) if report.bound_qubit is not None else 'n/a'}",
        f"best: {fmt(report.best)}",
        f"verdict: {'entangled' if report.entangled else 'inconclusive'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_bound(args) -> int:
    try:
        rho = read_state(args.path)
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except WitnessError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = B.evaluate(rho)
    sys.stdout.write(render_report(report))
    return EXIT_ENTANGLED if report.entangled else EXIT_INCONCLUSIVE


def cmd_sweep(args) -> int:
    try:
        rows = sweep_rows(args.family, args.x, args.a_min, args.a_max, args.steps)
    except WitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(render_csv(rows))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return 0


def cmd_selftest(args) -> int:
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    results = run_all(args.seed, args.samples)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.name:<{width}}  {r.passed}/{r.total}  worst={r.worst:.3e}  {status}")
    n_ok = sum(r.ok for r in results)
    print(f"suites passed: {n_ok}/{len(results)}")
    return 0 if n_ok == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="witness-bounds",
        description="Lower bounds on the optimal-witness entanglement measure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate all applicable bounds on a state file")
    p.add_argument("path", type=Path)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="sweep a state family and write a CSV")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--x", type=float, default=None, help="noise weight (mixed families only)")
    p.add_argument("--a-min", type=float, default=0.0)
    p.add_argument("--a-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the randomized invariant suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
