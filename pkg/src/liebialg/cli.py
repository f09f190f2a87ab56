"""Command line front end: verification, cohomology tables, BV reports,
scenario emission and execution.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or parse errors.  Reports render as aligned text by default and
as canonical JSON with --json; identical inputs give byte-identical
output.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .algebra import AlgebraError, Bialgebra, involutivity_defect, \
    validate_structures
from .cochain import (Cochain, CochainContext, CochainError,
                      NonPointedConeError, bv_operator, cohomology,
                      format_cochain, format_monomial, kernel_complex_check,
                      laplacian_eigen, laplacian_on_generators,
                      weight_cohomology)
from .linalg import ONE, NotSemisimpleError, format_scalar
from .scenarios import (Scenario, TruncationError, rcom, rcom_quotient_l1,
                        rcom_quotient_theta, rpcom, run_scenario)
from .serialize import (AlgebraFileError, canonical_json, dumps,
                        fingerprint, load)

VERSION = "0.1.0"


@dataclass
class Report:
    version: str
    fingerprint: str
    checks: list[dict[str, Any]] = field(default_factory=list)
    tables: list[dict[str, Any]] = field(default_factory=list)

    def add_check(self, name: str, ok: bool, detail: str) -> None:
        self.checks.append({"name": name, "ok": ok, "detail": detail})

    def add_table(self, title: str, columns: Sequence[str],
                  rows: Sequence[Sequence[str]], truncation: str) -> None:
        self.tables.append({"title": title, "columns": list(columns),
                            "rows": [list(r) for r in rows],
                            "truncation": truncation})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)


def render_json(report: Report) -> str:
    doc = {"version": report.version, "fingerprint": report.fingerprint,
           "checks": report.checks, "tables": report.tables}
    return canonical_json(doc) + "\n"


def render_text(report: Report) -> str:
    lines = [f"liebialg {report.version}",
             f"fingerprint {report.fingerprint}"]
    if report.checks:
        lines.append("checks:")
        for c in report.checks:
            mark = "pass" if c["ok"] else "FAIL"
            lines.append(f"  [{mark}] {c['name']}: {c['detail']}")
    for table in report.tables:
        lines.append(f"table {table['title']} "
                     f"(truncation: {table['truncation']})")
        columns = table["columns"]
        rows = table["rows"]
        widths = [len(h) for h in columns]
        for row in rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        lines.append("  " + "  ".join(
            h.ljust(w) for h, w in zip(columns, widths)).rstrip())
        for row in rows:
            lines.append("  " + "  ".join(
                cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(report: Report, as_json: bool) -> None:
    text = render_json(report) if as_json else render_text(report)
    sys.stdout.write(text)


def _parse_degrees(text: str) -> list[int]:
    head, sep, tail = text.partition("..")
    try:
        if sep:
            a, b = int(head), int(tail)
        else:
            a = b = int(head)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"degree range {text!r} is not 'a..b'")
    if b < a:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return list(range(a, b + 1))


def _parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"weight {text!r} is not a comma list of integers")


# -- verify ------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    b = load(args.file)
    validation = validate_structures(b)
    report = Report(VERSION, fingerprint(b))
    for r in validation.results:
        report.add_check(r.name, r.ok, r.detail or "ok")
    defects = involutivity_defect(b)
    if defects:
        first = b.algebra.basis[defects[0][0]].name
        involutive = f"no (bracket o cobracket nonzero at {first})"
    else:
        involutive = "yes"
    report.add_table("properties", ["property", "value"],
                     [["label", b.algebra.label],
                      ["dimension", str(b.dim)],
                      ["shift", str(b.shift)],
                      ["involutive", involutive]],
                     "none")
    _emit(report, args.json)
    return 0 if validation.ok else 1


# -- cohomology --------------------------------------------------------------


def cmd_cohomology(args: argparse.Namespace) -> int:
    b = load(args.file)
    ctx = CochainContext.from_bialgebra(b)
    report = Report(VERSION, fingerprint(b))
    degrees = args.deg
    failed = False
    if args.weights:
        rows = []
        for d in degrees:
            for w in args.weights:
                label = f"({d}, {','.join(str(x) for x in w)})"
                try:
                    block = weight_cohomology(ctx, d, w)
                except (TruncationError, NonPointedConeError,
                        CochainError) as exc:
                    report.add_check(f"block {label}", False, str(exc))
                    failed = True
                    continue
                reps = "; ".join(format_cochain(ctx, r)
                                 for r in block.representatives) or "-"
                rows.append([str(d), ",".join(str(x) for x in w),
                             str(block.dim), reps])
        report.add_table(
            "betti", ["deg", "weight", "betti", "representatives"], rows,
            f"deg {degrees[0]}..{degrees[-1]}, listed weights only")
    else:
        rows = []
        for d in degrees:
            for s in range(args.s_max + 1):
                try:
                    block = cohomology(ctx, d, s)
                except (TruncationError, CochainError) as exc:
                    report.add_check(f"block ({d}, {s})", False, str(exc))
                    failed = True
                    continue
                reps = "; ".join(format_cochain(ctx, r)
                                 for r in block.representatives) or "-"
                rows.append([str(d), str(s), str(block.dim), reps])
        report.add_table(
            "betti", ["deg", "s", "betti", "representatives"], rows,
            f"deg {degrees[0]}..{degrees[-1]}, s <= {args.s_max}")
    _emit(report, args.json)
    return 1 if failed else 0


# -- bv report ---------------------------------------------------------------


def _bv_squared(ctx: CochainContext, degrees: Sequence[int], s_max: int
                ) -> tuple[bool, str]:
    for d in degrees:
        for s in range(s_max + 1):
            for mono in ctx.block_basis(d, s):
                u = Cochain(((mono, ONE),))
                if not bv_operator(ctx, bv_operator(ctx, u)).is_zero():
                    return False, ("B^2 nonzero on "
                                   + format_monomial(ctx, mono))
    return True, "B^2 = 0 on the window"


def cmd_bv_report(args: argparse.Namespace) -> int:
    b = load(args.file)
    ctx = CochainContext.from_bialgebra(b)
    report = Report(VERSION, fingerprint(b))
    degrees = args.deg
    window = f"deg {degrees[0]}..{degrees[-1]}, s <= {args.s_max}"

    defects = involutivity_defect(b)
    involutive = "yes" if not defects else \
        "no (first defect at " + b.algebra.basis[defects[0][0]].name + ")"

    if not b.cobracket:
        report.add_check("b_zero", True,
                         "cobracket is trivial, B = 0 identically")
        report.add_table("properties", ["property", "value"],
                         [["involutive", involutive],
                          ["delta", "0 (B = 0)"]], "none")
        _emit(report, args.json)
        return 0

    ok, detail = _bv_squared(ctx, degrees, args.s_max)
    report.add_check("b_squared", ok, detail)

    try:
        matrix = laplacian_on_generators(ctx)
        rows = []
        for k in range(b.dim):
            entries = [(i, matrix.get(i, k)) for i in range(b.dim)
                       if matrix.get(i, k)]
            value = " + ".join(
                f"{format_scalar(c)}*{b.algebra.basis[i].name}"
                for i, c in entries) or "0"
            rows.append([b.algebra.basis[k].name, value])
        report.add_table("delta on generators", ["generator", "delta"],
                         rows, "none")
    except CochainError as exc:
        report.add_check("delta_generators", False, str(exc))

    if ctx.shift == 0:
        eigen_rows = []
        for d in degrees:
            for s in range(args.s_max + 1):
                if not ctx.block_basis(d, s):
                    continue
                try:
                    block = laplacian_eigen(ctx, d, s)
                    text = ", ".join(
                        f"{format_scalar(lam)}:{mult}"
                        for lam, mult in block.pieces) or "empty"
                except NotSemisimpleError as exc:
                    text = f"not semisimple ({exc})"
                eigen_rows.append([str(d), str(s), text])
        report.add_table("delta eigenvalues",
                         ["deg", "s", "eigenvalue:multiplicity"],
                         eigen_rows, window)

        kd_rows = []
        kd_ok = True
        for s in range(args.s_max + 1):
            for d, full, kernel in kernel_complex_check(ctx, degrees, s):
                match = "=" if full == kernel else "!="
                kd_ok = kd_ok and full == kernel
                kd_rows.append([str(d), str(s), str(full), str(kernel),
                                match])
        report.add_check("ker_delta_quasi_iso", kd_ok,
                         "Betti(ker delta) matches full Betti" if kd_ok
                         else "Betti(ker delta) differs from full Betti")
        report.add_table("ker delta vs full betti",
                         ["deg", "s", "full", "ker", "cmp"], kd_rows,
                         window)
    else:
        report.add_table(
            "delta eigenvalues", ["status"],
            [[f"skipped: delta shifts blocks at shift {ctx.shift}"]],
            window)

    report.add_table("properties", ["property", "value"],
                     [["involutive", involutive]], "none")
    _emit(report, args.json)
    return 0 if report.ok else 1


# -- scenario ----------------------------------------------------------------


def _build_scenario(args: argparse.Namespace) -> Scenario:
    if args.kind in ("rcom", "rcom-l1"):
        if not args.dims:
            raise ValueError(f"{args.kind} needs --dims")
        counts = [int(x) for x in args.dims.split(",")]
        dims = [(d, c) for d, c in enumerate(counts) if c]
        return rcom(dims) if args.kind == "rcom" else \
            rcom_quotient_l1(dims)
    if args.kind == "rcom-theta":
        if args.n is None or not args.theta:
            raise ValueError("rcom-theta needs --n and --theta")
        return rcom_quotient_theta(args.n,
                                   tuple(int(x)
                                         for x in args.theta.split(",")))
    if args.dim is None or args.trunc is None:
        raise ValueError("rpcom needs --dim and --trunc")
    return rpcom(args.dim, args.trunc)


def cmd_scenario(args: argparse.Namespace) -> int:
    try:
        scn = _build_scenario(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.emit:
        sys.stdout.write(dumps(scn.bialgebra))
        return 0
    validation = run_scenario(scn)
    report = Report(VERSION, fingerprint(scn.bialgebra))
    for r in validation.results:
        report.add_check(r.name, r.ok, r.detail or "ok")
    report.add_table("scenario", ["field", "value"],
                     [["label", scn.label],
                      ["dimension", str(scn.bialgebra.dim)],
                      ["shift", str(scn.bialgebra.shift)]], "none")
    _emit(report, args.json)
    return 0 if validation.ok else 1


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liebialg",
        description="exact Chevalley-Eilenberg computations for shifted "
                    "graded Lie bialgebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run structural checks on a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", help="Betti table with representatives")
    p.add_argument("file")
    p.add_argument("--deg", type=_parse_degrees, default=list(range(0, 3)),
                   metavar="A..B")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--s-max", type=int, default=4)
    group.add_argument("--weights", type=_parse_weight, nargs="+",
                       metavar="W")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("bv-report", help="BV operator and Laplacian report")
    p.add_argument("file")
    p.add_argument("--deg", type=_parse_degrees, default=list(range(-2, 5)),
                   metavar="A..B")
    p.add_argument("--s-max", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bv_report)

    p = sub.add_parser("scenario", help="emit or run a named scenario")
    p.add_argument("kind", choices=["rcom", "rcom-l1", "rcom-theta",
                                    "rpcom"])
    p.add_argument("--dims", help="per-degree dimensions, e.g. 1,1,1")
    p.add_argument("--n", type=int, help="line pairs for rcom-theta")
    p.add_argument("--theta", help="involution pairing, e.g. 2,1")
    p.add_argument("--dim", type=int, help="module dimension for rpcom")
    p.add_argument("--trunc", type=int, help="loop window for rpcom")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--emit", action="store_true")
    mode.add_argument("--run", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scenario)
    return parser


def _glue_ranges(argv: Sequence[str]) -> list[str]:
    # argparse reads "-1..4" as an option; fold "--deg -1..4" into one token
    out: list[str] = []
    glue = False
    for a in argv:
        if glue:
            out[-1] += "=" + a
            glue = False
        elif a == "--deg":
            out.append(a)
            glue = True
        else:
            out.append(a)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(
        _glue_ranges(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except AlgebraFileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except AlgebraError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
