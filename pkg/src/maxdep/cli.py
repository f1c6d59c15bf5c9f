"""Command-line interface.

    maxdep estimate --input data.csv [--locations A,B,C]
                    [--subsets pairs|full|all|A+B,A+B+C]
                    [--bootstrap N --level 0.95] [--seed S]
                    [--ties midrank|ecdf] [--drop-incomplete]
                    [--format json|csv] [--output PATH]
    maxdep theory   --alpha A --k K [--format json|csv]
    maxdep simulate --alpha A --k K --n N --seed S --output PATH

Exit codes: 0 success, 1 data or runtime failure (I/O, parse,
validation), 2 usage error (bad flags or flag values).

Input CSV: first row holds location labels, each later row one block of
maxima. Comma-delimited files use dot decimals; semicolon-delimited
files use comma decimals (both "0.4" and "0,4" are read as 0.4 there).
Empty cells are missing values: an error unless --drop-incomplete, in
which case the dropped-row count goes to stderr. How blocks are formed
(for example taking the calendar-year maximum of quarterly readings) is
up to the data producer; this tool never aggregates rows.

JSON report values are printed with 17 significant digits and parse
back to the exact doubles the library produced; the human-readable CSV
report rounds to 4 decimals. Simulated data CSVs use shortest
round-trip floats, so estimating a written file reproduces the
in-memory estimates bit for bit.
"""
from __future__ import annotations

import argparse
import sys
from typing import Iterable

import numpy as np

from maxdep.core import (
    BlockMaximaTable,
    DependenceReport,
    BootstrapInterval,
    SubsetIndex,
    enumerate_subsets,
    validate_table,
)
from maxdep.errors import (
    MaxdepError,
    MissingValueError,
    ParseError,
    RangeError,
)
from maxdep.estimators import (
    MIN_BOOTSTRAP_REPLICATES,
    EstimationOptions,
    TIE_FIRST_OCCURRENCE,
    TIE_MIDRANK,
    bootstrap_variogram,
    empirical_madogram,
    empirical_variogram,
    extremal_coefficient_from_madogram,
    rank_transform,
)
from maxdep.models import (
    MIN_ALPHA_CLOSED_FORM,
    LogisticModel,
    logistic_extremal_coefficients,
    logistic_variogram,
    madogram_from_tail_dependence,
)
from maxdep.simulate import (
    MIN_ALPHA_SIMULATION,
    SimulationSpec,
    default_labels,
    sample_matrix,
)

USAGE_ERROR = 2
DATA_ERROR = 1


class UsageError(Exception):
    """Flag values outside their documented domain."""


# ---------------------------------------------------------------------------
# CSV input

def _parse_rows(text: str) -> tuple[tuple[str, ...], list[list[float | None]]]:
    """Split CSV text into labels and float-or-missing cells.

    Delimiter rule: a ';' anywhere in the header line selects
    semicolon-delimited cells with comma decimals accepted; otherwise
    the file is comma-delimited with dot decimals.
    """
    lines = text.splitlines()
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input")
    delim = ";" if ";" in lines[0] else ","
    labels = tuple(cell.strip() for cell in lines[0].split(delim))
    if any(lab == "" for lab in labels):
        raise ParseError("empty location label in header", row=1)
    rows: list[list[float | None]] = []
    for r, line in enumerate(lines[1:], start=2):
        cells = line.split(delim)
        if len(cells) != len(labels):
            raise ParseError(
                f"expected {len(labels)} cells, found {len(cells)}; "
                "note that comma decimals are only accepted in "
                "semicolon-delimited files",
                row=r,
            )
        parsed: list[float | None] = []
        for c, cell in enumerate(cells, start=1):
            cell = cell.strip()
            if cell == "":
                parsed.append(None)
                continue
            if delim == ";":
                cell = cell.replace(",", ".")
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(f"not a number: {cell!r}", row=r, col=c) from None
        rows.append(parsed)
    return labels, rows


def read_table(path: str, drop_incomplete: bool = False) -> tuple[BlockMaximaTable, int]:
    """Parse a CSV file into a table, returning the dropped-row count."""
    with open(path, encoding="utf-8-sig") as fh:
        labels, rows = _parse_rows(fh.read())
    kept: list[list[float]] = []
    dropped = 0
    for r, row in enumerate(rows, start=2):
        missing = next((c for c, v in enumerate(row, start=1) if v is None), None)
        if missing is not None:
            if drop_incomplete:
                dropped += 1
                continue
            raise MissingValueError(row=r, col=missing)
        kept.append(row)  # type: ignore[arg-type]
    values = np.asarray(kept, dtype=np.float64).reshape(len(kept), len(labels))
    return validate_table(values, labels), dropped


def parse_csv(path: str, drop_incomplete: bool = False) -> BlockMaximaTable:
    """Parse a CSV file of block maxima into a validated table."""
    return read_table(path, drop_incomplete)[0]


# ---------------------------------------------------------------------------
# Output formatting

def _f17(x: float) -> str:
    return format(float(x), ".17g")


def _f4(x: float | None) -> str:
    return "" if x is None else format(float(x), ".4f")


def _json_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{pad}  "{k}": {_json_text(v, indent + 1).lstrip()}' for k, v in value.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{pad}  {_json_text(v, indent + 1).lstrip()}" for v in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _f17(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        out = "".join(c if c >= " " else f"\\u{ord(c):04x}" for c in out)
        return '"' + out + '"'
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _report_dict(rep: DependenceReport) -> dict:
    d: dict = {
        "subset": list(rep.subset.members),
        "labels": list(rep.labels),
        "v_hat": rep.v_hat,
    }
    if rep.madogram is not None:
        d["madogram"] = rep.madogram
        d["extremal_coefficient"] = rep.extremal_coefficient
    if rep.ci is not None:
        d["ci"] = {
            "lower": rep.ci.lower,
            "upper": rep.ci.upper,
            "level": rep.ci.level,
            "replicates": rep.ci.replicates,
        }
    return d


def _reports_csv(reports: list[DependenceReport]) -> str:
    lines = ["subset,labels,v_hat,madogram,extremal_coefficient,"
             "ci_lower,ci_upper,ci_level,ci_replicates"]
    for rep in reports:
        ci = rep.ci
        lines.append(",".join([
            "+".join(map(str, rep.subset.members)),
            "+".join(rep.labels),
            _f4(rep.v_hat),
            _f4(rep.madogram),
            _f4(rep.extremal_coefficient),
            _f4(ci.lower if ci else None),
            _f4(ci.upper if ci else None),
            _f4(ci.level if ci else None),
            str(ci.replicates) if ci else "",
        ]))
    return "\n".join(lines) + "\n"


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# estimate

def _resolve_locations(table: BlockMaximaTable, spec: str | None) -> BlockMaximaTable:
    if spec is None:
        return table
    wanted = [s.strip() for s in spec.split(",") if s.strip()]
    if len(wanted) < 2:
        raise UsageError("--locations needs at least two labels")
    missing = [w for w in wanted if w not in table.locations]
    if missing:
        raise MaxdepError(
            f"locations not found in input: {missing} (have {list(table.locations)})"
        )
    if len(set(wanted)) != len(wanted):
        raise UsageError("--locations lists a label twice")
    cols = [table.position(w) for w in wanted]
    return BlockMaximaTable(tuple(wanted), table.values[:, cols])


def _resolve_subsets(table: BlockMaximaTable, spec: str) -> list[SubsetIndex]:
    k = table.k
    if spec == "pairs":
        return [SubsetIndex(c) for c in _pairs(k)]
    if spec == "full":
        return [SubsetIndex(range(1, k + 1))]
    if spec == "all":
        return enumerate_subsets(k, 2)
    subsets = []
    for group in spec.split(","):
        labels = [s.strip() for s in group.split("+")]
        if any(lab == "" for lab in labels):
            raise UsageError(f"bad subset syntax: {group!r}")
        unknown = [lab for lab in labels if lab not in table.locations]
        if unknown:
            raise MaxdepError(
                f"subset {group!r} names unknown locations: {unknown}"
            )
        if len(set(labels)) < 2:
            raise UsageError(f"subset {group!r} needs at least two distinct locations")
        subsets.append(SubsetIndex(table.position(lab) + 1 for lab in labels))
    subsets.sort(key=SubsetIndex.sort_key)
    return subsets


def _pairs(k: int) -> Iterable[tuple[int, int]]:
    return ((a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1))


def _estimate_reports(table: BlockMaximaTable, subsets: list[SubsetIndex],
                      options: EstimationOptions, bootstrap: int | None,
                      level: float, seed: int) -> list[DependenceReport]:
    pseudo = rank_transform(table, options)
    reports = []
    for sub in subsets:
        v = empirical_variogram(pseudo, sub)
        nu = eps = None
        if sub.size == 2:
            nu = empirical_madogram(pseudo, sub)
            eps = extremal_coefficient_from_madogram(nu)
        ci = None
        if bootstrap is not None:
            lo, hi = bootstrap_variogram(table, sub, bootstrap, level, seed, options)
            ci = BootstrapInterval(lo, hi, level, bootstrap)
        labels = tuple(table.locations[p] for p in sub.positions())
        reports.append(DependenceReport(sub, labels, v, nu, eps, ci))
    return reports


def _cmd_estimate(args) -> int:
    if args.bootstrap is not None and args.bootstrap < MIN_BOOTSTRAP_REPLICATES:
        raise UsageError(f"--bootstrap must be >= {MIN_BOOTSTRAP_REPLICATES}")
    if not 0.0 < args.level < 1.0:
        raise UsageError("--level must be in (0, 1)")
    if args.seed < 0:
        raise UsageError("--seed must be >= 0")
    options = EstimationOptions(
        TIE_MIDRANK if args.ties == "midrank" else TIE_FIRST_OCCURRENCE
    )
    table, dropped = read_table(args.input, drop_incomplete=args.drop_incomplete)
    if dropped:
        print(f"maxdep: dropped {dropped} incomplete row(s)", file=sys.stderr)
    table = _resolve_locations(table, args.locations)
    subsets = _resolve_subsets(table, args.subsets)
    reports = _estimate_reports(
        table, subsets, options, args.bootstrap, args.level, args.seed
    )
    if args.format == "json":
        text = _json_text([_report_dict(r) for r in reports]) + "\n"
    else:
        text = _reports_csv(reports)
    _write_output(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# theory

def _cmd_theory(args) -> int:
    if not 0.0 < args.alpha <= 1.0:
        raise UsageError("--alpha must be in (0, 1]")
    if args.alpha < MIN_ALPHA_CLOSED_FORM:
        raise UsageError(f"--alpha must be >= {MIN_ALPHA_CLOSED_FORM:g}")
    if not 2 <= args.k <= 20:
        raise UsageError("--k must be in 2..20")
    model = LogisticModel(args.alpha, args.k)
    eps = logistic_extremal_coefficients(model)
    v = logistic_variogram(model)
    pair_eps = eps.value((1, 2))
    nu = madogram_from_tail_dependence(pair_eps)
    if args.format == "json":
        payload = {
            "alpha": float(args.alpha),
            "k": int(args.k),
            "variogram": v,
            "pairwise_madogram": nu,
            "pairwise_extremal_coefficient": pair_eps,
            "extremal_coefficients": [
                {"subset": list(s.members), "value": val} for s, val in eps.items()
            ],
        }
        text = _json_text(payload) + "\n"
    else:
        lines = ["quantity,subset,value"]
        lines.append(f"variogram,,{_f4(v)}")
        lines.append(f"pairwise_madogram,,{_f4(nu)}")
        lines.append(f"pairwise_extremal_coefficient,,{_f4(pair_eps)}")
        for s, val in eps.items():
            lines.append(f"extremal_coefficient,{'+'.join(map(str, s.members))},{_f4(val)}")
        text = "\n".join(lines) + "\n"
    _write_output(text, None)
    return 0


# ---------------------------------------------------------------------------
# simulate

def _cmd_simulate(args) -> int:
    if not MIN_ALPHA_SIMULATION <= args.alpha <= 1.0:
        raise UsageError(f"--alpha must be in [{MIN_ALPHA_SIMULATION:g}, 1] for simulation")
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.seed < 0:
        raise UsageError("--seed must be >= 0")
    spec = SimulationSpec(LogisticModel(args.alpha, args.k), args.n, args.seed)
    x = sample_matrix(spec)
    lines = [",".join(default_labels(args.k))]
    for row in x:
        lines.append(",".join(repr(float(v)) for v in row))
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# wiring

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maxdep",
        description="Dependence of block maxima at several locations: "
                    "estimation, closed forms, and simulation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate coefficients from a CSV of block maxima")
    est.add_argument("--input", required=True, help="CSV file: header of labels, one row per block")
    est.add_argument("--locations", help="comma-separated labels to keep, in order")
    est.add_argument("--subsets", default="pairs",
                     help="pairs | full | all | explicit list like A+B,A+B+C")
    est.add_argument("--bootstrap", type=int, default=None, metavar="N",
                     help=f"bootstrap replicates (>= {MIN_BOOTSTRAP_REPLICATES})")
    est.add_argument("--level", type=float, default=0.95, help="bootstrap interval level")
    est.add_argument("--seed", type=int, default=0, help="bootstrap master seed")
    est.add_argument("--ties", choices=["midrank", "ecdf"], default="midrank",
                     help="rank tie policy; ecdf scores ties by the plain empirical CDF")
    est.add_argument("--drop-incomplete", action="store_true",
                     help="drop rows with empty cells instead of failing")
    est.add_argument("--format", choices=["json", "csv"], default="json")
    est.add_argument("--output", help="output path (default: stdout)")
    est.set_defaults(func=_cmd_estimate)

    theo = sub.add_parser("theory", help="closed-form coefficients of the logistic model")
    theo.add_argument("--alpha", type=float, required=True, help="dependence parameter in (0, 1]")
    theo.add_argument("--k", type=int, required=True, help="number of locations (2..20)")
    theo.add_argument("--format", choices=["json", "csv"], default="json")
    theo.set_defaults(func=_cmd_theory)

    sim = sub.add_parser("simulate", help="write a CSV sampled from the logistic model")
    sim.add_argument("--alpha", type=float, required=True,
                     help=f"dependence parameter in [{MIN_ALPHA_SIMULATION:g}, 1]")
    sim.add_argument("--k", type=int, required=True, help="number of locations")
    sim.add_argument("--n", type=int, required=True, help="number of rows")
    sim.add_argument("--seed", type=int, default=0, help="sampling seed")
    sim.add_argument("--output", required=True, help="output path, or - for stdout")
    sim.set_defaults(func=_cmd_simulate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"maxdep: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (MaxdepError, OSError) as exc:
        print(f"maxdep: error: {exc}", file=sys.stderr)
        return DATA_ERROR


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
