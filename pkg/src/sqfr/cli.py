"""Command-line interface.

Subcommands: eval (dataset -> fairness report), simulate (scenario ->
dataset file), plotdata (dataset -> histogram/density series), fixtures
(print the builtin golden aggregates). Exit codes: 0 success, 1 I/O or
parse failure, 2 validation or configuration failure. Output is built in
full before anything is written, so a non-zero exit never leaves a partial
report behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, dataset as dataset_io, plotdata, report, scenarios
from .errors import ConfigError, DomainError, ParseError, ValidationError
from .measures import THRESHOLD_MODES

PRECISION_ENV = "SQFR_PRECISION"


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset file (.csv or .json)")
    p.add_argument("--group-col", default="group", help="CSV column with the group label")
    p.add_argument("--component-col", default="component",
                   help="CSV column with the quality component id")
    p.add_argument("--score-col", default="score", help="CSV column with the quality score")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True,
                      help="fail on any malformed row (default)")
    mode.add_argument("--lenient", dest="strict", action="store_false",
                      help="skip malformed rows with a warning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqfr",
        description="Demographic fairness measures for quality-score datasets.",
    )
    parser.add_argument("--version", action="version", version=f"sqfr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="compute fairness measures for a dataset")
    _add_input_flags(p_eval)
    p_eval.add_argument("--out", help="output file (default: stdout)")
    p_eval.add_argument("--format", choices=report.FORMATS, default="json")
    p_eval.add_argument("--measures",
                        help="comma-separated measures (default: all), e.g. mean-gc-sqfr,mdg-sqfr")
    p_eval.add_argument("--threshold-step", type=float, default=1.0,
                        help="step of the discard threshold sweep (default 1)")
    p_eval.add_argument("--thresholds", choices=THRESHOLD_MODES, default="sequence",
                        help="sweep thresholds: fixed-step sequence (default) or observed scores")
    p_eval.add_argument("--precision", type=int, default=None,
                        help=f"decimal places in csv/markdown output (default ${PRECISION_ENV} or 3)")
    p_eval.set_defaults(func=_cmd_eval)

    p_sim = sub.add_parser("simulate", help="generate a synthetic dataset file")
    src = p_sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", help="builtin scenario name (see error message for the list)")
    src.add_argument("--spec", help="scenario spec JSON file")
    p_sim.add_argument("--seed", type=int, default=None, help="override the spec's seed")
    p_sim.add_argument("--out", required=True, help="dataset file to write (.csv or .json)")
    p_sim.add_argument("--format", choices=("csv", "json"), default=None,
                       help="dataset format (default: by --out extension)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_plot = sub.add_parser("plotdata", help="export histogram and density series")
    _add_input_flags(p_plot)
    p_plot.add_argument("--out", help="output file (default: stdout)")
    p_plot.add_argument("--format", choices=plotdata.FORMATS, default="json")
    p_plot.add_argument("--bin-width", type=float, default=1.0)
    p_plot.add_argument("--grid-points", type=int, default=256)
    p_plot.add_argument("--bandwidth", type=float, default=None,
                        help="fixed KDE bandwidth (default: Silverman's rule)")
    p_plot.set_defaults(func=_cmd_plotdata)

    p_fix = sub.add_parser("fixtures", help="print the builtin golden aggregate fixtures")
    p_fix.add_argument("--format", choices=report.FORMATS, default="markdown")
    p_fix.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, DomainError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


def _load(args) -> dataset_io.Dataset:
    path = Path(args.input)
    if path.suffix.lower() == ".json":
        ds = dataset_io.load_json(path)
    else:
        ds = dataset_io.load_csv(
            path,
            group_col=args.group_col,
            component_col=args.component_col,
            score_col=args.score_col,
            strict=args.strict,
        )
    for diag in ds.provenance.warnings:
        print(f"warning: {diag}", file=sys.stderr)
    return ds


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _resolve_precision(value: int | None) -> int:
    if value is None:
        raw = os.environ.get(PRECISION_ENV)
        if raw is None:
            return 3
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"{PRECISION_ENV}={raw!r} is not an integer") from None
    if value < 0:
        raise ConfigError(f"precision must be >= 0, got {value}")
    return value


def _cmd_eval(args) -> int:
    precision = _resolve_precision(args.precision)
    selected = report.parse_measure_list(args.measures)
    ds = _load(args)
    diagnostics = dataset_io.validate(ds)
    for diag in diagnostics:
        print(f"{diag.severity}: {diag}", file=sys.stderr)
    if any(diag.severity == "error" for diag in diagnostics):
        return 2
    result = report.build_report(
        ds,
        selected=selected,
        threshold_step=args.threshold_step,
        thresholds_mode=args.thresholds,
        precision=precision,
        input_path=args.input,
    )
    _emit(report.render(result, args.format), args.out)
    return 0


def _cmd_simulate(args) -> int:
    if args.scenario:
        catalog = scenarios.builtin_scenarios()
        if args.scenario not in catalog:
            raise ConfigError(
                f"unknown scenario {args.scenario!r};"
                f" available scenarios: {', '.join(sorted(catalog))}"
            )
        spec = catalog[args.scenario]
    else:
        spec = scenarios.ScenarioSpec.from_json_file(args.spec)
    if args.seed is not None:
        spec.seed = args.seed
    grouped = scenarios.generate(spec)

    fmt = args.format or ("json" if Path(args.out).suffix.lower() == ".json" else "csv")
    text = dataset_io.dumps_json(grouped) if fmt == "json" else dataset_io.dumps_csv(grouped)
    Path(args.out).write_text(text, encoding="utf-8")

    lines = [f"wrote {args.out} (scenario '{spec.name}', seed {spec.seed})"]
    lines.append("group  count  mean     median")
    for label, values in grouped.groups.items():
        lines.append(
            f"{label:<6} {values.size:<6d} {values.mean():<8.3f} {float(np.median(values)):<8.3f}"
        )
    print("\n".join(lines))
    return 0


def _cmd_plotdata(args) -> int:
    ds = _load(args)
    plot = plotdata.build_plotdata(
        ds,
        bin_width=args.bin_width,
        grid_points=args.grid_points,
        bandwidth=args.bandwidth,
    )
    for diag in plot.warnings:
        print(f"warning: {diag}", file=sys.stderr)
    _emit(plotdata.render(plot, args.format), args.out)
    return 0


def _cmd_fixtures(args) -> int:
    fixtures = scenarios.builtin_fixtures()
    if args.format == "json":
        doc = [
            {
                "name": f.name,
                "aggregator": f.aggregator_kind,
                "group_values": f.group_values,
                "expected": {report.cli_measure_name(k): v for k, v in f.expected.items()},
                "computed": {report.cli_measure_name(k): v for k, v in f.evaluate().items()},
                "tolerance": f.tolerance,
                "source": f.source,
            }
            for f in fixtures
        ]
        print(json.dumps(doc, indent=2))
        return 0

    rows = []
    for f in fixtures:
        computed = f.evaluate()
        for key, expected in f.expected.items():
            rows.append(
                (f.name, f.aggregator_kind, report.cli_measure_name(key),
                 f"{expected:g}", f"{computed[key]:.6f}", f"{f.tolerance:g}", f.source)
            )
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["fixture", "aggregator", "measure", "expected", "computed",
                         "tolerance", "source"])
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return 0

    print("| fixture | aggregator | measure | expected | computed | tolerance | source |")
    print("| --- | --- | --- | --- | --- | --- | --- |")
    for row in rows:
        print("| " + " | ".join(row) + " |")
    return 0


if __name__ == "__main__":
    entry()
