"""Command-line interface.

Subcommands:

* ``convert <csv>``   batch-convert a study CSV
* ``estimate``        single study from flags
* ``table``           export the shortcut-coefficient table
* ``weights``         exact / approximate optimal weight for one n
* ``simulate``        RMSE / histogram studies from a JSON config
* ``serve``           run the estimate service + calculator UI
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FivenumError, ValidationError
from .estimators import estimate
from .studies import (ConversionRecord, StudyRow, convert_file,
                      records_to_csv, row_to_summary)
from .weights import (approx_weight, exact_optimal_weight, generate_table,
                      table_to_csv)

_PREC = 6


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _write_out(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_convert(args) -> int:
    try:
        records = convert_file(args.csv)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if args.format == "json":
        rows = []
        for rec in records:
            entry: dict = {"study_id": rec.row.study_id}
            if rec.ok:
                res = rec.result
                entry.update(mean=res.mean, sd=res.sd,
                             mean_method=res.mean_method.label,
                             sd_method=res.sd_method.label,
                             scenario=res.scenario.value,
                             warnings=rec.warnings)
            else:
                entry["error"] = rec.error
            rows.append(entry)
        _write_out(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        _write_out(records_to_csv(records), args.out)
    bad = sum(1 for r in records if not r.ok)
    if bad:
        print(f"{bad} of {len(records)} rows failed validation",
              file=sys.stderr)
    return 0


def _cmd_estimate(args) -> int:
    row = StudyRow(study_id="cli", n=args.n, min=args.min, q1=args.q1,
                   median=args.median, q3=args.q3, max=args.max)
    try:
        summary = row_to_summary(row)
        res = estimate(summary)
    except ValidationError as exc:
        print(json.dumps({"error": exc.to_dict()}), file=sys.stderr)
        return 1
    payload = {
        "scenario": res.scenario.value,
        "mean": res.mean,
        "sd": res.sd,
        "mean_method": res.mean_method.label,
        "sd_method": res.sd_method.label,
        "weights": [{"label": k, "value": v} for k, v in res.weights_used],
        "warnings": res.warnings,
    }
    if args.format == "json":
        _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write_out(
            f"scenario,{res.scenario.value}\n"
            f"mean,{res.mean:.{_PREC}g}\n"
            f"sd,{res.sd:.{_PREC}g}\n"
            f"mean_method,{res.mean_method.label}\n"
            f"sd_method,{res.sd_method.label}\n", args.out)
    return 0


def _cmd_table(args) -> int:
    rows = generate_table(args.qmax, include_exact=args.exact)
    if args.format == "json":
        payload = [
            {"Q": r.q, "n": r.n, "theta1": r.theta1, "theta2": r.theta2,
             "w_exact": r.w_exact, "w_approx": r.w_approx}
            for r in rows
        ]
        _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write_out(table_to_csv(rows), args.out)
    return 0


def _cmd_weights(args) -> int:
    payload = {"n": args.n, "approx": approx_weight(args.n)}
    if args.exact:
        payload["exact"] = exact_optimal_weight(args.n)
    _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    from . import simulator

    try:
        config_payload = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read config: {exc}")
    study = config_payload.pop("study", "rmse")
    if args.reps is not None:
        config_payload["replications"] = args.reps
    if args.seed is not None:
        config_payload["seed"] = args.seed
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)

    def emit(stem: str, report) -> None:
        if args.format in ("csv", "both"):
            (out_dir / f"{stem}.csv").write_text(report.to_csv())
        if args.format in ("json", "both"):
            (out_dir / f"{stem}.json").write_text(report.to_json())
        print(f"wrote {out_dir / stem}.{{csv,json}}"
              if args.format == "both" else
              f"wrote {out_dir / stem}.{args.format}")

    if study == "rmse":
        config = simulator.SimulationConfig.from_dict(config_payload)
        emit("rmse", simulator.run_rmse_study(config))
    elif study == "histogram":
        report = simulator.run_histogram_study(
            n_list=tuple(config_payload.get("n_grid", (5, 85, 401))),
            replications=int(config_payload.get("replications", 100_000)),
            seed=int(config_payload.get("seed", 0)))
        emit("histogram", report)
    elif study == "skewed":
        reports = simulator.run_skewed_suite(
            replications=int(config_payload.get("replications", 100_000)),
            seed=int(config_payload.get("seed", 0)),
            n_grid=tuple(config_payload.get(
                "n_grid", simulator.DEFAULT_N_GRID)))
        for name, report in reports.items():
            emit(f"rmse_{name}", report)
    else:
        return _fail(f"unknown study {study!r} "
                     "(expected rmse, histogram or skewed)")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fivenum",
        description="estimate sample mean and SD from five-number summaries")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="batch-convert a study CSV")
    p.add_argument("csv", help="input file with header "
                              "study_id,n,min,q1,median,q3,max")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("estimate", help="estimate a single study")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--q1", type=float, default=None)
    p.add_argument("--median", type=float, required=True)
    p.add_argument("--q3", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("table", help="export the coefficient table")
    p.add_argument("--qmax", type=int, default=100)
    p.add_argument("--exact", action="store_true",
                   help="include the quadrature-exact weight per row (slow "
                        "on a cold cache)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("weights", help="optimal weight for a sample size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true",
                   help="also compute the quadrature-exact weight "
                        "(requires n = 4Q+1)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("simulate", help="run a Monte Carlo study")
    p.add_argument("config", help="JSON config; keys: study "
                                  "(rmse|histogram|skewed), family, params, "
                                  "n_grid, replications, seed")
    p.add_argument("--reps", type=int, default=None,
                   help="override replication count")
    p.add_argument("--seed", type=int, default=None, help="override seed")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--format", choices=("csv", "json", "both"),
                   default="both")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="run the estimate service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FivenumError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
