"""``orliczapprox <command> --config cfg.json`` entry point.

Exit codes: 0 ok, 1 config or parse error, 2 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .experiments import COMMANDS, ConfigError, Result, load_config, run
from .majorants import MajorantConditionError
from .orlicz import OrliczContractError

EXIT_OK, EXIT_CONFIG, EXIT_VIOLATION = 0, 1, 2


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return "%.17g" % v
    return str(v)


def to_csv(res: Result) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(res.columns)
    for row in res.rows:
        wr.writerow([fmt(v) for v in row])
    if res.reports:
        wr.writerow([])
        wr.writerow(["report", "g", "verdict", "sup_ratio", "tail_ratio", "fitted_order"])
        for name, rep in res.reports.items():
            wr.writerow([name, rep.g_label, rep.verdict, fmt(rep.sup_ratio),
                         fmt(rep.tail_ratio), fmt(rep.fitted_order)])
    if res.summary:
        wr.writerow([])
        wr.writerow(["summary", "value"])
        for key, val in res.summary.items():
            wr.writerow([key, fmt(val)])
    for line in res.notes + res.violations:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def to_json(res: Result) -> str:
    out = {
        "command": res.command,
        "columns": res.columns,
        "rows": res.rows,
        "reports": {k: v.to_json() for k, v in res.reports.items()},
        "summary": res.summary,
        "violations": res.violations,
        "notes": res.notes,
    }
    return json.dumps(out, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orliczapprox",
                                 description="Approximation experiments in Orlicz sequence spaces.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="experiment config (JSON)")
    ap.add_argument("--out", help="output file (default: stdout)")
    ap.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    ap.add_argument("--seed", type=int, help="overrides the config seed")
    ap.add_argument("--refine", action="store_true", help="double modulus grids until stable")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0 or args.seed >= 2 ** 64:
                raise ConfigError("seed must be an unsigned 64-bit integer")
            cfg.seed = args.seed
        cfg.refine = cfg.refine or args.refine
        res = run(args.command, cfg)
    except MajorantConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(json.dumps(exc.report.to_json(), indent=2), file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, OrliczContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    fmt_name = args.format or cfg.output.get("format", "csv")
    text = to_json(res) if fmt_name == "json" else to_csv(res)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for v in res.violations:
        print(f"violation: {v}", file=sys.stderr)
    return EXIT_VIOLATION if res.violations else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
