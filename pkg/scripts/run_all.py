"""Run every shipped config through the CLI and collect outputs under results/."""
import argparse
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent

PREFIXES = ["norm", "prop1", "theorem1", "theorem2", "asymp", "theorem4", "majorant", "validate"]


def command_for(name):
    return next(p for p in PREFIXES if name.startswith(p))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--configs", type=pathlib.Path, default=ROOT / "configs")
    ap.add_argument("--out", type=pathlib.Path, default=ROOT / "results")
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    ap.add_argument("--refine", action="store_true")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for cfg in sorted(args.configs.glob("*.json")):
        cmd = command_for(cfg.stem)
        dest = args.out / f"{cfg.stem}.{args.format}"
        argv = [sys.executable, "-m", "orliczapprox", cmd, "--config", str(cfg),
                "--out", str(dest), "--format", args.format]
        if args.refine:
            argv.append("--refine")
        proc = subprocess.run(argv, capture_output=True, text=True)
        failed += proc.returncode != 0
        print(f"{cfg.name:32s} {cmd:9s} exit={proc.returncode}")
        if proc.stderr:
            print("    " + proc.stderr.strip().splitlines()[0])
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
