"""Rate-fit verdicts for the smooth and rough families, one line per statement column."""
import json
import pathlib

from orliczapprox.experiments import ExperimentConfig, run

ROOT = pathlib.Path(__file__).resolve().parent.parent

CASES = [
    ("prop1_beta2.5.json", "prop1"),
    ("theorem1_beta2.5_r1.json", "theorem1"),
    ("theorem1_beta2.5_r2.json", "theorem1"),
    ("theorem2_beta3.5_s2.json", "theorem2"),
    ("prop1_rough.json", "prop1"),
    ("theorem1_rough_r1.json", "theorem1"),
    ("theorem1_rough_r2.json", "theorem1"),
]


def main():
    print(f"{'config':28s} {'column':11s} {'verdict':16s} {'sup':>10s} {'tail':>10s} {'order':>8s}")
    for name, command in CASES:
        cfg = ExperimentConfig.from_dict(json.loads((ROOT / "configs" / name).read_text()))
        for key, rep in run(command, cfg).reports.items():
            print(f"{name:28s} {key:11s} {rep.verdict:16s} {rep.sup_ratio:10.4g} "
                  f"{rep.tail_ratio:10.4g} {rep.fitted_order:8.3f}")


if __name__ == "__main__":
    main()
