"""Double the truncation K and the h-grid, and report the largest relative change per config."""
import argparse
import json
import pathlib

import numpy as np

from orliczapprox.experiments import ExperimentConfig, run

ROOT = pathlib.Path(__file__).resolve().parent.parent

# (config, command, whether K may be doubled without changing the test function)
CASES = [
    ("prop1_beta2.5.json", "prop1", True),
    ("theorem1_beta2.5_r1.json", "theorem1", True),
    ("theorem1_beta2.5_r2.json", "theorem1", True),
    ("theorem2_beta3.5_s2.json", "theorem2", True),
    ("asymp_beta4.json", "asymp", True),
    ("theorem4_beta2.json", "theorem4", False),
    ("theorem4_sparse.json", "theorem4", False),
]


def values(res):
    return np.array([v for row in res.rows for v in row if isinstance(v, float)])


def change(raw, command, double_K):
    a = values(run(command, ExperimentConfig.from_dict(raw)))
    raw = json.loads(json.dumps(raw))
    raw["h_grid"] = 2 * raw.get("h_grid", 64)
    if double_K:
        raw["function"]["K"] *= 2
    b = values(run(command, ExperimentConfig.from_dict(raw)))
    nz = b != 0
    return float(np.max(np.abs(a - b)[nz] / np.abs(b)[nz]))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threshold", type=float, default=1e-6)
    args = ap.parse_args(argv)
    for name, command, double_K in CASES:
        raw = json.loads((ROOT / "configs" / name).read_text())
        rel = change(raw, command, double_K)
        flag = "ok" if rel < args.threshold else "UNSTABLE"
        grids = "K,h_grid" if double_K else "h_grid"
        print(f"{name:28s} {grids:9s} x2  max rel change {rel:.2e}  {flag}")


if __name__ == "__main__":
    main()
