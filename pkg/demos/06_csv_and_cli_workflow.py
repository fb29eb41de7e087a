#!/usr/bin/env python3
# End-to-end file workflow: write a two-class CSV, describe a sweep in a
# JSON config, run it through the command-line entry point, and read the
# peak report back.  Everything here also works as shell commands:
#
#   riskcurves feature-curve --config demo.json --seed 5
#   riskcurves report --in curve.json

import json
import os

import numpy as np

from riskcurves.io_cli import cli_main

OUT = "demos/output"
os.makedirs(OUT, exist_ok=True)

# a toy two-class table: 3 informative columns + 5 noise columns
rng = np.random.default_rng(12)
rows = ["x1,x2,x3,n1,n2,n3,n4,n5,label"]
for i in range(300):
    label = "signal" if i % 2 == 0 else "background"
    mu = 1.0 if label == "signal" else -1.0
    vals = np.concatenate([rng.normal(mu, 1.0, 3), rng.normal(0.0, 1.0, 5)])
    rows.append(",".join(f"{v:.6f}" for v in vals) + f",{label}")
csv_path = f"{OUT}/toy.csv"
with open(csv_path, "w", encoding="utf-8") as fh:
    fh.write("\n".join(rows) + "\n")
print(f"wrote {csv_path} (300 rows, 8 feature columns)")

config = {
    "kind": "feature_curve",
    "grid": [1, 2, 3, 4, 6, 8],
    "seed": 5,
    "learners": [{"kind": "mnlr"}, {"kind": "ridge", "lambda": 0.5}],
    "fixed_n": 30,
    "test_size": 200,
    "reps": 10,
    "data": {
        "source": "csv",
        "path": csv_path,
        "label_column": "label",
        "positive_label": "signal",
    },
    "out_csv": f"{OUT}/toy_curve.csv",
    "out_json": f"{OUT}/toy_curve.json",
    "out_svg": f"{OUT}/toy_curve.svg",
}
config_path = f"{OUT}/toy_config.json"
with open(config_path, "w", encoding="utf-8") as fh:
    json.dump(config, fh, indent=2)
print(f"wrote {config_path}")

print("\n$ riskcurves feature-curve --config toy_config.json")
code = cli_main(["feature-curve", "--config", config_path])
print(f"(exit code {code})")

print("\n$ riskcurves report --in toy_curve.json")
code = cli_main(["report", "--in", config["out_json"]])
print(f"(exit code {code})")

print("\nfirst lines of the CSV output:")
with open(config["out_csv"], encoding="utf-8") as fh:
    for line in list(fh)[:4]:
        print("  " + line.rstrip())
