"""Dimension sweep of every estimator through the CLI, one report per command.

    python scripts/run_experiments.py --out-dir results --trials 2000

Writes <out-dir>/<command>.csv plus witness sidecars, the Pelczynski witness
as JSON, and prints a short table of the estimates.
"""
import argparse
import csv
import pathlib
import sys

from zalpha.cli import main

SWEEP = ("qtriangle", "qlinear", "multiplier", "unorm")


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--alpha", default="1")
    ap.add_argument("--dims", default="16,64,256,1024")
    ap.add_argument("--trials", default="1000")
    ap.add_argument("--seed", default="1")
    return ap.parse_args()


def main_sweep():
    args = parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    common = ["--alpha", args.alpha, "--dims", args.dims, "--trials", args.trials, "--seed", args.seed]
    for cmd in SWEEP + ("certify",):
        status = main([cmd, *common, "--out", str(out / f"{cmd}.csv")])
        if status:
            print(f"{cmd} exited with {status}", file=sys.stderr)
            return status
    status = main(["pelczynski", "--format", "json", "--out", str(out / "pelczynski.json")])
    if status:
        return status
    print(f"{'command':12s} {'constant':16s} {'dim':>5s}  estimate")
    for cmd in SWEEP + ("certify",):
        with open(out / f"{cmd}.csv", newline="") as fh:
            for row in csv.DictReader(fh):
                print(f"{cmd:12s} {row['constant_name']:16s} {row['dim']:>5s}  {float(row['estimate']):.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main_sweep())
