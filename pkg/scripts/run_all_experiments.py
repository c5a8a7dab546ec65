#!/usr/bin/env python3
"""Run every experiment family at desk scale into a single output tree.

Each family lands in <out>/<name>/ with its CSVs and a run_meta.json, ready
for the plots package. Pass --fast for a quick smoke run with coarse grids.
"""

import argparse
import sys
import time

from negbudget.cli import main as cli_main

FAMILIES = {
    "two_body": ["two-body"],
    "chain": ["chain", "--sites", "4", "--times", "201"],
    "cv_native": ["cv-native", "--times", "201"],
    "seeds": ["seeds", "--times", "81"],
    "damping": ["damping", "--times", "101"],
    "dwigner_strange": ["dwigner", "--state", "strange"],
    "dwigner_stab": ["dwigner", "--state", "fock1"],
}

FAST_OVERRIDES = ["--grid-points", "101", "--times", "21"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs", help="output root (default runs/)")
    parser.add_argument("--fast", action="store_true", help="coarse grids, few times")
    args = parser.parse_args()

    failures = []
    for name, argv in FAMILIES.items():
        full = list(argv)
        if args.fast and not name.startswith("dwigner"):
            full += FAST_OVERRIDES
        full += ["--out", f"{args.out}/{name}"]
        t0 = time.perf_counter()
        code = cli_main(full)
        dt = time.perf_counter() - t0
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{name:16s} {status:8s} {dt:7.1f} s")
        if code != 0:
            failures.append(name)
    if failures:
        print(f"failed: {', '.join(failures)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
