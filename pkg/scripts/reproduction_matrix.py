#!/usr/bin/env python3
"""Emit the reproduction matrix as CSV: one row per acceptance criterion.

Runs every criterion from the acceptance suite and prints

    criterion,name,status,detail

to stdout (or to the file given with -o).  Exit code 0 when everything
passes, 1 otherwise.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import CRITERIA  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-o", "--output", type=str, default="-", help="output path, - for stdout")
    args = parser.parse_args()

    rows = []
    failures = 0
    for number, name, runner in CRITERIA:
        try:
            detail = runner()
            rows.append((number, name, "pass", detail))
        except AssertionError as err:
            failures += 1
            rows.append((number, name, "FAIL", str(err).splitlines()[0] if str(err) else ""))

    handle = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    try:
        writer = csv.writer(handle)
        writer.writerow(["criterion", "name", "status", "detail"])
        writer.writerows(rows)
    finally:
        if handle is not sys.stdout:
            handle.close()
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
