#!/usr/bin/env python3
"""Run every verification suite across the named Cartan types."""
from __future__ import annotations

import argparse
import json

from kmbraid.affine import DegreeWindow
from kmbraid.cartan import NAMED
from kmbraid.suites import run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", nargs="+", default=["A1", "A2", "A3", "B2", "G2"])
    ap.add_argument("--window", default="-1..1")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    w = DegreeWindow.parse(args.window)
    rows = []
    for t in args.types:
        if t not in NAMED:
            raise SystemExit(f"unknown type {t}")
        runs = [("bialgebra", t), ("quasitriangular", t), ("bialgebra", f"affine:{t}", w),
                ("braided", f"affine:{t}", DegreeWindow(1, max(2, w.hi))),
                ("dbos", f"affine:{t}", w), ("structure", f"affine:{t}")]
        runs += [("dbos", t, None, [k]) for k in range(1, len(NAMED[t]) + 1)]
        for args_ in runs:
            for r in run_suite(*args_):
                rows.append(r.to_json())
                if not args.json:
                    print(r.summary())
    if args.json:
        print(json.dumps(rows, indent=1))
    return 0 if all(not r["failures"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
