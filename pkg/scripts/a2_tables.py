#!/usr/bin/env python3
"""Print the A2 affine cobracket tables (delta and dbar) for t^i X, i = 1..N."""
from __future__ import annotations

import argparse

from kmbraid.golden import make_table, to_latex, to_text


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--latex", action="store_true")
    ap.add_argument("--unicode", action="store_true")
    args = ap.parse_args(argv)
    for kind in ("delta", "braided"):
        tab = make_table("affine:A2", args.max_degree, kind)
        print(to_latex(tab) if args.latex else to_text(tab, args.unicode))
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
