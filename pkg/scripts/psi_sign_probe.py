#!/usr/bin/env python3
"""Which bracket on the positive carrier makes d(dbar) = psi hold?

For every pair of carrier basis elements the braided cocycle identity
``dbar[x,y] = ad_x dbar y - ad_y dbar x - psi(x,y)`` is tested twice: once
with the ambient bracket and once with the opposite bracket.  The counts of
failing pairs are printed for both sides of the grading.
"""
from __future__ import annotations

import argparse

from kmbraid import core
from kmbraid.braiding import current_algebra_view
from kmbraid.golden import algebra


def failures(blb, degrees, sign: int) -> int:
    alg = blb.ambient
    syms = blb.symbols(degrees)
    bad = 0
    for a in syms:
        for b in syms:
            x, y = core.basis(alg, a), core.basis(alg, b)
            br = core.bracket(x, y) * sign
            lhs = blb.braided_cobracket(br)
            rhs = (core.ad_tensor(x, blb.braided_cobracket(y)) - core.ad_tensor(y, blb.braided_cobracket(x))) * sign
            rhs = rhs - blb.psi(x, y)
            bad += lhs != rhs
    return bad


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spec", nargs="?", default="affine:A2")
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args(argv)
    alg = algebra(args.spec)
    for side in (1, -1):
        blb = current_algebra_view(alg, side=side)
        degs = [side * n for n in range(1, args.max_degree + 1)]
        n = len(blb.symbols(degs)) ** 2
        amb, opp = failures(blb, degs, 1), failures(blb, degs, -1)
        print(f"side {side:+d}: {n} pairs; failing with ambient bracket {amb}, with opposite bracket {opp}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
