#!/usr/bin/env python3
"""Write the A2 affine cobracket tables (i = 1..4) as golden JSON.

The closed-form sums below are typed in directly and expanded with a few
local helpers; nothing from the engine is imported, so the files are an
independent oracle for ``golden compare``.
"""
from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

BASIS = ["E1", "E2", "E12", "H1", "H2", "F1", "F2", "F21"]
DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "kmbraid" / "data"


def sym(n: int, x: str) -> str:
    if x in ("c", "d"):
        return x
    if n == 0:
        return x
    return f"t*{x}" if n == 1 else f"t^{n}*{x}"


def order_key(s: str):
    # loop terms by degree then basis position, c and d last
    if s == "c":
        return (1, 0, 0)
    if s == "d":
        return (2, 0, 0)
    if s.startswith("t^"):
        n, x = s[2:].split("*")
        return (0, int(n), BASIS.index(x))
    if s.startswith("t*"):
        return (0, 1, BASIS.index(s[2:]))
    return (0, 0, BASIS.index(s))


class Table:
    """Sparse 2-tensor over string symbols with wedge insertion."""

    def __init__(self):
        self.c: dict = {}

    def add(self, coeff, a, b):
        for key, v in (((a, b), coeff), ((b, a), -coeff)):
            self.c[key] = self.c.get(key, 0) + Fraction(v)
            if not self.c[key]:
                del self.c[key]

    def wedge(self, coeff, left, right):
        """``coeff * (sum left) ^ (sum right)`` for lists of (coeff, symbol)."""
        for ca, a in left:
            for cb, b in right:
                self.add(coeff * ca * cb, a, b)

    def entries(self):
        keys = sorted(self.c, key=lambda k: (order_key(k[0]), order_key(k[1])))
        return [[fmt(self.c[k]), k[0], k[1]] for k in keys]


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def L(n, *xs):
    return [(1, sym(n, x)) for x in xs]


H_OF = {"E1": ("H1",), "E2": ("H2",), "E12": ("H1", "H2"), "F1": ("H1",), "F2": ("H2",), "F21": ("H1", "H2")}


def delta(i: int, x: str, braided: bool) -> Table:
    T = Table()
    lo = 1 if braided else 0
    if not braided:
        # 1/2 (t^i X) ^ (i c + H)
        half = [(i, "c")] + [(1, h) for h in H_OF.get(x, ())]
        T.wedge(Fraction(1, 2), L(i, x), half)
    if x in ("E1", "E2", "E12"):
        for j in range(lo, i):
            T.wedge(1, L(j, x), L(i - j, *H_OF[x]))
    if x == "E1":
        for j in range(lo, i):
            T.wedge(-1, L(j, "E12"), L(i - j, "F2"))
    if x == "E2":
        for j in range(lo, i):
            T.wedge(1, L(j, "E12"), L(i - j, "F1"))
    if x == "E12":
        for j in range(lo, i if braided else i + 1):
            T.wedge(1, L(j, "E2"), L(i - j, "E1"))
    if x in ("H1", "H2"):
        same, other = ("1", "2") if x == "H1" else ("2", "1")
        for j in range(lo, i):
            T.wedge(-2, L(j, "E" + same), L(i - j, "F" + same))
            T.wedge(1, L(j, "E" + other), L(i - j, "F" + other))
            T.wedge(-1, L(j, "E12"), L(i - j, "F21"))
    if x in ("F1", "F2", "F21"):
        hi = i - 1 if braided else i
        for j in range(1, hi + 1):
            T.wedge(-1, L(j, x), L(i - j, *H_OF[x]))
        for j in range(1, hi + 1):
            if x == "F1":
                T.wedge(1, L(j, "F21"), L(i - j, "E2"))
            elif x == "F2":
                T.wedge(-1, L(j, "F21"), L(i - j, "E1"))
        if x == "F21":
            for j in range(1, i):
                T.wedge(1, L(j, "F1"), L(i - j, "F2"))
    return T


def table(braided: bool, max_degree: int = 4) -> dict:
    entries = [
        {"element": sym(i, x), "delta": delta(i, x, braided).entries()}
        for i in range(1, max_degree + 1)
        for x in BASIS
    ]
    return {"algebra": "affine:A2", "cobracket": "braided" if braided else "delta", "entries": entries}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, braided in (("a2_delta.json", False), ("a2_braided_delta.json", True)):
        path = args.out / name
        path.write_text(json.dumps(table(braided, args.max_degree), indent=1) + "\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
