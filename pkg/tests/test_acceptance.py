"""Acceptance gate: eight criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import sys
import time
from typing import Callable, List, Tuple

import pytest

from kmbraid import core
from kmbraid.affine import DegreeWindow
from kmbraid.cartan import cartan_matrix, minimal_realization
from kmbraid.cli import run_command
from kmbraid.golden import algebra, compare_golden, entries_to_tensor, load_table
from kmbraid.suites import run_suite

Outcome = Tuple[bool, str]


def _cli(*argv) -> Tuple[int, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue().strip()


def _golden_sweep(file: str, command: str) -> Outcome:
    table = load_table(file)
    alg = algebra(table["algebra"])
    res = compare_golden(file)
    cli_bad = []
    for e in table["entries"]:
        code, out = _cli(command, "affine:A2", e["element"], "--expanded")
        if code != 0 or out != core.render(entries_to_tensor(alg, e["delta"])):
            cli_bad.append(e["element"])
    ok = res.ok and res.checked == 32 and not cli_bad
    return ok, (f"{res.checked} entries, {len(res.mismatches)} engine mismatches, "
                f"{len(cli_bad)} CLI mismatches")


def _suites(runs) -> Outcome:
    reports = [r for args in runs for r in run_suite(*args)]
    bad = [r.name for r in reports if not r.ok]
    checks = sum(r.checked for r in reports)
    return not bad, f"{len(reports)} reports, {checks} checks" + (f", failing: {bad}" if bad else "")


def criterion_1() -> Outcome:
    """A2 delta golden: 32 exact equalities."""
    return _golden_sweep("a2_delta.json", "cobracket")


def criterion_2() -> Outcome:
    """A2 braided golden: 32 exact equalities, degree 1 all zero."""
    ok, detail = _golden_sweep("a2_braided_delta.json", "braided")
    table = load_table("a2_braided_delta.json")
    deg1 = [e for e in table["entries"] if e["element"].startswith("t*")]
    zero = len(deg1) == 8 and all(not e["delta"] for e in deg1)
    return ok and zero, detail + f", degree-1 entries zero: {zero}"


def criterion_3() -> Outcome:
    """Bialgebra axioms on sl2, sl3 and affine A1, A2 over [-3,3]."""
    w = DegreeWindow(-3, 3)
    return _suites([("bialgebra", "A1"), ("bialgebra", "A2"),
                    ("bialgebra", "affine:A1", w), ("bialgebra", "affine:A2", w)])


def criterion_4() -> Outcome:
    """Quasitriangular structure of the canonical r on sl2, sl3."""
    return _suites([("quasitriangular", "A1"), ("quasitriangular", "A2")])


def criterion_5() -> Outcome:
    """Braided axiom and module maps on the A1, A2 carriers, degrees 1..3."""
    w = DegreeWindow(1, 3)
    return _suites([("braided", "affine:A1", w), ("braided", "affine:A2", w)])


def criterion_6() -> Outcome:
    """Finite reconstruction from A1 in A2."""
    reports = run_suite("dbos", "A2", None, [2])
    by = {r.name.split(":")[0]: r for r in reports}
    ok = all(r.ok for r in reports)
    br = next(r for r in reports if r.name.startswith("dbos bracket"))
    co = next(r for r in reports if r.name.startswith("dbos cobracket"))
    ok = ok and br.checked == 64 and co.checked == 8
    return ok, f"bracket {br.checked} pairs, cobracket {co.checked} elements, reports: {sorted(by)}"


def criterion_7() -> Outcome:
    """Affine reconstruction on [-2,2] and single bosonisation on [-3,0]."""
    return _suites([("dbos", "affine:A2", DegreeWindow(-2, 2)),
                    ("bosonisation", "affine:A2", DegreeWindow(-3, 0))])


def criterion_8() -> Outcome:
    """Structural facts of the A2 affinization."""
    alg = algebra("affine:A2")
    Ct = cartan_matrix("affine:A2")
    facts = {
        "affinized matrix": Ct.rows() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
        "dim H = 4": minimal_realization(Ct).dim == 4,
        "[e0,f0] = h0 = c - H1 - H2": (
            core.bracket(alg.serre_generators.e[0], alg.serre_generators.f[0])
            == alg.serre_generators.h[0] == alg.c - alg("H1") - alg("H2")),
    }
    ok, detail = _suites([("structure", "affine:A2"), ("structure", "affine:A1")])
    bad = [k for k, v in facts.items() if not v]
    return ok and not bad, detail + (f", failing facts: {bad}" if bad else f", {len(facts)} facts")


CRITERIA: List[Tuple[int, str, Callable[[], Outcome]]] = [
    (1, "A2 delta golden", criterion_1),
    (2, "A2 braided delta golden", criterion_2),
    (3, "bialgebra axioms", criterion_3),
    (4, "quasitriangularity", criterion_4),
    (5, "braided axiom", criterion_5),
    (6, "finite reconstruction", criterion_6),
    (7, "affine reconstruction and bosonisation", criterion_7),
    (8, "structural facts", criterion_8),
]


def run_criterion(n: int, title: str, fn) -> Tuple[bool, str]:
    t0 = time.perf_counter()
    ok, detail = fn()
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail}; {time.perf_counter() - t0:.1f}s)"
    return ok, line


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn, capsys):
    ok, line = run_criterion(n, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def main() -> int:
    results = [run_criterion(n, title, fn) for n, title, fn in CRITERIA]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
