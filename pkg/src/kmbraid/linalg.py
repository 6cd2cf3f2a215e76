"""Small exact Gaussian elimination over ``Fraction``."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    return len(_echelon(m))


def _echelon(m: List[List[Fraction]]) -> List[int]:
    """In-place row echelon form; returns pivot columns."""
    pivots: List[int] = []
    if not m:
        return pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots


def solve(a: Sequence[Sequence], b: Sequence) -> List[Fraction] | None:
    """One exact solution of ``a x = b`` (free variables set to 0), or ``None``."""
    n = len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = _echelon(m)
    if pivots and pivots[-1] == n:
        return None
    if any(row[-1] and not any(row[:-1]) for row in m):
        return None
    x = [Fraction(0)] * n
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        s = m[i][-1] - sum(m[i][j] * x[j] for j in range(c + 1, n))
        x[c] = s / m[i][c]
    return x


def sparse_rref(rows: List[Dict]) -> List[tuple]:
    """Reduced row echelon form of sparse rows, tracking combinations.

    Each input row is a dict ``column -> Fraction``.  Returns a list of
    ``(pivot, row, combo)`` where ``row`` is the reduced row and ``combo``
    maps input-row indices to the coefficients producing it.  Columns are
    pivoted in sorted order, so the result is deterministic.
    """
    work = [(dict(r), {i: Fraction(1)}) for i, r in enumerate(rows) if r]
    done: List[tuple] = []
    while work:
        col = min(min(r) for r, _ in work)
        idx = next(i for i, (r, _) in enumerate(work) if col in r)
        prow, pcombo = work.pop(idx)
        inv = 1 / prow[col]
        prow = {k: v * inv for k, v in prow.items()}
        pcombo = {k: v * inv for k, v in pcombo.items()}
        new_work = []
        for r, cmb in work:
            f = r.get(col)
            if f:
                r = _axpy(r, prow, -f)
                cmb = _axpy(cmb, pcombo, -f)
            if r:
                new_work.append((r, cmb))
        work = new_work
        reduced = []
        for p, r, cmb in done:
            f = r.get(col)
            if f:
                r = _axpy(r, prow, -f)
                cmb = _axpy(cmb, pcombo, -f)
            reduced.append((p, r, cmb))
        done = reduced + [(col, prow, pcombo)]
    return done


def _axpy(x: Dict, y: Dict, a) -> Dict:
    out = dict(x)
    for k, v in y.items():
        nv = out.get(k, 0) + a * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out
