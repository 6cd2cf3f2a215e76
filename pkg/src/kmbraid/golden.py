"""Cobracket tables: computation, JSON/LaTeX/text emitters and golden comparison.

A table file is either a bare list of ``{"element", "delta"}`` entries or a
wrapper ``{"algebra", "cobracket", "entries"}``.  ``delta`` lists expanded
tensor terms ``[coeff, symA, symB]`` in the element grammar.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence

from . import core
from .affine import AffineLoopAlgebra
from .bialgebra import engine
from .braiding import current_algebra_view
from .cartan import cartan_matrix
from .core import TensorElement, format_scalar, to_scalar
from .finite import build_chevalley
from .grammar import parse_element, parse_symbol

KINDS = ("delta", "braided")
PACKAGE_DATA = Path(__file__).resolve().parent / "data"


def golden_dir() -> Path:
    env = os.environ.get("KMBRAID_GOLDEN_DIR")
    return Path(env) if env else PACKAGE_DATA


def resolve_golden(name: str | os.PathLike) -> Path:
    """A path as given if it exists, else relative to :func:`golden_dir`."""
    p = Path(name)
    if p.exists():
        return p
    q = golden_dir() / p
    if q.exists():
        return q
    raise FileNotFoundError(f"golden file {str(name)!r} not found (searched . and {golden_dir()})")


def build_algebra(spec: str):
    """``"A2"`` or ``"affine:A2"``."""
    if spec.startswith("affine:"):
        base = spec.split(":", 1)[1]
        return AffineLoopAlgebra(build_chevalley(cartan_matrix(base), base))
    return build_chevalley(cartan_matrix(spec), spec)


_ALGEBRAS: Dict[str, object] = {}


def algebra(spec: str):
    """Cached :func:`build_algebra`."""
    if spec not in _ALGEBRAS:
        _ALGEBRAS[spec] = build_algebra(spec)
    return _ALGEBRAS[spec]


def compute(alg, x, kind: str = "delta") -> TensorElement:
    if kind == "delta":
        return engine(alg)(x)
    if kind == "braided":
        if not isinstance(alg, AffineLoopAlgebra):
            raise ValueError("braided tables need an affine algebra")
        return _view(alg).braided_cobracket(x)
    raise ValueError(f"unknown cobracket kind {kind!r}")


_VIEWS: Dict[int, object] = {}


def _view(alg):
    v = _VIEWS.get(id(alg))
    if v is None or v.ambient is not alg:
        v = _VIEWS[id(alg)] = current_algebra_view(alg, side=1)
    return v


def tensor_entries(t: TensorElement) -> List[list]:
    fmt = t.algebra.format_symbol
    return [[format_scalar(v), fmt(a), fmt(b)] for (a, b), v in t.terms()]


def entries_to_tensor(alg, rows: Sequence) -> TensorElement:
    return TensorElement(alg, {(parse_symbol(a, alg), parse_symbol(b, alg)): to_scalar(c) for c, a, b in rows})


def table_elements(alg, max_degree: int, min_degree: int = 1) -> List:
    if isinstance(alg, AffineLoopAlgebra):
        fin = alg.finite
        return [(0, i, x) for i in range(min_degree, max_degree + 1) for x in range(fin.dim)]
    return list(range(alg.dim))


def make_table(spec: str, max_degree: int, kind: str = "delta", min_degree: int = 1) -> dict:
    alg = algebra(spec)
    entries = []
    for s in table_elements(alg, max_degree, min_degree):
        t = compute(alg, core.basis(alg, s), kind)
        entries.append({"element": alg.format_symbol(s), "delta": tensor_entries(t)})
    return {"algebra": spec, "cobracket": kind, "entries": entries}


# --- emitters ----------------------------------------------------------------

def to_json(table: dict) -> str:
    return json.dumps(table, indent=1)


def to_text(table: dict, unicode: bool = False) -> str:
    alg = algebra(table["algebra"])
    wedge = "\u2227" if unicode else "/\\"
    lhs = "\u03b4\u0332" if table["cobracket"] == "braided" and unicode else (
        "dbar" if table["cobracket"] == "braided" else ("\u03b4" if unicode else "delta"))
    lines = []
    for e in table["entries"]:
        t = entries_to_tensor(alg, e["delta"])
        lines.append(f"{lhs}({e['element']}) = {core.render_wedges(t, wedge)}")
    return "\n".join(lines)


def _tex_sym(s: str, affine: bool = True) -> str:
    if not affine:
        return _tex_name(s)
    if s in ("c", "d"):
        return s
    if "*" in s:
        pre, x = s.rsplit("*", 1)
        n = "1" if pre == "t" else pre[2:]
        return f"(t^{{{n}}}\\otimes {_tex_name(x)})"
    return f"(1\\otimes {_tex_name(s)})"


def _tex_name(x: str) -> str:
    return f"{x[0]}_{{{x[1:]}}}"


def to_latex(table: dict) -> str:
    """``align*`` block in wedge form, one line per entry."""
    alg = algebra(table["algebra"])
    aff = isinstance(alg, AffineLoopAlgebra)
    op = "\\underline{\\delta}" if table["cobracket"] == "braided" else "\\delta"
    rows = []
    for e in table["entries"]:
        t = entries_to_tensor(alg, e["delta"])
        fmt = alg.format_symbol
        parts = []
        for (a, b), v in t.terms():
            if a < b:
                mag = abs(v)
                coef = "" if mag == 1 else (f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}" if mag.denominator > 1 else str(mag))
                sign = "-" if v < 0 else ("+" if parts else "")
                parts.append(f"{sign}{coef}{_tex_sym(fmt(a), aff)}\\wedge {_tex_sym(fmt(b), aff)}")
        body = " ".join(parts) or "0"
        arg = _tex_sym(e["element"], aff)
        rows.append(f"{op}{arg if aff else f'({arg})'} &= {body}")
    return "\\begin{align*}\n" + " \\\\\n".join(rows) + "\n\\end{align*}"


# --- comparison --------------------------------------------------------------

@dataclass
class GoldenResult:
    path: str
    algebra: str
    kind: str
    checked: int = 0
    mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"instance": f"golden {self.path}", "algebra": self.algebra, "cobracket": self.kind,
                "pairs_checked": self.checked, "failures": self.mismatches}

    def summary(self) -> str:
        return (f"{'PASS' if self.ok else 'FAIL'} golden {Path(self.path).name}: "
                f"{self.checked} entries, {len(self.mismatches)} mismatches")


def load_table(path: str | os.PathLike) -> dict:
    p = resolve_golden(path)
    data = json.loads(p.read_text())
    if isinstance(data, list):
        # bare list: algebra and kind are inferred from the file name
        kind = "braided" if "braided" in p.name else "delta"
        data = {"algebra": "affine:A2", "cobracket": kind, "entries": data}
    data["_path"] = str(p)
    return data


def compare_table(table: dict) -> GoldenResult:
    alg = algebra(table["algebra"])
    res = GoldenResult(table.get("_path", "<table>"), table["algebra"], table["cobracket"])
    for e in table["entries"]:
        x = parse_element(e["element"], alg)
        expected = entries_to_tensor(alg, e["delta"])
        got = compute(alg, x, table["cobracket"])
        res.checked += 1
        if got != expected:
            res.mismatches.append({
                "element": e["element"],
                "expected": core.render(expected),
                "got": core.render(got),
                "difference": core.render(got - expected),
            })
    return res


def compare_golden(path: str | os.PathLike) -> GoldenResult:
    return compare_table(load_table(path))
