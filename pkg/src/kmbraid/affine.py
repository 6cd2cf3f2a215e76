"""The untwisted affine algebra ``k[t, 1/t] (x) g + kc + kd``.

Basis symbols are tuples ``(kind, degree, x)``: ``(0, n, x)`` stands for
``t^n (x) X`` with ``X`` the finite basis symbol ``x``; ``C_SYM = (1, 0, 0)``
and ``D_SYM = (2, 0, 0)`` are the central element and the degree
derivation.  Tuple order puts loop terms first, by degree and then by the
finite symbol order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Mapping, Tuple

from . import core
from .cartan import GeneralizedCartanMatrix, affinize, cobracket_scales, minimal_realization
from .core import LieElement, accumulate
from .finite import ChevalleyAlgebra, build_chevalley

C_SYM = (1, 0, 0)
D_SYM = (2, 0, 0)


class Inhomogeneous:
    """Marker returned by :func:`degree` for mixed-degree elements."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INHOMOGENEOUS"


INHOMOGENEOUS = Inhomogeneous()


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window {self.lo}..{self.hi}")

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
        if not m:
            raise ValueError(f"window must look like lo..hi, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def widen(self, k: int) -> "DegreeWindow":
        return DegreeWindow(self.lo - k, self.hi + k)

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


def residue(p: Mapping[int, object]) -> Fraction:
    """Coefficient of ``t^-1`` in the Laurent polynomial ``{exponent: coeff}``."""
    return core.to_scalar(p.get(-1, 0))


def laurent_derivative(p: Mapping[int, object]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for n, c in p.items():
        accumulate(out, n - 1, n * core.to_scalar(c))
    return out


def laurent_product(p: Mapping[int, object], q: Mapping[int, object]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for m, a in p.items():
        for n, b in q.items():
            accumulate(out, m + n, core.to_scalar(a) * core.to_scalar(b))
    return out


def residue_cocycle(p: Mapping[int, object], q: Mapping[int, object]) -> Fraction:
    """``Res((dp/dt) q)``."""
    return residue(laurent_product(laurent_derivative(p), q))


_LOOP_RE = re.compile(r"^t(?:\^(-?\d+))?\*(.+)$")


class AffineLoopAlgebra:
    """Loop realization of the untwisted affine algebra over ``L(C)``."""

    def __init__(self, finite: ChevalleyAlgebra):
        self.finite = finite
        self.rank = finite.rank
        self.cartan: GeneralizedCartanMatrix = affinize(finite.cartan)
        self.datum = minimal_realization(self.cartan)
        self.name = f"affine:{finite.name}"

    # --- symbols -------------------------------------------------------
    @staticmethod
    def loop_sym(n: int, x: int) -> tuple:
        return (0, n, x)

    def format_symbol(self, s: tuple) -> str:
        if s == C_SYM:
            return "c"
        if s == D_SYM:
            return "d"
        _, n, x = s
        name = self.finite.names[x]
        if n == 0:
            return name
        if n == 1:
            return f"t*{name}"
        return f"t^{n}*{name}"

    def symbol(self, text: str) -> tuple:
        text = text.strip()
        if text == "c":
            return C_SYM
        if text == "d":
            return D_SYM
        m = _LOOP_RE.match(text)
        if m:
            n = int(m.group(1)) if m.group(1) is not None else 1
            return (0, n, self.finite.symbol(m.group(2)))
        return (0, 0, self.finite.symbol(text))

    def __call__(self, text: str) -> LieElement:
        return core.basis(self, self.symbol(text))

    def loop(self, n: int, x: LieElement) -> LieElement:
        """``t^n (x) x`` for a finite element ``x``."""
        return LieElement._raw(self, {(0, n, s): v for s, v in x.items()})

    @property
    def c(self) -> LieElement:
        return core.basis(self, C_SYM)

    @property
    def d(self) -> LieElement:
        return core.basis(self, D_SYM)

    def symbol_degree(self, s: tuple) -> int:
        return s[1]

    def weight(self, s: tuple) -> Tuple[int, ...]:
        """Finite weight followed by the loop degree."""
        if s[0]:
            return (0,) * self.rank + (0,)
        return self.finite.weight(s[2]) + (s[1],)

    def kind(self, s: tuple) -> str:
        if s[0]:
            return "h"
        return self.finite.kind(s[2])

    # --- bracket -------------------------------------------------------
    @lru_cache(maxsize=None)
    def bracket_symbols(self, a: tuple, b: tuple) -> Dict[tuple, Fraction]:
        if a == C_SYM or b == C_SYM:
            return {}
        if a == D_SYM:
            return {} if b == D_SYM or not b[1] else {b: Fraction(b[1])}
        if b == D_SYM:
            return {} if not a[1] else {a: Fraction(-a[1])}
        _, m, x = a
        _, n, y = b
        out = {(0, m + n, k): v for k, v in self.finite.bracket_symbols(x, y).items()}
        if m + n == 0 and m:
            f = self.finite.form_symbols(x, y)
            if f:
                out[C_SYM] = m * f
        return out

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        return core.bracket(x, y)

    # --- form ----------------------------------------------------------
    def form_symbols(self, a: tuple, b: tuple) -> Fraction:
        """Invariant form: loop part by residue pairing, ``<c, d> = 1``."""
        if {a, b} == {C_SYM, D_SYM}:
            return Fraction(1)
        if a[0] or b[0]:
            return Fraction(0)
        if a[1] + b[1]:
            return Fraction(0)
        return self.finite.form_symbols(a[2], b[2])

    def invariant_form(self, x: LieElement, y: LieElement) -> Fraction:
        core._same_algebra(x, y)
        return sum(
            (cx * cy * self.form_symbols(a, b) for a, cx in x.items() for b, cy in y.items()),
            Fraction(0),
        )

    # --- generators ----------------------------------------------------
    @cached_property
    def serre_generators(self) -> "SerreGenerators":
        fin = self.finite
        E0, F0, Ht = fin.theta_vectors
        labels = fin.cartan.labels
        e = [self.loop(1, E0)] + [self.loop(0, fin.E(i)) for i in labels]
        f = [self.loop(-1, F0)] + [self.loop(0, fin.F(i)) for i in labels]
        h = [self.c - self.loop(0, Ht)] + [self.loop(0, fin.H(i)) for i in labels]
        return SerreGenerators(tuple(e), tuple(f), tuple(h))

    @cached_property
    def cobracket_scales(self) -> Tuple[Fraction, ...]:
        return cobracket_scales(self.cartan)

    def cartan_symbols(self) -> List[tuple]:
        return [(0, 0, self.finite.h_sym(k)) for k in range(self.rank)] + [C_SYM, D_SYM]

    def basis_window(self, w: DegreeWindow) -> List[tuple]:
        return basis_window(self, w)

    def __repr__(self) -> str:
        return f"AffineLoopAlgebra({self.finite.cartan.rows()})"


@dataclass(frozen=True)
class SerreGenerators:
    """Chevalley triples of the affine matrix, index 0 first."""

    e: Tuple[LieElement, ...]
    f: Tuple[LieElement, ...]
    h: Tuple[LieElement, ...]


def build_affine(C: GeneralizedCartanMatrix) -> AffineLoopAlgebra:
    return AffineLoopAlgebra(build_chevalley(C))


def loop_bracket(x: LieElement, y: LieElement) -> LieElement:
    return core.bracket(x, y)


def serre_generators(alg: AffineLoopAlgebra) -> SerreGenerators:
    return alg.serre_generators


def degree(x: LieElement):
    """Common loop degree of the terms of ``x``, or ``INHOMOGENEOUS``.

    The zero element is reported as degree 0.
    """
    degs = {s[1] for s in x.keys()}
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop() if degs else 0


def basis_window(alg: AffineLoopAlgebra, w: DegreeWindow) -> List[tuple]:
    syms = [(0, n, x) for n in w.degrees() for x in range(alg.finite.dim)]
    return syms + [C_SYM, D_SYM]


def homogeneous_parts(x: LieElement) -> Dict[int, LieElement]:
    parts: Dict[int, Dict] = {}
    for s, v in x.items():
        parts.setdefault(s[1], {})[s] = v
    return {n: LieElement._raw(x.algebra, c) for n, c in sorted(parts.items())}


def serre_relations(alg: AffineLoopAlgebra):
    """Yield ``(relation, defect)`` for the presentation of ``L(C~)``.

    Covers ``[h_i, h_j] = 0``, ``[e_i, f_j] = delta_ij h_i``,
    ``[h_i, e_j] = C_ij e_j``, ``[h_i, f_j] = -C_ij f_j`` and, for ``i != j``,
    ``(ad e_i)^(1 - C_ij) e_j = 0`` and the same for the ``f``'s.  Every
    defect is zero exactly when the relation holds.
    """
    g = alg.serre_generators
    C = alg.cartan
    labels = C.labels
    zero = core.zero(alg)
    for a, i in enumerate(labels):
        for b, j in enumerate(labels):
            cij = C[i, j]
            yield f"[h{i},h{j}] = 0", core.bracket(g.h[a], g.h[b])
            yield f"[e{i},f{j}] = {'h' + str(i) if a == b else '0'}", (
                core.bracket(g.e[a], g.f[b]) - (g.h[a] if a == b else zero))
            yield f"[h{i},e{j}] = {cij} e{j}", core.bracket(g.h[a], g.e[b]) - g.e[b] * cij
            yield f"[h{i},f{j}] = {-cij} f{j}", core.bracket(g.h[a], g.f[b]) + g.f[b] * cij
            if a != b:
                for name, gen in (("e", g.e), ("f", g.f)):
                    x = gen[b]
                    for _ in range(1 - cij):
                        x = core.bracket(gen[a], x)
                    yield f"(ad {name}{i})^{1 - cij} {name}{j} = 0", x
