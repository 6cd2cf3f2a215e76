"""Finite-type simple Lie algebras in a Chevalley basis.

Root vectors are defined by iterated brackets of generators: for a
non-simple positive root ``g`` let ``i`` be the smallest index with
``b = g - alpha_i`` a root and ``p`` the largest integer with
``b - p alpha_i`` a root; then

    e_g = [e_i, e_b] / (p + 1),    f_g = [f_b, f_i] / (p + 1).

For type A this gives ``E12 = [E1, E2]`` and ``F21 = [F2, F1]``.  The action
of ``ad e_j`` and ``ad f_j`` on positive root vectors is computed by
induction on height, using that ``ad f_j`` is injective on ``g_g`` whenever
``g - alpha_j`` is a root.  Negative root vectors follow from the Chevalley
involution ``omega``, which satisfies ``omega(e_g) = -f_g``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Tuple

from . import core
from .cartan import (
    CartanError,
    type_name,
    GeneralizedCartanMatrix,
    NotFiniteType,
    NotIrreducible,
    RootDatum,
    cobracket_scales,
    highest_root,
    is_finite_type,
    is_irreducible,
    minimal_realization,
    positive_roots,
)
from .core import LieElement, accumulate

MAX_RANK = 4


class RankTooLarge(CartanError):
    pass


Sparse = Dict[int, Fraction]
Matrix = Dict[int, Sparse]  # column symbol -> image


def _apply(m: Matrix, v: Sparse) -> Sparse:
    out: Sparse = {}
    for s, c in v.items():
        for t, x in m.get(s, {}).items():
            accumulate(out, t, c * x)
    return out


def _commutator(a: Matrix, b: Matrix, dim: int, scale: Fraction) -> Matrix:
    out: Matrix = {}
    for s in range(dim):
        ab = _apply(a, b.get(s, {}))
        ba = _apply(b, a.get(s, {}))
        col: Sparse = {}
        for t, x in ab.items():
            accumulate(col, t, x * scale)
        for t, x in ba.items():
            accumulate(col, t, -x * scale)
        if col:
            out[s] = col
    return out


def _root_name(prefix: str, b: Tuple[int, ...], labels, reverse: bool) -> str:
    digits = []
    for lab, k in zip(labels, b):
        digits += [str(lab)] * k
    if reverse:
        digits.reverse()
    return prefix + "".join(digits)


class ChevalleyAlgebra:
    """Structure constants, invariant form and involution of ``L(C)``.

    Basis symbols are the integers ``0..dim-1``, in the order: positive root
    vectors (by height), Cartan ``H_i``, negative root vectors.
    """

    def __init__(self, C: GeneralizedCartanMatrix):
        if not is_finite_type(C):
            raise NotFiniteType("build_chevalley needs a finite-type matrix")
        if not is_irreducible(C):
            raise NotIrreducible("build_chevalley needs an irreducible matrix")
        if C.n > MAX_RANK:
            raise RankTooLarge(f"rank {C.n} exceeds the cap {MAX_RANK}")
        self.cartan = C
        self.datum: RootDatum = minimal_realization(C)
        self.rank = C.n
        self.positive_roots: List[Tuple[int, ...]] = positive_roots(C)
        npos = len(self.positive_roots)
        self.dim = 2 * npos + self.rank
        self._root_index = {b: k for k, b in enumerate(self.positive_roots)}
        labels = C.labels
        self.names: List[str] = (
            [_root_name("E", b, labels, False) for b in self.positive_roots]
            + [f"H{lab}" for lab in labels]
            + [_root_name("F", b, labels, True) for b in self.positive_roots]
        )
        self._by_name = {n: k for k, n in enumerate(self.names)}
        self.name = type_name(C) or f"L({C.rows()})"
        self._build()

    # --- symbols -------------------------------------------------------
    def e_sym(self, b) -> int:
        return self._root_index[tuple(b)]

    def f_sym(self, b) -> int:
        return len(self.positive_roots) + self.rank + self._root_index[tuple(b)]

    def h_sym(self, pos: int) -> int:
        return len(self.positive_roots) + pos

    def _simple(self, pos: int) -> Tuple[int, ...]:
        return tuple(1 if k == pos else 0 for k in range(self.rank))

    @property
    def basis_symbols(self) -> List[int]:
        return list(range(self.dim))

    def symbol(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def format_symbol(self, s: int) -> str:
        return self.names[s]

    def weight(self, s: int) -> Tuple[int, ...]:
        npos = len(self.positive_roots)
        if s < npos:
            return self.positive_roots[s]
        if s < npos + self.rank:
            return (0,) * self.rank
        return tuple(-x for x in self.positive_roots[s - npos - self.rank])

    def kind(self, s: int) -> str:
        npos = len(self.positive_roots)
        return "e" if s < npos else ("h" if s < npos + self.rank else "f")

    def root_of(self, s: int) -> Tuple[int, ...]:
        w = self.weight(s)
        return tuple(abs(x) for x in w)

    def element(self, coeffs: Mapping) -> LieElement:
        """Element from ``{symbol or name: coefficient}``."""
        return LieElement(self, {(self.symbol(k) if isinstance(k, str) else k): v for k, v in coeffs.items()})

    def __call__(self, name: str) -> LieElement:
        return core.basis(self, self.symbol(name))

    def E(self, i: int) -> LieElement:
        return core.basis(self, self.e_sym(self._simple(self.cartan.labels.index(i))))

    def F(self, i: int) -> LieElement:
        return core.basis(self, self.f_sym(self._simple(self.cartan.labels.index(i))))

    def H(self, i: int) -> LieElement:
        return core.basis(self, self.h_sym(self.cartan.labels.index(i)))

    # --- construction --------------------------------------------------
    def _build(self) -> None:
        C = self.cartan.entries
        n = self.rank
        roots = self.positive_roots
        rootset = set(roots)

        def plus(b, j, k=1):
            return tuple(x + (k if t == j else 0) for t, x in enumerate(b))

        # defining pair (i, b, p+1) for each non-simple positive root
        self._def: Dict[Tuple[int, ...], Tuple[int, Tuple[int, ...], int]] = {}
        for g in roots:
            if sum(g) == 1:
                continue
            i = next(i for i in range(n) if plus(g, i, -1) in rootset)
            b = plus(g, i, -1)
            p = 0
            while plus(b, i, -(p + 1)) in rootset:
                p += 1
            self._def[g] = (i, b, p + 1)

        def hval(b, j):  # beta(h_j)
            return sum(C[j][k] * b[k] for k in range(n))

        # A[(j, b)]: [e_j, e_b] = A e_{b+alpha_j};  B[(j, g)]: [f_j, e_g] = B e_{g-alpha_j}
        A: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
        B: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
        maxh = max(sum(g) for g in roots)
        for height in range(2, maxh + 1):
            layer = [g for g in roots if sum(g) == height]
            for g in layer:
                i, d, q = self._def[g]
                for j in range(n):
                    if plus(g, j, -1) not in rootset:
                        continue
                    val = Fraction(0)
                    if i == j:
                        val -= hval(d, i)
                    dj = plus(d, j, -1)
                    if sum(d) == 1 and d[j] == 1:
                        # [e_i, [f_j, e_j]] = [e_i, -h_j] = alpha_i(h_j) e_i
                        val += C[j][i]
                    elif dj in rootset:
                        val += B[(j, d)] * A[(i, dj)]
                    B[(j, g)] = val / q
            for g in layer:
                for j in range(n):
                    b = plus(g, j, -1)
                    if b not in rootset:
                        continue
                    # [f_j, [e_j, e_b]] = -b(h_j) e_b + [e_j, [f_j, e_b]]
                    val = Fraction(-hval(b, j))
                    bj = plus(b, j, -1)
                    if bj in rootset:
                        val += B[(j, b)] * A[(j, bj)]
                    if B[(j, g)] == 0:
                        raise CartanError("ad f_j not injective; root data inconsistent")
                    A[(j, b)] = val / B[(j, g)]

        dim = self.dim
        ad: Dict[int, Matrix] = {}
        for j in range(n):
            aj = self._simple(j)
            ej, fj, hj = self.e_sym(aj), self.f_sym(aj), self.h_sym(j)
            me: Matrix = {}
            mf: Matrix = {}
            mh: Matrix = {}
            for b in roots:
                eb, fb = self.e_sym(b), self.f_sym(b)
                up = plus(b, j)
                if up in rootset:
                    me[eb] = {self.e_sym(up): A[(j, b)]}
                    mf[fb] = {self.f_sym(up): -A[(j, b)]}
                if b == aj:
                    mf[eb] = {hj: Fraction(-1)}
                    me[fb] = {hj: Fraction(1)}
                else:
                    dn = plus(b, j, -1)
                    if dn in rootset:
                        mf[eb] = {self.e_sym(dn): B[(j, b)]}
                        me[fb] = {self.f_sym(dn): -B[(j, b)]}
                w = Fraction(hval(b, j))
                if w:
                    mh[eb] = {eb: w}
                    mh[fb] = {fb: -w}
            for k in range(n):
                hk = self.h_sym(k)
                if C[k][j]:
                    me[hk] = {ej: Fraction(-C[k][j])}
                    mf[hk] = {fj: Fraction(C[k][j])}
            ad[ej], ad[fj], ad[hj] = me, mf, mh
        for g in roots:
            if g in self._def:
                i, d, q = self._def[g]
                ai = self._simple(i)
                ad[self.e_sym(g)] = _commutator(ad[self.e_sym(ai)], ad[self.e_sym(d)], dim, Fraction(1, q))
                ad[self.f_sym(g)] = _commutator(ad[self.f_sym(d)], ad[self.f_sym(ai)], dim, Fraction(1, q))
        self._ad = ad
        self._table: List[List[Dict[int, Fraction]]] = [
            [dict(ad[a].get(b, {})) for b in range(dim)] for a in range(dim)
        ]

    # --- Lie structure -------------------------------------------------
    def bracket_symbols(self, a: int, b: int) -> Dict[int, Fraction]:
        return self._table[a][b]

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        return core.bracket(x, y)

    def omega_symbol(self, s: int) -> Tuple[int, Fraction]:
        npos = len(self.positive_roots)
        if s < npos:
            return s + npos + self.rank, Fraction(-1)
        if s < npos + self.rank:
            return s, Fraction(-1)
        return s - npos - self.rank, Fraction(-1)

    def omega(self, x: LieElement) -> LieElement:
        out: Dict = {}
        for s, c in x.items():
            t, v = self.omega_symbol(s)
            accumulate(out, t, c * v)
        return LieElement(self, out)

    # --- invariant form ------------------------------------------------
    @cached_property
    def _killing(self) -> Dict[Tuple[int, int], Fraction]:
        dim = self.dim
        out: Dict[Tuple[int, int], Fraction] = {}
        for a in range(dim):
            for b in range(a, dim):
                if any(x + y for x, y in zip(self.weight(a), self.weight(b))):
                    continue
                tr = Fraction(0)
                for s in range(dim):
                    for t, x in self._ad[b].get(s, {}).items():
                        tr += x * self._ad[a].get(t, {}).get(s, 0)
                if tr:
                    out[(a, b)] = out[(b, a)] = tr
        return out

    @cached_property
    def highest_root_data(self):
        return highest_root(self.cartan)

    @cached_property
    def h_theta(self) -> LieElement:
        """Coroot of the highest root, ``sum c_i H_i``."""
        c = self.highest_root_data.c
        return LieElement(self, {self.h_sym(k): c[k] for k in range(self.rank)})

    @cached_property
    def _form(self) -> Dict[Tuple[int, int], Fraction]:
        k = self._killing
        ht = self.h_theta
        kk = sum((ca * cb * k.get((a, b), 0) for a, ca in ht.items() for b, cb in ht.items()), Fraction(0))
        scale = Fraction(2) / kk
        return {key: v * scale for key, v in k.items()}

    def form_symbols(self, a: int, b: int) -> Fraction:
        return self._form.get((a, b), Fraction(0))

    def invariant_form(self, x: LieElement, y: LieElement) -> Fraction:
        """Invariant symmetric form normalized by ``<h_theta, h_theta> = 2``."""
        core._same_algebra(x, y)
        return sum(
            (cx * cy * self._form.get((a, b), 0) for a, cx in x.items() for b, cy in y.items()),
            Fraction(0),
        )

    @cached_property
    def dual_basis(self) -> Dict[int, LieElement]:
        """``s -> s^*`` with ``<s, t^*> = delta_st``."""
        out: Dict[int, LieElement] = {}
        npos = len(self.positive_roots)
        for s in range(self.dim):
            kind = self.kind(s)
            if kind == "e":
                t = s + npos + self.rank
                out[s] = LieElement(self, {t: 1 / self._form[(s, t)]})
            elif kind == "f":
                t = s - npos - self.rank
                out[s] = LieElement(self, {t: 1 / self._form[(s, t)]})
        # Cartan block: invert the Gram matrix
        hs = [self.h_sym(k) for k in range(self.rank)]
        gram = [[self._form.get((a, b), Fraction(0)) for b in hs] for a in hs]
        inv = _invert(gram)
        for i, a in enumerate(hs):
            out[a] = LieElement(self, {b: inv[j][i] for j, b in enumerate(hs)})
        return out

    @cached_property
    def casimir(self) -> core.TensorElement:
        """Split Casimir ``sum_s s (x) s^*``."""
        out: Dict = {}
        for s in range(self.dim):
            for t, c in self.dual_basis[s].items():
                accumulate(out, (s, t), c)
        return core.TensorElement(self, out)

    # --- highest-root vectors ------------------------------------------
    @cached_property
    def theta_vectors(self) -> Tuple[LieElement, LieElement, LieElement]:
        """``(E0, F0, H_theta)`` with ``F0`` in the theta root space.

        ``<F0, E0> = 1`` and ``omega(F0) = -E0``.  These fix ``F0 = lam e_theta``,
        ``E0 = lam f_theta`` with ``lam**2 = 1/<e_theta, f_theta>``; the sign of
        ``lam`` is taken positive.
        """
        theta = tuple(self.highest_root_data.a)
        et, ft = self.e_sym(theta), self.f_sym(theta)
        lam2 = 1 / self.form_symbols(et, ft)
        lam = _rational_sqrt(lam2)
        F0 = LieElement(self, {et: lam})
        E0 = LieElement(self, {ft: lam})
        Ht = self.bracket(F0, E0)
        return E0, F0, Ht

    @property
    def theta_sign_choice(self) -> str:
        return "positive coefficient on the highest-root vector"

    # --- dumps ---------------------------------------------------------
    def to_json(self) -> dict:
        br = []
        for a in range(self.dim):
            for b in range(self.dim):
                v = self._table[a][b]
                if v:
                    br.append([a, b, [[k, c.numerator, c.denominator] for k, c in sorted(v.items())]])
        form = [[a, b, v.numerator, v.denominator] for (a, b), v in sorted(self._form.items())]
        return {"basis": self.names, "bracket": br, "form": form}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def latex_table(self) -> str:
        """Bracket table as a LaTeX array."""
        cols = "c|" + "c" * self.dim
        head = " & ".join([""] + [_tex_name(n) for n in self.names])
        rows = []
        for a in range(self.dim):
            cells = [_tex_name(self.names[a])]
            for b in range(self.dim):
                x = LieElement._raw(self, dict(self._table[a][b]))
                cells.append(_tex_element(x))
            rows.append(" & ".join(cells) + r" \\")
        return "\\begin{array}{" + cols + "}\n" + head + r" \\ \hline" + "\n" + "\n".join(rows) + "\n\\end{array}"

    def __repr__(self) -> str:
        return f"ChevalleyAlgebra({self.cartan.rows()})"


def _tex_name(name: str) -> str:
    return f"{name[0]}_{{{name[1:]}}}"


def _tex_element(x: LieElement) -> str:
    if not x:
        return "0"
    parts = []
    for s, c in x.terms():
        body = _tex_name(x.algebra.names[s])
        mag = abs(c)
        coef = "" if mag == 1 else (str(mag) if mag.denominator == 1 else f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}")
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{coef}{body}")
    return "".join(parts)


def _rational_sqrt(q: Fraction) -> Fraction:
    from math import isqrt

    p, d = q.numerator, q.denominator
    rp, rd = isqrt(p), isqrt(d)
    if q < 0 or rp * rp != p or rd * rd != d:
        raise CartanError(f"{q} has no rational square root")
    return Fraction(rp, rd)


def _invert(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def build_chevalley(C: GeneralizedCartanMatrix, name: str | None = None) -> ChevalleyAlgebra:
    alg = ChevalleyAlgebra(C)
    if name:
        alg.name = name
    return alg


def generator_scales(alg: ChevalleyAlgebra) -> Tuple[Fraction, ...]:
    return cobracket_scales(alg.cartan)
