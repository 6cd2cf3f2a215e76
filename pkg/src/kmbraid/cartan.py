"""Generalized Cartan matrices, realizations and (sub-)root data.

Convention throughout: ``C[i][j] = alpha_j(h_i)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

from .linalg import rank, solve


class CartanError(ValueError):
    pass


class DiagonalNotTwo(CartanError):
    pass


class PositiveOffDiagonal(CartanError):
    pass


class AsymmetricZeroPattern(CartanError):
    pass


class NotSymmetrizable(CartanError):
    pass


class NotFiniteType(CartanError):
    pass


class NotIrreducible(CartanError):
    pass


class SubDatumError(CartanError):
    pass


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    labels: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        """Entry addressed by *labels* ``(i, j)``."""
        i, j = ij
        return self.entries[self.labels.index(i)][self.labels.index(j)]

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "GeneralizedCartanMatrix":
        n = self.n
        return GeneralizedCartanMatrix(
            tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n)), self.labels
        )

    def submatrix(self, labels: Sequence[int]) -> "GeneralizedCartanMatrix":
        return GeneralizedCartanMatrix(
            tuple(tuple(self[i, j] for j in labels) for i in labels), tuple(labels)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": self.rows(),
            "symmetrizer": [[d.numerator, d.denominator] for d in symmetrize(self)],
            "labels": [str(i) for i in self.labels],
        }


def validate_gcm(m: Sequence[Sequence[int]], labels: Sequence[int] | None = None) -> GeneralizedCartanMatrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise CartanError("matrix must be square")
    for i in range(n):
        for j in range(n):
            v = m[i][j]
            if int(v) != v:
                raise CartanError(f"non-integer entry at ({i},{j})")
            if i == j and v != 2:
                raise DiagonalNotTwo(f"C[{i}][{i}] = {v}, expected 2")
            if i != j and v > 0:
                raise PositiveOffDiagonal(f"C[{i}][{j}] = {v} > 0")
            if i != j and (v == 0) != (m[j][i] == 0):
                raise AsymmetricZeroPattern(
                    f"C[{i}][{j}] = {v} but C[{j}][{i}] = {m[j][i]}"
                )
    labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
    if len(labels) != n:
        raise CartanError("wrong number of labels")
    return GeneralizedCartanMatrix(tuple(tuple(int(x) for x in r) for r in m), labels)


def components(C: GeneralizedCartanMatrix) -> List[List[int]]:
    """Connected components of the Dynkin graph, as lists of positions."""
    n = C.n
    seen: set = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and C.entries[i][j]:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _scale_vector(C: GeneralizedCartanMatrix, transpose: bool) -> Tuple[Fraction, ...]:
    # d with C_ij d_j = C_ji d_i (transpose=False) or d_i C_ij = d_j C_ji (True)
    n = C.n
    e = C.entries
    d: List[Fraction | None] = [None] * n
    for comp in components(C):
        root = comp[0]
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if j == i or not e[i][j]:
                    continue
                if transpose:
                    dj = d[i] * Fraction(e[i][j], e[j][i])
                else:
                    dj = d[i] * Fraction(e[j][i], e[i][j])
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise NotSymmetrizable(f"inconsistent constraint at ({i},{j})")
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    return tuple(d)  # type: ignore[arg-type]


def symmetrize(C: GeneralizedCartanMatrix) -> Tuple[Fraction, ...]:
    """Smallest positive integers ``d`` with ``C diag(d)`` symmetric."""
    return _scale_vector(C, transpose=False)


def cobracket_scales(C: GeneralizedCartanMatrix) -> Tuple[Fraction, ...]:
    """Smallest positive integers ``d`` with ``diag(d) C`` symmetric.

    These are proportional to the squared lengths of the simple roots and are
    the factors that make ``delta e_i = (d_i/2) e_i ^ h_i`` a cocycle.
    They agree with ``symmetrize`` on simply-laced matrices.
    """
    return _scale_vector(C, transpose=True)


def symmetrized_matrix(C: GeneralizedCartanMatrix) -> List[List[Fraction]]:
    d = symmetrize(C)
    return [[C.entries[i][j] * d[j] for j in range(C.n)] for i in range(C.n)]


def _det(m: List[List[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def is_finite_type(C: GeneralizedCartanMatrix) -> bool:
    """Positive-definiteness of the symmetrized matrix (leading minors)."""
    try:
        s = symmetrized_matrix(C)
    except NotSymmetrizable:
        return False
    return all(_det([row[:k] for row in s[:k]]) > 0 for k in range(1, C.n + 1))


def is_irreducible(C: GeneralizedCartanMatrix) -> bool:
    return len(components(C)) == 1


@dataclass(frozen=True)
class RootDatum:
    """Minimal realization: coroots ``h_i`` in H, roots ``alpha_i`` in H*."""

    cartan: GeneralizedCartanMatrix
    dim: int
    coroots: Tuple[Tuple[Fraction, ...], ...]
    roots: Tuple[Tuple[Fraction, ...], ...]

    @property
    def labels(self) -> Tuple[int, ...]:
        return self.cartan.labels

    def pairing(self, j: int, i: int) -> Fraction:
        """``alpha_j(h_i)`` by positions."""
        return sum((a * h for a, h in zip(self.roots[j], self.coroots[i])), Fraction(0))

    def check(self) -> None:
        n = self.cartan.n
        for i in range(n):
            for j in range(n):
                if self.pairing(j, i) != self.cartan.entries[i][j]:
                    raise CartanError(f"alpha_{j}(h_{i}) != C[{i}][{j}]")
        if rank(self.coroots) != n or rank(self.roots) != n:
            raise CartanError("simple (co)roots are not linearly independent")


def minimal_realization(C: GeneralizedCartanMatrix) -> RootDatum:
    """Coroots are the first ``n`` unit vectors; extra coordinates come last."""
    n = C.n
    r = rank(C.entries)
    dim = 2 * n - r
    # columns of C^T plus greedily chosen unit vectors must span k^n
    cols = [[C.entries[i][j] for i in range(n)] for j in range(n)]
    extra: List[int] = []
    span = [row[:] for row in cols]
    for k in range(n):
        if len(extra) == n - r:
            break
        unit = [1 if t == k else 0 for t in range(n)]
        if rank(span + [unit]) > rank(span):
            span.append(unit)
            extra.append(k)
    coroots = tuple(
        tuple(Fraction(1 if t == i else 0) for t in range(dim)) for i in range(n)
    )
    roots = tuple(
        tuple(Fraction(C.entries[i][j]) for i in range(n))
        + tuple(Fraction(1 if j == k else 0) for k in extra)
        for j in range(n)
    )
    datum = RootDatum(C, dim, coroots, roots)
    datum.check()
    return datum


# --- finite root systems -------------------------------------------------

def positive_roots(C: GeneralizedCartanMatrix, limit: int = 500) -> List[Tuple[int, ...]]:
    """Positive roots as coefficient vectors, ordered by height then reverse-lex.

    Generated as the orbit of the simple roots under simple reflections
    ``s_i(b) = b - (sum_j C_ij b_j) alpha_i``.
    """
    if not is_finite_type(C):
        raise NotFiniteType("root enumeration needs a finite-type matrix")
    n = C.n
    e = C.entries
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(n):
                c = sum(e[i][j] * b[j] for j in range(n))
                nb = tuple(b[k] - (c if k == i else 0) for k in range(n))
                if all(x >= 0 for x in nb) and any(nb) and nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
        if len(seen) > limit:
            raise NotFiniteType("root enumeration did not terminate")
    return sorted(seen, key=root_order_key)


def root_order_key(b: Tuple[int, ...]):
    return (sum(b), tuple(-x for x in b))


@dataclass(frozen=True)
class HighestRootData:
    a: Tuple[int, ...]
    c: Tuple[int, ...]


def highest_root(C: GeneralizedCartanMatrix) -> HighestRootData:
    if not is_finite_type(C):
        raise NotFiniteType("highest root needs a finite-type matrix")
    if not is_irreducible(C):
        raise NotIrreducible("highest root needs an irreducible matrix")
    roots = positive_roots(C)
    a = tuple(max(b[i] for b in roots) for i in range(C.n))
    if a not in set(roots):
        raise CartanError("no coefficient-wise maximal root")
    eps = cobracket_scales(C)
    n = C.n
    # (theta, theta)/2 with (alpha_i, alpha_j) = eps_i C_ij
    eps_theta = Fraction(
        sum(a[i] * a[j] * eps[i] * C.entries[i][j] for i in range(n) for j in range(n)), 2
    )
    c = tuple(a[i] * eps[i] / eps_theta for i in range(n))
    if any(x.denominator != 1 for x in c):
        raise CartanError("non-integral coroot coefficients")
    return HighestRootData(a, tuple(int(x) for x in c))


def affinize(C: GeneralizedCartanMatrix) -> GeneralizedCartanMatrix:
    """Untwisted affine matrix indexed ``0..l``; lower-right block is ``C``."""
    if not is_finite_type(C):
        raise NotFiniteType("affinize needs a finite-type matrix")
    if not is_irreducible(C):
        raise NotIrreducible("affinize needs an irreducible matrix")
    hr = highest_root(C)
    l = C.n
    e = C.entries
    m = [[0] * (l + 1) for _ in range(l + 1)]
    m[0][0] = 2
    for i in range(l):
        m[i + 1][0] = -sum(hr.a[j] * e[i][j] for j in range(l))
        m[0][i + 1] = -sum(hr.c[k] * e[k][i] for k in range(l))
        for j in range(l):
            m[i + 1][j + 1] = e[i][j]
    return validate_gcm(m, labels=(0,) + tuple(range(1, l + 1)))


# --- sub-root data -------------------------------------------------------

@dataclass(frozen=True)
class SubRootDatum:
    inner: RootDatum
    outer: RootDatum
    iota: Mapping[int, int]
    s: Tuple[Tuple[Fraction, ...], ...]  # s[k] = image of the k-th basis vector of H'
    deleted: FrozenSet[int] = field(default_factory=frozenset)

    def check(self) -> None:
        inner, outer = self.inner, self.outer
        for i in inner.labels:
            for j in inner.labels:
                if inner.cartan[i, j] != outer.cartan[self.iota[i], self.iota[j]]:
                    raise SubDatumError(f"C'[{i},{j}] != C[iota({i}),iota({j})]")
        pos = {lab: k for k, lab in enumerate(outer.labels)}
        for k, lab in enumerate(inner.labels):
            img = _apply(self.s, inner.coroots[k])
            if img != list(outer.coroots[pos[self.iota[lab]]]):
                raise SubDatumError(f"s(h'_{lab}) != h_{self.iota[lab]}")
        # s^*(alpha'_i) = alpha_iota(i): alpha_iota(i) o s == alpha'_i on a basis of H'
        for k, lab in enumerate(inner.labels):
            alpha = outer.roots[pos[self.iota[lab]]]
            for b in range(inner.dim):
                v = sum((x * y for x, y in zip(alpha, self.s[b])), Fraction(0))
                if v != inner.roots[k][b]:
                    raise SubDatumError(f"s*(alpha'_{lab}) != alpha_{self.iota[lab]}")
        if rank(self.s) != inner.dim:
            raise SubDatumError("s is not injective")

    def chi(self, i: int) -> int:
        return 1 if i in self.deleted else 0


def _apply(s, v) -> List[Fraction]:
    dim = len(s[0]) if s else 0
    out = [Fraction(0)] * dim
    for k, x in enumerate(v):
        if x:
            for t in range(dim):
                out[t] += x * s[k][t]
    return out


def subdatum(inner: RootDatum, outer: RootDatum, iota: Mapping[int, int]) -> SubRootDatum:
    """Build ``s`` so that coroots map to coroots and roots pull back."""
    pos = {lab: k for k, lab in enumerate(outer.labels)}
    if len(set(iota.values())) != len(iota):
        raise SubDatumError("iota is not injective")
    images: List[Tuple[Fraction, ...]] = [None] * inner.dim  # type: ignore[list-item]
    n_in = inner.cartan.n
    for k, lab in enumerate(inner.labels):
        images[k] = outer.coroots[pos[iota[lab]]]
    # remaining basis vectors of H' (beyond the coroots): solve alpha_iota(i)(x) = alpha'_i(e_b)
    for b in range(n_in, inner.dim):
        a = [list(outer.roots[pos[iota[lab]]]) for lab in inner.labels]
        rhs = [inner.roots[k][b] for k in range(n_in)]
        # add a fresh direction so the image stays independent
        for extra in range(outer.dim):
            probe = [[1 if t == extra else 0 for t in range(outer.dim)]]
            x = solve(a + probe, rhs + [1])
            if x is not None and rank([list(v) for v in images[:b]] + [x]) == b + 1:
                images[b] = tuple(x)
                break
        else:
            raise SubDatumError("cannot extend s to the extra coordinates of H'")
    sd = SubRootDatum(
        inner, outer, dict(iota), tuple(images),
        frozenset(set(outer.labels) - set(iota.values())),
    )
    sd.check()
    return sd


def affinization_subdatum(C: GeneralizedCartanMatrix) -> SubRootDatum:
    Ct = affinize(C)
    return subdatum(minimal_realization(C), minimal_realization(Ct), {i: i for i in C.labels})


def deletion_subdatum(C: GeneralizedCartanMatrix, deleted: Sequence[int]) -> SubRootDatum:
    """Sub-root datum obtained by deleting the nodes ``deleted`` of ``C``."""
    keep = [i for i in C.labels if i not in set(deleted)]
    inner = minimal_realization(C.submatrix(keep))
    return subdatum(inner, minimal_realization(C), {i: i for i in keep})


@dataclass(frozen=True)
class Grading:
    """Z-grading of L(C) from a sub-root datum, on Chevalley generators."""

    e: Mapping[int, int]
    f: Mapping[int, int]

    def root_degree(self, coeffs: Mapping[int, int]) -> int:
        """Degree of a root space ``sum_i b_i alpha_i``."""
        return sum(b * self.e[i] for i, b in coeffs.items())


def grading_from_subdatum(sd: SubRootDatum) -> Grading:
    e = {i: sd.chi(i) for i in sd.outer.labels}
    return Grading(e, {i: -v for i, v in e.items()})


# --- named matrices ------------------------------------------------------

def _type_a(n: int) -> List[List[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


NAMED: Dict[str, List[List[int]]] = {
    "A1": _type_a(1),
    "A2": _type_a(2),
    "A3": _type_a(3),
    "A4": _type_a(4),
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
}


def cartan_matrix(name: str) -> GeneralizedCartanMatrix:
    """``"A2"`` etc., ``"affine:A2"`` for the affinization."""
    if name.startswith("affine:"):
        return affinize(cartan_matrix(name.split(":", 1)[1]))
    try:
        return validate_gcm(NAMED[name])
    except KeyError:
        raise CartanError(f"unknown Cartan type {name!r}; known: {sorted(NAMED)}") from None


def type_name(C: GeneralizedCartanMatrix) -> str | None:
    """Name from the table above if ``C`` matches one literally."""
    rows = C.rows()
    for name, m in NAMED.items():
        if m == rows:
            return name
    return None


def load_matrix_json(text: str) -> GeneralizedCartanMatrix:
    """Read ``{"n", "entries", "symmetrizer"?, "labels"?}``."""
    data = json.loads(text)
    entries = data["entries"]
    if "n" in data and data["n"] != len(entries):
        raise CartanError("n does not match entries")
    labels = data.get("labels")
    C = validate_gcm(entries, [int(x) for x in labels] if labels else None)
    if "symmetrizer" in data:
        given = tuple(Fraction(p, q) for p, q in data["symmetrizer"])
        m = C.entries
        if any(m[i][j] * given[j] != m[j][i] * given[i] for i in range(C.n) for j in range(C.n)):
            raise NotSymmetrizable("supplied symmetrizer does not symmetrize C")
    return C
