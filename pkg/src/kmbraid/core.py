"""Sparse exact linear algebra over a Lie algebra basis.

Elements of an algebra ``g`` and of its tensor powers are stored as sparse
maps from basis symbols (resp. tuples of basis symbols) to ``Fraction``.
Every algebra object used here provides

* ``bracket_symbols(a, b)`` -- the bracket of two basis symbols as a mapping,
* ``format_symbol(a)`` -- the grammar form of a symbol,

and its symbols are hashable and totally ordered.  No floating point is used
anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Tuple

Scalar = Fraction


class AlgebraMismatch(ValueError):
    """Operands live in different algebras."""


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/")
        q = int(q)
        if q <= 0:
            raise ValueError(f"denominator must be positive: {text!r}")
        return Fraction(int(p), q)
    return Fraction(int(text))


def format_scalar(q: Fraction) -> str:
    q = to_scalar(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def accumulate(acc: Dict, key, coeff) -> None:
    """``acc[key] += coeff`` dropping exact zeros."""
    if not coeff:
        return
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        del acc[key]


class _Sparse:
    __slots__ = ("algebra", "_c", "_hash")

    def __init__(self, algebra, coeffs: Mapping | Iterable | None = None):
        self.algebra = algebra
        c: Dict = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for k, v in items:
                accumulate(c, k, to_scalar(v))
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, algebra, c: Dict):
        # trusted constructor: c already has Fraction values and no zeros
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._c = c
        obj._hash = None
        return obj

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def get(self, key, default=Fraction(0)) -> Fraction:
        return self._c.get(key, default)

    def __getitem__(self, key) -> Fraction:
        return self._c.get(key, Fraction(0))

    def __contains__(self, key) -> bool:
        return key in self._c

    def __iter__(self) -> Iterator:
        return iter(sorted(self._c))

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def terms(self):
        """Terms in canonical (symbol) order."""
        return [(k, self._c[k]) for k in sorted(self._c)]

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            accumulate(c, k, v)
        return type(self)._raw(self.algebra, c)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.algebra, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, _Sparse):
            return NotImplemented
        s = to_scalar(s)
        if not s:
            return type(self)._raw(self.algebra, {})
        return type(self)._raw(self.algebra, {k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / to_scalar(s))

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._c
        if type(other) is not type(self):
            return NotImplemented
        return other.algebra is self.algebra and other._c == self._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._c.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({render(self)})"

    def __str__(self) -> str:
        return render(self)


class LieElement(_Sparse):
    """A finite linear combination of basis symbols."""

    __slots__ = ()


class TensorElement(_Sparse):
    """A finite combination of tuples of basis symbols (order 2 or 3)."""

    __slots__ = ()

    @property
    def order(self) -> int:
        for k in self._c:
            return len(k)
        return 0

    def flip(self) -> "TensorElement":
        """The flip map tau on a 2-tensor."""
        return TensorElement._raw(self.algebra, {(b, a): v for (a, b), v in self._c.items()})

    def permute(self, perm: Tuple[int, ...]) -> "TensorElement":
        """Slot ``k`` of the result holds slot ``perm[k]`` of ``self``."""
        return TensorElement._raw(
            self.algebra, {tuple(key[p] for p in perm): v for key, v in self._c.items()}
        )

    def sweedler(self):
        """Pairs ``(coeff, (sym1, sym2, ...))`` in canonical order."""
        return [(v, k) for k, v in self.terms()]


def basis(algebra, sym) -> LieElement:
    return LieElement._raw(algebra, {sym: Fraction(1)})


def zero(algebra) -> LieElement:
    return LieElement._raw(algebra, {})


def zero_tensor(algebra) -> TensorElement:
    return TensorElement._raw(algebra, {})


def _same_algebra(*xs) -> object:
    alg = xs[0].algebra
    for x in xs[1:]:
        if x.algebra is not alg:
            raise AlgebraMismatch(f"{alg!r} vs {x.algebra!r}")
    return alg


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the basis bracket."""
    alg = _same_algebra(x, y)
    out: Dict = {}
    bs = alg.bracket_symbols
    for a, ca in x._c.items():
        for b, cb in y._c.items():
            for s, v in bs(a, b).items():
                accumulate(out, s, ca * cb * v)
    return LieElement._raw(alg, out)


def tensor(*factors) -> TensorElement:
    """Tensor product of elements (or of a tensor with further elements)."""
    alg = _same_algebra(*factors)
    acc: Dict = {(): Fraction(1)}
    for f in factors:
        nxt: Dict = {}
        for key, v in acc.items():
            for s, c in f._c.items():
                k2 = key + (s if isinstance(f, TensorElement) else (s,))
                accumulate(nxt, k2, v * c)
        acc = nxt
    return TensorElement._raw(alg, acc)


def wedge(a: LieElement, b: LieElement) -> TensorElement:
    """``a (x) b - b (x) a``, expanded."""
    _same_algebra(a, b)
    out: Dict = {}
    for s, ca in a._c.items():
        for t, cb in b._c.items():
            accumulate(out, (s, t), ca * cb)
            accumulate(out, (t, s), -ca * cb)
    return TensorElement._raw(a.algebra, out)


def ad_tensor(x: LieElement, t: TensorElement) -> TensorElement:
    """Adjoint action of ``x`` extended to tensors as a derivation."""
    alg = _same_algebra(x, t)
    bs = alg.bracket_symbols
    out: Dict = {}
    for key, v in t._c.items():
        for pos, s in enumerate(key):
            for a, ca in x._c.items():
                for r, cr in bs(a, s).items():
                    accumulate(out, key[:pos] + (r,) + key[pos + 1:], v * ca * cr)
    return TensorElement._raw(alg, out)


def map_factor(t: TensorElement, pos: int, fn: Callable[[object], Mapping]) -> TensorElement:
    """Apply the linear map ``sym -> fn(sym)`` to factor ``pos`` of ``t``.

    ``fn`` may return a ``LieElement``, a ``TensorElement`` (the slot then
    expands into several factors) or any mapping.
    """
    out: Dict = {}
    for key, v in t._c.items():
        img = fn(key[pos])
        for s, c in img.items():
            mid = s if isinstance(img, TensorElement) else (s,)
            accumulate(out, key[:pos] + mid + key[pos + 1:], v * c)
    return TensorElement._raw(t.algebra, out)


def restrict(t: _Sparse, keep: Callable[[tuple], bool]) -> _Sparse:
    """Keep only the terms whose key satisfies ``keep``."""
    return type(t)._raw(t.algebra, {k: v for k, v in t._c.items() if keep(k)})


def symmetric_part(r: TensorElement) -> TensorElement:
    """``(r + tau r) / 2``."""
    return (r + r.flip()) * Fraction(1, 2)


def antisymmetric_part(r: TensorElement) -> TensorElement:
    return (r - r.flip()) * Fraction(1, 2)


def schouten_bracket(r: TensorElement, s: TensorElement) -> TensorElement:
    """``[r12, s13] + [r12, s23] + [r13, s23]`` as a 3-tensor."""
    alg = _same_algebra(r, s)
    bs = alg.bracket_symbols
    out: Dict = {}
    for (a, b), cr in r._c.items():
        for (c, d), cs in s._c.items():
            w = cr * cs
            for x, v in bs(a, c).items():
                accumulate(out, (x, b, d), w * v)
            for x, v in bs(b, c).items():
                accumulate(out, (a, x, d), w * v)
            for x, v in bs(b, d).items():
                accumulate(out, (a, c, x), w * v)
    return TensorElement._raw(alg, out)


def cybe_defect(r: TensorElement) -> TensorElement:
    return schouten_bracket(r, r)


def bracket_13_12(r: TensorElement) -> TensorElement:
    """``[r13, r12] = [r(1), r'(1)] (x) r'(2) (x) r(2)``."""
    bs = r.algebra.bracket_symbols
    out: Dict = {}
    for (a, b), c1 in r._c.items():
        for (a2, b2), c2 in r._c.items():
            for x, v in bs(a, a2).items():
                accumulate(out, (x, b2, b), c1 * c2 * v)
    return TensorElement._raw(r.algebra, out)


def cyclic_sum(t: TensorElement) -> TensorElement:
    """Sum of the three cyclic rotations of a 3-tensor."""
    return t + t.permute((1, 2, 0)) + t.permute((2, 0, 1))


def tensor_action(r: TensorElement, t: TensorElement, act: Callable | None = None) -> TensorElement:
    """``r |> t = r(1) |> t(1) (x) r(2) |> t(2)`` for 2-tensors.

    ``act(a, b)`` returns the action of basis symbol ``a`` on basis symbol
    ``b``; it defaults to the bracket of the ambient algebra.
    """
    act = act or r.algebra.bracket_symbols
    out: Dict = {}
    for (a, b), cr in r._c.items():
        for (x, y), ct in t._c.items():
            ax = act(a, x)
            if not ax:
                continue
            by = act(b, y)
            for s1, v1 in ax.items():
                for s2, v2 in by.items():
                    accumulate(out, (s1, s2), cr * ct * v1 * v2)
    return TensorElement._raw(t.algebra, out)


def render_coefficient_term(coeff: Fraction, body: str, first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    text = body if mag == 1 else f"{format_scalar(mag)}*{body}"
    if first:
        return f"-{text}" if sign == "-" else text
    return f" {sign} {text}"


def render(x: _Sparse, joiner: str = "(x)") -> str:
    """Canonical text: ``p/q*SYM`` terms, tensor factors joined by ``(x)``."""
    if not x:
        return "0"
    fmt = x.algebra.format_symbol
    parts = []
    for key, v in x.terms():
        body = joiner.join(fmt(s) for s in key) if isinstance(x, TensorElement) else fmt(key)
        parts.append(render_coefficient_term(v, body, not parts))
    return "".join(parts)


def render_wedges(t: TensorElement, wedge_sym: str = "/\\") -> str:
    """Render an antisymmetric 2-tensor as a sum of ``(a)/\\(b)`` with ``a < b``.

    Raises ``ValueError`` if ``t`` is not antisymmetric.
    """
    if t + t.flip():
        raise ValueError("tensor is not antisymmetric")
    if not t:
        return "0"
    fmt = t.algebra.format_symbol
    parts = []
    for (a, b), v in t.terms():
        if a < b:
            parts.append(render_coefficient_term(v, f"({fmt(a)}){wedge_sym}({fmt(b)})", not parts))
    return "".join(parts)
