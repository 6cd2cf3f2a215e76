"""Double-bosonisation ``b >| g0 |< c^op`` and single bosonisation ``b >| g0``.

A graded Kac-Moody bialgebra splits into its negative part ``b``, its
degree-0 part ``g0`` and its positive part.  The positive part, with the
opposite bracket, is the braided-Lie bialgebra ``c`` dual to ``b`` through
the invariant form.  Here the bracket and cobracket of the assembled
algebra are computed from the pieces only:

* ``[xi, x] = xi |> x`` and ``[xi, phi] = xi |> phi`` for ``xi`` in ``g0``;
* ``[x, phi] = x1 <phi, x2> + phi1 <phi2, x> + 2 r+^(1) <phi, r+^(2) |> x>``;
* ``delta x = dbar x + r^(2) (x) r^(1)|>x - r^(1)|>x (x) r^(2)``;
* ``delta phi = dbar phi + r^(2)|>phi (x) r^(1) - r^(1) (x) r^(2)|>phi``,

where ``x1 (x) x2 = dbar x``.  Basis symbols are those of the ambient
algebra, so the assembled tables can be compared with it entry by entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

from . import core
from .affine import AffineLoopAlgebra, DegreeWindow, basis_window
from .bialgebra import Report, canonical_r, engine, verify_lie_bialgebra, verify_quasitriangular
from .braiding import BraidedLieBialgebra, GradedProjection, degree_zero_r, graded_projection
from .cartan import GeneralizedCartanMatrix, deletion_subdatum, grading_from_subdatum
from .core import LieElement, TensorElement, accumulate
from .finite import build_chevalley


class WindowOverflow(ValueError):
    pass


class PairingMismatch(ValueError):
    pass


class InfiniteDimensional(ValueError):
    pass


@dataclass
class DualPairing:
    """``<phi, x> = (phi, x) / kappa`` between the carrier ``c`` and ``b``.

    ``(,)`` is the invariant form and ``kappa`` the root-vector coefficient of
    the canonical r (1 in simply-laced types), so that the root part of r is
    ``sum f^a (x) e_a`` for dual bases.
    """

    b: BraidedLieBialgebra
    c: BraidedLieBialgebra
    kappa: Fraction = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.kappa is None:
            alg = self.b.ambient
            fin = alg.finite if isinstance(alg, AffineLoopAlgebra) else alg
            self.kappa = canonical_r(fin).kappa

    def pair_symbols(self, phi, x) -> Fraction:
        if not self.c.in_carrier(phi) or not self.b.in_carrier(x):
            raise PairingMismatch("pairing needs (c, b) arguments")
        return self.b.ambient.form_symbols(phi, x) / self.kappa

    def pair(self, phi: LieElement, x: LieElement) -> Fraction:
        return sum((u * v * self.pair_symbols(a, s) for a, u in phi.items() for s, v in x.items()), Fraction(0))

    def pair2(self, t: TensorElement, u: TensorElement) -> Fraction:
        """``<a (x) b, g (x) h> = <a, g><b, h>``."""
        out = Fraction(0)
        for (a, b), v in t.items():
            for (g, h), w in u.items():
                p = self.pair_symbols(a, g)
                if p:
                    out += v * w * p * self.pair_symbols(b, h)
        return out

    def dual_basis(self, b_syms: Sequence) -> Dict[object, LieElement]:
        """``e_a -> f^a`` with ``<f^a, e_b> = delta_ab`` (root vectors pair 1-1)."""
        alg = self.b.ambient
        out: Dict[object, LieElement] = {}
        for s in b_syms:
            partners = [t for t in self._c_candidates(s) if alg.form_symbols(t, s)]
            if len(partners) != 1:
                raise PairingMismatch(f"no unique dual partner for {alg.format_symbol(s)}")
            t = partners[0]
            out[s] = core.basis(alg, t) / self.pair_symbols(t, s)
        return out

    def _c_candidates(self, s) -> List:
        alg = self.b.ambient
        if isinstance(alg, AffineLoopAlgebra):
            return [(0, -s[1], x) for x in range(alg.finite.dim)]
        return [t for t in range(alg.dim) if self.c.in_carrier(t)]

    def verify(self, b_syms: Sequence, c_syms: Sequence) -> Report:
        """Both duality axioms on all basis combinations."""
        alg = self.b.ambient
        rep = Report("pairing duality")
        cb = {s: core.basis(alg, s) for s in c_syms}
        bb = {s: core.basis(alg, s) for s in b_syms}
        for a in c_syms:
            for b_ in c_syms:
                br = self.c.bracket(cb[a], cb[b_])
                t = core.tensor(cb[a], cb[b_])
                for g in b_syms:
                    lhs = self.pair(core.restrict(br, self.c.in_carrier), bb[g])
                    rhs = self.pair2(t, self.b.braided_cobracket(bb[g]))
                    rep.check(lhs == rhs, check="<[a,b],g> = <a(x)b, dbar g>",
                              a=alg.format_symbol(a), b=alg.format_symbol(b_), g=alg.format_symbol(g))
        for a in c_syms:
            da = self.c.braided_cobracket(cb[a])
            for g in b_syms:
                for h in b_syms:
                    lhs = self.pair2(da, core.tensor(bb[g], bb[h]))
                    rhs = self.pair(cb[a], core.restrict(self.b.bracket(bb[g], bb[h]), self.b.in_carrier))
                    rep.check(lhs == rhs, check="<dbar a, g(x)h> = <a,[g,h]>",
                              a=alg.format_symbol(a), g=alg.format_symbol(g), h=alg.format_symbol(h))
        return rep


class DoubleBosonisation:
    """Bracket and cobracket of ``b + g0 + c`` assembled from the pieces."""

    def __init__(self, b: BraidedLieBialgebra, c: BraidedLieBialgebra, pairing: DualPairing,
                 r: TensorElement, window: DegreeWindow | None = None, name: str = "dbos"):
        if b.side != -1 or c.side != 1:
            raise ValueError("b must be the negative side and c the positive side")
        self.ambient = b.ambient
        self.b, self.c, self.pairing = b, c, pairing
        self.projection: GradedProjection = b.projection
        self.r = r
        self.r_plus = core.symmetric_part(r)
        self.window = window
        self.name = name
        self.overflows: List = []
        self._g0_delta = engine(self.ambient)

    # --- symbols ---
    def piece(self, s) -> str:
        d = self.projection.degree(s)
        return "b" if d < 0 else ("c" if d > 0 else "g")

    def format_symbol(self, s) -> str:
        return self.ambient.format_symbol(s)

    @property
    def basis_symbols(self) -> List:
        if isinstance(self.ambient, AffineLoopAlgebra):
            return basis_window(self.ambient, self.window or DegreeWindow(-1, 1))
        return list(range(self.ambient.dim))

    def lift(self, x: LieElement) -> LieElement:
        """Ambient element viewed in the assembled algebra (same symbols)."""
        return LieElement._raw(self, dict(x.items()))

    def lower(self, x) -> object:
        cls = type(x)
        return cls._raw(self.ambient, dict(x.items()))

    # --- bracket ---
    def _mixed(self, x, phi) -> Dict:
        """``[x, phi]`` for ``x`` in b and ``phi`` in c, from the formula."""
        alg = self.ambient
        out: Dict = {}
        pair = self.pairing.pair_symbols
        for (a, b), v in self.b.braided_cobracket_symbol(x).items():
            p = pair(phi, b)
            if p:
                accumulate(out, a, v * p)
        for (a, b), v in self.c.braided_cobracket_symbol(phi).items():
            p = pair(b, x)
            if p:
                accumulate(out, a, v * p)
        for (a, b), v in self.r_plus.items():
            for y, w in alg.bracket_symbols(b, x).items():
                p = pair(phi, y)
                if p:
                    accumulate(out, a, 2 * v * w * p)
        return out

    def bracket_symbols(self, a, b) -> Dict:
        pa, pb = self.piece(a), self.piece(b)
        if (pa, pb) == ("b", "c"):
            out = self._mixed(a, b)
        elif (pa, pb) == ("c", "b"):
            out = {k: -v for k, v in self._mixed(b, a).items()}
        else:
            # g0 brackets, g0 actions, b and c^op subalgebra brackets
            out = dict(self.ambient.bracket_symbols(a, b))
        if self.window is not None and isinstance(self.ambient, AffineLoopAlgebra):
            if any(k[1] not in self.window for k in out):
                self.overflows.append((a, b))
        return out

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        return core.bracket(x, y)

    # --- cobracket ---
    def cobracket_symbol(self, s) -> TensorElement:
        alg = self.ambient
        p = self.piece(s)
        if p == "g":
            return self._g0_delta.symbol(s)
        out: Dict = {}
        side = self.b if p == "b" else self.c
        for k, v in side.braided_cobracket_symbol(s).items():
            accumulate(out, k, v)
        for (r1, r2), v in self.r.items():
            for y, w in alg.bracket_symbols(r1, s).items() if p == "b" else alg.bracket_symbols(r2, s).items():
                if p == "b":
                    accumulate(out, (r2, y), v * w)
                    accumulate(out, (y, r2), -v * w)
                else:
                    accumulate(out, (y, r1), v * w)
                    accumulate(out, (r1, y), -v * w)
        return TensorElement._raw(alg, out)

    def cobracket(self, x: LieElement) -> TensorElement:
        out: Dict = {}
        for s, c in x.items():
            for k, v in self.cobracket_symbol(s).items():
                accumulate(out, k, c * v)
        return TensorElement._raw(self, out)

    def __repr__(self) -> str:
        return f"DoubleBosonisation({self.name})"


def build_dbos(b: BraidedLieBialgebra, c: BraidedLieBialgebra, pairing: DualPairing | None = None,
               r: TensorElement | None = None, window: DegreeWindow | None = None,
               name: str = "dbos") -> DoubleBosonisation:
    pairing = pairing or DualPairing(b, c)
    r = r if r is not None else b.r
    if isinstance(b.ambient, AffineLoopAlgebra) and window is None:
        raise InfiniteDimensional("affine double-bosonisation needs a degree window")
    return DoubleBosonisation(b, c, pairing, r, window, name)


def node_deletion(C: GeneralizedCartanMatrix, deleted: Sequence[int]):
    """``(ambient, b, c)`` for the grading of a node-deletion sub-root datum."""
    alg = build_chevalley(C)
    sd = deletion_subdatum(C, deleted)
    gp = graded_projection(alg, grading_from_subdatum(sd))
    r = degree_zero_r(alg, gp)
    b = BraidedLieBialgebra(alg, gp, side=-1, r=r)
    c = BraidedLieBialgebra(alg, gp, side=1, r=r)
    return alg, b, c


def affinization_pieces(C: GeneralizedCartanMatrix):
    alg = AffineLoopAlgebra(build_chevalley(C))
    gp = graded_projection(alg)
    r = degree_zero_r(alg, gp)
    return alg, BraidedLieBialgebra(alg, gp, side=-1, r=r), BraidedLieBialgebra(alg, gp, side=1, r=r)


def r_new(d: DoubleBosonisation) -> TensorElement:
    """``r + sum_a f^a (x) e_a`` over a basis ``e_a`` of b (finite case only)."""
    alg = d.ambient
    if isinstance(alg, AffineLoopAlgebra):
        raise InfiniteDimensional("r_new needs a finite-dimensional b")
    b_syms = d.b.all_symbols()
    out: Dict = dict(d.r.items())
    for e, f in d.pairing.dual_basis(b_syms).items():
        for t, v in f.items():
            accumulate(out, (t, e), v)
    return TensorElement(d, out)


# --- reports -------------------------------------------------------------------

def compare_brackets(d: DoubleBosonisation, syms: Sequence, name: str) -> Report:
    alg = d.ambient
    rep = Report(name)
    for a in syms:
        for b in syms:
            got = LieElement(alg, d.bracket_symbols(a, b))
            exp = LieElement(alg, alg.bracket_symbols(a, b))
            rep.check(got == exp, x=alg.format_symbol(a), y=alg.format_symbol(b), expected=exp, got=got)
    return rep


def compare_cobrackets(d: DoubleBosonisation, syms: Sequence, name: str) -> Report:
    alg = d.ambient
    amb = engine(alg)
    rep = Report(name)
    for s in syms:
        got = d.cobracket_symbol(s)
        exp = amb.symbol(s)
        rep.check(got == exp, x=alg.format_symbol(s), expected=exp, got=got)
    return rep


def finite_reconstruction_report(C: GeneralizedCartanMatrix, deleted: Sequence[int]) -> Dict[str, Report]:
    """All finite-case checks: brackets, cobrackets, bialgebra axioms, r_new, pairing."""
    alg, b, c = node_deletion(C, deleted)
    d = build_dbos(b, c, name=f"delete {list(deleted)}")
    syms = list(range(alg.dim))
    reports = {
        "bracket": compare_brackets(d, syms, "dbos bracket vs ambient"),
        "cobracket": compare_cobrackets(d, syms, "dbos cobracket vs ambient"),
        "pairing": d.pairing.verify(b.all_symbols(), c.all_symbols()),
    }
    reports["bialgebra"] = verify_lie_bialgebra(d, delta=d.cobracket, name="dbos bialgebra axioms")
    rn = r_new(d)
    reports["r_new"] = verify_quasitriangular(d, rn, delta=d.cobracket, name="r_new quasitriangular")
    return reports


def affine_reconstruction_report(C: GeneralizedCartanMatrix, window: DegreeWindow) -> Dict[str, Report]:
    alg, b, c = affinization_pieces(C)
    d = build_dbos(b, c, window=window, name=f"affinization {window}")
    syms = basis_window(alg, window)
    rep = {
        "bracket": compare_brackets(d, syms, f"dbos bracket vs loop bracket on {window}"),
        "cobracket": compare_cobrackets(d, syms, f"dbos cobracket vs loop cobracket on {window}"),
        "pairing": d.pairing.verify(b.symbols(list(window.degrees())), c.symbols(list(window.degrees()))),
    }
    rep["bracket"].name += f" ({len(set(d.overflows))} pairs leave the window, compared exactly)"
    return rep


# --- single bosonisation ------------------------------------------------------

class Bosonisation:
    """``b >| g0`` assembled from the carrier, the degree-0 part and the action."""

    def __init__(self, b: BraidedLieBialgebra, window: DegreeWindow | None = None):
        if b.side != -1:
            raise ValueError("bosonisation uses the negative carrier")
        self.b = b
        self.ambient = b.ambient
        self.window = window
        self.overflows: List = []

    def format_symbol(self, s) -> str:
        return self.ambient.format_symbol(s)

    def _deg(self, s) -> int:
        return self.b.projection.degree(s)

    def bracket_symbols(self, a, b_) -> Dict:
        if self._deg(a) > 0 or self._deg(b_) > 0:
            raise ValueError("bosonisation lives in non-positive degrees")
        # g0 bracket, action xi |> x, and the carrier bracket
        out = dict(self.ambient.bracket_symbols(a, b_))
        if self.window is not None and any(self._deg(k) not in self.window for k in out if k[0] == 0):
            self.overflows.append((a, b_))
        return out

    def cobracket_symbol(self, s) -> TensorElement:
        """``dbar x + beta(x) - tau beta(x)`` on the carrier, ``delta`` on g0."""
        if self._deg(s) == 0:
            return engine(self.ambient).symbol(s)
        x = core.basis(self.ambient, s)
        beta = self.b.coaction(x)
        return self.b.braided_cobracket(x) + beta - beta.flip()


def build_bosonisation(b: BraidedLieBialgebra, window: DegreeWindow | None = None) -> Bosonisation:
    return Bosonisation(b, window)


def bosonisation_report(C: GeneralizedCartanMatrix, window: DegreeWindow) -> Dict[str, Report]:
    alg, b, _ = affinization_pieces(C)
    bos = build_bosonisation(b, window)
    syms = [s for s in basis_window(alg, window)]
    amb = engine(alg)
    br = Report(f"bosonisation bracket vs B- on {window}")
    ideal = Report("carrier is an ideal")
    for a in syms:
        for s in syms:
            got = LieElement(alg, bos.bracket_symbols(a, s))
            exp = alg.bracket(core.basis(alg, a), core.basis(alg, s))
            br.check(got == exp, x=alg.format_symbol(a), y=alg.format_symbol(s), expected=exp, got=got)
            if b.projection.degree(a) == 0 and b.in_carrier(s):
                ideal.check(all(b.in_carrier(k) for k in got.keys()), x=alg.format_symbol(a), y=alg.format_symbol(s))
    co = Report(f"bosonisation cobracket vs B- on {window}")
    for s in syms:
        got, exp = bos.cobracket_symbol(s), amb.symbol(s)
        co.check(got == exp, x=alg.format_symbol(s), expected=exp, got=got)
    return {"bracket": br, "cobracket": co, "ideal": ideal}
