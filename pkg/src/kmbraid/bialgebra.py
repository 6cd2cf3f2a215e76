"""Kac-Moody Lie bialgebra structure.

The cobracket is prescribed on Chevalley generators,
``delta e_i = (eps_i/2) e_i ^ h_i`` and ``delta f_i = (eps_i/2) f_i ^ h_i``,
vanishes on the Cartan, and is pushed to every basis symbol through the
cocycle identity ``delta[x, y] = ad_x delta y - ad_y delta x``.  To apply it we
need each symbol written as a combination of brackets ``[g, y]`` with ``g`` a
generator and ``y`` already handled; these expressions are the
*certificates* built here by exact row reduction in each weight space.

Both :class:`~kmbraid.finite.ChevalleyAlgebra` and
:class:`~kmbraid.affine.AffineLoopAlgebra` are supported.  In the affine
case certificates are built one loop degree at a time, moving away from 0,
and a symbol of degree ``n`` only uses symbols whose degree lies between 0
and ``n``.  The certificate of a symbol therefore never depends on the window
being swept.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from . import core, linalg
from .affine import AffineLoopAlgebra, DegreeWindow, basis_window
from .core import LieElement, TensorElement, accumulate
from .finite import ChevalleyAlgebra


class CertificateNotFound(LookupError):
    pass


class NormalizationFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class Generator:
    """A Chevalley generator ``element = scale * basis(sym)``."""

    index: int
    kind: str  # "e" or "f"
    sym: object
    element: LieElement
    h: LieElement
    eps: Fraction

    @property
    def scale(self) -> Fraction:
        return self.element[self.sym]


def generators(alg) -> List[Generator]:
    """Chevalley generators of ``alg`` with their coroots and cobracket scales."""
    out: List[Generator] = []
    if isinstance(alg, AffineLoopAlgebra):
        sg = alg.serre_generators
        eps = alg.cobracket_scales
        for i in range(alg.rank + 1):
            for kind, x in (("e", sg.e[i]), ("f", sg.f[i])):
                (sym,) = x.keys()
                out.append(Generator(i, kind, sym, x, sg.h[i], eps[i]))
        return out
    from .cartan import cobracket_scales

    eps = cobracket_scales(alg.cartan)
    for k, lab in enumerate(alg.cartan.labels):
        for kind, x in (("e", alg.E(lab)), ("f", alg.F(lab))):
            (sym,) = x.keys()
            out.append(Generator(k, kind, sym, x, alg.H(lab), eps[k]))
    return out


def cartan_symbols(alg) -> List:
    if isinstance(alg, AffineLoopAlgebra):
        return alg.cartan_symbols()
    return [alg.h_sym(k) for k in range(alg.rank)]


def generator_cobracket(alg, scales: Sequence | None = None) -> Dict[object, TensorElement]:
    """``delta`` on generator symbols and Cartan symbols.

    ``scales`` overrides the per-node factors ``eps_i`` (default: proportional
    to root lengths, see :func:`kmbraid.cartan.cobracket_scales`).
    """
    out: Dict[object, TensorElement] = {}
    for g in generators(alg):
        eps = g.eps if scales is None else core.to_scalar(scales[g.index])
        out[g.sym] = core.wedge(core.basis(alg, g.sym), g.h) * (eps / 2)
    for s in cartan_symbols(alg):
        out[s] = core.zero_tensor(alg)
    return out


@dataclass(frozen=True)
class BracketCertificate:
    """``target = sum lam [x, y] + sum nu z``.

    Every ``x`` is a generator symbol; ``y`` and ``z`` have lower rank.
    """

    target: object
    terms: Tuple[Tuple[Fraction, object, object], ...]
    corrections: Tuple[Tuple[Fraction, object], ...] = ()
    rank: int = 0

    def replay(self, alg) -> LieElement:
        out: Dict = {}
        bs = alg.bracket_symbols
        for lam, x, y in self.terms:
            for s, v in bs(x, y).items():
                accumulate(out, s, lam * v)
        for nu, z in self.corrections:
            accumulate(out, z, nu)
        return LieElement(alg, out)

    def symbols_used(self) -> set:
        return {y for _, _, y in self.terms} | {x for _, x, _ in self.terms} | {z for _, z in self.corrections}


def _sym_degree(alg, s) -> int:
    return s[1] if isinstance(alg, AffineLoopAlgebra) else 0


def _layer_symbols(alg, n: int) -> List:
    if isinstance(alg, AffineLoopAlgebra):
        return [(0, n, x) for x in range(alg.finite.dim)]
    return list(range(alg.dim))


class CertificateBuilder:
    """Degree-layered certificate search.

    ``reverse=True`` scans candidate pairs in the opposite order, which
    usually yields different (equally valid) certificates.
    """

    def __init__(self, alg, reverse: bool = False):
        self.alg = alg
        self.reverse = reverse
        self.gens = generators(alg)
        self.rank: Dict[object, int] = {}
        self.certs: Dict[object, BracketCertificate] = {}
        for s in cartan_symbols(alg):
            self.rank[s] = 0
        for g in self.gens:
            self.rank[g.sym] = 0
        self._done_layers: set = set()
        self._lock = threading.RLock()

    def ensure_symbol(self, s) -> None:
        if s in self.rank:
            return
        n = _sym_degree(self.alg, s)
        self.ensure_degree(n)
        if s not in self.rank:
            raise CertificateNotFound(f"no certificate for {self.alg.format_symbol(s)}")

    def ensure_degree(self, n: int) -> None:
        step = 1 if n > 0 else -1
        with self._lock:
            for m in range(0, n + step, step) if n else [0]:
                if m not in self._done_layers:
                    self._build_layer(m)
                    self._done_layers.add(m)

    def ensure_window(self, w: DegreeWindow) -> None:
        for n in w.degrees():
            self.ensure_degree(n)

    def _build_layer(self, n: int) -> None:
        alg = self.alg
        step = (n > 0) - (n < 0)
        targets = [s for s in _layer_symbols(alg, n) if s not in self.rank]
        if not targets:
            return
        deg = lambda s: _sym_degree(alg, s)
        gens = [g for g in self.gens if deg(g.sym) in ((0, step) if step else (0,))]
        if self.reverse:
            gens = gens[::-1]
        used: set = set()
        rows_by_block: Dict[tuple, List[Tuple[Dict, Tuple]]] = {}
        level = 0
        while targets:
            level += 1
            known = [s for s in self.rank if deg(s) in (n, n - step)]
            known.sort(reverse=self.reverse)
            fresh = False
            for g in gens:
                for y in known:
                    if (g.sym, y) in used:
                        continue
                    used.add((g.sym, y))
                    br = alg.bracket_symbols(g.sym, y)
                    if not br or not any(s in br for s in targets):
                        continue
                    key = alg.weight(next(iter(br)))
                    rows_by_block.setdefault(key, []).append((dict(br), (g.sym, y)))
                    fresh = True
            if not fresh:
                names = ", ".join(alg.format_symbol(s) for s in targets[:5])
                raise CertificateNotFound(f"cannot express {names} from lower symbols")
            tset = set(targets)
            found = []
            for key, rows in rows_by_block.items():
                if not any(s in tset for r, _ in rows for s in r):
                    continue
                cols = lambda s: (0 if s in tset else 1, s)
                keyed = [{cols(s): v for s, v in r.items()} for r, _ in rows]
                for piv, row, combo in linalg.sparse_rref(keyed):
                    if piv[0] != 0:
                        continue
                    if any(c[0] == 0 and c != piv for c in row):
                        continue
                    u = piv[1]
                    terms = tuple((lam, rows[k][1][0], rows[k][1][1]) for k, lam in sorted(combo.items()))
                    corr = tuple((-v, c[1]) for c, v in sorted(row.items()) if c != piv)
                    found.append(BracketCertificate(u, terms, corr, level))
            if not found:
                continue
            for cert in found:
                self.certs[cert.target] = cert
                self.rank[cert.target] = level
            targets = [s for s in targets if s not in self.rank]

    def certificate(self, s) -> BracketCertificate | None:
        self.ensure_symbol(s)
        return self.certs.get(s)


def build_certificates(alg, window: DegreeWindow | None = None, reverse: bool = False) -> Dict[object, BracketCertificate]:
    """Certificates for every non-generator basis symbol (in ``window`` if affine)."""
    b = CertificateBuilder(alg, reverse=reverse)
    if isinstance(alg, AffineLoopAlgebra):
        w = window or DegreeWindow(0, 0)
        b.ensure_window(w)
        return {s: c for s, c in b.certs.items() if _sym_degree(alg, s) in w}
    b.ensure_degree(0)
    return dict(b.certs)


class Cobracket:
    """Memoized cocycle extension of the generator cobracket."""

    def __init__(self, alg, scales: Sequence | None = None, reverse: bool = False,
                 overrides: Dict | None = None):
        self.alg = alg
        self.builder = CertificateBuilder(alg, reverse=reverse)
        self.base = generator_cobracket(alg, scales)
        if overrides:
            self.base.update(overrides)
        self._memo: Dict[object, TensorElement] = dict(self.base)
        self._lock = threading.RLock()

    def symbol(self, s) -> TensorElement:
        v = self._memo.get(s)
        if v is not None:
            return v
        with self._lock:
            if s in self._memo:
                return self._memo[s]
            self.builder.ensure_symbol(s)
            cert = self.builder.certs[s]
            out = core.zero_tensor(self.alg)
            for lam, x, y in cert.terms:
                bx, by = core.basis(self.alg, x), core.basis(self.alg, y)
                out = out + (core.ad_tensor(bx, self.symbol(y)) - core.ad_tensor(by, self.symbol(x))) * lam
            for nu, z in cert.corrections:
                out = out + self.symbol(z) * nu
            self._memo[s] = out
            return out

    def __call__(self, x: LieElement) -> TensorElement:
        out: Dict = {}
        for s, c in x.items():
            for k, v in self.symbol(s).items():
                accumulate(out, k, c * v)
        return TensorElement._raw(self.alg, out)

    def certificate(self, s) -> BracketCertificate | None:
        return self.builder.certificate(s)


_ENGINES: Dict[int, Cobracket] = {}


def engine(alg) -> Cobracket:
    """Shared default cobracket engine of ``alg``."""
    e = _ENGINES.get(id(alg))
    if e is None or e.alg is not alg:
        e = _ENGINES[id(alg)] = Cobracket(alg)
    return e


def cobracket(alg, x: LieElement) -> TensorElement:
    return engine(alg)(x)


# --- quasitriangular structure ----------------------------------------------

@dataclass(frozen=True)
class QuasitriangularStructure:
    r: TensorElement
    kappa: Fraction
    mu: Fraction

    @property
    def r_plus(self) -> TensorElement:
        return core.symmetric_part(self.r)


def coboundary(r: TensorElement, x: LieElement) -> TensorElement:
    """``ad_x r``."""
    return core.ad_tensor(x, r)


def _root_part(alg: ChevalleyAlgebra) -> TensorElement:
    out: Dict = {}
    for b in alg.positive_roots:
        e, f = alg.e_sym(b), alg.f_sym(b)
        accumulate(out, (e, f), 1 / alg.form_symbols(e, f))
    return TensorElement(alg, out)


def _cartan_part(alg: ChevalleyAlgebra) -> TensorElement:
    out: Dict = {}
    for k in range(alg.rank):
        h = alg.h_sym(k)
        for t, v in alg.dual_basis[h].items():
            accumulate(out, (h, t), v)
    return TensorElement(alg, out)


def canonical_r(alg: ChevalleyAlgebra, delta: Callable | None = None) -> QuasitriangularStructure:
    """``kappa * sum e_a (x) f_a / <e_a, f_a> + mu * sum H^k (x) H_k``.

    ``kappa`` and ``mu`` are solved from ``ad_x r = delta x`` on all Chevalley
    generators.
    """
    delta = delta or engine(alg)
    A, B = _root_part(alg), _cartan_part(alg)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for g in generators(alg):
        x = g.element
        a, b, target = coboundary(A, x), coboundary(B, x), delta(x)
        for key in sorted(set(a.keys()) | set(b.keys()) | set(target.keys())):
            rows.append([a[key], b[key]])
            rhs.append(target[key])
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise NormalizationFailure("no scaling of the standard r reproduces the generator cobracket")
    kappa, mu = sol
    return QuasitriangularStructure(A * kappa + B * mu, kappa, mu)


# --- reports -------------------------------------------------------------------

@dataclass
class Report:
    """Outcome of a verification sweep."""

    name: str
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    max_failures: int = 20

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, **info) -> None:
        self.checked += 1
        if not cond and len(self.failures) < self.max_failures:
            self.failures.append({k: (str(v) if not isinstance(v, (int, str)) else v) for k, v in info.items()})

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures += other.failures
        return self

    def to_json(self) -> dict:
        return {"instance": self.name, "pairs_checked": self.checked, "failures": self.failures}

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"


def _window_symbols(alg, window: DegreeWindow | None) -> List:
    if isinstance(alg, AffineLoopAlgebra):
        return basis_window(alg, window or DegreeWindow(-1, 1))
    return list(alg.basis_symbols)


def co_jacobi(delta: Callable, x: LieElement) -> TensorElement:
    """``(delta (x) id) delta x + cyclic``."""
    d = delta(x)
    inner = core.map_factor(d, 0, lambda s: delta(core.basis(x.algebra, s)))
    return core.cyclic_sum(inner)


def verify_lie_bialgebra(alg, window: DegreeWindow | None = None, delta: Callable | None = None,
                         name: str | None = None) -> Report:
    """Anticocommutativity, co-Jacobi and the cocycle identity on basis symbols."""
    delta = delta or engine(alg)
    syms = _window_symbols(alg, window)
    rep = Report(name or f"bialgebra {getattr(alg, 'name', alg)}")
    basis = {s: core.basis(alg, s) for s in syms}
    for s in syms:
        d = delta(basis[s])
        rep.check(not (d + d.flip()), check="anticocommutativity", x=alg.format_symbol(s), got=d + d.flip())
        cj = co_jacobi(delta, basis[s])
        rep.check(not cj, check="co-Jacobi", x=alg.format_symbol(s), got=cj)
    for a in syms:
        for b in syms:
            x, y = basis[a], basis[b]
            lhs = delta(alg.bracket(x, y))
            rhs = core.ad_tensor(x, delta(y)) - core.ad_tensor(y, delta(x))
            rep.check(lhs == rhs, check="cocycle", x=alg.format_symbol(a), y=alg.format_symbol(b),
                      expected=rhs, got=lhs)
    return rep


def verify_quasitriangular(alg, r: TensorElement, delta: Callable | None = None,
                           name: str = "quasitriangular") -> Report:
    """CYBE, invariance of ``r_+``, ``(id (x) delta) r = [r13, r12]`` and ``ad r = delta``."""
    delta = delta or engine(alg)
    rep = Report(name)
    defect = core.cybe_defect(r)
    rep.check(not defect, check="CYBE", got=defect)
    rp = core.symmetric_part(r)
    syms = list(getattr(alg, "basis_symbols", range(getattr(alg, "dim", 0))))
    for s in syms:
        x = core.basis(alg, s)
        inv = core.ad_tensor(x, rp)
        rep.check(not inv, check="r+ invariance", x=alg.format_symbol(s), got=inv)
        cb = coboundary(r, x)
        dx = delta(x)
        rep.check(cb == dx, check="coboundary", x=alg.format_symbol(s), expected=dx, got=cb)
    lhs = core.map_factor(r, 1, lambda s: delta(core.basis(alg, s)))
    rhs = core.bracket_13_12(r)
    rep.check(lhs == rhs, check="(id x delta) r = [r13, r12]", expected=rhs, got=lhs)
    return rep


def mutate(delta: Callable, sym, alg) -> Callable:
    """Fault injection: a cobracket whose value on ``sym`` has its sign flipped."""

    def wrapped(x: LieElement) -> TensorElement:
        out = delta(x)
        c = x[sym]
        if c:
            out = out - delta(core.basis(alg, sym)) * (2 * c)
        return out

    return wrapped
