"""Named verification suites shared by the CLI, the scripts and the tests.

Each suite takes an algebra spec (``"A2"``, ``"affine:A2"``) and returns a
list of :class:`~kmbraid.bialgebra.Report`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

from . import core
from .affine import AffineLoopAlgebra, DegreeWindow, affinize, serre_relations
from .bialgebra import Report, canonical_r, verify_lie_bialgebra, verify_quasitriangular
from .braiding import (BraidedLieBialgebra, graded_projection, verify_braided,
                       verify_psi_module_map)
from .cartan import cartan_matrix, deletion_subdatum, grading_from_subdatum, minimal_realization
from .dbos import (InfiniteDimensional, affine_reconstruction_report, bosonisation_report,
                   finite_reconstruction_report)
from .golden import algebra


@dataclass(frozen=True)
class SuiteConfig:
    """Inputs of a suite run; unused fields are ignored by a given suite."""

    spec: str
    window: DegreeWindow | None = None
    delete: Sequence[int] = field(default_factory=tuple)


def base_type(spec: str) -> str:
    return spec.split(":", 1)[1] if spec.startswith("affine:") else spec


def _is_affine(spec: str) -> bool:
    return spec.startswith("affine:")


def bialgebra_suite(cfg: SuiteConfig) -> List[Report]:
    alg = algebra(cfg.spec)
    w = cfg.window or DegreeWindow(-3, 3)
    name = f"bialgebra {cfg.spec}" + (f" [{w}]" if _is_affine(cfg.spec) else "")
    return [verify_lie_bialgebra(alg, w if _is_affine(cfg.spec) else None, name=name)]


def quasitriangular_suite(cfg: SuiteConfig) -> List[Report]:
    if _is_affine(cfg.spec):
        raise InfiniteDimensional("the quasitriangular suite needs a finite-type algebra")
    alg = algebra(cfg.spec)
    qs = canonical_r(alg)
    return [verify_quasitriangular(alg, qs.r, name=f"quasitriangular {cfg.spec}")]


def braided_views(cfg: SuiteConfig) -> List[tuple]:
    """``(view, degrees)`` pairs covering the window on each side."""
    w = cfg.window or DegreeWindow(1, 3)
    alg = algebra(cfg.spec)
    if _is_affine(cfg.spec):
        gp = graded_projection(alg)
    else:
        if not cfg.delete:
            raise ValueError("a finite-type braided suite needs --delete")
        C = alg.cartan
        gp = graded_projection(alg, grading_from_subdatum(deletion_subdatum(C, list(cfg.delete))))
    out = []
    for side in (1, -1):
        degs = [n for n in w.degrees() if n * side > 0]
        if degs:
            out.append((BraidedLieBialgebra(alg, gp, side=side), degs))
    return out


def braided_suite(cfg: SuiteConfig) -> List[Report]:
    reps = []
    for view, degs in braided_views(cfg):
        lo, hi = min(degs), max(degs)
        tag = f"{cfg.spec} side {view.side:+d} degrees {lo}..{hi}"
        reps.append(verify_braided(view, degs, name=f"braided {tag}"))
        psi = verify_psi_module_map(view, degs)
        psi.name = f"psi module map {tag}"
        reps.append(psi)
    return reps


def dbos_suite(cfg: SuiteConfig) -> List[Report]:
    C = cartan_matrix(base_type(cfg.spec))
    if _is_affine(cfg.spec):
        reps = affine_reconstruction_report(C, cfg.window or DegreeWindow(-2, 2))
    else:
        if not cfg.delete:
            raise ValueError("a finite-type dbos run needs --delete")
        reps = finite_reconstruction_report(C, list(cfg.delete))
    return list(reps.values())


def bosonisation_suite(cfg: SuiteConfig) -> List[Report]:
    if not _is_affine(cfg.spec):
        raise ValueError("the bosonisation suite is defined for affine specs")
    C = cartan_matrix(base_type(cfg.spec))
    return list(bosonisation_report(C, cfg.window or DegreeWindow(-3, 0)).values())


def structure_suite(cfg: SuiteConfig) -> List[Report]:
    """Affinized matrix, realization size and the Serre presentation."""
    if not _is_affine(cfg.spec):
        raise ValueError("the structure suite is defined for affine specs")
    alg: AffineLoopAlgebra = algebra(cfg.spec)
    C = alg.finite.cartan
    rep = Report(f"structure {cfg.spec}")
    Ct = affinize(C)
    n = C.n
    # affine row/column 0 is minus the highest-root combination
    rep.check(Ct.labels == tuple(range(n + 1)), check="affine labels", got=Ct.labels)
    rep.check(minimal_realization(Ct).dim == n + 2, check="dim H", got=minimal_realization(Ct).dim)
    rep.check(len(alg.cartan_symbols()) == n + 2, check="loop Cartan span", got=len(alg.cartan_symbols()))
    g = alg.serre_generators
    E0, F0, Ht = alg.finite.theta_vectors
    h0 = alg.c - alg.loop(0, Ht)
    rep.check(core.bracket(g.e[0], g.f[0]) == h0, check="[e0,f0] = c - Htheta",
              got=core.render(core.bracket(g.e[0], g.f[0])))
    for rel, defect in serre_relations(alg):
        rep.check(not defect, check=rel, defect=core.render(defect))
    return [rep]


SUITES: Dict[str, Callable[[SuiteConfig], List[Report]]] = {
    "bialgebra": bialgebra_suite,
    "quasitriangular": quasitriangular_suite,
    "braided": braided_suite,
    "dbos": dbos_suite,
    "bosonisation": bosonisation_suite,
    "structure": structure_suite,
}


def run_suite(suite: str, spec: str, window: DegreeWindow | None = None,
              delete: Sequence[int] = ()) -> List[Report]:
    try:
        fn = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}") from None
    return fn(SuiteConfig(spec, window, tuple(delete)))
