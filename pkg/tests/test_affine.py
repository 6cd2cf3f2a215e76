from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmbraid import core
from kmbraid.affine import (C_SYM, D_SYM, INHOMOGENEOUS, DegreeWindow, basis_window, degree,
                            homogeneous_parts, laurent_derivative, residue, residue_cocycle,
                            serre_relations)
from kmbraid.golden import algebra

from strategies import loop_elements

laurent = st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=5)


def test_residue_examples():
    assert residue({-1: 1}) == 1
    assert residue({2: 1}) == 0
    assert residue(laurent_derivative({2: 3, -3: -5})) == 0


@given(laurent, laurent)
def test_residue_cocycle_antisymmetric(p, q):
    assert residue_cocycle(p, q) == -residue_cocycle(q, p)


def test_e0_f0_bracket(aff_a2):
    g = aff_a2.serre_generators
    h0 = aff_a2.c - aff_a2("H1") - aff_a2("H2")
    assert g.h[0] == h0
    assert core.bracket(g.e[0], g.f[0]) == h0
    assert core.bracket(g.h[0], g.e[0]) == g.e[0] * 2
    assert not core.bracket(g.e[0], g.f[1])


def test_derivation_and_center(aff_a2):
    x = aff_a2("t^3*E12") + aff_a2("t^3*H1")
    assert core.bracket(aff_a2.d, x) == x * 3
    for s in basis_window(aff_a2, DegreeWindow(-2, 2)):
        assert not core.bracket(aff_a2.c, core.basis(aff_a2, s))


def test_central_term(aff_a2):
    # [t^m X, t^-m Y] = t^0 [X,Y] + m <X,Y> c
    got = core.bracket(aff_a2("t^2*E1"), aff_a2("t^-2*F1"))
    assert got == aff_a2("H1") + aff_a2.c * 2
    # no central term for m + n != 0, and none at m = 0
    assert core.bracket(aff_a2("t*E1"), aff_a2("t*F1")) == aff_a2("t^2*H1")
    assert core.bracket(aff_a2("E1"), aff_a2("F1")) == aff_a2("H1")


def test_degree_examples(aff_a2):
    assert degree(aff_a2("t^2*E1")) == 2
    assert degree(aff_a2.c) == 0 and degree(aff_a2.d) == 0
    assert degree(aff_a2("t*E1") + aff_a2("H1")) is INHOMOGENEOUS
    assert degree(core.zero(aff_a2)) == 0


@given(st.data())
def test_degree_additive(aff_a2, data):
    x = data.draw(loop_elements(aff_a2, max_terms=1))
    y = data.draw(loop_elements(aff_a2, max_terms=1))
    br = core.bracket(x, y)
    if x and y and br:
        parts = homogeneous_parts(br)
        # a central term only appears when m + n = 0, which is its own degree
        assert set(parts) == {degree(x) + degree(y)}


def test_window_counts(aff_a1, aff_a2):
    assert len(basis_window(aff_a1, DegreeWindow(-1, 1))) == 11
    assert len(basis_window(aff_a2, DegreeWindow(0, 0))) == 10
    assert len(basis_window(aff_a2, DegreeWindow(-2, 2))) == 42


def test_window_parse():
    assert DegreeWindow.parse("-3..3") == DegreeWindow(-3, 3)
    assert 0 in DegreeWindow(-1, 1) and 2 not in DegreeWindow(-1, 1)
    with pytest.raises(ValueError):
        DegreeWindow.parse("3..-3")
    with pytest.raises(ValueError):
        DegreeWindow.parse("x")


@pytest.mark.parametrize("spec", ["affine:A1", "affine:A2", "affine:B2"])
def test_serre_relations(spec):
    bad = [name for name, defect in serre_relations(algebra(spec)) if defect]
    assert not bad


@given(st.data())
def test_loop_jacobi(aff_a2, data):
    x, y, z = (data.draw(loop_elements(aff_a2)) for _ in range(3))
    b = core.bracket
    assert not (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y)))


@given(st.data())
def test_loop_form_invariant(aff_a1, data):
    x, y, z = (data.draw(loop_elements(aff_a1)) for _ in range(3))
    f = aff_a1.invariant_form
    assert f(core.bracket(x, y), z) == f(x, core.bracket(y, z))


def test_symbol_printing(aff_a2):
    for text in ["t*E1", "t^2*F21", "t^-1*H2", "E12", "c", "d"]:
        assert aff_a2.format_symbol(aff_a2.symbol(text)) == text
    assert aff_a2.symbol("t^0*H1") == aff_a2.symbol("H1")
    assert aff_a2.symbol("c") == C_SYM and aff_a2.symbol("d") == D_SYM


def test_form_c_d(aff_a2):
    assert aff_a2.invariant_form(aff_a2.c, aff_a2.d) == 1
    assert aff_a2.invariant_form(aff_a2.d, aff_a2.d) == 0
    assert aff_a2.invariant_form(aff_a2("t*E1"), aff_a2("t^-1*F1")) == 1
    assert aff_a2.invariant_form(aff_a2("t*E1"), aff_a2("F1")) == Fraction(0)
