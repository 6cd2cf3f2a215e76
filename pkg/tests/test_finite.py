from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmbraid import core
from kmbraid.cartan import NAMED, cartan_matrix, validate_gcm
from kmbraid.finite import (NotFiniteType, NotIrreducible, RankTooLarge, build_chevalley)
from kmbraid.golden import algebra

from strategies import finite_elements

TYPES = sorted(NAMED)


def test_a2_basis(sl3):
    assert sl3.dim == 8
    assert sl3.names == ["E1", "E2", "E12", "H1", "H2", "F1", "F2", "F21"]
    assert sl3.bracket(sl3("E1"), sl3("E2")) == sl3("E12")
    assert sl3.bracket(sl3("F2"), sl3("F1")) == sl3("F21")


def test_a1_relations(sl2):
    e, f, h = sl2("E1"), sl2("F1"), sl2("H1")
    assert sl2.dim == 3
    assert sl2.bracket(e, f) == h
    assert sl2.bracket(h, e) == e * 2


def test_a3_dimension():
    alg = algebra("A3")
    assert alg.dim == 15 and len(alg.positive_roots) * 2 == 12


def test_bracket_examples(sl3):
    assert sl3.bracket(sl3("E1"), sl3("F1")) == sl3("H1")
    assert sl3.bracket(sl3("H1"), sl3("E1")) == sl3("E1") * 2
    # with E12 = [E1,E2] and F21 = [F2,F1] the sign is +, see the sl3 matrix check below
    assert sl3.bracket(sl3("E12"), sl3("F21")) == sl3("H1") + sl3("H2")


def test_e12_f21_against_matrices(sl3):
    # independent oracle: 3x3 matrix units
    def unit(i, j):
        return [[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    def com(a, b):
        ab, ba = mul(a, b), mul(b, a)
        return [[ab[i][j] - ba[i][j] for j in range(3)] for i in range(3)]

    E1, E2, F1, F2 = unit(0, 1), unit(1, 2), unit(1, 0), unit(2, 1)
    E12, F21 = com(E1, E2), com(F2, F1)
    H1, H2 = com(E1, F1), com(E2, F2)
    lhs = com(E12, F21)
    assert lhs == [[H1[i][j] + H2[i][j] for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("name", TYPES)
def test_jacobi_exhaustive(name):
    alg = algebra(name)
    b = alg.bracket_symbols
    basis = range(alg.dim)
    for x, y, z in product(basis, repeat=3):
        if not (x < y < z):
            continue
        X, Y, Z = (core.basis(alg, s) for s in (x, y, z))
        assert not (core.bracket(X, core.bracket(Y, Z)) + core.bracket(Y, core.bracket(Z, X))
                    + core.bracket(Z, core.bracket(X, Y)))
    for x in basis:
        assert not b(x, x)


@pytest.mark.parametrize("name", TYPES)
def test_form_invariant_and_normalized(name):
    alg = algebra(name)
    ht = alg.h_theta
    assert alg.invariant_form(ht, ht) == 2
    basis = [core.basis(alg, s) for s in range(alg.dim)]
    for x in basis:
        for y in basis:
            for z in basis:
                assert alg.invariant_form(alg.bracket(x, y), z) == alg.invariant_form(x, alg.bracket(y, z))


def test_form_examples(sl3, sl2):
    assert sl2.invariant_form(sl2.h_theta, sl2.h_theta) == 2
    assert sl3.invariant_form(sl3("E1"), sl3("E2")) == 0
    assert sl3.invariant_form(sl3("E1"), sl3("F1")) == 1


@pytest.mark.parametrize("name", TYPES)
def test_omega_involutive_homomorphism(name):
    alg = algebra(name)
    basis = [core.basis(alg, s) for s in range(alg.dim)]
    for x in basis:
        assert alg.omega(alg.omega(x)) == x
        for y in basis:
            assert alg.omega(alg.bracket(x, y)) == alg.bracket(alg.omega(x), alg.omega(y))


def test_omega_examples(sl3):
    assert sl3.omega(sl3("E1")) == -sl3("F1")
    # omega([E1,E2]) = [-F1,-F2] = -F21
    assert sl3.omega(sl3("E12")) == -sl3("F21")


@pytest.mark.parametrize("name", TYPES)
def test_theta_vectors(name):
    alg = algebra(name)
    E0, F0, Ht = alg.theta_vectors
    assert alg.invariant_form(F0, E0) == 1
    assert alg.bracket(Ht, F0) == F0 * 2
    assert alg.omega(F0) == -E0
    assert alg.bracket(F0, E0) == Ht


def test_theta_vectors_a2(sl3):
    E0, F0, Ht = sl3.theta_vectors
    assert set(F0.keys()) == {sl3.symbol("E12")}
    assert set(E0.keys()) == {sl3.symbol("F21")}
    assert Ht == sl3("H1") + sl3("H2")


def test_theta_vectors_a1(sl2):
    E0, F0, _ = sl2.theta_vectors
    assert set(F0.keys()) == {sl2.symbol("E1")} and set(E0.keys()) == {sl2.symbol("F1")}


def test_casimir_is_invariant(sl3):
    cas = sl3.casimir
    for s in range(sl3.dim):
        assert not core.ad_tensor(core.basis(sl3, s), cas)


@given(st.data())
def test_bracket_antisymmetric(sl3, data):
    x, y = data.draw(finite_elements(sl3)), data.draw(finite_elements(sl3))
    assert sl3.bracket(x, y) == -sl3.bracket(y, x)


def test_rejections():
    with pytest.raises(NotFiniteType):
        build_chevalley(cartan_matrix("affine:A2"))
    with pytest.raises(NotIrreducible):
        build_chevalley(validate_gcm([[2, 0], [0, 2]]))
    a5 = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(5)] for i in range(5)]
    with pytest.raises(RankTooLarge):
        build_chevalley(validate_gcm(a5))


def test_json_dump(sl3):
    data = sl3.to_json()
    assert data["basis"] == sl3.names
    assert any(i == 0 and j == 5 for i, j, _ in data["bracket"])
    assert "\\begin" in sl3.latex_table()
