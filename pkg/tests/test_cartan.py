from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmbraid.cartan import (NAMED, AsymmetricZeroPattern, CartanError, DiagonalNotTwo,
                            NotFiniteType, NotSymmetrizable, PositiveOffDiagonal,
                            affinization_subdatum, affinize, cartan_matrix, cobracket_scales,
                            deletion_subdatum, grading_from_subdatum, highest_root,
                            is_finite_type, is_irreducible, load_matrix_json,
                            minimal_realization, positive_roots, symmetrize, validate_gcm)
from kmbraid.linalg import rank


def test_validate_examples():
    assert validate_gcm([[2, -1], [-1, 2]]).n == 2
    assert validate_gcm([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]).n == 3
    with pytest.raises(AsymmetricZeroPattern):
        validate_gcm([[2, -1], [0, 2]])
    with pytest.raises(DiagonalNotTwo):
        validate_gcm([[3, -1], [-1, 2]])
    with pytest.raises(PositiveOffDiagonal):
        validate_gcm([[2, 1], [1, 2]])


def test_symmetrizers():
    assert symmetrize(cartan_matrix("A2")) == (1, 1)
    assert symmetrize(cartan_matrix("affine:A2")) == (1, 1, 1)
    assert symmetrize(cartan_matrix("B2")) == (2, 1)
    # the per-node cobracket factors follow root lengths instead
    assert cobracket_scales(cartan_matrix("B2")) == (1, 2)
    for name in NAMED:
        C = cartan_matrix(name)
        d = symmetrize(C)
        m = C.entries
        assert all(m[i][j] * d[j] == m[j][i] * d[i] for i in range(C.n) for j in range(C.n))


def test_not_symmetrizable():
    # cycle with an inconsistent product of ratios
    with pytest.raises(NotSymmetrizable):
        symmetrize(validate_gcm([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]]))


def test_realization_dimension():
    assert minimal_realization(cartan_matrix("A2")).dim == 2
    assert minimal_realization(cartan_matrix("affine:A2")).dim == 4
    assert minimal_realization(cartan_matrix("A1")).dim == 1
    assert minimal_realization(cartan_matrix("affine:A1")).dim == 3


def test_highest_root():
    hr = highest_root(cartan_matrix("A2"))
    assert (hr.a, hr.c) == ((1, 1), (1, 1))
    hr = highest_root(cartan_matrix("A1"))
    assert (hr.a, hr.c) == ((1,), (1,))
    for name in ("B2", "G2", "A3", "D4"):
        C = cartan_matrix(name)
        roots = positive_roots(C)
        top = highest_root(C).a
        assert top in roots
        assert all(all(b[i] <= top[i] for i in range(C.n)) for b in roots)


def test_root_counts():
    assert len(positive_roots(cartan_matrix("A3"))) == 6
    assert len(positive_roots(cartan_matrix("G2"))) == 6
    assert len(positive_roots(cartan_matrix("D4"))) == 12


def test_affinize_examples():
    assert cartan_matrix("affine:A2").rows() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert affinize(cartan_matrix("A1")).rows() == [[2, -2], [-2, 2]]
    for name in ("A1", "A2"):
        C = cartan_matrix(name)
        assert rank(affinize(C).entries) == rank(C.entries)
    for name in NAMED:
        Ct = affinize(cartan_matrix(name))
        assert not is_finite_type(Ct) and is_irreducible(Ct)


def test_affinize_rejects_infinite():
    with pytest.raises(NotFiniteType):
        affinize(cartan_matrix("affine:A2"))


def test_affinization_subdatum_and_grading():
    sd = affinization_subdatum(cartan_matrix("A2"))
    assert sd.deleted == {0}
    assert [sd.chi(i) for i in (0, 1, 2)] == [1, 0, 0]
    sd.check()
    g = grading_from_subdatum(sd)
    assert g.e == {0: 1, 1: 0, 2: 0} and g.f == {0: -1, 1: 0, 2: 0}
    assert affinization_subdatum(cartan_matrix("A1")).deleted == {0}


def test_deletion_grading():
    C = cartan_matrix("A2")
    g = grading_from_subdatum(deletion_subdatum(C, [2]))
    assert (g.e[2], g.f[2], g.e[1], g.f[1]) == (1, -1, 0, 0)
    g0 = grading_from_subdatum(deletion_subdatum(C, []))
    assert all(v == 0 for v in g0.e.values())
    assert g.root_degree({1: 1, 2: 1}) == 1


@given(st.sampled_from(sorted(NAMED)))
def test_json_round_trip(name):
    C = cartan_matrix(name)
    assert load_matrix_json(json.dumps(C.to_json())) == C


def test_json_bad_symmetrizer():
    data = cartan_matrix("B2").to_json()
    data["symmetrizer"] = [[1, 1], [1, 1]]
    with pytest.raises(NotSymmetrizable):
        load_matrix_json(json.dumps(data))


def test_unknown_type():
    with pytest.raises(CartanError):
        cartan_matrix("Z9")
