from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmbraid import core
from kmbraid.grammar import ExpressionSyntaxError, UnknownSymbol, parse_element, parse_symbol

from strategies import finite_elements, loop_elements


def test_examples(aff_a2, sl3):
    x = parse_element("1/2*t^2*E12 - c", aff_a2)
    assert x == aff_a2("t^2*E12") * core.to_scalar("1/2") - aff_a2.c
    assert parse_element("E1 + E1", sl3) == sl3("E1") * 2
    assert parse_element("t^0*H1", aff_a2) == parse_element("H1", aff_a2)
    assert parse_element("t*E1", aff_a2) == parse_element("t^1*E1", aff_a2)
    assert parse_element("-E1 + 3*t^-2*F21", aff_a2) == -aff_a2("E1") + aff_a2("t^-2*F21") * 3
    assert not parse_element("E1 - E1", sl3)
    assert not parse_element("0", sl3)


@pytest.mark.parametrize("src,pos", [("2*", 2), ("t^x*E1", 2), ("E1 E2", 3), ("1/0*E1", 2), ("", 0),
                                     ("E1 + ", 5), ("E1 $ E2", 3), ("3 E1", 2)])
def test_syntax_errors(aff_a2, src, pos):
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_element(src, aff_a2)
    assert exc.value.position == pos
    assert isinstance(exc.value, SyntaxError)


def test_unknown_symbols(aff_a2, sl3):
    with pytest.raises(UnknownSymbol) as exc:
        parse_element("t^2*Q7", aff_a2)
    assert exc.value.name == "Q7"
    with pytest.raises(UnknownSymbol):
        parse_element("c", sl3)
    with pytest.raises(UnknownSymbol):
        parse_element("t*E1", sl3)


@given(st.data())
def test_round_trip_affine(aff_a2, data):
    x = data.draw(loop_elements(aff_a2, -4, 4, max_terms=6))
    text = core.render(x)
    assert parse_element(text, aff_a2) == x
    # print . parse is idempotent
    assert core.render(parse_element(text, aff_a2)) == text


@given(st.data())
def test_round_trip_finite(sl3, data):
    x = data.draw(finite_elements(sl3))
    assert parse_element(core.render(x), sl3) == x


def test_parse_symbol(aff_a2):
    assert parse_symbol("t^3*H2", aff_a2) == aff_a2.symbol("t^3*H2")
    with pytest.raises(ExpressionSyntaxError):
        parse_symbol("t^3*H2 + c", aff_a2)
