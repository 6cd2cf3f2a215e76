"""Hypothesis strategies for random elements."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from kmbraid.core import LieElement

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def finite_elements(alg, max_terms: int = 4):
    syms = list(range(alg.dim))
    return st.dictionaries(st.sampled_from(syms), fractions, max_size=max_terms).map(
        lambda d: LieElement(alg, d))


def loop_elements(alg, lo: int = -2, hi: int = 2, max_terms: int = 4):
    syms = [(0, n, x) for n in range(lo, hi + 1) for x in range(alg.finite.dim)] + [(1, 0, 0), (2, 0, 0)]
    return st.dictionaries(st.sampled_from(syms), fractions, max_size=max_terms).map(
        lambda d: LieElement(alg, d))
