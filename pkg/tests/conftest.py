"""Shared strategies for the property tests."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cybiv.exactpoly import ChartPoly
from cybiv.sections import BivectorField, section_basis
from cybiv.threefold import ThreefoldSpec, global_function_monomials

CY_SPECS = [ThreefoldSpec.from_k(k) for k in (1, 2, 3)]

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def laurent_polys(z_range=(-3, 3), fiber_max=3, max_terms=5):
    monos = st.tuples(st.integers(*z_range), st.integers(0, fiber_max), st.integers(0, fiber_max))
    return st.lists(st.tuples(monos, coefficients), max_size=max_terms).map(ChartPoly)


def polys(max_terms=5):
    """Ordinary polynomials (no negative powers)."""
    return laurent_polys(z_range=(0, 3), max_terms=max_terms)


def global_functions(spec: ThreefoldSpec, max_fiber_degree=2, max_terms=4):
    monos = global_function_monomials(spec, max_fiber_degree)
    return st.lists(st.tuples(st.sampled_from(monos), coefficients), max_size=max_terms).map(ChartPoly)


_BASES: dict = {}


def _basis(spec: ThreefoldSpec, n: int):
    key = (spec, n)
    if key not in _BASES:
        _BASES[key] = section_basis(spec, n)
    return _BASES[key]


def global_bivectors(spec: ThreefoldSpec, neighborhood=2, max_terms=4):
    basis = _basis(spec, neighborhood)

    def build(pairs):
        total = BivectorField(spec, (ChartPoly.zero(),) * 3)
        for i, c in pairs:
            total = total + basis[i].times(Fraction(c))
        return total

    return st.lists(st.tuples(st.integers(0, len(basis) - 1), coefficients), max_size=max_terms).map(build)


@st.composite
def spec_and_bivector(draw, neighborhood=2):
    spec = draw(st.sampled_from(CY_SPECS))
    return spec, draw(global_bivectors(spec, neighborhood))


@pytest.fixture(scope="session")
def w1():
    return ThreefoldSpec(1, 1)


@pytest.fixture(scope="session")
def w2():
    return ThreefoldSpec(2, 0)


@pytest.fixture(scope="session")
def w3():
    return ThreefoldSpec(3, -1)
