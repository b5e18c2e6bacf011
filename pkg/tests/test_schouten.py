import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cybiv import catalog, linalg
from cybiv.analysis import casimirs
from cybiv.exactpoly import ChartPoly, parse_poly
from cybiv.schouten import (
    b_operator,
    b_quadratic_form,
    combine_w1,
    function_bracket,
    is_integrable,
    linearize_b,
    self_bracket,
    sn_bracket,
    v_chart_self_bracket,
)
from cybiv.sections import BivectorField, NotGlobalError
from cybiv.threefold import ThreefoldSpec, global_function_monomials, is_global_function

from .conftest import (
    CY_SPECS,
    coefficients,
    global_bivectors,
    global_functions,
    spec_and_bivector,
)

P = parse_poly
W1 = ThreefoldSpec(1, 1)
PROPS = settings(max_examples=120, deadline=None)


def field(spec, *coeffs):
    return BivectorField.from_strings(spec, coeffs)


def test_self_bracket_examples():
    assert self_bracket(field(W1, "u1", "z", "0")).is_zero()
    assert self_bracket(field(W1, "u1", "z + z*u2", "0")).coeff == P("z*u1")
    assert self_bracket(field(W1, "3", "-1", "1/2")).is_zero()


def test_sn_bracket_examples():
    e1, e2 = field(W1, "0", "1", "0"), field(W1, "0", "0", "1")
    assert sn_bracket(e1, e2).is_zero()
    a, b = field(W1, "0", "z*u2", "0"), field(W1, "u1", "z", "0")
    assert sn_bracket(a, b).coeff == P("z*u1")
    assert sn_bracket(a + b, a + b).coeff == P("2*z*u1")


def test_integrability_examples():
    assert is_integrable(field(ThreefoldSpec(2, 0), "0", "0", "1"))
    assert is_integrable(field(ThreefoldSpec(3, -1), "-z*u1*u2", "0", "z^2*u1"))
    assert not is_integrable(field(W1, "u1", "z + z*u2", "0"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_every_published_generator_is_poisson(k):
    spec = ThreefoldSpec.from_k(k)
    for t in catalog.GENERATORS[k].values():
        assert is_integrable(field(spec, *t))


def test_function_bracket_examples():
    w2 = ThreefoldSpec(2, 0)
    e4 = field(w2, "0", "0", "1")
    assert function_bracket(P("u2"), e4).is_zero()
    assert function_bracket(P("z"), e4).components == (0, 1, 0)
    assert function_bracket(P("1"), field(w2, "u1", "z", "u2")).is_zero()


def test_b_operator_examples():
    z = ChartPoly.zero
    assert b_operator([P("1"), P("1"), z(), z()]) == 0
    assert b_operator([P("z*u2"), z(), P("1"), z()]) == P("z*u1")
    f = P("u1 + 2*z*u2")
    mu = Fraction(3, 7)
    assert b_operator([f.scale(mu)] * 4) == 0


def test_b_operator_rejects_bad_input():
    with pytest.raises(NotGlobalError):
        b_operator([P("z"), P("0"), P("0"), P("0")])
    with pytest.raises(ValueError):
        b_operator([P("1")] * 3)
    with pytest.raises(ValueError):
        b_operator([P("1")] * 4, ThreefoldSpec(2, 0))


def _random_global(rng, spec, degree, terms):
    monos = global_function_monomials(spec, degree)
    return ChartPoly({rng.choice(monos): rng.randint(-3, 3) for _ in range(terms)})


def test_b_operator_matches_self_bracket_on_200_samples():
    rng = random.Random(20240611)
    for _ in range(200):
        p = [_random_global(rng, W1, 3, rng.randint(0, 3)) for _ in range(4)]
        b = b_operator(p)
        assert b == self_bracket(combine_w1(p)).coeff  # normalization constant 1
        assert b == b_quadratic_form(p)


def test_linearization():
    z = ChartPoly.zero()
    p = [z, P("1"), z, z]
    lin = linearize_b(p)
    assert lin([P("1"), z, z, z]) == 0
    with pytest.raises(ValueError):
        linearize_b([P("z*u2"), z, P("1"), z])


def test_linearization_euler_identity():
    rng = random.Random(7)
    z = ChartPoly.zero()
    for p in ([z, z, P("1"), z], [P("u1"), z, z, z], [z, P("u2"), z, P("u2")]):
        assert b_operator(p) == 0
        assert linearize_b(p)(p) == 0
        for _ in range(20):
            dp = [_random_global(rng, W1, 2, 2) for _ in range(4)]
            # B is quadratic, so the first-order part of B(p + eps dp) is B(p + dp) - B(p) - B(dp)
            first_order = b_operator([a + b for a, b in zip(p, dp)]) - b_operator(p) - b_operator(dp)
            assert linearize_b(p)(dp) == first_order


def test_linearization_matrix_kernel():
    z = ChartPoly.zero()
    lin = linearize_b([z, P("1"), z, z])
    for vec in lin.kernel(1):
        assert lin(list(vec)) == 0


# properties


@PROPS
@given(spec_and_bivector(), st.data())
def test_bracket_symmetry(data, draw):
    spec, q = data
    p = draw.draw(global_bivectors(spec))
    assert sn_bracket(q, p).coeff == sn_bracket(p, q).coeff
    assert sn_bracket(q, q).coeff == self_bracket(q).coeff.scale(2)


@PROPS
@given(spec_and_bivector(), st.data(), coefficients, coefficients)
def test_bracket_bilinearity(data, draw, a, b):
    spec, q = data
    p, r = draw.draw(global_bivectors(spec)), draw.draw(global_bivectors(spec))
    lhs = sn_bracket(q.times(a) + p.times(b), r).coeff
    assert lhs == sn_bracket(q, r).coeff.scale(a) + sn_bracket(p, r).coeff.scale(b)


@PROPS
@given(spec_and_bivector())
def test_self_bracket_chart_covariance(data):
    spec, q = data
    assert v_chart_self_bracket(q) == self_bracket(q).v_coeff()


@PROPS
@given(spec_and_bivector())
def test_self_bracket_of_global_field_is_global(data):
    spec, q = data
    assert is_global_function(spec, self_bracket(q).coeff)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CY_SPECS), st.data())
def test_global_multiples_of_poisson_structures(spec, draw):
    gens = [field(spec, *t) for t in catalog.GENERATORS[spec.k1].values()]
    q = draw.draw(st.sampled_from(gens))
    f = draw.draw(global_functions(spec, 3))
    assert is_integrable(q.times(f))


@pytest.mark.parametrize("k, label", [(2, "e1"), (2, "e4"), (3, "e7"), (3, "e3"), (1, "e2")])
def test_casimir_consistency(k, label):
    spec = ThreefoldSpec.from_k(k)
    q = field(spec, *catalog.GENERATORS[k][label])
    space = casimirs(q, 3)
    for f in space.basis:
        assert function_bracket(f, q).is_zero()
    monos = global_function_monomials(spec, 3)
    index = {m: i for i, m in enumerate(monos)}
    span = linalg.Span({index[m]: c for m, c in f.items()} for f in space.basis)
    rng = random.Random(k)
    for _ in range(40):
        f = ChartPoly({rng.choice(monos): rng.randint(-2, 2) for _ in range(3)})
        inside = span.contains({index[m]: c for m, c in f.items()})
        assert inside == function_bracket(f, q).is_zero()
