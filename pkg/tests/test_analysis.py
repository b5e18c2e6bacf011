import random

import pytest

from cybiv import catalog
from cybiv.analysis import (
    casimirs,
    classify_by_casimir,
    degeneracy_locus,
    distinguish_by_locus,
    foliation_report,
)
from cybiv.exactpoly import ChartPoly
from cybiv.schouten import function_bracket
from cybiv.sections import BivectorField
from cybiv.threefold import ThreefoldSpec, change_chart, global_function_monomials

SPECS = {k: ThreefoldSpec.from_k(k) for k in (1, 2, 3)}


def gen(k, label):
    return BivectorField.from_strings(SPECS[k], catalog.GENERATORS[k][label], label)


def pieces(locus):
    return sorted((p.chart, tuple(p.equation_strings())) for p in locus.pieces)


def test_w1_e2_locus_is_a_line():
    locus = degeneracy_locus(gen(1, "e2"))
    assert pieces(locus) == [("V", ("xi", "v2"))]
    assert locus.pieces[0].kind == "line C"


def test_w2_e4_locus_is_empty():
    locus = degeneracy_locus(gen(2, "e4"))
    assert locus.is_empty and str(locus) == "empty"


def test_w3_loci():
    assert pieces(degeneracy_locus(gen(3, "e1"))) == [("U", ("u1",)), ("V", ("v1",)), ("V", ("xi",))]
    assert len(degeneracy_locus(gen(3, "e2")).pieces) == 4
    # e11 has four pieces; the sentence announcing five is checked in the verify harness
    assert len(degeneracy_locus(gen(3, "e11")).pieces) == 4


@pytest.mark.parametrize("key", sorted(catalog.DEGENERACY_PIECES, key=str))
def test_published_piece_lists(key):
    k, label = key
    expected = sorted((c, tuple(sorted(eqs))) for c, eqs in catalog.DEGENERACY_PIECES[key])
    got = sorted((c, tuple(sorted(eqs))) for c, eqs in pieces(degeneracy_locus(gen(k, label))))
    assert got == expected


def test_zero_bivector_is_rejected():
    with pytest.raises(ValueError):
        degeneracy_locus(BivectorField(SPECS[1], (ChartPoly.zero(),) * 3))


def _strip_base(p: ChartPoly) -> ChartPoly:
    low = min(m[0] for m in p)
    return p.shift((-low, 0, 0))


def _overlap_pieces(locus, chart):
    out = set()
    for p in locus.pieces:
        if p.chart != chart or any(e == ChartPoly.var(0) for e in p.equations):
            continue
        eqs = p.equations if chart == "V" else tuple(change_chart(locus.spec, e) for e in p.equations)
        out.add(frozenset(_strip_base(e.primitive()[1]) for e in eqs))
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_locus_agrees_on_the_overlap(k):
    for label in catalog.GENERATORS[k]:
        locus = degeneracy_locus(gen(k, label))
        assert _overlap_pieces(locus, "U") == _overlap_pieces(locus, "V"), label


def test_distinguish_by_locus():
    v = distinguish_by_locus(gen(3, "e1"), gen(3, "e2"))
    assert v.distinguished and v.reason == "3 components vs 4"
    assert distinguish_by_locus(gen(3, "e7"), gen(3, "e13")).distinguished
    for a, b in [("e1", "e7"), ("e3", "e4"), ("e8", "e13")]:
        assert distinguish_by_locus(gen(3, a), gen(3, b)).distinguished == distinguish_by_locus(gen(3, b), gen(3, a)).distinguished
    assert not distinguish_by_locus(gen(3, "e5"), gen(3, "e5")).distinguished


@pytest.mark.parametrize(
    "k, label, description",
    [(2, "e1", "f(u1)"), (2, "e2", "f(z)"), (2, "e3", "f(u1)"), (2, "e4", "f(u2)"), (3, "e7", "f(u2)"), (3, "e2", "f(z)"), (1, "e2", "f(u2)")],
)
def test_casimir_descriptions(k, label, description):
    assert casimirs(gen(k, label), 3).description() == description
    assert casimirs(gen(k, label), 4).description() == description


def test_w3_e2_has_only_constant_global_casimirs():
    space = casimirs(gen(3, "e2"), 4)
    assert space.description() == "f(z)"
    assert space.basis == [ChartPoly.constant(1)]


def test_casimirs_require_poisson_input():
    with pytest.raises(ValueError):
        casimirs(BivectorField.from_strings(SPECS[1], ("u1", "z + z*u2", "0")))


@pytest.mark.parametrize("k, label", [(2, "e1"), (2, "e4"), (3, "e3"), (3, "e8")])
def test_casimirs_form_an_algebra(k, label):
    q = gen(k, label)
    space = casimirs(q, 4)
    for a in space.basis:
        for b in space.basis:
            prod = a * b
            if max(m[1] + m[2] for m in prod) <= 4:
                assert function_bracket(prod, q).is_zero()


@pytest.mark.parametrize("k, label", [(2, "e2"), (3, "e10"), (1, "e2")])
def test_casimirs_are_constant_on_leaves(k, label):
    q = gen(k, label)
    rng = random.Random(5)
    monos = global_function_monomials(q.spec, 2)
    for f in casimirs(q, 3).basis:
        for _ in range(10):
            g = ChartPoly({rng.choice(monos): rng.randint(-3, 3) for _ in range(3)})
            point = [rng.randint(-4, 4) for _ in range(3)]
            # {f, g} = q(df, dg) vanishes at every sampled point
            vf = function_bracket(f, q)
            value = sum(c.evaluate(point) * g.derivative(i).evaluate(point) for i, c in enumerate(vf.components))
            assert value == 0


def test_three_classes_on_w3():
    labels = ["e1", "e2", "e3", "e4", "e5", "e10", "e11", "e7", "e8", "e13"]
    groups = classify_by_casimir([gen(3, lbl) for lbl in labels], 3)
    assert [sorted(g) for _, g in groups] == [sorted(c) for c in catalog.CASIMIR_CLASSES[3]]
    assert classify_by_casimir([gen(3, "e1")]) == [("f(z)", ["e1"])]
    assert len(classify_by_casimir([gen(2, "e1"), gen(2, "e3")])) == 1


def test_foliation_reports():
    w1 = foliation_report(gen(1, "e2"))
    assert "{xi=0, v2=0}_V" in w1.to_text() and w1.leaf_description == "surfaces of constant u2"
    w2 = foliation_report(gen(2, "e4")).to_json()
    assert w2["zero_dimensional_leaves"]["components"] == []
    assert w2["two_dimensional_leaves"]["isomorphic_to"] == "Z_2"
    w3 = foliation_report(gen(3, "e3"))
    assert str(w3.locus) == "{xi=0}_V" and w3.leaf_description == "surfaces of constant u1"
