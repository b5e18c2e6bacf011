import random
from fractions import Fraction

import pytest

from cybiv import linalg
from cybiv.sections import section_basis, weight_space
from cybiv.threefold import ThreefoldSpec

compiled = pytest.mark.skipif("compiled" not in linalg.available_backends(), reason="extension not built")


@pytest.fixture
def restore_backend():
    before = linalg.backend()
    yield
    linalg.set_backend(before)


def _random_rows(rng, n, m, density=0.3, size=9):
    return [{j: rng.randint(-size, size) for j in range(m) if rng.random() < density} for _ in range(n)]


def test_unknown_backend_is_rejected():
    with pytest.raises(ValueError):
        linalg.set_backend("gpu")


def test_nullspace_and_solve():
    rows = [{0: 1, 1: 2}, {1: 1, 2: -1}]
    (vec,) = linalg.nullspace(rows, 3)
    assert vec == {2: 1, 1: 1, 0: -2}
    assert linalg.solve(rows, [3, 1], 3) == {0: 1, 1: 1}
    assert linalg.solve([{0: 1}, {0: 2}], [1, 3], 1) is None
    span = linalg.Span([{0: Fraction(1, 2), 1: 1}])
    assert span.contains({0: 1, 1: 2}) and not span.contains({1: 1})
    assert span.add({1: 1}) and span.dimension == 2


@compiled
def test_backends_agree_on_random_matrices(restore_backend):
    rng = random.Random(11)
    for _ in range(200):
        rows = _random_rows(rng, rng.randint(1, 12), rng.randint(1, 12))
        linalg.set_backend("python")
        expected = linalg.rref_int([{k: v for k, v in r.items() if v} for r in rows])
        linalg.set_backend("compiled")
        assert linalg.rref_int([{k: v for k, v in r.items() if v} for r in rows]) == expected


@compiled
def test_overflow_falls_back_to_python(restore_backend):
    big = 2**62
    rows = [{0: big, 1: 3}, {0: 3, 1: big}, {0: 5, 1: 7}]
    linalg.set_backend("python")
    expected = linalg.rref_int(rows)
    linalg.set_backend("compiled")
    assert linalg.rref_int(rows) == expected


@compiled
def test_backends_agree_on_section_spaces(restore_backend):
    spec = ThreefoldSpec(3, -1)
    out = {}
    for name in ("python", "compiled"):
        linalg.set_backend(name)
        weight_space.cache_clear()
        out[name] = [b.q for b in section_basis(spec, 3)]
    weight_space.cache_clear()
    assert out["python"] == out["compiled"]
