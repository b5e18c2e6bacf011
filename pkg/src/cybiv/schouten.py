"""Schouten-Nijenhuis brackets of bivectors and functions, and the W1 operator B.

Trivectors are reported by their coefficient against d0^d1^d2.  The self
bracket is returned without the overall factor 2, so that
``sn_bracket(q, q) == 2 * self_bracket(q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import U_NAMES, V_NAMES, ChartPoly, format_poly
from .sections import BivectorField, NotGlobalError
from .threefold import BASIS_PAIRS, ThreefoldSpec, change_chart, global_violation, jacobian


def _perm_sign(a: int, b: int, c: int) -> int:
    """Coefficient of d_a^d_b^d_c against d0^d1^d2."""
    if len({a, b, c}) < 3:
        return 0
    inversions = (a > b) + (a > c) + (b > c)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class TrivectorDensity:
    spec: ThreefoldSpec
    coeff: ChartPoly

    def is_zero(self) -> bool:
        return not self.coeff

    def v_coeff(self) -> ChartPoly:
        """Coefficient against the V-chart trivector (d0^d1^d2 = det J times it)."""
        J = jacobian(self.spec)
        det = (
            J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
            - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
            + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0])
        )
        return change_chart(self.spec, det * self.coeff)

    def __str__(self) -> str:
        return format_poly(self.coeff)


@dataclass(frozen=True)
class VectorField:
    spec: ThreefoldSpec
    components: tuple[ChartPoly, ChartPoly, ChartPoly]

    def is_zero(self) -> bool:
        return not any(self.components)

    def to_strings(self, names: Sequence[str] = U_NAMES) -> list[str]:
        return [format_poly(c, names) for c in self.components]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.components):
            if c:
                text = format_poly(c)
                terms.append(f"({text})*d{i}" if len(c) > 1 else f"{text}*d{i}")
        return " + ".join(terms) if terms else "0"


def self_bracket_coeffs(q0: ChartPoly, q1: ChartPoly, q2: ChartPoly) -> ChartPoly:
    d = lambda p, i: p.derivative(i)  # noqa: E731
    return (
        q1 * d(q2, 0) - q2 * d(q1, 0)
        + q2 * d(q0, 1) - q0 * d(q2, 1)
        + q0 * d(q1, 2) - q1 * d(q0, 2)
    )


def self_bracket(q: BivectorField) -> TrivectorDensity:
    """[q, q] / 2 as a multiple of d0^d1^d2."""
    return TrivectorDensity(q.spec, self_bracket_coeffs(*q.q))


def _basic_bracket(f: ChartPoly, jk: tuple[int, int], g: ChartPoly, mn: tuple[int, int]) -> ChartPoly:
    """[f dj^dk, g dm^dn] expanded with the coordinate-field formula."""
    j, k = jk
    m, n = mn
    total = ChartPoly.zero()
    s = _perm_sign(m, k, n)
    if s:
        total = total + (f * g.derivative(j)).scale(s)
    s = _perm_sign(j, k, n)
    if s:
        total = total - (g * f.derivative(m)).scale(s)
    s = _perm_sign(j, k, m)
    if s:
        total = total + (g * f.derivative(n)).scale(s)
    s = _perm_sign(m, j, n)
    if s:
        total = total - (f * g.derivative(k)).scale(s)
    return total


def sn_bracket(q: BivectorField, p: BivectorField) -> TrivectorDensity:
    if q.spec != p.spec:
        raise ValueError("bivectors live on different threefolds")
    total = ChartPoly.zero()
    for i, f in enumerate(q.q):
        if not f:
            continue
        for l, g in enumerate(p.q):
            if g:
                total = total + _basic_bracket(f, BASIS_PAIRS[i], g, BASIS_PAIRS[l])
    return TrivectorDensity(q.spec, total)


def is_integrable(q: BivectorField) -> bool:
    return self_bracket(q).is_zero()


def function_bracket(f: ChartPoly, q: BivectorField) -> VectorField:
    """[f, q] = -q(df, .) written in (d0, d1, d2); zero iff f is a Casimir of q."""
    q0, q1, q2 = q.q
    f0, f1, f2 = (f.derivative(i) for i in range(3))
    return VectorField(q.spec, (q1 * f2 - q2 * f1, q2 * f0 - q0 * f2, q0 * f1 - q1 * f0))


# the operator B on W1


W1 = ThreefoldSpec(1, 1)

W1_GENERATORS = (
    (ChartPoly.zero(), ChartPoly.constant(1), ChartPoly.zero()),
    (ChartPoly.zero(), ChartPoly.zero(), ChartPoly.constant(1)),
    (ChartPoly.var(1), ChartPoly.var(0), ChartPoly.zero()),
    (ChartPoly.var(2), ChartPoly.zero(), ChartPoly.var(0)),
)


def combine_w1(p: Sequence[ChartPoly]) -> BivectorField:
    """sum p^h e_h for the four W1 generators."""
    comps = [ChartPoly.zero()] * 3
    for ph, gen in zip(p, W1_GENERATORS):
        comps = [c + ph * g for c, g in zip(comps, gen)]
    return BivectorField(W1, tuple(comps))


def _check_b_input(p: Sequence[ChartPoly], spec: ThreefoldSpec) -> list[ChartPoly]:
    if spec != W1:
        raise ValueError("the operator B is defined on W1 = W(1,1) only")
    p = list(p)
    if len(p) != 4:
        raise ValueError("B takes exactly four coefficient functions")
    for h, ph in enumerate(p, start=1):
        bad = global_violation(spec, ph)
        if bad is not None:
            raise NotGlobalError(f"p^{h} is not a global function (monomial exponents {bad})")
    return p


def _pb(pi: ChartPoly, pj: ChartPoly, k: int) -> ChartPoly:
    return pi * pj.derivative(k) - pj * pi.derivative(k)


def b_operator(p: Sequence[ChartPoly], spec: ThreefoldSpec = W1) -> ChartPoly:
    """B(p1, p2, p3, p4) in the grouped form of the W1 integrability condition."""
    p1, p2, p3, p4 = _check_b_input(p, spec)
    z, u1, u2 = ChartPoly.var(0), ChartPoly.var(1), ChartPoly.var(2)
    return (
        _pb(p1, p2, 0)
        + z * (_pb(p1, p4, 0) + _pb(p3, p2, 0))
        + z * z * _pb(p3, p4, 0)
        + u1 * (_pb(p2, p3, 1) + _pb(p3, p1, 2))
        + z * u1 * _pb(p4, p3, 1)
        + u2 * (_pb(p2, p4, 1) + _pb(p4, p1, 2))
        + z * u2 * _pb(p4, p3, 2)
    )


def _op(*terms: tuple[str, int]) -> tuple[tuple[ChartPoly, int], ...]:
    from .exactpoly import parse_poly

    return tuple((parse_poly(c), k) for c, k in terms)


# Q[i][j] is a first-order operator sum c * d_k, listed as (c, k) pairs.
B_MATRIX = (
    ((), _op(("1", 0)), _op(("-u1", 2)), _op(("z", 0), ("-u2", 2))),
    (_op(("-1", 0)), (), _op(("-z", 0), ("u1", 1)), _op(("u2", 1))),
    (_op(("u1", 2)), _op(("z", 0), ("-u1", 1)), (), _op(("z^2", 0), ("-z*u1", 1), ("-z*u2", 2))),
    (_op(("-z", 0), ("u2", 2)), _op(("-u2", 1)), _op(("-z^2", 0), ("z*u1", 1), ("z*u2", 2)), ()),
)


def bilinear_b(a: Sequence[ChartPoly], b: Sequence[ChartPoly]) -> ChartPoly:
    """a^T Q b with Q the matrix of differential operators above."""
    total = ChartPoly.zero()
    for i in range(4):
        if not a[i]:
            continue
        for j in range(4):
            if not b[j]:
                continue
            for c, k in B_MATRIX[i][j]:
                total = total + a[i] * c * b[j].derivative(k)
    return total


def b_quadratic_form(p: Sequence[ChartPoly], spec: ThreefoldSpec = W1) -> ChartPoly:
    p = _check_b_input(p, spec)
    return bilinear_b(p, p)


class LinearizedB:
    """The derivative of B at a solution p: dp -> dp^T Q p + p^T Q dp."""

    def __init__(self, p: Sequence[ChartPoly], spec: ThreefoldSpec = W1):
        self.p = _check_b_input(p, spec)
        value = b_operator(self.p, spec)
        if value:
            raise ValueError(f"linearization needs a solution of B = 0, got B(p) = {format_poly(value)}")
        self.spec = spec

    def __call__(self, dp: Sequence[ChartPoly]) -> ChartPoly:
        dp = _check_b_input(dp, self.spec)
        return bilinear_b(dp, self.p) + bilinear_b(self.p, dp)

    def matrix(self, max_fiber_degree: int):
        """The map on truncated coefficient vectors.

        Returns (columns, rows, matrix): columns are (h, monomial) pairs for
        the global monomials of fiber degree <= max_fiber_degree, rows are the
        output monomials, and matrix[i] is a sparse dict column -> coefficient.
        """
        from .threefold import global_function_monomials

        monos = global_function_monomials(self.spec, max_fiber_degree)
        columns = [(h, m) for h in range(4) for m in monos]
        row_index: dict = {}
        entries: dict[int, dict[int, Fraction]] = {}
        for j, (h, m) in enumerate(columns):
            dp = [ChartPoly.zero()] * 4
            dp[h] = ChartPoly.monomial(m)
            for mono, c in self(dp).items():
                i = row_index.setdefault(mono, len(row_index))
                entries.setdefault(i, {})[j] = c
        rows = sorted(row_index, key=row_index.get)
        return columns, rows, [entries.get(i, {}) for i in range(len(rows))]

    def kernel(self, max_fiber_degree: int) -> list[tuple[ChartPoly, ...]]:
        from . import linalg

        columns, rows, mat = self.matrix(max_fiber_degree)
        out = []
        for vec in linalg.nullspace(mat, len(columns)):
            comps: list[dict] = [{}, {}, {}, {}]
            for j, c in vec.items():
                h, m = columns[j]
                comps[h][m] = c
            out.append(tuple(ChartPoly(d) for d in comps))
        return out


def linearize_b(p: Sequence[ChartPoly], spec: ThreefoldSpec = W1) -> LinearizedB:
    return LinearizedB(p, spec)


def v_chart_self_bracket(q: BivectorField) -> ChartPoly:
    """Self bracket computed directly from the V-chart coefficients."""
    return self_bracket_coeffs(*q.v_coeffs())


__all__ = [
    "TrivectorDensity",
    "VectorField",
    "self_bracket",
    "sn_bracket",
    "is_integrable",
    "function_bracket",
    "b_operator",
    "b_quadratic_form",
    "bilinear_b",
    "linearize_b",
    "LinearizedB",
    "combine_w1",
    "v_chart_self_bracket",
    "B_MATRIX",
    "V_NAMES",
]
