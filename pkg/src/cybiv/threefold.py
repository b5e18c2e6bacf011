"""The threefold W_{k1,k2} = Tot(O(-k1) + O(-k2)) over the projective line.

Two charts U = {z, u1, u2} and V = {xi, v1, v2} are glued by
xi = 1/z, v1 = z^k1 u1, v2 = z^k2 u2.  The inverse rule has the same shape,
z = 1/xi, u1 = xi^k1 v1, u2 = xi^k2 v2, so every formula below is written once
and reused in both directions with the variable names swapped.

Bivector coefficients are taken in the basis b0 = d1^d2, b1 = d2^d0,
b2 = d0^d1, where d0, d1, d2 are the coordinate fields of the chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactpoly import U_NAMES, V_NAMES, ChartPoly, Monomial, format_poly, monomial_key

# Ordered index pairs (j, k) with b_m = d_j ^ d_k.
BASIS_PAIRS = ((1, 2), (2, 0), (0, 1))

CHARTS = ("U", "V")


@dataclass(frozen=True)
class ThreefoldSpec:
    k1: int
    k2: int

    @classmethod
    def from_k(cls, k: int) -> "ThreefoldSpec":
        """The Calabi-Yau threefold W_k = W_{k, 2-k}."""
        return cls(k, 2 - k)

    @property
    def is_calabi_yau(self) -> bool:
        return self.k1 + self.k2 == 2

    @property
    def name(self) -> str:
        if self.is_calabi_yau:
            return f"W{self.k1}"
        return f"W({self.k1},{self.k2})"

    def chart_names(self, chart: str) -> tuple[str, str, str]:
        return U_NAMES if chart == "U" else V_NAMES

    def weight(self, mono: Monomial) -> int:
        """k1*s + k2*t, the largest base exponent keeping z^r u1^s u2^t global."""
        return self.k1 * mono[1] + self.k2 * mono[2]

    def other_chart_monomial(self, mono: Monomial) -> Monomial:
        """z^r u1^s u2^t = xi^(k1 s + k2 t - r) v1^s v2^t (and the same from V to U)."""
        return (self.weight(mono) - mono[0], mono[1], mono[2])

    def transition_images(self) -> tuple[ChartPoly, ChartPoly, ChartPoly]:
        """Images of the three coordinates of one chart in terms of the other."""
        return coordinate_transition(self, "U->V")

    @cached_property
    def lambda2(self) -> "TransitionMatrix":
        return lambda2_transition(self)


def coordinate_transition(spec: ThreefoldSpec, direction: str = "U->V") -> tuple[ChartPoly, ChartPoly, ChartPoly]:
    """Substitution rules (xi, v1, v2) in terms of (z, u1, u2), or the inverse.

    Both directions have the same polynomial shape; only the variable names
    printed for them differ.
    """
    if direction not in ("U->V", "V->U"):
        raise ValueError(f"unknown direction {direction!r}")
    return (
        ChartPoly.monomial((-1, 0, 0)),
        ChartPoly.monomial((spec.k1, 1, 0)),
        ChartPoly.monomial((spec.k2, 0, 1)),
    )


def change_chart(spec: ThreefoldSpec, p: ChartPoly) -> ChartPoly:
    """Rewrite a function given in one chart in the coordinates of the other."""
    out: dict[Monomial, Fraction] = {}
    for mono, c in p.items():
        out[spec.other_chart_monomial(mono)] = c
    return ChartPoly._trusted(out)


def jacobian(spec: ThreefoldSpec) -> list[list[ChartPoly]]:
    """J[i][j] = d(new_i)/d(old_j) for the chart change, as Laurent polynomials."""
    images = coordinate_transition(spec)
    return [[images[i].derivative(j) for j in range(3)] for i in range(3)]


@dataclass(frozen=True)
class TransitionMatrix:
    """Matrix acting on bivector coefficients (q0, q1, q2) of one chart.

    Entries are polynomials in the source chart's coordinates; the product must
    still be rewritten in target coordinates (see :meth:`apply`).
    """

    spec: ThreefoldSpec
    entries: tuple[tuple[ChartPoly, ChartPoly, ChartPoly], ...]
    direction: str = "U->V"

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def apply(self, coeffs: Sequence[ChartPoly]) -> tuple[ChartPoly, ChartPoly, ChartPoly]:
        """Coefficients of the same bivector in the target chart's coordinates."""
        out = []
        for row in self.entries:
            acc = ChartPoly.zero()
            for entry, q in zip(row, coeffs):
                if entry and q:
                    acc = acc + entry * q
            out.append(change_chart(self.spec, acc))
        return tuple(out)

    def to_strings(self) -> list[list[str]]:
        names = U_NAMES if self.direction == "U->V" else V_NAMES
        return [[format_poly(e, names) for e in row] for row in self.entries]

    def determinant(self) -> ChartPoly:
        m = self.entries
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )


def lambda2_transition(spec: ThreefoldSpec, direction: str = "U->V") -> TransitionMatrix:
    """Second exterior power of the Jacobian in the basis (b0, b1, b2).

    Entry (n, m) is the 2x2 minor of J with rows BASIS_PAIRS[n] and columns
    BASIS_PAIRS[m]; the cyclic ordering of the pairs carries the signs.
    """
    J = jacobian(spec)
    rows = []
    for a, b in BASIS_PAIRS:
        row = []
        for c, d in BASIS_PAIRS:
            row.append(J[a][c] * J[b][d] - J[b][c] * J[a][d])
        rows.append(tuple(row))
    return TransitionMatrix(spec, tuple(rows), direction)


def lambda2_closed_form(spec: ThreefoldSpec) -> TransitionMatrix:
    """Closed form of the same matrix, used as an independent check.

    Rows are [z^K, -k1 z^(K-1) u1, -k2 z^(K-1) u2], [0, -z^(k2-2), 0],
    [0, 0, -z^(k1-2)] with K = k1 + k2.
    """
    k1, k2 = spec.k1, spec.k2
    K = k1 + k2
    zero = ChartPoly.zero()
    rows = (
        (ChartPoly.monomial((K, 0, 0)), ChartPoly.monomial((K - 1, 1, 0), -k1), ChartPoly.monomial((K - 1, 0, 1), -k2)),
        (zero, ChartPoly.monomial((k2 - 2, 0, 0), -1), zero),
        (zero, zero, ChartPoly.monomial((k1 - 2, 0, 0), -1)),
    )
    return TransitionMatrix(spec, rows)


def is_global_monomial(spec: ThreefoldSpec, mono: Monomial) -> bool:
    return 0 <= mono[0] <= spec.weight(mono)


def global_violation(spec: ThreefoldSpec, p: ChartPoly) -> Monomial | None:
    """First monomial (in canonical order) that is not a global function, if any."""
    for mono, _ in p.sorted_terms(descending=False):
        if not is_global_monomial(spec, mono):
            return mono
    return None


def is_global_function(spec: ThreefoldSpec, p: ChartPoly) -> bool:
    return global_violation(spec, p) is None


def global_monomials_of_degree(spec: ThreefoldSpec, degree: int) -> list[Monomial]:
    """Global monomials z^r u1^s u2^t with s + t = degree, in canonical order."""
    out = []
    for s in range(degree + 1):
        t = degree - s
        top = spec.k1 * s + spec.k2 * t
        out.extend((r, s, t) for r in range(0, top + 1))
    out.sort(key=monomial_key)
    return out


def global_function_monomials(spec: ThreefoldSpec, max_fiber_degree: int) -> list[Monomial]:
    if max_fiber_degree < 0:
        raise ValueError("max_fiber_degree must be non-negative")
    out = []
    for d in range(max_fiber_degree + 1):
        out.extend(global_monomials_of_degree(spec, d))
    out.sort(key=monomial_key)
    return out


def algebra_generators(spec: ThreefoldSpec, max_degree: int) -> list[Monomial]:
    """Monomials of positive degree <= max_degree that are not products of two
    non-constant global monomials: the ring generators of R in that range."""
    by_degree = {d: global_monomials_of_degree(spec, d) for d in range(max_degree + 1)}
    gens = []
    for d in range(1, max_degree + 1):
        products = set()
        for a in range(1, d // 2 + 1):
            for m1 in by_degree[a]:
                for m2 in by_degree[d - a]:
                    products.add((m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]))
        gens.extend(m for m in by_degree[d] if m not in products)
    return gens
