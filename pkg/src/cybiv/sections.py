"""Global bivector fields and the structure of H^0(Lambda^2 T) as an R-module.

A bivector is stored by its U-chart coefficients (q0, q1, q2).  It is global
when the V-chart coefficients, obtained from the Lambda^2 transition matrix,
contain no negative power of xi.

The holomorphy constraints are homogeneous for the weight grading in which a
term of q0 with fiber degree d has weight d - 1 and a term of q1 or q2 with
fiber degree d has weight d.  Global functions of fiber degree e act with
weight e.  All computations therefore split into finite-dimensional weight
pieces M_w, and a section space "up to neighborhood n" is the sum of the M_w
with w <= n.

Within one weight the z-exponent of each unknown coefficient is bounded by the
transition matrix itself: q1 and q2 enter a single row each, and q0 only has
to cancel the xi^-1 terms that q1 and q2 leave in row 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .exactpoly import U_NAMES, V_NAMES, ChartPoly, Monomial, format_poly, monomial_key, parse_poly
from .threefold import (
    ThreefoldSpec,
    global_monomials_of_degree,
    is_global_function,
)

Key = tuple[int, Monomial]  # (slot, U-monomial)


class NotGlobalError(ValueError):
    """A bivector or function fails to extend over the V chart."""


class DegreeBoundError(RuntimeError):
    """The requested degree bound is too small to certify the answer."""


def term_weight(slot: int, mono: Monomial) -> int:
    fiber = mono[1] + mono[2]
    return fiber - 1 if slot == 0 else fiber


@dataclass(frozen=True, eq=False)
class BivectorField:
    spec: ThreefoldSpec
    q: tuple[ChartPoly, ChartPoly, ChartPoly]
    label: str | None = None

    def __post_init__(self):
        q = tuple(self.q)
        if len(q) != 3:
            raise ValueError("a bivector needs exactly three coefficients")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_strings(cls, spec: ThreefoldSpec, coeffs: Sequence[str], label: str | None = None) -> "BivectorField":
        return cls(spec, tuple(parse_poly(c) for c in coeffs), label)

    @classmethod
    def from_v(cls, spec: ThreefoldSpec, v_coeffs: Sequence[ChartPoly], label: str | None = None) -> "BivectorField":
        """Build from V-chart coefficients (the inverse transition has the same shape)."""
        return cls(spec, spec.lambda2.apply(v_coeffs), label)

    def v_coeffs(self) -> tuple[ChartPoly, ChartPoly, ChartPoly]:
        return self.spec.lambda2.apply(self.q)

    def chart_coeffs(self, chart: str) -> tuple[ChartPoly, ChartPoly, ChartPoly]:
        return self.q if chart == "U" else self.v_coeffs()

    def global_violation(self) -> tuple[str, int, Monomial] | None:
        """(chart, slot, monomial) of the first negative power, or None if global."""
        for slot, p in enumerate(self.q):
            for mono in p:
                if mono[0] < 0:
                    return ("U", slot, mono)
        for slot, p in enumerate(self.v_coeffs()):
            for mono, _ in p.sorted_terms(descending=False):
                if mono[0] < 0:
                    return ("V", slot, mono)
        return None

    def is_global(self) -> bool:
        return self.global_violation() is None

    def is_zero(self) -> bool:
        return not any(self.q)

    def with_label(self, label: str | None) -> "BivectorField":
        return BivectorField(self.spec, self.q, label)

    def _check(self, other: "BivectorField"):
        if not isinstance(other, BivectorField):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError("bivectors live on different threefolds")
        return other

    def __add__(self, other: "BivectorField") -> "BivectorField":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return BivectorField(self.spec, tuple(a + b for a, b in zip(self.q, other.q)))

    def __sub__(self, other: "BivectorField") -> "BivectorField":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return BivectorField(self.spec, tuple(a - b for a, b in zip(self.q, other.q)))

    def __neg__(self) -> "BivectorField":
        return BivectorField(self.spec, tuple(-a for a in self.q))

    def times(self, f) -> "BivectorField":
        """Multiply by a function (ChartPoly) or a rational scalar."""
        return BivectorField(self.spec, tuple(f * a for a in self.q))

    __rmul__ = times

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivectorField):
            return NotImplemented
        return self.spec == other.spec and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.spec, self.q))

    def weights(self) -> set[int]:
        return {term_weight(slot, m) for slot, p in enumerate(self.q) for m in p}

    def weight(self) -> int | None:
        """The weight if the field is homogeneous and nonzero, else None."""
        ws = self.weights()
        return ws.pop() if len(ws) == 1 else None

    def homogeneous_parts(self) -> dict[int, "BivectorField"]:
        parts: dict[int, list[dict]] = {}
        for slot, p in enumerate(self.q):
            for m, c in p.items():
                parts.setdefault(term_weight(slot, m), [{}, {}, {}])[slot][m] = c
        return {
            w: BivectorField(self.spec, tuple(ChartPoly(d) for d in comps), self.label)
            for w, comps in sorted(parts.items())
        }

    def proportional_to(self, other: "BivectorField") -> Fraction | None:
        """The scalar c with self = c * other, if one exists."""
        if other.is_zero():
            return Fraction(1) if self.is_zero() else None
        for p in other.q:
            if p:
                mono, c = next(iter(p.items()))
                break
        slot = next(i for i, p in enumerate(other.q) if p)
        ratio = self.q[slot].coeff(mono) / c
        return ratio if self == other.times(ratio) else None

    def to_strings(self, chart: str = "U") -> list[str]:
        names = U_NAMES if chart == "U" else V_NAMES
        return [format_poly(p, names) for p in self.chart_coeffs(chart)]

    def to_json(self, chart: str = "U") -> dict:
        return {"chart": chart, "label": self.label, "q": self.to_strings(chart)}

    def __repr__(self) -> str:
        tag = f"{self.label}=" if self.label else ""
        return f"{tag}({', '.join(self.to_strings())})"


# weight pieces of the section space


def _z_limits(spec: ThreefoldSpec) -> tuple[int, int, int]:
    """Offsets c_m such that a slot-m unknown z^l u1^s u2^t needs l <= k1 s + k2 t + c_m."""
    K = spec.k1 + spec.k2
    return (1 - K, 2 - spec.k2, 2 - spec.k1)


def unknown_keys(spec: ThreefoldSpec, w: int, slack: int = 0) -> list[Key]:
    """Coefficient positions that can occur in a global bivector of weight w.

    ``slack`` enlarges every z-range; used to test that the bounds are exact.
    """
    keys = []
    limits = _z_limits(spec)
    for slot in range(3):
        fiber = w + 1 if slot == 0 else w
        if fiber < 0:
            continue
        for s in range(fiber + 1):
            t = fiber - s
            top = spec.k1 * s + spec.k2 * t + limits[slot] + slack
            keys.extend((slot, (l, s, t)) for l in range(top + 1))
    keys.sort(key=lambda k: (k[0], monomial_key(k[1])))
    return keys


@dataclass
class WeightSpace:
    spec: ThreefoldSpec
    weight: int
    keys: list[Key]
    index: dict[Key, int]
    basis: list[dict[int, Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vector(self, q: BivectorField) -> dict[int, Fraction]:
        """Coordinates of a homogeneous bivector of this weight in ``keys``."""
        vec = {}
        for slot, p in enumerate(q.q):
            for mono, c in p.items():
                idx = self.index.get((slot, mono))
                if idx is None:
                    raise NotGlobalError(
                        f"term {format_poly(ChartPoly.monomial(mono, c))} in slot {slot} cannot occur in a global bivector"
                    )
                vec[idx] = c
        return vec

    def field(self, vec: dict[int, Fraction], label: str | None = None) -> BivectorField:
        comps: list[dict] = [{}, {}, {}]
        for idx, c in vec.items():
            slot, mono = self.keys[idx]
            comps[slot][mono] = c
        return BivectorField(self.spec, tuple(ChartPoly(d) for d in comps), label)


def holomorphy_constraints(spec: ThreefoldSpec, keys: Sequence[Key]) -> list[dict[int, Fraction]]:
    """One row per (V-row, V-monomial with negative xi power) on the given unknowns."""
    T = spec.lambda2.entries
    rows: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    for idx, (slot, mono) in enumerate(keys):
        for n in range(3):
            for emono, c in T[n][slot].items():
                um = (emono[0] + mono[0], emono[1] + mono[1], emono[2] + mono[2])
                vm = spec.other_chart_monomial(um)
                if vm[0] < 0:
                    row = rows.setdefault((n, vm), {})
                    row[idx] = row.get(idx, 0) + c
    return [{k: v for k, v in r.items() if v} for r in rows.values()]


@lru_cache(maxsize=None)
def weight_space(spec: ThreefoldSpec, w: int, slack: int = 0) -> WeightSpace:
    keys = unknown_keys(spec, w, slack)
    index = {k: i for i, k in enumerate(keys)}
    kernel = linalg.nullspace(holomorphy_constraints(spec, keys), len(keys))
    basis, _ = linalg.rref(kernel)
    return WeightSpace(spec, w, keys, index, basis)


def min_weight(spec: ThreefoldSpec) -> int:
    return -1


def section_basis(spec: ThreefoldSpec, neighborhood: int) -> list[BivectorField]:
    """A rational basis of the global bivectors of weight <= neighborhood.

    Each weight piece is returned in reduced row echelon form with respect to
    the coefficient order (slot, monomial), so the output is deterministic.
    """
    if neighborhood < 0:
        raise ValueError("neighborhood must be non-negative")
    out = []
    for w in range(min_weight(spec), neighborhood + 1):
        ws = weight_space(spec, w)
        out.extend(ws.field(v) for v in ws.basis)
    return out


def in_span(fields: Sequence[BivectorField], q: BivectorField) -> bool:
    """Whether q is a rational linear combination of ``fields``."""
    keys: dict[Key, int] = {}

    def vec(f: BivectorField) -> dict[int, Fraction]:
        out = {}
        for slot, p in enumerate(f.q):
            for m, c in p.items():
                out[keys.setdefault((slot, m), len(keys))] = c
        return out

    span = linalg.Span(vec(f) for f in fields)
    return span.contains(vec(q))


# module presentation


Relation = tuple[ChartPoly, ...]


@dataclass
class ModulePresentation:
    spec: ThreefoldSpec
    generators: list[BivectorField]
    relations: list[Relation]
    degree_bound: int
    generator_weights: list[int] = field(default_factory=list)
    relation_weights: list[int] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [g.label or f"g{i + 1}" for i, g in enumerate(self.generators)]

    def combine(self, coeffs: Sequence[ChartPoly]) -> BivectorField:
        if len(coeffs) != len(self.generators):
            raise ValueError("one coefficient per generator is required")
        total = BivectorField(self.spec, (ChartPoly.zero(),) * 3)
        for c, g in zip(coeffs, self.generators):
            if c:
                total = total + g.times(c)
        return total

    def is_relation(self, coeffs: Sequence[ChartPoly]) -> bool:
        return self.combine(coeffs).is_zero() and all(is_global_function(self.spec, c) for c in coeffs)

    def format_relation(self, rel: Relation) -> str:
        parts = []
        for c, name in zip(rel, self.labels):
            if not c:
                continue
            text = format_poly(c)
            if len(c) > 1:
                text = f"({text})"
            if text == "1":
                term = name
            elif text == "-1":
                term = f"-{name}"
            else:
                term = f"{text}*{name}"
            parts.append(term)
        out = " + ".join(parts) if parts else "0"
        return out.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "spec": [self.spec.k1, self.spec.k2],
            "degree_bound": self.degree_bound,
            "generators": [g.to_json() for g in self.generators],
            "generator_weights": list(self.generator_weights),
            "relations": [[format_poly(c) for c in rel] for rel in self.relations],
            "relation_weights": list(self.relation_weights),
        }


class _ColumnMap:
    """The map (h, m) -> m * e_h from R^(generators) into one weight piece."""

    def __init__(self, spec: ThreefoldSpec, target: WeightSpace, gens: list[tuple[int, BivectorField]]):
        self.columns: list[tuple[int, Monomial]] = []
        self.images: list[dict[int, Fraction]] = []
        for h, (wh, g) in enumerate(gens):
            e = target.weight - wh
            if e < 0:
                continue
            for mono in global_monomials_of_degree(spec, e):
                self.columns.append((h, mono))
                img = {}
                for slot, p in enumerate(g.q):
                    for gm, c in p.items():
                        key = (slot, (gm[0] + mono[0], gm[1] + mono[1], gm[2] + mono[2]))
                        img[target.index[key]] = c
                self.images.append(img)
        self.col_index = {c: i for i, c in enumerate(self.columns)}

    def rows(self) -> list[dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for j, img in enumerate(self.images):
            for i, c in img.items():
                out.setdefault(i, {})[j] = c
        return list(out.values())


def _relation_vector(cmap: _ColumnMap, rel: Relation) -> dict[int, Fraction] | None:
    vec = {}
    for h, p in enumerate(rel):
        for mono, c in p.items():
            j = cmap.col_index.get((h, mono))
            if j is None:
                return None
            vec[j] = c
    return vec


def _image(cmap: _ColumnMap, vec: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for j, c in vec.items():
        for i, v in cmap.images[j].items():
            s = out.get(i, 0) + c * v
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


def _relation_from_vector(cmap: _ColumnMap, vec: dict[int, Fraction], ngens: int) -> Relation:
    comps: list[dict] = [{} for _ in range(ngens)]
    for j, c in vec.items():
        h, mono = cmap.columns[j]
        comps[h][mono] = c
    return tuple(ChartPoly(d) for d in comps)


def _primitive_relation(rel: Relation) -> Relation:
    """Scale so coefficients are coprime integers with a positive first term."""
    vec = {}
    k = 0
    for p in rel:
        for m, c in p.sorted_terms():
            vec[k] = c
            k += 1
    ivec = linalg.integer_row(vec)
    scale = Fraction(ivec[0]) / vec[0] if vec else Fraction(1)
    if scale * vec[0] < 0:
        scale = -scale
    return tuple(p.scale(scale) for p in rel)


def _homogeneous_candidates(spec: ThreefoldSpec, fields: Iterable[BivectorField]) -> dict[int, list[BivectorField]]:
    out: dict[int, list[BivectorField]] = {}
    for f in fields:
        if f.spec != spec:
            raise ValueError("candidate generator lives on a different threefold")
        for w, part in f.homogeneous_parts().items():
            out.setdefault(w, []).append(part)
    return out


def module_presentation(
    spec: ThreefoldSpec,
    basis: Sequence[BivectorField] = (),
    degree_bound: int | None = None,
    *,
    preferred_relations: Sequence[dict[str, ChartPoly]] = (),
    namer=None,
) -> ModulePresentation:
    """Minimal generators and relations of the module of global bivectors.

    Generators are chosen weight by weight: a candidate from ``basis`` (in the
    given order, then the echelon basis of each weight piece) is kept iff it is
    not in R_+ M plus the span of the candidates kept so far.  Relations are
    chosen the same way from the syzygies of each total weight, modulo R_+
    times the syzygies of lower weight; ``preferred_relations`` (maps from
    generator label to coefficient) are tried first.

    Everything up to ``degree_bound`` is computed, and the next weight is
    computed too: if a generator or relation first appears there the bound is
    rejected with :class:`DegreeBoundError`.
    """
    if degree_bound is None:
        weights = [w for f in basis for w in f.weights()]
        degree_bound = (max(weights) if weights else 0) + 2
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    candidates = _homogeneous_candidates(spec, basis)
    wmin = min_weight(spec)
    top = degree_bound + 1

    gens: list[tuple[int, BivectorField]] = []
    rels: list[tuple[int, Relation]] = []
    pending_pref = list(preferred_relations)

    for w in range(wmin, top + 1):
        ws = weight_space(spec, w)
        # generators
        old = _ColumnMap(spec, ws, gens)
        span = linalg.Span(old.images)
        cands = list(candidates.get(w, []))
        cands.extend(ws.field(v) for v in ws.basis)
        for cand in cands:
            if span.dimension == ws.dimension:
                break
            vec = ws.vector(cand)
            if not linalg.Span(ws.basis).contains(vec):
                raise NotGlobalError(f"candidate {cand!r} is not a global bivector")
            if span.add(vec):
                label = cand.label
                if label is None:
                    label = namer(cand) if namer is not None else f"g{len(gens) + 1}"
                gens.append((w, cand.with_label(label)))
        # relations
        cmap = _ColumnMap(spec, ws, gens)
        kernel = linalg.nullspace(cmap.rows(), len(cmap.columns))
        if not kernel:
            continue
        lower = []
        for wr, rel in rels:
            e = w - wr
            if e < 1:
                continue
            for mono in global_monomials_of_degree(spec, e):
                shifted = tuple(p.shift(mono) for p in rel)
                lower.append(_relation_vector(cmap, shifted))
        rspan = linalg.Span(lower)
        labels = [g.label for _, g in gens]
        rcands: list[dict[int, Fraction]] = []
        for pref in list(pending_pref):
            if any(name not in labels for name in pref):
                continue
            rel = tuple(pref.get(lbl, ChartPoly.zero()) for lbl in labels)
            vec = _relation_vector(cmap, rel)
            if vec is None:
                continue
            if _image(cmap, vec):
                raise ValueError(f"preferred relation {pref!r} is not a syzygy")
            rcands.append(vec)
            pending_pref.remove(pref)
        rcands.extend(kernel)
        for vec in rcands:
            if rspan.add(vec):
                rels.append((w, _primitive_relation(_relation_from_vector(cmap, vec, len(gens)))))

    late_g = [g for wg, g in gens if wg > degree_bound]
    late_r = [r for wr, r in rels if wr > degree_bound]
    if late_g or late_r:
        raise DegreeBoundError(
            f"degree bound {degree_bound} is too small: weight {top} adds "
            f"{len(late_g)} generator(s) and {len(late_r)} relation(s)"
        )
    ngen = len(gens)
    return ModulePresentation(
        spec,
        [g for _, g in gens],
        [tuple(list(r) + [ChartPoly.zero()] * (ngen - len(r))) for _, r in rels],
        degree_bound,
        [w for w, _ in gens],
        [w for w, _ in rels],
    )


@dataclass
class Expression:
    ok: bool
    coefficients: tuple[ChartPoly, ...] | None = None
    reason: str | None = None


def express_in_generators(spec: ThreefoldSpec, q: BivectorField, pres: ModulePresentation) -> Expression:
    """Coefficients p^h in R with q = sum p^h e_h, weight by weight."""
    if q.spec != spec or pres.spec != spec:
        raise ValueError("spec mismatch")
    bad = q.global_violation()
    if bad is not None:
        return Expression(False, reason=f"not global: negative power in chart {bad[0]}, slot {bad[1]}")
    gens = list(zip(pres.generator_weights, pres.generators))
    total = [ChartPoly.zero() for _ in gens]
    for w, part in q.homogeneous_parts().items():
        if w > pres.degree_bound:
            return Expression(False, reason=f"degree bound exceeded: weight {w} > {pres.degree_bound}")
        ws = weight_space(spec, w)
        cmap = _ColumnMap(spec, ws, gens)
        target = ws.vector(part)
        by_coord: dict[int, dict[int, Fraction]] = {}
        for j, img in enumerate(cmap.images):
            for i, c in img.items():
                by_coord.setdefault(i, {})[j] = c
        coords = sorted(set(by_coord) | set(target))
        sol = linalg.solve([by_coord.get(i, {}) for i in coords], [target.get(i, 0) for i in coords], len(cmap.columns))
        if sol is None:
            return Expression(False, reason=f"weight {w} part is outside the span of the generators")
        rel = _relation_from_vector(cmap, sol, len(gens))
        total = [a + b for a, b in zip(total, rel)]
    return Expression(True, tuple(total))


def certified_presentation(
    spec: ThreefoldSpec,
    basis: Sequence[BivectorField] = (),
    start: int | None = None,
    max_bound: int = 12,
    **kwargs,
) -> ModulePresentation:
    """Raise the degree bound from ``start`` until the presentation certifies."""
    if start is None:
        weights = [w for f in basis for w in f.weights()]
        start = (max(weights) if weights else 0) + 2
    last: DegreeBoundError | None = None
    for bound in range(start, max_bound + 1):
        try:
            return module_presentation(spec, basis, bound, **kwargs)
        except DegreeBoundError as exc:
            last = exc
    raise DegreeBoundError(f"no certified presentation up to degree bound {max_bound}: {last}")
