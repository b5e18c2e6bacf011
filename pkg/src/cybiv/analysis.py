"""Degeneracy loci, Casimir functions and symplectic foliations.

The degeneracy locus of a bivector is where all three coefficients vanish.
Each chart ideal is split by factoring every generator into a monomial times
a remaining factor; a component is a minimal choice of one vanishing factor
per generator.  When every generator is a monomial (always the case for the
known structures) this is the minimal vertex cover decomposition and the
components are coordinate subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg
from .exactpoly import U_NAMES, V_NAMES, ChartPoly, Monomial, format_monomial, format_poly, monomial_key
from .schouten import function_bracket, is_integrable
from .sections import BivectorField
from .threefold import ThreefoldSpec, global_function_monomials

CHART_NAMES = {"U": U_NAMES, "V": V_NAMES}


def _chart_generators(q: BivectorField, chart: str) -> list[ChartPoly]:
    return [p for p in q.chart_coeffs(chart) if p]


def _split(p: ChartPoly) -> tuple[Monomial, ChartPoly]:
    """p = monomial * rest, with rest not divisible by any variable."""
    m = p.min_exponents()
    rest = p.shift((-m[0], -m[1], -m[2]))
    _, rest = rest.primitive()
    return m, rest


# an atom is either a coordinate index or a non-monomial factor
Atom = int | ChartPoly


def _atom_key(a: Atom):
    if isinstance(a, int):
        return (0, a, ())
    return (1, 0, tuple(sorted((monomial_key(m), c) for m, c in a.items())))


def _zero_at(p: ChartPoly, variables: set[int]) -> ChartPoly:
    images = [ChartPoly.zero() if i in variables else ChartPoly.var(i) for i in range(3)]
    return p.substitute(images)


def _decompose(gens: Sequence[ChartPoly]) -> list[tuple[Atom, ...]]:
    """Minimal sets of atoms whose joint vanishing kills every generator."""
    choices: list[list[Atom]] = []
    for p in gens:
        m, rest = _split(p)
        atoms: list[Atom] = [i for i in range(3) if m[i] > 0]
        if not rest.is_constant():
            atoms.append(rest)
        if not atoms:
            return []  # a unit generator: the chart part is empty
        choices.append(atoms)
    candidates: set[tuple] = set()
    found: list[tuple[Atom, ...]] = []
    for pick in product(*choices):
        variables = {a for a in pick if isinstance(a, int)}
        polys = []
        empty = False
        for a in pick:
            if isinstance(a, int):
                continue
            r = _zero_at(a, variables)
            if not r:
                continue
            if r.is_constant():
                empty = True
                break
            if all(_atom_key(a) != _atom_key(b) for b in polys):
                polys.append(a)
        if empty:
            continue
        atoms = tuple(sorted(set(variables), key=int)) + tuple(sorted(polys, key=_atom_key))
        key = tuple(_atom_key(a) for a in atoms)
        if key not in candidates:
            candidates.add(key)
            found.append(atoms)
    keys = [frozenset(_atom_key(a) for a in atoms) for atoms in found]
    minimal = [atoms for atoms, k in zip(found, keys) if not any(o < k for o in keys)]
    minimal.sort(key=lambda atoms: (len(atoms), [_atom_key(a) for a in atoms]))
    return minimal


_PIECE_TYPES = {1: "plane C2", 2: "line C", 3: "point"}


@dataclass(frozen=True)
class LocusPiece:
    chart: str
    equations: tuple[ChartPoly, ...]
    variables: tuple[int, ...]
    kind: str

    def equation_strings(self) -> list[str]:
        return [format_poly(e, CHART_NAMES[self.chart]) for e in self.equations]

    def to_json(self) -> dict:
        return {"chart": self.chart, "equations": self.equation_strings(), "type": self.kind}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{e}=0" for e in self.equation_strings()) + "}_" + self.chart


@dataclass(frozen=True)
class GluedComponent:
    pieces: tuple[LocusPiece, ...]
    kind: str

    def to_json(self) -> dict:
        return {"pieces": [str(p) for p in self.pieces], "type": self.kind}


def _piece_kind(atoms: tuple[Atom, ...]) -> str:
    polys = [a for a in atoms if not isinstance(a, int)]
    if not polys:
        return _PIECE_TYPES[len(atoms)]
    if all(len(p) == 2 for p in polys):
        return "binomial"
    return "undecomposed"


def _surface_name(k: int) -> str:
    return "P1xC" if k == 0 else f"Z_{k}"


def _glued_kind(spec: ThreefoldSpec, variables: tuple[int, ...]) -> str:
    if variables == (1,):
        return _surface_name(spec.k2)
    if variables == (2,):
        return _surface_name(spec.k1)
    if variables == (1, 2):
        return "P1"
    return "glued"


@dataclass
class VanishingLocus:
    spec: ThreefoldSpec
    charts: dict[str, list[ChartPoly]]
    pieces: list[LocusPiece]
    components: list[GluedComponent]

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def piece_set(self) -> set[tuple[str, frozenset[str]]]:
        return {(p.chart, frozenset(p.equation_strings())) for p in self.pieces}

    def component_types(self) -> list[str]:
        return sorted(c.kind for c in self.components)

    def to_json(self) -> dict:
        return {
            "charts": {c: [format_poly(g, CHART_NAMES[c]) for g in gens] for c, gens in self.charts.items()},
            "components": [p.to_json() for p in self.pieces],
            "glued": [c.to_json() for c in self.components],
        }

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        return " u ".join(str(p) for p in self.pieces)


def degeneracy_locus(q: BivectorField) -> VanishingLocus:
    """Where q has rank 0, chart by chart, with the pieces glued across charts."""
    if q.is_zero():
        raise ValueError("the zero bivector degenerates everywhere")
    charts = {c: _chart_generators(q, c) for c in ("U", "V")}
    pieces: list[LocusPiece] = []
    for chart, gens in charts.items():
        for atoms in _decompose(gens):
            eqs = tuple(ChartPoly.var(a) if isinstance(a, int) else a for a in atoms)
            variables = tuple(a for a in atoms if isinstance(a, int))
            if len(variables) < len(atoms):
                variables = ()
            pieces.append(LocusPiece(chart, eqs, variables, _piece_kind(atoms)))
    # a piece avoiding the base coordinate continues into the other chart
    components: list[GluedComponent] = []
    used: set[int] = set()
    for i, p in enumerate(pieces):
        if i in used:
            continue
        used.add(i)
        if p.variables and 0 not in p.variables:
            for j, other in enumerate(pieces):
                if j not in used and other.chart != p.chart and other.variables == p.variables:
                    used.add(j)
                    components.append(GluedComponent((p, other), _glued_kind(q.spec, p.variables)))
                    break
            else:
                components.append(GluedComponent((p,), p.kind))
        else:
            components.append(GluedComponent((p,), p.kind))
    return VanishingLocus(q.spec, charts, pieces, components)


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    reason: str

    def __str__(self) -> str:
        return f"distinguished ({self.reason})" if self.distinguished else "indistinguishable"


def distinguish_by_locus(qa: BivectorField, qb: BivectorField) -> Verdict:
    """Compare component counts and type multisets of the two loci."""
    if qa.spec != qb.spec:
        raise ValueError("structures live on different threefolds")
    la, lb = degeneracy_locus(qa), degeneracy_locus(qb)
    if len(la.pieces) != len(lb.pieces):
        return Verdict(True, f"{len(la.pieces)} components vs {len(lb.pieces)}")
    ta = sorted(p.kind for p in la.pieces)
    tb = sorted(p.kind for p in lb.pieces)
    if ta != tb:
        return Verdict(True, f"component types {ta} vs {tb}")
    if la.component_types() != lb.component_types():
        return Verdict(True, f"glued types {la.component_types()} vs {lb.component_types()}")
    return Verdict(False, "same component counts and types")


# Casimir functions


@dataclass(frozen=True)
class LocalCasimirs:
    """Polynomial Casimirs in one chart, truncated to exponents <= degree."""

    chart: str
    basis: tuple[ChartPoly, ...]
    generators: tuple[Monomial, ...] | None
    independent_variables: tuple[str, ...] | None

    def description(self) -> str:
        names = CHART_NAMES[self.chart]
        if self.generators is None:
            return "kernel spanned by " + ", ".join(format_poly(b, names) for b in self.basis)
        if not self.generators:
            return "constant"
        return "f(" + ", ".join(format_monomial(m, names) for m in self.generators) + ")"


def _local_monomials(degree: int) -> list[Monomial]:
    out = [(r, s, t) for r in range(degree + 1) for s in range(degree + 1) for t in range(degree + 1 - s)]
    out.sort(key=monomial_key)
    return out


def _kernel(q_coeffs, monos: Sequence[Monomial], spec: ThreefoldSpec) -> list[ChartPoly]:
    q = BivectorField(spec, q_coeffs)
    rows: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    for j, m in enumerate(monos):
        X = function_bracket(ChartPoly.monomial(m), q)
        for comp, p in enumerate(X.components):
            for mono, c in p.items():
                rows.setdefault((comp, mono), {})[j] = c
    kernel = linalg.nullspace(list(rows.values()), len(monos))
    basis, _ = linalg.rref(kernel)
    return [ChartPoly({monos[j]: c for j, c in vec.items()}) for vec in basis]


def _monomial_generators(basis: Sequence[ChartPoly]) -> tuple[Monomial, ...] | None:
    if not all(b.is_monomial() for b in basis):
        return None
    monos = {next(iter(b)) for b in basis}
    nonconst = sorted((m for m in monos if m != (0, 0, 0)), key=monomial_key)
    gens = []
    for m in nonconst:
        decomposable = any(
            a != m and all(x >= y for x, y in zip(m, a)) and tuple(x - y for x, y in zip(m, a)) in monos
            and tuple(x - y for x, y in zip(m, a)) != (0, 0, 0)
            for a in nonconst
        )
        if not decomposable:
            gens.append(m)
    return tuple(gens)


def _local_casimirs(q: BivectorField, chart: str, degree: int) -> LocalCasimirs:
    monos = _local_monomials(degree)
    basis = _kernel(q.chart_coeffs(chart), monos, q.spec)
    gens = _monomial_generators(basis)
    variables = None
    if gens is not None and all(sum(m) == 1 for m in gens):
        idx = sorted(m.index(1) for m in gens)
        expected = {m for m in monos if all(m[i] == 0 for i in range(3) if i not in idx)}
        if {next(iter(b)) for b in basis} == expected:
            variables = tuple(CHART_NAMES[chart][i] for i in idx)
    return LocalCasimirs(chart, tuple(basis), gens, variables)


@dataclass
class CasimirSpace:
    spec: ThreefoldSpec
    max_fiber_degree: int
    u_local: LocalCasimirs
    v_local: LocalCasimirs
    basis: list[ChartPoly] = field(default_factory=list)

    @property
    def independent_variables(self) -> tuple[str, ...] | None:
        return self.u_local.independent_variables

    def description(self) -> str:
        return self.u_local.description()

    def key(self) -> tuple:
        return (self.u_local.description(), self.v_local.description())

    def to_json(self) -> dict:
        return {
            "max_fiber_degree": self.max_fiber_degree,
            "independent_variables": list(self.independent_variables) if self.independent_variables is not None else None,
            "local": {"U": self.u_local.description(), "V": self.v_local.description()},
            "global_basis": [format_poly(b) for b in self.basis],
        }


def casimirs(q: BivectorField, max_fiber_degree: int = 4) -> CasimirSpace:
    """Casimir functions of a Poisson structure.

    Local descriptions are kernels on chart monomials with every exponent at
    most ``max_fiber_degree``; the global basis is the kernel on the global
    functions of fiber degree at most ``max_fiber_degree``.
    """
    if max_fiber_degree < 0:
        raise ValueError("max_fiber_degree must be non-negative")
    if not is_integrable(q):
        raise ValueError("Casimir functions are only defined for Poisson structures")
    u_local = _local_casimirs(q, "U", max_fiber_degree)
    v_local = _local_casimirs(q, "V", max_fiber_degree)
    gbasis = _kernel(q.q, global_function_monomials(q.spec, max_fiber_degree), q.spec)
    return CasimirSpace(q.spec, max_fiber_degree, u_local, v_local, gbasis)


def classify_by_casimir(structures: Sequence[BivectorField], max_fiber_degree: int = 4) -> list[tuple[str, list[str]]]:
    """Group structures whose U-chart Casimir descriptions coincide, in input order."""
    specs = {q.spec for q in structures}
    if len(specs) > 1:
        raise ValueError("structures live on different threefolds")
    groups: dict[str, list[str]] = {}
    for i, q in enumerate(structures):
        desc = casimirs(q, max_fiber_degree).description()
        groups.setdefault(desc, []).append(q.label or f"q{i + 1}")
    return list(groups.items())


# symplectic foliation


def _leaf_surface(spec: ThreefoldSpec, variables: tuple[str, ...] | None) -> str | None:
    if variables == ("u1",) and spec.k1 == 0:
        return _surface_name(spec.k2)
    if variables == ("u2",) and spec.k2 == 0:
        return _surface_name(spec.k1)
    return None


@dataclass
class FoliationReport:
    spec: ThreefoldSpec
    label: str | None
    locus: VanishingLocus
    casimirs: CasimirSpace

    @property
    def leaf_description(self) -> str:
        local = self.casimirs.u_local
        if local.independent_variables is not None:
            return "surfaces of constant " + ", ".join(local.independent_variables)
        if local.generators:
            names = U_NAMES
            return "surfaces of constant " + ", ".join(format_monomial(m, names) for m in local.generators)
        return "no polynomial Casimir in the U chart"

    def to_json(self) -> dict:
        out = {
            "spec": [self.spec.k1, self.spec.k2],
            "label": self.label,
            "zero_dimensional_leaves": self.locus.to_json(),
            "two_dimensional_leaves": {
                "chart": "U",
                "description": self.leaf_description,
                "casimirs": self.casimirs.to_json(),
            },
        }
        surface = _leaf_surface(self.spec, self.casimirs.independent_variables)
        if surface is not None:
            out["two_dimensional_leaves"]["isomorphic_to"] = surface
        return out

    def to_text(self) -> str:
        lines = [
            f"0-dimensional leaves: {self.locus}",
            f"2-dimensional leaves: {self.leaf_description} (U chart)",
        ]
        surface = _leaf_surface(self.spec, self.casimirs.independent_variables)
        if surface is not None:
            lines.append(f"  each leaf is isomorphic to {surface}")
        return "\n".join(lines)


def foliation_report(q: BivectorField, max_fiber_degree: int = 4) -> FoliationReport:
    cas = casimirs(q, max_fiber_degree)  # rejects non-integrable input
    return FoliationReport(q.spec, q.label, degeneracy_locus(q), cas)
