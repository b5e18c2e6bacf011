"""Automorphisms of W_{k1,k2}, Poisson structures on the surfaces Z_k and
their pushforwards along embedded surfaces.

s1 exchanges the charts, (z, u1, u2) <-> (xi, v1, v2); it is an involution of
every W_{k1,k2}.  s0 exchanges u1 and u2 and needs k1 = k2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .exactpoly import ChartPoly, Monomial, format_poly, parse_poly
from .sections import BivectorField, NotGlobalError, weight_space
from .threefold import ThreefoldSpec

# maps of the threefold


@dataclass(frozen=True)
class ThreefoldMap:
    spec: ThreefoldSpec
    word: tuple[str, ...]

    def __post_init__(self):
        for s in self.word:
            if s not in ("s0", "s1"):
                raise ValueError(f"unknown map {s!r}")
            if s == "s0" and self.spec.k1 != self.spec.k2:
                raise ValueError("the fiber swap s0 needs k1 = k2")

    @classmethod
    def chart_swap(cls, spec: ThreefoldSpec) -> "ThreefoldMap":
        return cls(spec, ("s1",))

    @classmethod
    def fiber_swap(cls, spec: ThreefoldSpec) -> "ThreefoldMap":
        return cls(spec, ("s0",))

    @property
    def kind(self) -> str:
        if len(self.word) == 1:
            return "chart_swap" if self.word[0] == "s1" else "fiber_swap"
        return "composition"

    def then(self, other: "ThreefoldMap") -> "ThreefoldMap":
        return ThreefoldMap(self.spec, self.word + other.word)

    def __str__(self) -> str:
        return "*".join(self.word) if self.word else "id"


def _swap_fibers(p: ChartPoly) -> ChartPoly:
    return ChartPoly({(m[0], m[2], m[1]): c for m, c in p.items()})


def _apply_one(s: str, q: BivectorField) -> BivectorField:
    if s == "s0":
        q0, q1, q2 = q.q
        return BivectorField(q.spec, (-_swap_fibers(q0), -_swap_fibers(q2), -_swap_fibers(q1)))
    # s1: the V-chart data of q read as U-chart data
    return BivectorField(q.spec, q.v_coeffs())


def pullback(map_: ThreefoldMap, q: BivectorField) -> BivectorField:
    """Transport q along the map; a word is applied right to left."""
    if map_.spec != q.spec:
        raise ValueError("map and bivector live on different threefolds")
    for s in reversed(map_.word):
        q = _apply_one(s, q)
    return q


def _words(spec: ThreefoldSpec) -> list[tuple[str, ...]]:
    if spec.k1 == spec.k2:
        return [("s0",), ("s1",), ("s1", "s0")]
    return [("s1",)]


@dataclass(frozen=True)
class IsoCertificate:
    source: str
    target: str
    word: tuple[str, ...]
    scale: Fraction

    def to_json(self) -> dict:
        return {"pair": [self.source, self.target], "map": list(self.word), "scale": str(self.scale)}

    def __str__(self) -> str:
        scale = "" if self.scale == 1 else ("-" if self.scale == -1 else f"{self.scale}*")
        return f"{'*'.join(self.word)}^*({self.source}) = {scale}{self.target}"


def certify(map_: ThreefoldMap, source: BivectorField, target: BivectorField) -> Fraction | None:
    """The scalar c with pullback(map, source) = c * target, if any."""
    if target.is_zero():
        return None
    return pullback(map_, source).proportional_to(target)


def isomorphism_catalog(spec: ThreefoldSpec, structures: Sequence[BivectorField]) -> list[IsoCertificate]:
    """Pairs of labelled structures related by s0, s1 or a composition, up to scale."""
    out = []
    for a, b in combinations(structures, 2):
        for word in _words(spec):
            for src, dst in ((a, b), (b, a)):
                c = certify(ThreefoldMap(spec, word), src, dst)
                if c is not None and c != 0:
                    out.append(IsoCertificate(src.label or "?", dst.label or "?", word, c))
                    break
            else:
                continue
            break
    return out


# surfaces Z_k = Tot O(-k)

SURFACE_U_NAMES = ("z", "u", "_")
SURFACE_V_NAMES = ("xi", "v", "_")


def surface_transition(k: int, f: ChartPoly) -> ChartPoly:
    """V coefficient of the surface bivector f d_z ^ d_u given in the U chart."""
    g = f.shift((k - 2, 0, 0)).scale(-1)
    return ChartPoly({(k * m[1] - m[0], m[1], 0): c for m, c in g.items()})


@dataclass(frozen=True)
class SurfacePoissonStructure:
    k: int
    index: int
    u_coeff: ChartPoly
    v_coeff: ChartPoly

    def is_consistent(self) -> bool:
        return surface_transition(self.k, self.u_coeff) == self.v_coeff

    def scaled(self, multiplier: ChartPoly) -> "SurfacePoissonStructure":
        u = self.u_coeff * multiplier
        return SurfacePoissonStructure(self.k, self.index, u, surface_transition(self.k, u))

    def pair_strings(self) -> tuple[str, str]:
        return (format_poly(self.u_coeff, SURFACE_U_NAMES), format_poly(self.v_coeff, SURFACE_V_NAMES))

    def __str__(self) -> str:
        u, v = self.pair_strings()
        return f"({u}, {v})"


def surface_self_bracket(s: SurfacePoissonStructure) -> ChartPoly:
    """Self bracket of the surface bivector seen as (0, 0, f) in three variables."""
    from .schouten import self_bracket_coeffs

    return self_bracket_coeffs(ChartPoly.zero(), ChartPoly.zero(), s.u_coeff)


def parse_surface_poly(text: str, chart: str = "U") -> ChartPoly:
    names = SURFACE_U_NAMES if chart == "U" else SURFACE_V_NAMES
    return parse_poly(text, names)


def surface_catalog(k: int) -> list[SurfacePoissonStructure]:
    """Generators of the Poisson structures on Z_k.

    For k <= 2 they are z^a with 0 <= a <= 2 - k; for k >= 3 they are z^a u
    with 0 <= a <= 2.
    """
    if k < -1:
        raise ValueError("surface catalog covers k >= -1")
    if k <= 2:
        us = [ChartPoly.monomial((a, 0, 0)) for a in range(3 - k)]
    else:
        us = [ChartPoly.monomial((a, 1, 0)) for a in range(3)]
    return [SurfacePoissonStructure(k, i, u, surface_transition(k, u)) for i, u in enumerate(us)]


def is_global_surface_function(k: int, g: ChartPoly) -> bool:
    """z^a u^b is a function on Z_k iff 0 <= a <= k b."""
    return all(m[1] >= 0 and 0 <= m[0] <= k * m[1] for m in g)


# embedded surfaces


@dataclass(frozen=True)
class SurfaceEmbedding:
    """j1: u2 = v2 = 0 (a copy of Z_k1); j2: u1 = v1 = 0 (Z_k2); j0: the fibre over z = fibre."""

    spec: ThreefoldSpec
    kind: str
    fibre: int = 0

    def __post_init__(self):
        if self.kind not in ("j0", "j1", "j2"):
            raise ValueError(f"unknown embedding {self.kind!r}")

    @property
    def surface_k(self) -> int | None:
        return {"j1": self.spec.k1, "j2": self.spec.k2, "j0": None}[self.kind]

    @property
    def slot(self) -> int:
        return {"j0": 0, "j1": 2, "j2": 1}[self.kind]

    def equations(self) -> list[str]:
        if self.kind == "j1":
            return ["u2 = 0", "v2 = 0"]
        if self.kind == "j2":
            return ["u1 = 0", "v1 = 0"]
        return [f"z = {self.fibre}"]

    def _into(self, f: ChartPoly) -> ChartPoly:
        """Surface polynomial in (z, u) [or (u, v) for j0] written in threefold variables."""
        out: dict[Monomial, Fraction] = {}
        for m, c in f.items():
            if self.kind == "j1":
                key = (m[0], m[1], 0)
            elif self.kind == "j2":
                key = (m[0], 0, m[1])
            else:
                key = (0, m[0], m[1])
            out[key] = out.get(key, 0) + c
        return ChartPoly(out)

    def pushforward_coeffs(self, s: SurfacePoissonStructure | ChartPoly, chart: str = "U") -> tuple[ChartPoly, ...]:
        """Coefficient triple of j_*(s) along the image, in the given chart."""
        if self.kind == "j0":
            if not isinstance(s, ChartPoly):
                raise ValueError("j0 takes a polynomial g(u, v) on the plane")
            f = s
        else:
            if not isinstance(s, SurfacePoissonStructure):
                raise ValueError("j1 and j2 take structures on Z_k")
            if s.k != self.surface_k:
                raise ValueError(f"{self.kind} into {self.spec.name} takes structures on Z_{self.surface_k}, not Z_{s.k}")
            f = s.u_coeff if chart == "U" else s.v_coeff
        comps = [ChartPoly.zero()] * 3
        comps[self.slot] = self._into(f)
        return tuple(comps)

    def restrict(self, q: BivectorField, chart: str = "U") -> tuple[ChartPoly, ...]:
        """Coefficients of q along the image (the normal variable set to its value)."""
        coeffs = q.chart_coeffs(chart)
        if self.kind == "j0":
            if chart != "U":
                raise ValueError("j0 restrictions are taken in the U chart")
            images = [ChartPoly.constant(self.fibre), ChartPoly.var(1), ChartPoly.var(2)]
        else:
            killed = 2 if self.kind == "j1" else 1
            images = [ChartPoly.var(i) if i != killed else ChartPoly.zero() for i in range(3)]
        return tuple(p.substitute(images) for p in coeffs)

    def charts(self) -> tuple[str, ...]:
        return ("U",) if self.kind == "j0" else ("U", "V")

    def matches(self, q: BivectorField, s) -> bool:
        """Whether q restricts to j_*(s) in every chart containing the image."""
        return all(self.restrict(q, c) == self.pushforward_coeffs(s, c) for c in self.charts())


def _extension_search(emb: SurfaceEmbedding, s, weight: int) -> BivectorField | None:
    ws = weight_space(emb.spec, weight)
    if not ws.basis:
        return None
    target = emb.pushforward_coeffs(s, "U")
    # restriction is linear: compare restricted coefficients monomial by monomial
    rows: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    rhs: dict[tuple[int, Monomial], Fraction] = {}
    for j, vec in enumerate(ws.basis):
        restricted = emb.restrict(ws.field(vec), "U")
        for slot, p in enumerate(restricted):
            for m, c in p.items():
                rows.setdefault((slot, m), {})[j] = c
    for slot, p in enumerate(target):
        for m, c in p.items():
            rhs[(slot, m)] = c
            rows.setdefault((slot, m), {})
    keys = list(rows)
    sol = linalg.solve([rows[key] for key in keys], [rhs.get(key, 0) for key in keys], len(ws.basis))
    if sol is None:
        return None
    total: dict[int, Fraction] = {}
    for j, c in sol.items():
        for i, v in ws.basis[j].items():
            total[i] = total.get(i, 0) + c * v
    q = ws.field({i: v for i, v in total.items() if v})
    return q if emb.matches(q, s) else None


def embedding_pushforward(emb: SurfaceEmbedding, s) -> BivectorField:
    """A global bivector on the threefold restricting to j_*(s) on the image.

    The naive extension (same coefficient, constant in the normal direction)
    is used when it is global; otherwise a global correction is searched in
    the weight piece of the naive extension.
    """
    naive = BivectorField(emb.spec, emb.pushforward_coeffs(s, "U"))
    if naive.is_zero():
        raise ValueError("zero surface structure")
    if naive.is_global() and emb.matches(naive, s):
        return naive
    w = naive.weight()
    if w is not None:
        found = _extension_search(emb, s, w)
        if found is not None:
            return found
    raise NotGlobalError(f"j_*({s}) has no global extension of weight {w}")


# generation by embeddings


@dataclass
class Witness:
    label: str
    embedding: str
    structure: str
    multiplier: str
    transport: tuple[str, ...]
    scale: Fraction
    via: str | None = None

    def to_json(self) -> dict:
        return {
            "generator": self.label,
            "embedding": self.embedding,
            "structure": self.structure,
            "multiplier": self.multiplier,
            "transport": list(self.transport),
            "scale": str(self.scale),
            "via": self.via,
        }

    def __str__(self) -> str:
        g = "" if self.multiplier == "1" else f"({self.multiplier})."
        core = f"{self.embedding}_*({g}{self.structure})"
        scale = "" if self.scale == 1 else f"{self.scale} * "
        if self.transport:
            return f"{self.label}: {self.via}|_{self.embedding} = {scale}{core}"
        return f"{self.label} = {scale}{core}"


def _surface_candidates(emb: SurfaceEmbedding, max_degree: int = 2):
    """(structure, multiplier, label) triples tried by the witness search."""
    if emb.kind == "j0":
        for d in range(max_degree + 1):
            for a in range(d + 1):
                g = ChartPoly.monomial((a, d - a, 0))
                yield g, format_poly(g, ("u", "v", "_")), "pi_0"
        return
    k = emb.surface_k
    if k < -1:
        return
    for s in surface_catalog(k):
        for b in range(max_degree + 1):
            g = ChartPoly.monomial((0, b, 0))
            yield s.scaled(g), format_poly(g, SURFACE_U_NAMES), f"pi_{s.index}"


def embeddings_for(spec: ThreefoldSpec, fibre: int | None = None) -> list[SurfaceEmbedding]:
    embs = [SurfaceEmbedding(spec, "j1"), SurfaceEmbedding(spec, "j2")]
    if fibre is not None:
        embs.append(SurfaceEmbedding(spec, "j0", fibre))
    return embs


def _restriction_scale(q: BivectorField, emb: SurfaceEmbedding, s) -> Fraction | None:
    """c with q|_image = c * j_*(s) in every chart containing the image."""
    pushed = [emb.pushforward_coeffs(s, c) for c in emb.charts()]
    restricted = [emb.restrict(q, c) for c in emb.charts()]
    c = BivectorField(q.spec, restricted[0]).proportional_to(BivectorField(q.spec, pushed[0]))
    if not c:
        return None
    if all(tuple(p.scale(c) for p in pu) == r for pu, r in zip(pushed, restricted)):
        return c
    return None


def find_direct_witness(q: BivectorField, embeddings: Sequence[SurfaceEmbedding]) -> Witness | None:
    for emb in embeddings:
        for s, mult, name in _surface_candidates(emb, 4):
            c = _restriction_scale(q, emb, s)
            if c is not None:
                return Witness(q.label or "?", emb.kind, name, mult, (), c)
    return None


def check_witness(
    q: BivectorField,
    embedding: str,
    index: int,
    multiplier: str = "1",
    transport: tuple[str, ...] = (),
    fibre: int = 0,
) -> Fraction | None:
    """Verify one claimed witness: transport^*(q) restricts to c * j_*(g . pi_index).

    Returns c, or None when the restriction is not of that form.
    """
    emb = SurfaceEmbedding(q.spec, embedding, fibre)
    moved = pullback(ThreefoldMap(q.spec, transport), q) if transport else q
    if embedding == "j0":
        s = parse_poly(multiplier, ("u", "v", "_"))
    else:
        s = surface_catalog(emb.surface_k)[index].scaled(parse_surface_poly(multiplier))
    return _restriction_scale(moved, emb, s)


def verify_generation_by_embeddings(
    spec: ThreefoldSpec,
    generators: Sequence[BivectorField],
    fibre: int | None = None,
) -> list[tuple[str, Witness | None]]:
    """For each generator: a surface it restricts to as a pushforward, or a
    transport by s0/s1 of a generator that has one."""
    embs = embeddings_for(spec, fibre)
    direct: dict[str, Witness] = {}
    for g in generators:
        w = find_direct_witness(g, embs)
        if w is not None:
            direct[g.label] = w
    out: list[tuple[str, Witness | None]] = []
    for g in generators:
        if g.label in direct:
            out.append((g.label, direct[g.label]))
            continue
        found = None
        for word in _words(spec):
            moved = pullback(ThreefoldMap(spec, word), g)
            w = find_direct_witness(moved.with_label(g.label), embs)
            if w is not None:
                # g = word^* (moved) since every word used here is an involution
                found = Witness(g.label, w.embedding, w.structure, w.multiplier, word, w.scale, via=f"{'*'.join(word)}^*{g.label}")
                break
        out.append((g.label, found))
    return out
