"""Text input for the command line: functions, bivector triples and generator
combinations such as ``z*u2*e1 + e3``, with globality checks that name the
offending monomial."""

from __future__ import annotations

from typing import Mapping, Sequence

from .exactpoly import U_NAMES, V_NAMES, ChartPoly, Monomial, PolySyntaxError, _Parser, format_monomial, parse_poly
from .sections import BivectorField, NotGlobalError, _z_limits
from .threefold import ThreefoldSpec, global_violation


def _linear_form(spec: ThreefoldSpec, offset: int = 0) -> str:
    """'k1 s + k2 t + offset' written the way it reads, e.g. '3s − t'."""
    parts: list[tuple[int, str]] = [(spec.k1, "s"), (spec.k2, "t"), (offset, "")]
    out = ""
    for c, var in parts:
        if c == 0:
            continue
        mag = abs(c)
        body = var if (mag == 1 and var) else f"{mag}{var}"
        if not out:
            out = ("−" if c < 0 else "") + body
        else:
            out += (" − " if c < 0 else " + ") + body
    return out or "0"


def inequality(spec: ThreefoldSpec, offset: int = 0) -> str:
    return f"r ≤ {_linear_form(spec, offset)}"


def parse_function(text: str, spec: ThreefoldSpec, chart: str = "U") -> ChartPoly:
    """A global function; rejects monomials z^r u1^s u2^t with r > k1 s + k2 t."""
    names = U_NAMES if chart == "U" else V_NAMES
    p = parse_poly(text, names)
    check = p if chart == "U" else _to_u(spec, p)
    bad = global_violation(spec, check)
    if bad is not None:
        raise NotGlobalError(f"{format_monomial(bad)} violates {inequality(spec)}")
    return p


def _to_u(spec: ThreefoldSpec, p: ChartPoly) -> ChartPoly:
    from .threefold import change_chart

    return change_chart(spec, p)


def bivector_violation(q: BivectorField) -> str | None:
    """Why q is not global, or None.

    A U-chart term of slot m is reported with its bound r ≤ k1 s + k2 t + c_m
    when it breaks it; otherwise the pole term in the V chart is named.
    """
    bad = q.global_violation()
    if bad is None:
        return None
    limits = _z_limits(q.spec)
    for slot, p in enumerate(q.q):
        for mono in p:
            r, s, t = mono
            if r > q.spec.k1 * s + q.spec.k2 * t + limits[slot]:
                return f"{format_monomial(mono)} in slot {slot} violates {inequality(q.spec, limits[slot])}"
    chart, slot, mono = bad
    names = U_NAMES if chart == "U" else V_NAMES
    return f"{chart}-chart coefficient {slot} has the pole term {format_monomial(mono, names)}"


class _Lin:
    """scalar + bivector part; products of two bivector parts are rejected."""

    __slots__ = ("a", "q")

    def __init__(self, a: ChartPoly, q: tuple[ChartPoly, ...] | None = None):
        self.a = a
        self.q = q

    def _pair(self, other: "_Lin"):
        z = (ChartPoly.zero(),) * 3
        return self.q or z, other.q or z

    def __add__(self, other: "_Lin") -> "_Lin":
        if self.q is None and other.q is None:
            return _Lin(self.a + other.a)
        x, y = self._pair(other)
        return _Lin(self.a + other.a, tuple(i + j for i, j in zip(x, y)))

    def __neg__(self) -> "_Lin":
        return _Lin(-self.a, None if self.q is None else tuple(-i for i in self.q))

    def __sub__(self, other: "_Lin") -> "_Lin":
        return self + (-other)

    def __mul__(self, other: "_Lin") -> "_Lin":
        if self.q is not None and other.q is not None:
            raise ValueError("product of two bivectors")
        if self.q is None and other.q is None:
            return _Lin(self.a * other.a)
        x, y = self._pair(other)
        return _Lin(self.a * other.a, tuple(self.a * j + other.a * i for i, j in zip(x, y)))

    def __pow__(self, n: int) -> "_Lin":
        if self.q is not None:
            raise ValueError("powers of a bivector are not defined")
        return _Lin(self.a**n)

    def is_constant(self) -> bool:
        return self.q is None and self.a.is_constant()

    def is_zero(self) -> bool:
        return self.q is None and self.a.is_zero()

    def coeff(self, mono: Monomial):
        return self.a.coeff(mono)

    def scale(self, value) -> "_Lin":
        return _Lin(self.a.scale(value), None if self.q is None else tuple(i.scale(value) for i in self.q))


class _CombinationParser(_Parser):
    def __init__(self, text: str, names: Sequence[str], generators: Mapping[str, BivectorField]):
        super().__init__(text, names)
        self.generators = generators

    def atom(self):
        tok = self.peek()
        kind, value, _ = tok
        if kind == "name" and value in self.generators:
            self.take()
            return _Lin(ChartPoly.zero(), self.generators[value].q)
        if kind == "name" and value in self.names:
            self.take()
            return _Lin(ChartPoly.var(self.names[value]))
        if kind == "num":
            self.take()
            return _Lin(ChartPoly.constant(int(value)))
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "name":
            allowed = ", ".join([*self.names, *self.generators])
            self.fail(f"unknown name {value!r} (expected one of {allowed})", tok)
        return super().atom()

    def term(self):
        try:
            return super().term()
        except ValueError as exc:
            if isinstance(exc, PolySyntaxError):
                raise
            self.fail(str(exc), self.tokens[self.i - 1])

    def parse(self):
        result = super().parse()
        if result.a:
            raise PolySyntaxError("a bivector expression cannot have a function term", self.text, 0)
        return result.q or (ChartPoly.zero(),) * 3


def _split_triple(text: str) -> list[tuple[str, int]]:
    parts, start, depth = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_bivector(
    text: str,
    spec: ThreefoldSpec,
    chart: str = "U",
    generators: Mapping[str, BivectorField] | None = None,
    label: str | None = None,
) -> BivectorField:
    """A global bivector from "q0,q1,q2" or from a combination of generators.

    Raises PolySyntaxError (with a position) or NotGlobalError.
    """
    names = U_NAMES if chart == "U" else V_NAMES
    parts = _split_triple(text)
    if len(parts) == 3:
        coeffs = []
        for part, start in parts:
            try:
                coeffs.append(parse_poly(part, names))
            except PolySyntaxError as exc:
                raise PolySyntaxError(str(exc).split(" at position")[0], text, start + exc.position) from None
        q = tuple(coeffs)
    elif len(parts) == 1 and generators and chart == "U":
        q = _CombinationParser(text, names, generators).parse()
    else:
        raise PolySyntaxError(
            f"expected three comma-separated coefficients, got {len(parts)}", text, parts[min(len(parts), 3) - 1][1]
        )
    field = BivectorField(spec, q, label) if chart == "U" else BivectorField.from_v(spec, q, label)
    why = bivector_violation(field)
    if why is not None:
        raise NotGlobalError(f"not a global bivector on {spec.name}: {why}")
    return field


__all__ = ["parse_function", "parse_bivector", "bivector_violation", "inequality"]
