"""Sparse exact Laurent polynomials in three variables.

A :class:`ChartPoly` is a finite map from exponent triples ``(e0, e1, e2)`` to
nonzero :class:`fractions.Fraction` coefficients.  Only the first variable (the
base coordinate ``z`` or ``xi``) may carry a negative exponent; the two fiber
variables are never inverted.

Monomials are ordered graded-lexicographically with ``z < u1 < u2``: total
degree first, then the ``u2`` exponent, then ``u1``, then ``z``.  Printing
lists terms from the largest monomial down.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, int, int]

U_NAMES = ("z", "u1", "u2")
V_NAMES = ("xi", "v1", "v2")

ExactScalar = Fraction


def monomial_key(mono: Monomial) -> tuple[int, int, int, int]:
    """Sort key realising graded-lex order with z < u1 < u2."""
    ez, e1, e2 = mono
    return (ez + e1 + e2, e2, e1, ez)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


class ChartPoly:
    """Immutable sparse Laurent polynomial in (z, u1, u2) over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            mono = _check_monomial(mono)
            c = _as_fraction(coeff)
            if c:
                acc[mono] = acc.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict[Monomial, Fraction]) -> "ChartPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls) -> "ChartPoly":
        return cls._trusted({})

    @classmethod
    def constant(cls, value) -> "ChartPoly":
        c = _as_fraction(value)
        return cls._trusted({(0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "ChartPoly":
        c = _as_fraction(coeff)
        return cls._trusted({_check_monomial(mono): c} if c else {})

    @classmethod
    def var(cls, index: int) -> "ChartPoly":
        exps = [0, 0, 0]
        exps[index] = 1
        return cls._trusted({tuple(exps): Fraction(1)})

    # mapping-like access

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0, 0)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def sorted_terms(self, descending: bool = True) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]), reverse=descending)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=monomial_key)

    def fiber_degrees(self) -> set[int]:
        return {e1 + e2 for _, e1, e2 in self._terms}

    def min_exponents(self) -> Monomial:
        """Componentwise minimum exponent (the monomial content)."""
        if not self._terms:
            raise ValueError("zero polynomial has no monomial content")
        monos = list(self._terms)
        return tuple(min(m[i] for m in monos) for i in range(3))

    def has_negative_powers(self) -> bool:
        return any(m[0] < 0 for m in self._terms)

    # arithmetic

    def __add__(self, other) -> "ChartPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ChartPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> "ChartPoly":
        return ChartPoly._trusted({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "ChartPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "ChartPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "ChartPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        for (x0, x1, x2), cx in b.items():
            for (y0, y1, y2), cy in a.items():
                m = (x0 + y0, x1 + y1, x2 + y2)
                s = out.get(m, 0) + cx * cy
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ChartPoly._trusted(out)

    __rmul__ = __mul__

    def scale(self, value) -> "ChartPoly":
        c = _as_fraction(value)
        if not c:
            return ChartPoly._trusted({})
        return ChartPoly._trusted({m: c * v for m, v in self._terms.items()})

    def shift(self, mono: Monomial) -> "ChartPoly":
        """Multiply by the monomial ``mono``."""
        d0, d1, d2 = mono
        return ChartPoly._trusted(
            {(m0 + d0, m1 + d1, m2 + d2): c for (m0, m1, m2), c in self._terms.items()}
        )

    def __pow__(self, exponent: int) -> "ChartPoly":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (mono, c), = self._terms.items()
            if mono[1] or mono[2]:
                raise ValueError("fiber variables cannot be inverted")
            return ChartPoly._trusted({(mono[0] * exponent, 0, 0): c**exponent})
        result = ChartPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ChartPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == ChartPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and substitution

    def derivative(self, var: int) -> "ChartPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                n = list(m)
                n[var] -= 1
                out[tuple(n)] = c * e
        return ChartPoly._trusted(out)

    def substitute(self, images: Sequence["ChartPoly"]) -> "ChartPoly":
        return substitute(self, images)

    def evaluate(self, point: Sequence) -> Fraction:
        vals = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for (e0, e1, e2), c in self._terms.items():
            if e0 < 0 and vals[0] == 0:
                raise ZeroDivisionError("Laurent term evaluated at z = 0")
            total += c * vals[0] ** e0 * vals[1] ** e1 * vals[2] ** e2
        return total

    def primitive(self) -> tuple[Fraction, "ChartPoly"]:
        """Split into (content, primitive part) with a positive leading coefficient."""
        if not self._terms:
            return Fraction(0), self
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        lead = self._terms[self.leading_monomial()]
        content = Fraction(num, den) * (1 if lead > 0 else -1)
        return content, ChartPoly._trusted({m: c / content for m, c in self._terms.items()})

    # text

    def to_string(self, names: Sequence[str] = U_NAMES) -> str:
        return format_poly(self, names)

    def __str__(self) -> str:
        return format_poly(self, U_NAMES)

    def __repr__(self) -> str:
        return f"ChartPoly({format_poly(self, U_NAMES)!r})"


def _check_monomial(mono) -> Monomial:
    m = tuple(int(x) for x in mono)
    if len(m) != 3:
        raise ValueError(f"monomial must have three exponents, got {mono!r}")
    if m[1] < 0 or m[2] < 0:
        raise ValueError(f"fiber exponents must be non-negative, got {m!r}")
    return m


def _coerce(value):
    if isinstance(value, ChartPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ChartPoly.constant(value)
    return NotImplemented


def poly_arith(lhs: ChartPoly, rhs: ChartPoly, op: str) -> ChartPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: ChartPoly, var: int | str) -> ChartPoly:
    return p.derivative(variable_index(var))


def variable_index(var: int | str) -> int:
    if isinstance(var, int):
        if var in (0, 1, 2):
            return var
    else:
        for names in (U_NAMES, V_NAMES):
            if var in names:
                return names.index(var)
    raise ValueError(f"unknown variable {var!r}")


def substitute(p: ChartPoly, images: Sequence[ChartPoly]) -> ChartPoly:
    """Compose ``p`` with the given images of (z, u1, u2).

    A negative power of the first variable needs its image to be a single
    term with no fiber variables, which is the case for every chart change.
    """
    if len(images) != 3:
        raise ValueError("substitute needs exactly three images")
    cache: list[dict[int, ChartPoly]] = [{}, {}, {}]

    def power(i: int, e: int) -> ChartPoly:
        hit = cache[i].get(e)
        if hit is None:
            hit = images[i] ** e
            cache[i][e] = hit
        return hit

    total: dict[Monomial, Fraction] = {}
    for (e0, e1, e2), c in p.items():
        term = power(0, e0) * power(1, e1) * power(2, e2)
        for m, v in term.items():
            s = total.get(m, 0) + c * v
            if s:
                total[m] = s
            else:
                total.pop(m, None)
    return ChartPoly._trusted(total)


# formatting


def _format_coeff_abs(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(mono: Monomial, names: Sequence[str] = U_NAMES) -> str:
    parts = []
    for e, name in zip(mono, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: ChartPoly, names: Sequence[str] = U_NAMES) -> str:
    if not p:
        return "0"
    pieces = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        mag = abs(c)
        mono_text = format_monomial(mono, names)
        if mono == (0, 0, 0):
            body = _format_coeff_abs(mag)
        elif mag == 1:
            body = mono_text
        else:
            body = f"{_format_coeff_abs(mag)}*{mono_text}"
        if i == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)


# parsing


class PolySyntaxError(ValueError):
    """Raised for malformed polynomial text; ``position`` is a character offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = {name: i for i, name in enumerate(names)}
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.text, tok[2])

    def parse(self) -> ChartPoly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> ChartPoly:
        result = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> ChartPoly:
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division is only allowed by a nonzero constant", op)
                result = result.scale(1 / rhs.coeff((0, 0, 0)))
        return result

    def unary(self) -> ChartPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> ChartPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected an integer exponent", tok)
            try:
                return base ** (sign * int(tok[1]))
            except ValueError as exc:
                self.fail(str(exc), tok)
        return base

    def atom(self) -> ChartPoly:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return ChartPoly.constant(int(value))
        if kind == "name":
            if value not in self.names:
                allowed = ", ".join(self.names)
                self.fail(f"unknown variable {value!r} (expected one of {allowed})", tok)
            return ChartPoly.var(self.names[value])
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {value!r}", tok)


def parse_poly(text: str, names: Sequence[str] = U_NAMES) -> ChartPoly:
    """Parse the text grammar used by the CLI (``+ - * / ^``, parentheses)."""
    return _Parser(text, names).parse()
