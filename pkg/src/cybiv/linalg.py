"""Exact linear algebra over the rationals on sparse vectors.

Vectors are ``dict[int, Fraction | int]`` maps from column index to a nonzero
entry.  Row reduction is delegated to a kernel: the compiled int64 kernel when
it is importable (and ``CYBIV_PURE`` is unset), otherwise the pure-Python one.
The compiled kernel falls back to the Python kernel on overflow, so both
backends always return identical canonical results.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from . import _linalg_py

try:  # pragma: no cover - exercised by whichever build is present
    from . import _linalg_ext
except ImportError:  # pragma: no cover
    _linalg_ext = None

Vector = Mapping[int, Fraction | int]

_INT64_MAX = 2**63 - 1
_DENSE_LIMIT = 40_000_000  # cells; beyond this the dense kernel is not attempted

_backend = "python" if (_linalg_ext is None or os.environ.get("CYBIV_PURE")) else "compiled"


def backend() -> str:
    """Name of the active kernel: ``"compiled"`` or ``"python"``."""
    return _backend


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _linalg_ext is not None else [])


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available")
    _backend = name


def integer_row(vec: Vector) -> dict[int, int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    g = 0
    for k, v in vec.items():
        if v:
            iv = int(v * den)
            out[k] = iv
            g = gcd(g, iv)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def rref_int(rows: Sequence[dict[int, int]]) -> tuple[list[dict[int, int]], list[int]]:
    """Canonical reduced echelon form of integer rows (primitive, positive pivots)."""
    rows = [r for r in rows if r]
    if not rows:
        return [], []
    if _backend == "compiled":
        ncols = 1 + max(max(r) for r in rows)
        if ncols * len(rows) <= _DENSE_LIMIT and all(
            abs(v) <= _INT64_MAX for r in rows for v in r.values()
        ):
            try:
                return _linalg_ext.rref_int64(rows, ncols)
            except OverflowError:
                pass
    return _linalg_py.rref_int(rows)


def rref(rows: Iterable[Vector]) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form with unit pivots."""
    irows, pivots = rref_int([integer_row(r) for r in rows])
    out = []
    for row, p in zip(irows, pivots):
        d = row[p]
        out.append({k: Fraction(v, d) for k, v in row.items()})
    return out, pivots


def rank(rows: Iterable[Vector]) -> int:
    return len(rref_int([integer_row(r) for r in rows])[1])


def nullspace(rows: Iterable[Vector], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column.

    The vector for free column f has entry 1 at f and 0 at every other free
    column, so the basis is canonical.
    """
    irows, pivots = rref_int([integer_row(r) for r in rows])
    pivot_set = set(pivots)
    by_col: dict[int, list[int]] = {}
    for idx, (row, p) in enumerate(zip(irows, pivots)):
        for k in row:
            if k != p:
                by_col.setdefault(k, []).append(idx)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for idx in by_col.get(f, ()):
            row = irows[idx]
            p = pivots[idx]
            vec[p] = Fraction(-row[f], row[p])
        basis.append(vec)
    return basis


def solve(rows: Sequence[Vector], rhs: Sequence[Fraction | int], ncols: int) -> dict[int, Fraction] | None:
    """One solution of A x = rhs (free variables set to zero), or None."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    sol: dict[int, Fraction] = {}
    for row, p in zip(red, pivots):
        v = row.get(ncols, 0)
        if v:
            sol[p] = Fraction(v)
    return sol


class Span:
    """A subspace given by a spanning set, supporting membership and extension."""

    def __init__(self, vectors: Iterable[Vector] = ()):
        irows, pivots = rref_int([integer_row(v) for v in vectors])
        self._echelon: dict[int, dict[int, int]] = dict(zip(pivots, irows))

    @property
    def dimension(self) -> int:
        return len(self._echelon)

    def pivots(self) -> list[int]:
        return sorted(self._echelon)

    def reduce(self, vec: Vector) -> dict[int, int]:
        """Integer multiple of the residue of ``vec`` modulo the span."""
        return _linalg_py.reduce_row(integer_row(vec), self._echelon)

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vector) -> bool:
        """Extend the span by ``vec``; return True if the dimension grew."""
        return _linalg_py.echelon_insert(integer_row(vec), self._echelon) is not None

    def basis(self) -> list[dict[int, Fraction]]:
        ech = dict(self._echelon)
        _linalg_py.back_substitute(ech)
        out = []
        for p in sorted(ech):
            row = ech[p]
            out.append({k: Fraction(v, row[p]) for k, v in row.items()})
        return out
