"""Exact Fourier-Motzkin elimination over the rationals.

A system is a list of ``(coeffs, rhs)`` pairs meaning ``coeffs . x >= rhs``.
Rows are kept as primitive integer vectors so duplicates collapse.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Row = tuple[tuple[int, ...], Fraction]


def _normalize(coeffs: Sequence, rhs) -> Row:
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = math.gcd(*ints[:-1])
    if g == 0:
        # constant constraint 0 >= rhs; keep only its sign
        s = ints[-1]
        return tuple(ints[:-1]), Fraction((s > 0) - (s < 0))
    return tuple(c // g for c in ints[:-1]), Fraction(ints[-1], g)


def _dedupe(rows: Iterable[Row]) -> list[Row]:
    best: dict[tuple[int, ...], Fraction] = {}
    for coeffs, rhs in rows:
        if coeffs in best:
            best[coeffs] = max(best[coeffs], rhs)
        else:
            best[coeffs] = rhs
    return sorted(best.items())


def eliminate(rows: Sequence[Row], var: int) -> list[Row]:
    """Project the system along coordinate ``var`` (which becomes all-zero)."""
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        (pos if c > 0 else neg if c < 0 else rest).append((coeffs, rhs))
    out = list(rest)
    for cp, bp in pos:
        for cn, bn in neg:
            a, b = cp[var], -cn[var]
            coeffs = [b * x + a * y for x, y in zip(cp, cn)]
            out.append(_normalize(coeffs, b * bp + a * bn))
    return _dedupe(out)


def _constants_ok(rows: Sequence[Row]) -> bool:
    return all(rhs <= 0 for coeffs, rhs in rows if not any(coeffs))


def _eliminate_all_but(rows: list[Row], keep: set[int], n: int) -> list[Row] | None:
    todo = [v for v in range(n) if v not in keep]
    while todo:
        # cheapest variable first keeps intermediate systems small
        def cost(v):
            p = sum(1 for c, _ in rows if c[v] > 0)
            q = sum(1 for c, _ in rows if c[v] < 0)
            return p * q - p - q

        v = min(todo, key=cost)
        todo.remove(v)
        rows = eliminate(rows, v)
        if not _constants_ok(rows):
            return None
    return rows


def is_feasible(rows: Sequence[Row], n: int) -> bool:
    """Whether ``{x in Q^n : rows}`` is non-empty."""
    system = _dedupe(_normalize(c, b) for c, b in rows)
    if not _constants_ok(system):
        return False
    return _eliminate_all_but(system, set(), n) is not None


def coordinate_bounds(rows: Sequence[Row], n: int) -> list[tuple[Fraction | None, Fraction | None]] | None:
    """Exact ``(lo, hi)`` for each coordinate over the rational polyhedron.

    ``None`` in a slot means unbounded in that direction; returns None when the
    polyhedron is empty.
    """
    system = _dedupe(_normalize(c, b) for c, b in rows)
    if not _constants_ok(system):
        return None
    bounds = []
    for k in range(n):
        proj = _eliminate_all_but(list(system), {k}, n)
        if proj is None:
            return None
        lo = hi = None
        for coeffs, rhs in proj:
            c = coeffs[k]
            if c > 0:
                v = rhs / c
                lo = v if lo is None else max(lo, v)
            elif c < 0:
                v = rhs / c
                hi = v if hi is None else min(hi, v)
        if lo is not None and hi is not None and lo > hi:
            return None
        bounds.append((lo, hi))
    return bounds
