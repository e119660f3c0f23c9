"""Torus-invariant divisors, support functions, ampleness and section counting.

Sign convention: for ``D = sum a_i D_i`` the support function takes the value
``h(e_i) = -a_i`` on ray ``e_i``, and ``D`` is ample when every cone's linear
form ``m_sigma`` is integral and ``<m_sigma, e> > h(e)`` for each ray ``e``
outside ``sigma``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels
from .fan import Fan, GradingData
from .polyhedra import coordinate_bounds

DEFAULT_MAX_ENUM = 10**6


class EnumerationError(RuntimeError):
    """The lattice-point box is unbounded or larger than the enumeration cap."""


def max_enum() -> int:
    raw = os.environ.get("TORICAUT_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


@dataclass(frozen=True)
class TorusInvariantDivisor:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in coeffs))

    def __add__(self, other: "TorusInvariantDivisor") -> "TorusInvariantDivisor":
        return TorusInvariantDivisor([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __rmul__(self, k: int) -> "TorusInvariantDivisor":
        return TorusInvariantDivisor([k * a for a in self.coeffs])


def principal_divisor(fan: Fan, m: Sequence[int]) -> TorusInvariantDivisor:
    """``div(chi^m) = sum <m, e_i> D_i``."""
    return TorusInvariantDivisor([sum(x * y for x, y in zip(m, e)) for e in fan.rays])


@dataclass(frozen=True)
class SupportFunction:
    ray_values: tuple[int, ...]
    cone_linear_forms: tuple[tuple[Fraction, ...], ...]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for m in self.cone_linear_forms for x in m)

    def to_dict(self) -> dict:
        return {
            "ray_values": list(self.ray_values),
            "cone_linear_forms": [[str(x) for x in m] for m in self.cone_linear_forms],
        }


def _solve_rational(rows: list[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


def _check_length(fan: Fan, D: TorusInvariantDivisor) -> None:
    if len(D.coeffs) != fan.n_rays:
        raise ValueError(f"divisor has {len(D.coeffs)} coefficients but the fan has {fan.n_rays} rays")


def support_function(fan: Fan, D: TorusInvariantDivisor) -> SupportFunction:
    _check_length(fan, D)
    h = tuple(-a for a in D.coeffs)
    forms = []
    for cone in fan.max_cones:
        if len(cone) != fan.rank:
            raise ValueError("support functions need full-dimensional simplicial cones")
        forms.append(_solve_rational([fan.rays[i] for i in cone], [h[i] for i in cone]))
    return SupportFunction(h, tuple(forms))


def is_cartier(fan: Fan, D: TorusInvariantDivisor) -> bool:
    return support_function(fan, D).is_integral()


def is_ample(fan: Fan, D: TorusInvariantDivisor) -> bool:
    sf = support_function(fan, D)
    if not sf.is_integral():
        return False
    for cone, m in zip(fan.max_cones, sf.cone_linear_forms):
        members = set(cone)
        for i, e in enumerate(fan.rays):
            if i not in members and sum(x * y for x, y in zip(m, e)) <= sf.ray_values[i]:
                return False
    return True


def lattice_points(rays: Sequence[Sequence[int]], coeffs: Sequence[int], backend: str | None = None) -> list[tuple[int, ...]]:
    """All ``m`` in ``Z^d`` with ``<m, e_i> >= -a_i``, sorted lexicographically."""
    rays = [tuple(int(x) for x in r) for r in rays]
    d = len(rays[0]) if rays else 0
    if d == 0:
        return [()] if all(a >= 0 for a in coeffs) else []
    rows = [(r, -int(a)) for r, a in zip(rays, coeffs)]
    bounds = coordinate_bounds(rows, d)
    if bounds is None:
        return []
    lo, hi = [], []
    for k, (l, h) in enumerate(bounds):
        if l is None or h is None:
            raise EnumerationError(f"polyhedron is unbounded in coordinate {k}")
        lo.append(math.ceil(l))
        hi.append(math.floor(h))
    size = math.prod(max(0, h - l + 1) for l, h in zip(lo, hi))
    cap = max_enum()
    if size > cap:
        raise EnumerationError(f"enumeration box has {size} points, above the cap {cap} (TORICAUT_MAX_ENUM)")
    if size == 0:
        return []
    pts = _kernels.box_filter(lo, hi, [r for r, _ in rows], [b for _, b in rows], backend=backend)
    return sorted(pts)


def polytope_lattice_points(fan: Fan, D: TorusInvariantDivisor, backend: str | None = None) -> list[tuple[int, ...]]:
    """Characters ``m`` indexing a basis of global sections of ``O(D)``."""
    _check_length(fan, D)
    return lattice_points(fan.rays, D.coeffs, backend=backend)


def monomials_of_degree(grading: GradingData, alpha: Sequence[int], backend: str | None = None) -> list[tuple[int, ...]]:
    """Exponent vectors of the Cox monomials of class ``alpha``.

    One solution ``a0`` of ``deg(a0) = alpha`` is translated by the kernel
    lattice; the nonnegative translates are the lattice points of the
    polytope of the divisor ``a0``. Sorted in decreasing lex order.
    """
    a0 = grading.class_group.preimage(alpha)
    if a0 is None:
        return []
    R = [tuple(int(x) for x in row) for row in grading.rays]
    if not R or not R[0]:
        return [a0] if all(a >= 0 for a in a0) else []
    pts = lattice_points(R, a0, backend=backend)
    mons = {tuple(a + sum(x * y for x, y in zip(m, r)) for a, r in zip(a0, R)) for m in pts}
    return sorted(mons, reverse=True)


def divisor_class(grading: GradingData, D: TorusInvariantDivisor) -> tuple[int, ...]:
    return grading.degree(D.coeffs)

