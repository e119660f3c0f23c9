"""Simplicial fans: validity, smoothness, completeness, class group and Cox grading."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .lattice import AbelianGroupPresentation, IntMatrix
from .polyhedra import is_feasible


class InvalidFanError(ValueError):
    """Raised when an operation needs a valid (or complete) fan and gets another."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Fan:
    """Rays in ``Z^rank`` and maximal cones given as index sets into ``rays``.

    Ray order fixes the Cox variable order ``x_1, ..., x_l``.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]):
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in rays))
        object.__setattr__(self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in max_cones))

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> IntMatrix:
        """The ``l x d`` matrix of the map ``m -> (m(e_1), ..., m(e_l))``."""
        return lattice.as_int_matrix(self.rays, rows=0, cols=self.rank)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }


@dataclass
class ValidationReport:
    valid: bool = True
    problems: list[dict] = field(default_factory=list)

    def fail(self, kind: str, message: str, **where) -> None:
        self.valid = False
        self.problems.append({"kind": kind, "message": message, **where})

    def to_dict(self) -> dict:
        return {"valid": self.valid, "problems": self.problems}


def _cone_overlap_is_improper(fan: Fan, S: tuple[int, ...], T: tuple[int, ...]) -> bool:
    """True when cone(S) and cone(T) meet outside cone(S & T).

    For simplicial cones that happens iff some nonnegative combination of
    S-rays equals a nonnegative combination of T-rays while putting weight
    on a ray of S not in T. The equality is solved exactly, leaving a small
    inequality system for Fourier-Motzkin.
    """
    shared = set(S) & set(T)
    outside = [k for k, s in enumerate(S) if s not in shared]
    if not outside:
        return False
    cols = [fan.rays[s] for s in S] + [tuple(-x for x in fan.rays[t]) for t in T]
    A = lattice.as_int_matrix(cols).T
    basis = lattice.kernel_basis(A)
    if not basis:
        return False
    nvar = len(basis)
    # coefficient vector (lambda, mu) = sum_k z_k * basis[k]
    rows = []
    for pos in range(len(cols)):
        rows.append((tuple(b[pos] for b in basis), 0))
    rows.append((tuple(sum(b[k] for k in outside) for b in basis), 1))
    return is_feasible(rows, nvar)


def validate_fan(fan: Fan) -> ValidationReport:
    """Check rays, cone structure and pairwise face intersections."""
    rep = ValidationReport()
    d = fan.rank
    if d < 1:
        rep.fail("rank", "lattice rank must be positive")
        return rep
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(fan.rays):
        if len(r) != d:
            rep.fail("ray", f"ray {i} has length {len(r)}, expected {d}", ray=i)
            continue
        g = math.gcd(*r)
        if g == 0:
            rep.fail("ray", f"ray {i} is zero", ray=i)
        elif g != 1:
            rep.fail("ray", f"ray {i} = {list(r)} is not primitive (gcd {g})", ray=i)
        if r in seen:
            rep.fail("ray", f"ray {i} duplicates ray {seen[r]}", ray=i, duplicate_of=seen[r])
        else:
            seen[r] = i
    if not rep.valid:
        return rep

    used = set()
    cones_ok = True
    for c, cone in enumerate(fan.max_cones):
        if not cone:
            rep.fail("cone", f"cone {c} is empty", cone=c)
            cones_ok = False
            continue
        if len(set(cone)) != len(cone):
            rep.fail("cone", f"cone {c} repeats a ray index", cone=c)
            cones_ok = False
            continue
        bad = [i for i in cone if not 0 <= i < fan.n_rays]
        if bad:
            rep.fail("cone", f"cone {c} refers to missing rays {bad}", cone=c)
            cones_ok = False
            continue
        used.update(cone)
        if lattice.rank([fan.rays[i] for i in cone]) != len(cone):
            rep.fail("cone", f"cone {c} is not simplicial (rays linearly dependent)", cone=c)
            cones_ok = False
    for i in range(fan.n_rays):
        if i not in used:
            rep.fail("ray", f"ray {i} lies in no maximal cone", ray=i)
    if not cones_ok:
        return rep

    cones = fan.max_cones
    for a, b in itertools.combinations(range(len(cones)), 2):
        S, T = cones[a], cones[b]
        if set(S) <= set(T) or set(T) <= set(S):
            rep.fail("cone_pair", f"cone {a} and cone {b} are nested; maximal cones must not be faces of each other", cones=[a, b])
            continue
        if _cone_overlap_is_improper(fan, S, T) or _cone_overlap_is_improper(fan, T, S):
            rep.fail("cone_pair", f"cones {a} and {b} intersect outside a common face", cones=[a, b])
    return rep


def require_valid(fan: Fan, complete: bool = False) -> None:
    rep = validate_fan(fan)
    if not rep.valid:
        raise InvalidFanError("invalid fan: " + "; ".join(p["message"] for p in rep.problems), rep)
    if complete and not is_complete(fan):
        raise InvalidFanError("fan is not complete")


def is_smooth(fan: Fan) -> tuple[bool, int | None]:
    """``(smooth, witness)``; witness is the index of the first non-unimodular cone."""
    for c, cone in enumerate(fan.max_cones):
        factors = lattice.invariant_factors([fan.rays[i] for i in cone])
        if len(factors) != len(cone) or any(f != 1 for f in factors):
            return False, c
    return True, None


def is_complete(fan: Fan) -> bool:
    """Facet-pairing test: full-dimensional cones, every facet shared by exactly two."""
    d = fan.rank
    if not fan.max_cones:
        return False
    counts: dict[tuple[int, ...], int] = {}
    for cone in fan.max_cones:
        if len(cone) != d:
            return False
        for facet in itertools.combinations(cone, d - 1):
            counts[facet] = counts.get(facet, 0) + 1
    return all(v == 2 for v in counts.values())


@dataclass(frozen=True)
class GradingData:
    """Cl-grading of a Cox ring.

    ``rays`` is the matrix whose columns span the kernel of ``degree_map``
    (the image of ``M``); monomial enumeration walks that lattice.
    """

    class_group: AbelianGroupPresentation
    variable_degrees: tuple[tuple[int, ...], ...]
    rays: IntMatrix

    @property
    def degree_map(self) -> IntMatrix:
        return self.class_group.projection

    @property
    def n_vars(self) -> int:
        return len(self.variable_degrees)

    def degree(self, exponents: Sequence[int]) -> tuple[int, ...]:
        return self.class_group.project(exponents)

    def to_dict(self) -> dict:
        return {
            "class_group": self.class_group.to_dict(),
            "variable_degrees": [list(b) for b in self.variable_degrees],
        }


def grading_from_presentation(cl: AbelianGroupPresentation, rays: IntMatrix) -> GradingData:
    n = cl.ambient_rank
    degrees = tuple(cl.project([1 if k == i else 0 for k in range(n)]) for i in range(n))
    return GradingData(cl, degrees, rays)


def class_group(fan: Fan, check: bool = True) -> GradingData:
    """``Cl(X) = Z^l / M`` with the degrees of the Cox variables."""
    if check:
        require_valid(fan, complete=True)
    R = fan.ray_matrix()
    return grading_from_presentation(lattice.cokernel(R, rows=fan.n_rays), R)


def image_of_m(fan: Fan) -> IntMatrix:
    """HNF basis of ``{(m(e_1), ..., m(e_l)) : m in M}``."""
    return lattice.hermite_normal_form(np.array(fan.ray_matrix().T, dtype=object))
