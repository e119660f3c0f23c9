"""The fan of ``P(L_1 + ... + L_r)`` over a complete simplicial toric variety.

Coordinates on the new lattice are ``Z^d (+) Z^(r-1)``, the second factor
having basis ``n_2, ..., n_r`` and ``n_1 = -(n_2 + ... + n_r)``. Ray order is
all base rays first (input order), then ``n_1, ..., n_r``; the Cox variables
follow the same order as ``x_1..x_l, y_1..y_r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lattice
from .divisors import TorusInvariantDivisor, divisor_class
from .fan import Fan, GradingData, class_group, require_valid
from .lattice import AbelianGroupPresentation


@dataclass(frozen=True)
class BundleSpec:
    """``E = L_1 + ... + L_r`` given by torus-invariant divisors ``L_j``."""

    divisors: tuple[TorusInvariantDivisor, ...]

    def __init__(self, divisors: Sequence):
        divs = tuple(d if isinstance(d, TorusInvariantDivisor) else TorusInvariantDivisor(d) for d in divisors)
        object.__setattr__(self, "divisors", divs)

    @property
    def r(self) -> int:
        return len(self.divisors)

    def classes(self, grading: GradingData) -> tuple[tuple[int, ...], ...]:
        return tuple(divisor_class(grading, D) for D in self.divisors)

    def to_dict(self) -> dict:
        return {"divisors": [list(D.coeffs) for D in self.divisors]}


@dataclass(frozen=True)
class ProjectivizedFan:
    fan: Fan
    base: Fan
    bundle: BundleSpec
    base_grading: GradingData
    grading: GradingData
    alphas: tuple[tuple[int, ...], ...]

    @property
    def l(self) -> int:
        return self.base.n_rays

    @property
    def r(self) -> int:
        return self.bundle.r

    @property
    def base_rays(self) -> list[int]:
        return list(range(self.l))

    @property
    def fiber_rays(self) -> list[int]:
        return list(range(self.l, self.l + self.r))

    @property
    def picard(self) -> AbelianGroupPresentation:
        return self.grading.class_group

    @property
    def x_degrees(self) -> tuple[tuple[int, ...], ...]:
        return self.grading.variable_degrees[: self.l]

    @property
    def y_degrees(self) -> tuple[tuple[int, ...], ...]:
        return self.grading.variable_degrees[self.l:]

    def variable_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.l)] + [f"y{j + 1}" for j in range(self.r)]

    def labels(self) -> list[str]:
        return [f"base:x{i + 1}" for i in range(self.l)] + [f"fiber:y{j + 1}" for j in range(self.r)]

    def fiber_class(self) -> tuple[int, ...]:
        """The class ``(0, 1)`` of ``O_{P(E)}(1)``."""
        f = self.base_grading.class_group.free_rank
        cl = self.picard
        coords = [0] * (cl.free_rank + len(cl.torsion))
        coords[f] = 1
        return tuple(coords)


def _check_bundle(base: Fan, E: BundleSpec) -> None:
    if E.r < 2:
        raise ValueError(f"a split bundle needs r >= 2 summands, got {E.r}")
    for j, D in enumerate(E.divisors):
        if len(D.coeffs) != base.n_rays:
            raise ValueError(f"divisor {j + 1} has {len(D.coeffs)} coefficients, fan has {base.n_rays} rays")


def projectivized_rays(base: Fan, E: BundleSpec) -> list[tuple[int, ...]]:
    """``e~_i = e_i - sum_j h_j(e_i) n_j`` and the fiber rays ``n_1..n_r``.

    With ``h_j(e_i) = -a_ji`` the ``n_k`` coordinate (k >= 2) of ``e~_i`` is
    ``a_ki - a_1i``.
    """
    r = E.r
    a = [D.coeffs for D in E.divisors]
    rays = []
    for i, e in enumerate(base.rays):
        rays.append(tuple(e) + tuple(a[k][i] - a[0][i] for k in range(1, r)))
    zero = (0,) * base.rank
    rays.append(zero + (-1,) * (r - 1))
    for k in range(1, r):
        rays.append(zero + tuple(1 if q == k - 1 else 0 for q in range(r - 1)))
    return rays


def picard_grading(base_grading: GradingData, alphas, rays: Sequence[Sequence[int]]) -> GradingData:
    """Grading of the Cox ring of P(E) by ``Cl(X) (+) Z``.

    ``deg x_i = (beta_i, 0)`` and ``deg y_j = (-alpha_j, 1)``; coordinates are
    the free part of ``Cl(X)``, then the new ``Z``, then the torsion of ``Cl(X)``.
    """
    cl = base_grading.class_group
    f, t = cl.free_rank, len(cl.torsion)
    l, r = base_grading.n_vars, len(alphas)
    P = np.zeros((f + 1 + t, l + r), dtype=object)
    for i in range(l):
        col = cl.projection[:, i]
        P[:f, i] = col[:f]
        P[f + 1:, i] = col[f:]
    for j, alpha in enumerate(alphas):
        P[:f, l + j] = [-x for x in alpha[:f]]
        P[f, l + j] = 1
        P[f + 1:, l + j] = [(-x) % d for x, d in zip(alpha[f:], cl.torsion)]
    pic = AbelianGroupPresentation(f + 1, cl.torsion, P)
    R = lattice.as_int_matrix(rays)
    degrees = tuple(pic.project([1 if k == i else 0 for k in range(l + r)]) for i in range(l + r))
    return GradingData(pic, degrees, R)


def projectivize(base: Fan, E: BundleSpec | Sequence, check: bool = True) -> ProjectivizedFan:
    if not isinstance(E, BundleSpec):
        E = BundleSpec(E)
    if check:
        require_valid(base, complete=True)
    _check_bundle(base, E)
    rays = projectivized_rays(base, E)
    l, r = base.n_rays, E.r
    cones = []
    for cone in base.max_cones:
        for j in range(r):
            cones.append(tuple(cone) + tuple(l + k for k in range(r) if k != j))
    fan = Fan(base.rank + r - 1, rays, cones)
    base_grading = class_group(base, check=False)
    alphas = E.classes(base_grading)
    return ProjectivizedFan(
        fan=fan,
        base=base,
        bundle=E,
        base_grading=base_grading,
        grading=picard_grading(base_grading, alphas, rays),
        alphas=alphas,
    )


def picard_of_projectivization(base: Fan, E: BundleSpec | Sequence):
    """``(Pic(P(E)), x_degrees, y_degrees)`` with ``Pic = Cl(X) (+) Z``."""
    P = projectivize(base, E)
    return P.picard, P.x_degrees, P.y_degrees
