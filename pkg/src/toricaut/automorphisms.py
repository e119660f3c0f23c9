"""Roots of the graded automorphism group of a Cox ring and dimension counts."""
from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .divisors import is_ample, lattice_points, monomials_of_degree
from .fan import Fan, GradingData, class_group, is_smooth, require_valid
from .projectivization import ProjectivizedFan


@dataclass(frozen=True, order=True)
class Root:
    """The one-parameter subgroup ``x_variable -> x_variable + t * x^monomial``."""

    variable: int
    monomial: tuple[int, ...]
    kind: str

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        d = {"variable": self.variable, "monomial": list(self.monomial), "kind": self.kind}
        if names:
            d["substitution"] = f"{names[self.variable]} -> {names[self.variable]} + t*{_mono(self.monomial, names)}"
        return d


def _mono(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(parts) if parts else "1"


class RootShapeError(RuntimeError):
    """A root of P(E) that is neither a base root nor a fiber root."""


def _section_counts(g: GradingData) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    return {deg: monomials_of_degree(g, deg) for deg in sorted(set(g.variable_degrees))}


def enumerate_roots(g: GradingData) -> list[Root]:
    sections = _section_counts(g)
    roots = []
    for v, deg in enumerate(g.variable_degrees):
        for mono in sections[deg]:
            if mono[v]:
                continue
            kind = "reductive" if sum(mono) == 1 else "unipotent"
            roots.append(Root(v, mono, kind))
    return sorted(roots)


def levi_structure(g: GradingData) -> list[tuple[tuple[int, ...], int]]:
    """``(degree, multiplicity)`` blocks, one ``GL(r_j)`` each."""
    return sorted(Counter(g.variable_degrees).items())


def _format_levi(blocks) -> str:
    return " x ".join(f"GL({r})" for _, r in sorted(blocks, key=lambda b: (-b[1], b[0])))


@dataclass
class AutReport:
    levi_blocks: list[tuple[tuple[int, ...], int]]
    reductive_root_count: int
    unipotent_root_count: int
    dim_G: int
    dim_torus: int
    section_dims: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def dim_aut0(self) -> int:
        return self.dim_G - self.dim_torus

    @property
    def dim_unipotent_radical(self) -> int:
        return self.unipotent_root_count

    @property
    def levi(self) -> str:
        return _format_levi(self.levi_blocks)

    def to_dict(self) -> dict:
        return {
            "levi_blocks": [{"degree": list(d), "multiplicity": r} for d, r in self.levi_blocks],
            "levi": self.levi,
            "reductive_root_count": self.reductive_root_count,
            "unipotent_root_count": self.unipotent_root_count,
            "dim_G": self.dim_G,
            "dim_torus": self.dim_torus,
            "dim_aut0": self.dim_aut0,
            "dim_unipotent_radical": self.dim_unipotent_radical,
            "section_dims": [{"degree": list(d), "dim": n} for d, n in sorted(self.section_dims.items())],
        }


def aut_report(g: GradingData) -> AutReport:
    """Dimensions of ``G = Aut_g(S)``: ``dim G = sum over variables of dim S_deg(v)``."""
    sections = _section_counts(g)
    roots = enumerate_roots(g)
    kinds = Counter(r.kind for r in roots)
    return AutReport(
        levi_blocks=levi_structure(g),
        reductive_root_count=kinds["reductive"],
        unipotent_root_count=kinds["unipotent"],
        dim_G=sum(len(sections[deg]) for deg in g.variable_degrees),
        dim_torus=g.class_group.free_rank,
        section_dims={deg: len(m) for deg, m in sections.items()},
    )


@dataclass
class RootSplit:
    base_roots: list[Root]
    fiber_roots: list[Root]

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        def count(rs, kind):
            return sum(1 for r in rs if r.kind == kind)

        return {
            "base_roots": [r.to_dict(names) for r in self.base_roots],
            "fiber_roots": [r.to_dict(names) for r in self.fiber_roots],
            "counts": {
                "base": len(self.base_roots),
                "fiber": len(self.fiber_roots),
                "base_unipotent": count(self.base_roots, "unipotent"),
                "fiber_unipotent": count(self.fiber_roots, "unipotent"),
                "base_reductive": count(self.base_roots, "reductive"),
                "fiber_reductive": count(self.fiber_roots, "reductive"),
            },
        }


def is_base_root(root: Root, l: int) -> bool:
    return root.variable < l and not any(root.monomial[l:])


def is_fiber_root(root: Root, l: int) -> bool:
    """``y_t -> y_t + f(x) y_s`` with ``s != t``."""
    if root.variable < l:
        return False
    ys = root.monomial[l:]
    return sum(ys) == 1 and ys[root.variable - l] == 0


def split_roots_of_projectivization(P: ProjectivizedFan) -> RootSplit:
    base, fiber = [], []
    for root in enumerate_roots(P.grading):
        b, f = is_base_root(root, P.l), is_fiber_root(root, P.l)
        if b == f:
            raise RootShapeError(f"root {root} is {'both' if b else 'neither'} base and fiber")
        (base if b else fiber).append(root)
    return RootSplit(base, fiber)


@dataclass
class DemazureCheck:
    root_count: int
    lattice_pair_count: int
    witness: list[dict]

    @property
    def match(self) -> bool:
        return self.root_count == self.lattice_pair_count and all(w["matched"] for w in self.witness)

    def to_dict(self) -> dict:
        return {
            "root_count": self.root_count,
            "lattice_pair_count": self.lattice_pair_count,
            "match": self.match,
            "witness": self.witness,
        }


def demazure_pairs(fan: Fan) -> list[tuple[int, tuple[int, ...]]]:
    """``(i, m)`` with ``<m, e_i> = -1`` and ``<m, e_j> >= 0`` for ``j != i``."""
    pairs = []
    for i in range(fan.n_rays):
        coeffs = [1 if k == i else 0 for k in range(fan.n_rays)]
        for m in lattice_points(fan.rays, coeffs):
            if sum(x * y for x, y in zip(m, fan.rays[i])) == -1:
                pairs.append((i, m))
    return pairs


def demazure_crosscheck(fan: Fan) -> DemazureCheck:
    """Compare monomial roots with Demazure's lattice description on a smooth fan."""
    require_valid(fan, complete=True)
    smooth, cone = is_smooth(fan)
    if not smooth:
        raise ValueError(f"Demazure's description needs a smooth fan; cone {cone} is singular")
    roots = {(r.variable, r.monomial) for r in enumerate_roots(class_group(fan, check=False))}
    witness = []
    for i, m in demazure_pairs(fan):
        exps = tuple(0 if j == i else sum(x * y for x, y in zip(m, e)) for j, e in enumerate(fan.rays))
        witness.append({"ray": i, "m": list(m), "variable": i, "monomial": list(exps), "matched": (i, exps) in roots})
    return DemazureCheck(len(roots), len(witness), witness)


@dataclass
class ModuliReport:
    dim_sections: int
    dim_G: int
    dim_torus: int
    aut: AutReport
    classical: dict
    warnings: list[str]

    @property
    def dim_aut0(self) -> int:
        return self.dim_G - self.dim_torus

    @property
    def moduli_dim(self) -> int:
        return self.dim_sections - self.dim_aut0

    def to_dict(self) -> dict:
        return {
            "dim_sections_O1": self.dim_sections,
            "dim_G": self.dim_G,
            "dim_torus": self.dim_torus,
            "dim_G_minus_torus": self.dim_aut0,
            "moduli_dim": self.moduli_dim,
            "levi": self.aut.levi,
            "dim_unipotent_radical": self.aut.dim_unipotent_radical,
            "classical": self.classical,
            "warnings": self.warnings,
        }


def moduli_dimension(P: ProjectivizedFan) -> ModuliReport:
    """``dim S_(0,1) - (dim G - rank Pic(P(E)))`` with a classical side count."""
    notes = []
    for j, D in enumerate(P.bundle.divisors):
        if not is_ample(P.base, D):
            notes.append(f"L{j + 1} is not ample")
    sections = monomials_of_degree(P.grading, P.fiber_class())
    aut = aut_report(P.grading)
    base_aut = aut_report(P.base_grading)
    classical = {
        "section_projective_dims": [len(monomials_of_degree(P.base_grading, a)) - 1 for a in P.alphas],
        "base_aut0_dim": base_aut.dim_aut0,
    }
    report = ModuliReport(len(sections), aut.dim_G, aut.dim_torus, aut, classical, notes)
    if report.moduli_dim <= 0:
        notes.append("group acts with positive-dimensional generic stabilizer")
    for msg in notes:
        warnings.warn(msg, UserWarning, stacklevel=2)
    return report
