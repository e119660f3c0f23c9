"""Polynomials in Cox rings: arithmetic, graded substitutions, Cayley forms.

Coefficients are exact ``Fraction``s. Terms are keyed by exponent tuples and
serialized in decreasing lexicographic order.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .divisors import is_ample
from .fan import GradingData
from .projectivization import ProjectivizedFan


class DegreeError(ValueError):
    pass


class AmplenessWarning(UserWarning):
    pass


class GradedPolynomial:
    """A polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "GradedPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "GradedPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "GradedPolynomial":
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "GradedPolynomial":
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in rings with different numbers of variables")
            return other
        return GradedPolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GradedPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GradedPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = GradedPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def degree(self, grading: GradingData) -> tuple[int, ...] | None:
        """Common class of all terms, or None if inhomogeneous (or zero)."""
        degs = {grading.degree(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, grading: GradingData, alpha: Sequence[int] | None = None) -> bool:
        if self.is_zero():
            return True
        deg = self.degree(grading)
        if deg is None:
            return False
        return alpha is None or deg == grading.class_group.normalize(alpha)

    def restrict(self, keep: Sequence[int]) -> "GradedPolynomial":
        """Drop the variables not in ``keep`` (their exponents must be zero)."""
        out = {}
        keep_set = set(keep)
        for e, c in self.terms.items():
            if any(x for k, x in enumerate(e) if k not in keep_set):
                raise ValueError("restriction would drop a variable that occurs")
            out[tuple(e[k] for k in keep)] = c
        return GradedPolynomial(len(keep), out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "GradedPolynomial":
        """Re-index into a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            full = [0] * nvars
            for k, x in zip(positions, e):
                full[k] = x
            out[tuple(full)] = c
        return GradedPolynomial(nvars, out)

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = [n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = f"{abs(c)}*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        names = [f"v{i + 1}" for i in range(self.nvars)]
        return f"GradedPolynomial({self.format(names)!r})"


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\s*(?:(?:\^|\*\*)\s*(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_polynomial(text: str, names: Sequence[str]) -> GradedPolynomial:
    """Parse ``c * x1^a1 ... yr^br`` sums; ``**`` works as ``^``."""
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    # protect '**' so the term splitter does not see a bare '*'
    src = src.replace("**", "^")
    parts = _TERM_SPLIT.split(src)
    if parts[0] == "":
        parts = parts[1:]
    else:
        parts = ["+"] + parts
    if len(parts) % 2:
        raise ValueError(f"cannot parse polynomial {text!r}")
    result = GradedPolynomial.zero(n)
    for sign, term in zip(parts[::2], parts[1::2]):
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exps = [0] * n
        tokens = []
        for piece in re.sub(r"\s*\^\s*", "^", term).split("*"):
            if not piece.strip():
                raise ValueError(f"empty factor in {text!r}")
            tokens += piece.split()
        for tok in tokens:
            if _NUMBER.match(tok):
                coeff *= Fraction(tok)
                continue
            m = _FACTOR.match(tok)
            if not m or m.group(1) not in index:
                raise ValueError(f"unknown factor {tok!r} in {text!r}; variables are {', '.join(names)}")
            exps[index[m.group(1)]] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        result = result + GradedPolynomial(n, {tuple(exps): coeff})
    return result


@dataclass(frozen=True)
class GradedSubstitution:
    """Images of each variable; degree-preserving by construction."""

    images: tuple[GradedPolynomial, ...]

    @classmethod
    def identity(cls, nvars: int) -> "GradedSubstitution":
        return cls(tuple(GradedPolynomial.variable(nvars, i) for i in range(nvars)))

    @classmethod
    def build(cls, grading: GradingData, images: Mapping[int, GradedPolynomial]) -> "GradedSubstitution":
        """Identity except on the given variables; checks degree preservation."""
        n = grading.n_vars
        imgs = []
        for i in range(n):
            p = images.get(i, GradedPolynomial.variable(n, i))
            if not p.is_homogeneous(grading, grading.variable_degrees[i]):
                raise DegreeError(f"image of variable {i + 1} is not of degree {list(grading.variable_degrees[i])}")
            imgs.append(p)
        return cls(tuple(imgs))

    @classmethod
    def root(cls, grading: GradingData, variable: int, increment: GradedPolynomial, t=1) -> "GradedSubstitution":
        """``x_v -> x_v + t * increment``, identity elsewhere."""
        n = grading.n_vars
        return cls.build(grading, {variable: GradedPolynomial.variable(n, variable) + increment * Fraction(t)})


def apply_substitution(p: GradedPolynomial, s: GradedSubstitution) -> GradedPolynomial:
    if len(s.images) != p.nvars:
        raise ValueError("substitution and polynomial have different numbers of variables")
    powers: dict[tuple[int, int], GradedPolynomial] = {}

    def power(i: int, k: int) -> GradedPolynomial:
        key = (i, k)
        if key not in powers:
            powers[key] = s.images[i] ** k
        return powers[key]

    out = GradedPolynomial.zero(p.nvars)
    for exp, c in p.terms.items():
        term = GradedPolynomial.constant(p.nvars, c)
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


@dataclass(frozen=True)
class CayleyForm:
    coefficients: tuple[GradedPolynomial, ...]
    form: GradedPolynomial


def _warn_if_not_ample(P: ProjectivizedFan) -> list[str]:
    notes = []
    for j, D in enumerate(P.bundle.divisors):
        if not is_ample(P.base, D):
            msg = f"L{j + 1} is not ample; the construction is still well defined"
            warnings.warn(msg, AmplenessWarning, stacklevel=3)
            notes.append(msg)
    return notes


def cayley_form(fs: Sequence[GradedPolynomial], P: ProjectivizedFan) -> CayleyForm:
    """``F = sum f_j y_j`` in the Cox ring of ``P(E)``; ``deg F = (0, 1)``."""
    if len(fs) != P.r:
        raise DegreeError(f"expected {P.r} polynomials, got {len(fs)}")
    for j, (f, alpha) in enumerate(zip(fs, P.alphas)):
        if f.nvars != P.l:
            raise DegreeError(f"f{j + 1} has {f.nvars} variables, the base has {P.l}")
        if not f.is_homogeneous(P.base_grading, alpha):
            got = f.degree(P.base_grading)
            raise DegreeError(
                f"f{j + 1} has degree {list(got) if got else 'inhomogeneous'}, expected {list(alpha)}"
            )
    _warn_if_not_ample(P)
    n = P.l + P.r
    F = GradedPolynomial.zero(n)
    for j, f in enumerate(fs):
        F = F + f.embed(n, range(P.l)) * GradedPolynomial.variable(n, P.l + j)
    if not F.is_homogeneous(P.grading, P.fiber_class()):
        raise DegreeError("assembled Cayley form is not of degree (0, 1)")
    return CayleyForm(tuple(fs), F)


def extract_coefficients(p: GradedPolynomial, P: ProjectivizedFan) -> list[GradedPolynomial]:
    """The unique ``(g_1, ..., g_r)`` with ``p = sum g_j y_j``."""
    l, r = P.l, P.r
    if p.nvars != l + r:
        raise ValueError(f"polynomial has {p.nvars} variables, P(E) has {l + r}")
    buckets: list[dict] = [{} for _ in range(r)]
    for exp, c in p.terms.items():
        ys = exp[l:]
        if sum(ys) != 1:
            raise DegreeError("polynomial is not linear in the fiber variables")
        j = next(k for k, e in enumerate(ys) if e)
        buckets[j][exp[:l]] = c
    if not p.is_homogeneous(P.grading, P.fiber_class()):
        raise DegreeError("polynomial is not homogeneous of degree (0, 1)")
    return [GradedPolynomial(l, b) for b in buckets]


def nondegenerate(beta: Sequence[Sequence[int]], grading: GradingData) -> bool:
    """No entry of ``beta`` is the degree of a Cox variable."""
    fundamental = set(grading.variable_degrees)
    return not any(grading.class_group.normalize(b) in fundamental for b in beta)
