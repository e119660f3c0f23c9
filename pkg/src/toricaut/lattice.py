"""Exact integer linear algebra: Smith and Hermite normal forms, kernels, cokernels.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so entries
never overflow. Nothing in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

IntMatrix = np.ndarray


def as_int_matrix(A, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    """Coerce nested sequences to a 2-D object array of Python ints.

    ``rows``/``cols`` are only needed to give an empty input its shape.
    """
    if isinstance(A, np.ndarray) and A.dtype == object and A.ndim == 2:
        return A.copy()
    rows_list = [[int(x) for x in row] for row in A]
    if not rows_list:
        return np.zeros((rows or 0, cols or 0), dtype=object)
    width = len(rows_list[0])
    if any(len(r) != width for r in rows_list):
        raise ValueError("matrix is not rectangular")
    M = np.empty((len(rows_list), width), dtype=object)
    for i, r in enumerate(rows_list):
        for j, x in enumerate(r):
            M[i, j] = x
    return M


def identity(n: int) -> IntMatrix:
    M = np.zeros((n, n), dtype=object)
    for i in range(n):
        M[i, i] = 1
    return M


def to_lists(A: IntMatrix) -> list[list[int]]:
    return [[int(x) for x in row] for row in A]


def det(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = as_int_matrix(A)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k, k] == 0:
            for i in range(k + 1, n):
                if M[i, k] != 0:
                    M[[k, i]] = M[[i, k]]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i, j] = (M[i, j] * M[k, k] - M[i, k] * M[k, j]) // prev
        prev = M[k, k]
    return sign * int(M[n - 1, n - 1])


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...`` followed by zeros.
    """
    D = as_int_matrix(A)
    m, n = D.shape
    U, V = identity(m), identity(n)

    for t in range(min(m, n)):
        while True:
            sub = D[t:, t:]
            nz = [(abs(sub[i, j]), i, j) for i in range(m - t) for j in range(n - t) if sub[i, j] != 0]
            if not nz:
                _fix_signs(D, U, t)
                return U, D, V
            _, pi, pj = min(nz)
            pi += t
            pj += t
            if pi != t:
                D[[t, pi]] = D[[pi, t]]
                U[[t, pi]] = U[[pi, t]]
            if pj != t:
                D[:, [t, pj]] = D[:, [pj, t]]
                V[:, [t, pj]] = V[:, [pj, t]]

            p = D[t, t]
            clean = True
            for i in range(t + 1, m):
                q = D[i, t] // p
                if q:
                    D[i] -= q * D[t]
                    U[i] -= q * U[t]
                if D[i, t] != 0:
                    clean = False
            for j in range(t + 1, n):
                q = D[t, j] // p
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                if D[t, j] != 0:
                    clean = False
            if not clean:
                continue

            # divisibility chain: fold an offending row into row t and retry
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p != 0),
                None,
            )
            if bad is None:
                break
            D[t] += D[bad]
            U[t] += U[bad]
        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
    return U, D, V


def _fix_signs(D, U, t):
    for k in range(t):
        if D[k, k] < 0:
            D[k] = -D[k]
            U[k] = -U[k]


def invariant_factors(A) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``A``."""
    _, D, _ = smith_normal_form(A)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def rank(A) -> int:
    return len(invariant_factors(A))


def hermite_normal_form(A) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``A``.

    Zero rows are dropped. Pivots are positive and entries above each pivot are
    reduced into ``[0, pivot)``, so two generating sets span the same lattice
    exactly when their HNFs are equal.
    """
    H = as_int_matrix(A)
    m, n = H.shape
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nz = [i for i in range(row, m) if H[i, col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i, col]))
            if piv != row:
                H[[row, piv]] = H[[piv, row]]
            done = True
            for i in range(row + 1, m):
                q = H[i, col] // H[row, col]
                if q:
                    H[i] -= q * H[row]
                if H[i, col] != 0:
                    done = False
            if done:
                break
        if H[row, col] == 0:
            continue
        if H[row, col] < 0:
            H[row] = -H[row]
        for i in range(row):
            q = H[i, col] // H[row, col]
            if q:
                H[i] -= q * H[row]
        row += 1
    return H[:row].copy()


def same_lattice(A, B) -> bool:
    """True when the rows of ``A`` and ``B`` span the same sublattice."""
    HA, HB = hermite_normal_form(A), hermite_normal_form(B)
    return HA.shape == HB.shape and bool((HA == HB).all())


def kernel_basis(A, cols: int | None = None) -> list[tuple[int, ...]]:
    """Saturated basis of ``{v : A v = 0}``, in Hermite normal form.

    Rows come out in pivot order, which is lexicographically decreasing.
    """
    M = as_int_matrix(A, cols=cols)
    if M.shape[0] == 0:
        return [tuple(int(x) for x in r) for r in identity(M.shape[1])]
    _, D, V = smith_normal_form(M)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    K = V[:, r:].T
    if K.shape[0] == 0:
        return []
    return [tuple(int(x) for x in row) for row in hermite_normal_form(K)]


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z^free_rank (+) Z/d_1 (+) ... `` together with a surjection from ``Z^k``.

    ``projection`` has ``free_rank + len(torsion)`` rows; the torsion rows are
    read modulo the matching ``d_i``.
    """

    free_rank: int
    torsion: tuple[int, ...]
    projection: IntMatrix

    @property
    def ambient_rank(self) -> int:
        return self.projection.shape[1]

    def normalize(self, coords: Sequence[int]) -> tuple[int, ...]:
        coords = [int(c) for c in coords]
        if len(coords) != self.free_rank + len(self.torsion):
            raise ValueError(
                f"class element needs {self.free_rank + len(self.torsion)} coordinates, got {len(coords)}"
            )
        free = coords[: self.free_rank]
        tors = [c % d for c, d in zip(coords[self.free_rank:], self.torsion)]
        return tuple(free + tors)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        """Class of the ambient vector ``v``."""
        vec = np.array([int(x) for x in v], dtype=object)
        return self.normalize(self.projection.dot(vec) if len(vec) else [0] * self.projection.shape[0])

    def zero(self) -> tuple[int, ...]:
        return (0,) * (self.free_rank + len(self.torsion))

    def kernel(self) -> list[tuple[int, ...]]:
        """Saturated HNF basis of the kernel of the projection ``Z^k -> group``."""
        k = self.ambient_rank
        t = len(self.torsion)
        if t == 0:
            return kernel_basis(self.projection, cols=k)
        M = np.zeros((self.projection.shape[0], k + t), dtype=object)
        M[:, :k] = self.projection
        for i, d in enumerate(self.torsion):
            M[self.free_rank + i, k + i] = d
        gens = [row[:k] for row in kernel_basis(M)]
        return [tuple(int(x) for x in r) for r in hermite_normal_form(gens)] if gens else []

    def preimage(self, element: Sequence[int]) -> tuple[int, ...] | None:
        """Some ``v`` in ``Z^k`` with ``project(v) == element``, or None."""
        element = self.normalize(element)
        k = self.ambient_rank
        t = len(self.torsion)
        M = np.zeros((self.projection.shape[0], k + t), dtype=object)
        M[:, :k] = self.projection
        for i, d in enumerate(self.torsion):
            M[self.free_rank + i, k + i] = d
        sol = solve_integer(M, element)
        return None if sol is None else tuple(sol[:k])

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def solve_integer(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b`` or None if there is none."""
    M = as_int_matrix(A)
    m, n = M.shape
    U, D, V = smith_normal_form(M)
    y = U.dot(np.array([int(x) for x in b], dtype=object)) if m else np.zeros(0, dtype=object)
    w = [0] * n
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d:
                return None
            w[i] = y[i] // d
    x = V.dot(np.array(w, dtype=object)) if n else np.zeros(0, dtype=object)
    return tuple(int(v) for v in x)


def cokernel(A, rows: int | None = None) -> AbelianGroupPresentation:
    """Presentation of ``Z^rows / image(A)``.

    The free coordinates are the HNF basis of the left kernel of ``A`` so the
    output does not depend on pivoting choices inside the Smith reduction.
    """
    M = as_int_matrix(A, rows=rows, cols=0)
    m = M.shape[0]
    if M.shape[1] == 0:
        return AbelianGroupPresentation(m, (), identity(m))
    U, D, _ = smith_normal_form(M)
    diag = [D[i, i] if i < D.shape[1] else 0 for i in range(m)]
    r = sum(1 for d in diag if d != 0)
    torsion_rows = [i for i in range(r) if diag[i] > 1]
    free = U[r:]
    free = hermite_normal_form(free) if free.shape[0] else free
    proj = np.zeros((free.shape[0] + len(torsion_rows), m), dtype=object)
    proj[: free.shape[0]] = free
    for k, i in enumerate(torsion_rows):
        proj[free.shape[0] + k] = U[i] % diag[i]
    return AbelianGroupPresentation(
        free_rank=free.shape[0],
        torsion=tuple(int(diag[i]) for i in torsion_rows),
        projection=proj,
    )
