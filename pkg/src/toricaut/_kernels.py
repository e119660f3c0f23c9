"""Box-filter kernel for lattice-point enumeration.

Given an integer box ``lo <= m <= hi`` and constraints ``A m >= b`` return
every box point satisfying all constraints, in lexicographic order.

Two interchangeable backends: a numba ``@njit`` odometer loop and a
vectorized numpy path. Set ``TORICAUT_NO_NUMBA=1`` to force numpy.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

INT64_SAFE = 2**62


def default_backend() -> str:
    if not HAVE_NUMBA or os.environ.get("TORICAUT_NO_NUMBA", "") not in ("", "0"):
        return "numpy"
    return "numba"


if HAVE_NUMBA:

    @njit(cache=True)
    def _filter_numba(span, A, b):
        d = span.shape[0]
        n = A.shape[0]
        total = 1
        for k in range(d):
            total *= span[k]
        out = np.empty((total, d), dtype=np.int64)
        cur = np.zeros(d, dtype=np.int64)
        # running values of A @ cur, updated incrementally by the odometer
        vals = np.zeros(n, dtype=np.int64)
        found = 0
        for _ in range(total):
            ok = True
            for i in range(n):
                if vals[i] < b[i]:
                    ok = False
                    break
            if ok:
                for k in range(d):
                    out[found, k] = cur[k]
                found += 1
            k = d - 1
            while k >= 0:
                cur[k] += 1
                if cur[k] < span[k]:
                    for i in range(n):
                        vals[i] += A[i, k]
                    break
                for i in range(n):
                    vals[i] -= A[i, k] * (span[k] - 1)
                cur[k] = 0
                k -= 1
        return out[:found]


def _filter_numpy(span, A, b):
    d = span.shape[0]
    if d == 0:
        return np.zeros((1 if (b <= 0).all() else 0, 0), dtype=np.int64)
    pts = np.indices(tuple(span), dtype=np.int64).reshape(d, -1).T
    mask = (pts @ A.T >= b).all(axis=1)
    return pts[mask]


def box_filter(lo, hi, A, b, backend: str | None = None) -> list[tuple[int, ...]]:
    """Integer points ``m`` with ``lo <= m <= hi`` and ``A m >= b``.

    ``lo``, ``hi``, ``b`` and ``A`` hold Python ints of any size; the box is
    shifted to the origin before the int64 kernel runs, so only the box
    extent and the ray entries need to be small.
    """
    backend = backend or default_backend()
    d = len(lo)
    A_rows = [[int(x) for x in row] for row in A]
    span = [int(h) - int(l) + 1 for l, h in zip(lo, hi)]
    if any(s <= 0 for s in span):
        return []
    # shifted rhs: A (lo + k) >= b  <=>  A k >= b - A lo
    shifted = [int(bi) - sum(a * int(l) for a, l in zip(row, lo)) for row, bi in zip(A_rows, b)]
    reach = max((sum(abs(a) * (s - 1) for a, s in zip(row, span)) for row in A_rows), default=0)
    if reach >= INT64_SAFE or any(abs(a) >= 2**31 for row in A_rows for a in row):
        return _filter_python(lo, span, A_rows, shifted)
    # anything beyond the reachable range is decided already; clamp into int64
    clamp = reach + 1
    shifted = [max(-clamp, min(clamp, s)) for s in shifted]

    span_a = np.array(span, dtype=np.int64)
    A_a = np.array(A_rows, dtype=np.int64).reshape(len(A_rows), d)
    b_a = np.array(shifted, dtype=np.int64)
    if backend == "numba" and HAVE_NUMBA and d > 0:
        pts = _filter_numba(span_a, A_a, b_a)
    elif backend in ("numba", "numpy"):
        pts = _filter_numpy(span_a, A_a, b_a)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return [tuple(int(x) + int(l) for x, l in zip(p, lo)) for p in pts]


def _filter_python(lo, span, A_rows, shifted):
    out = []
    for k in itertools.product(*(range(s) for s in span)):
        if all(sum(a * x for a, x in zip(row, k)) >= s for row, s in zip(A_rows, shifted)):
            out.append(tuple(int(x) + int(l) for x, l in zip(k, lo)))
    return out
