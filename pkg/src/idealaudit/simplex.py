"""Exact two-phase simplex over the rationals (Bland's rule, no tolerances)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from gmpy2 import mpq


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x: Optional[List[Fraction]] = None, value: Optional[Fraction] = None):
        self.status = status  # "optimal", "infeasible" or "unbounded"
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, x={self.x}, value={self.value})"


def _q(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _frac(v: mpq) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _pivot(T, basis, r, c):
    piv = T[r][c]
    row = [v / piv if v else v for v in T[r]]
    T[r] = row
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            new = other[:]
            for j in nz:
                new[j] = other[j] - f * row[j]
            T[i] = new
    basis[r] = c


def _run(T, basis, ncols):
    """Minimise the objective stored in the last row. Returns False if unbounded."""
    m = len(T) - 1
    obj = T[m]
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return True
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(T, basis, leave, enter)
        obj = T[m]


def solve(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b`` and ``x >= 0``, exactly."""
    A = [[_q(v) for v in row] for row in A]
    b = [_q(v) for v in b]
    c = [_q(v) for v in c]
    m, n = len(A), len(c)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # phase one: artificial columns n..n+m-1
    T = [A[i] + [mpq(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    obj = [mpq(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= A[i][j]
        obj[-1] -= b[i]
    T.append(obj)
    _run(T, basis, n + m)
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is not None:
                _pivot(T, basis, r, col)
    keep = [r for r in range(m) if basis[r] < n]
    T2 = [T[r][:n] + [T[r][-1]] for r in keep]
    basis2 = [basis[r] for r in keep]
    obj = c[:] + [mpq(0)]
    for r, j in enumerate(basis2):
        if obj[j]:
            f = obj[j]
            obj = [a - f * v for a, v in zip(obj, T2[r])]
    T2.append(obj)
    if not _run(T2, basis2, n):
        return LPResult("unbounded")
    x = [mpq(0)] * n
    for r, j in enumerate(basis2):
        x[j] = T2[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), mpq(0))
    return LPResult("optimal", [_frac(v) for v in x], _frac(value))


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    res = solve([0] * (len(A[0]) if A else 0), A, b)
    return res.x if res.status == "optimal" else None
