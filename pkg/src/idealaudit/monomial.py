"""Monomial ideals in a regular polynomial ring: staircases, Newton polyhedra,
integral closures and enumeration of integrally closed staircases in two
variables.

Exponent vectors are tuples of ints; a :class:`MonomialIdeal` stores its
minimal generators as a sorted tuple so equal ideals compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from . import simplex

Exp = Tuple[int, ...]

INFINITE = math.inf

ENUMERATION_CAP = 40


def _dominates(a: Exp, b: Exp) -> bool:
    """True if ``a`` is componentwise >= ``b``."""
    return all(x >= y for x, y in zip(a, b))


def minimalize_exponents(gens: Iterable[Sequence[int]]) -> Tuple[Exp, ...]:
    pts = {tuple(int(v) for v in g) for g in gens}
    if pts and len(next(iter(pts))) == 2:
        # sweep by increasing first coordinate; keep strict drops in the second
        keep2: List[Exp] = []
        for g in sorted(pts):
            if not keep2 or g[1] < keep2[-1][1]:
                keep2.append(g)
        return tuple(reversed(keep2))
    pts = sorted(pts, key=lambda g: (sum(g), g))
    keep: List[Exp] = []
    for g in pts:
        if not any(_dominates(g, h) for h in keep):
            keep.append(g)
    return tuple(sorted(keep, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    dim: int
    gens: Tuple[Exp, ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.dim or min(g, default=0) < 0:
                raise ValueError(f"bad exponent vector {g} for dim {self.dim}")

    @classmethod
    def from_gens(cls, gens: Iterable[Sequence[int]], dim: Optional[int] = None) -> "MonomialIdeal":
        gens = list(gens)
        if dim is None:
            if not gens:
                raise ValueError("need dim for an empty generator set")
            dim = len(gens[0])
        return cls(dim, minimalize_exponents(gens))

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, ((0,) * dim,))

    @classmethod
    def maximal(cls, dim: int) -> "MonomialIdeal":
        return cls.from_gens([tuple(int(i == j) for j in range(dim)) for i in range(dim)])

    def contains(self, v: Sequence[int]) -> bool:
        return any(_dominates(tuple(v), g) for g in self.gens)

    def pure_powers(self) -> List[Optional[int]]:
        """Exponent of the pure power of each variable among the generators."""
        out: List[Optional[int]] = [None] * self.dim
        for g in self.gens:
            nz = [i for i, e in enumerate(g) if e]
            if len(nz) == 1:
                i = nz[0]
                out[i] = g[i] if out[i] is None else min(out[i], g[i])
        return out

    def is_m_primary(self) -> bool:
        return all(p is not None for p in self.pure_powers())

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def standard_monomials(self) -> List[Exp]:
        """Lattice points outside the ideal (requires m-primary)."""
        box = self.pure_powers()
        if any(b is None for b in box):
            raise ValueError("ideal is not m-primary")
        return [v for v in iproduct(*(range(b) for b in box)) if not self.contains(v)]

    def order(self) -> int:
        return min(sum(g) for g in self.gens)

    def loewy_length(self) -> int:
        """Least n with m^n inside the ideal: one more than the top staircase degree."""
        std = self.standard_monomials()
        return 1 + max(sum(v) for v in std) if std else 0

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return power(self, n)

    def __str__(self):
        names = "xyzwuv"[: self.dim] if self.dim <= 6 else [f"x{i}" for i in range(self.dim)]
        parts = []
        for g in self.gens:
            s = "*".join((n if e == 1 else f"{n}^{e}") for n, e in zip(names, g) if e)
            parts.append(s or "1")
        return "(" + ", ".join(parts) + ")"


def minimalize(gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    return MonomialIdeal.from_gens(gens)


def colength(I: MonomialIdeal):
    """Number of standard monomials, or ``math.inf`` if I is not m-primary."""
    if not I.is_m_primary():
        return INFINITE
    box = I.pure_powers()
    count = 0
    # scan the box column by column along the last axis
    for head in iproduct(*(range(b) for b in box[:-1])):
        hit = box[-1]
        for g in I.gens:
            if all(h >= e for h, e in zip(head, g[:-1])):
                hit = min(hit, g[-1])
        count += hit
    return count


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.dim != J.dim:
        raise ValueError("dimension mismatch")
    return MonomialIdeal.from_gens((tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens), I.dim)


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("negative power")
    out = MonomialIdeal.unit(I.dim)
    for _ in range(n):
        out = product(out, I)
    return out


# ------------------------------------------------------------ Newton polyhedron


@dataclass(frozen=True)
class NewtonMembershipCertificate:
    point: Exp
    weights: Tuple[Fraction, ...]  # one per generator, in I.gens order
    slack: Tuple[Fraction, ...]

    def verify(self, I: MonomialIdeal) -> bool:
        if len(self.weights) != len(I.gens) or any(w < 0 for w in self.weights):
            return False
        if sum(self.weights) != 1 or any(s < 0 for s in self.slack):
            return False
        for j in range(I.dim):
            combo = sum(w * g[j] for w, g in zip(self.weights, I.gens))
            if combo + self.slack[j] != self.point[j]:
                return False
        return True


def newton_member(v: Sequence[int], I: MonomialIdeal) -> Optional[NewtonMembershipCertificate]:
    """Decide v in conv(gens) + orthant by exact LP; return a certificate or None.

    Variables are the convex weights w_i and the slacks s_j:
    sum_i w_i g_ij + s_j = v_j,  sum_i w_i = 1,  w, s >= 0.
    """
    v = tuple(int(x) for x in v)
    if len(v) != I.dim:
        raise ValueError("point has wrong length")
    k, d = len(I.gens), I.dim
    # quick exits: a dominated generator gives a vertex certificate
    for i, g in enumerate(I.gens):
        if _dominates(v, g):
            w = [Fraction(0)] * k
            w[i] = Fraction(1)
            return NewtonMembershipCertificate(v, tuple(w), tuple(Fraction(a - b) for a, b in zip(v, g)))
    A = []
    for j in range(d):
        A.append([g[j] for g in I.gens] + [int(j == t) for t in range(d)])
    A.append([1] * k + [0] * d)
    x = simplex.feasible_point(A, list(v) + [1])
    if x is None:
        return None
    cert = NewtonMembershipCertificate(v, tuple(x[:k]), tuple(x[k:]))
    assert cert.verify(I)
    return cert


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of the lattice points of the Newton polyhedron.

    Every minimal generator of the closure lies in the box cut out by the
    pure powers, and points already in I are trivially members, so only the
    standard monomials of I need an LP.
    """
    if not I.is_m_primary():
        raise ValueError("integral closure is only computed for m-primary monomial ideals")
    box = I.pure_powers()
    extra = []
    # membership is monotone in the last coordinate: bisect each column
    for head in iproduct(*(range(b + 1) for b in box[:-1])):
        lo, hi = 0, box[-1]
        if I.contains(head + (0,)):
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            v = head + (mid,)
            if I.contains(v) or newton_member(v, I) is not None:
                hi = mid
            else:
                lo = mid
        if newton_member(head + (lo,), I) is not None:
            hi = lo
        if not I.contains(head + (hi,)):
            extra.append(head + (hi,))
    if not extra:
        return I
    return MonomialIdeal.from_gens(list(I.gens) + extra, I.dim)


def is_integrally_closed(I: MonomialIdeal) -> bool:
    return integral_closure(I) == I


def _solve3(rows: List[List[int]], rhs: List[int]) -> Optional[List[Fraction]]:
    """Cramer's rule for a 3x3 integer system (None if singular)."""

    def det(M):
        return (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )

    D = det(rows)
    if D == 0:
        return None
    out = []
    for c in range(3):
        M = [r[:] for r in rows]
        for i in range(3):
            M[i][c] = rhs[i]
        out.append(Fraction(det(M), D))
    return out


def _compact_faces(pts: Sequence[Exp], d: int):
    """Supporting hyperplanes a.x = 1 (a > 0) of the compact facets.

    Brute force over d-subsets of the generators: a hyperplane through them
    with strictly positive normal that no generator lies below is a compact
    facet when it carries d affinely independent generators.
    """
    seen = {}
    for sub in combinations(pts, d):
        if d == 2:
            (a1, b1), (a2, b2) = sub
            D = a1 * b2 - a2 * b1
            if D == 0:
                continue
            normal = (Fraction(b2 - b1, D), Fraction(a1 - a2, D))
        else:
            normal = _solve3([list(p) for p in sub], [1, 1, 1])
            if normal is None:
                continue
            normal = tuple(normal)
        if any(c <= 0 for c in normal):
            continue
        if all(sum(c * x for c, x in zip(normal, p)) >= 1 for p in pts):
            seen[normal] = [p for p in pts if sum(c * x for c, x in zip(normal, p)) == 1]
    return seen


def _polygon_area2(points: List[Tuple[Fraction, Fraction]]) -> Fraction:
    """Twice the area of the convex hull of planar points (exact)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    s = Fraction(0)
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)


def normalized_volume(I: MonomialIdeal) -> Fraction:
    """d! times the volume of the orthant minus the Newton polyhedron.

    The region is the union of cones from the origin over the compact facets.
    A facet on a.x = 1 contributes height 1/|a| times its area; projecting the
    facet along the last axis turns that into area_proj / (d * a_last).
    """
    if not I.is_m_primary():
        raise ValueError("ideal is not m-primary")
    d = I.dim
    if d == 1:
        return Fraction(I.gens[0][0])
    if d > 3:
        raise ValueError("normalized volume is implemented for d <= 3")
    vol = Fraction(0)
    for normal, on in _compact_faces(I.gens, d).items():
        if d == 2:
            xs = sorted(on)
            p, q = xs[0], xs[-1]
            # cone over a segment: triangle with the origin
            vol += Fraction(abs(p[0] * q[1] - p[1] * q[0]), 2)
        else:
            proj2 = _polygon_area2([(Fraction(p[0]), Fraction(p[1])) for p in on])
            vol += proj2 / 2 / (3 * normal[2])
    return vol * math.factorial(d)


# ------------------------------------------------------------- enumeration


def staircase_ideal(heights: Sequence[int]) -> MonomialIdeal:
    """Two-variable monomial ideal whose standard monomials are x^i y^j, j < heights[i].

    ``heights`` must be weakly decreasing and positive.
    """
    h = list(heights)
    if not h or any(a < b for a, b in zip(h, h[1:])) or h[-1] <= 0:
        raise ValueError(f"not a staircase: {heights}")
    gens = [(len(h), 0)]
    for i, hi in enumerate(h):
        gens.append((i, hi))
    return MonomialIdeal.from_gens(gens, 2)


def staircase_heights(I: MonomialIdeal) -> Tuple[int, ...]:
    if I.dim != 2 or not I.is_m_primary():
        raise ValueError("need an m-primary ideal in two variables")
    a = I.pure_powers()[0]
    out = []
    for i in range(a):
        out.append(min(g[1] for g in I.gens if g[0] <= i))
    return tuple(out)


def _staircases(max_cells: int) -> Iterator[Tuple[int, ...]]:
    """All weakly decreasing positive sequences with sum <= max_cells, lex order."""

    def rec(prefix, remaining, cap):
        for h in range(1, min(cap, remaining) + 1):
            seq = prefix + (h,)
            yield seq
            yield from rec(seq, remaining - h, h)

    yield from rec((), max_cells, max_cells)


def enumerate_staircases(max_colength: int, d: int = 2) -> Iterator[MonomialIdeal]:
    """Every m-primary monomial ideal in two variables of colength <= max_colength."""
    if d != 2:
        raise ValueError("enumeration is implemented for two variables only")
    if max_colength > ENUMERATION_CAP:
        raise ValueError(f"max_colength {max_colength} exceeds the cap {ENUMERATION_CAP}")
    for hs in _staircases(max_colength):
        yield staircase_ideal(hs)


def enumerate_integrally_closed(d: int, max_colength: int) -> Iterator[MonomialIdeal]:
    """Integrally closed m-primary monomial ideals in two variables, colength <= cap."""
    for I in enumerate_staircases(max_colength, d):
        if is_integrally_closed(I):
            yield I
