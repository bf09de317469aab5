"""Hilbert-Samuel tables and the multiplicities fitted from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import groebner as gb
from .groebner import RingPresentation
from .invariants import IdealHandle, loewy_length, mu
from .monomial import MonomialIdeal, integral_closure, power as mpower

WINDOW = 3


class Unstabilized(RuntimeError):
    """The finite-difference fit never showed a constant window."""


class Inconsistent(RuntimeError):
    pass


def default_n_max(d: int) -> int:
    return 8 if d <= 2 else 6


def finite_differences(values: Sequence[int]) -> List[List[int]]:
    rows = [list(values)]
    while len(rows[-1]) > 1:
        r = rows[-1]
        rows.append([b - a for a, b in zip(r, r[1:])])
    return rows


def _stable_window(seq: Sequence[int], window: int = WINDOW) -> Optional[int]:
    """First index at which ``window`` consecutive equal values begin, scanning
    from the tail so that a late plateau wins over an early coincidence."""
    if len(seq) < window:
        return None
    tail = seq[-1]
    if any(v != tail for v in seq[-window:]):
        return None
    i = len(seq) - window
    while i > 0 and seq[i - 1] == tail:
        i -= 1
    return i


@dataclass
class HilbertSamuelTable:
    ideal: IdealHandle
    values: Tuple[int, ...]  # n -> length(R/I^n), n = 0..len-1
    diffs: List[List[int]]
    stabilized_at: Optional[int]
    e: Optional[int]
    e1: Optional[int] = None
    e2: Optional[int] = None

    @property
    def status(self) -> str:
        return "stabilized" if self.e is not None else "unstabilized"

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def hs_table(I: IdealHandle, n_max: Optional[int] = None) -> HilbertSamuelTable:
    """Lengths of R/I^n until the d-th difference is constant over a window of 3.

    Never extrapolates: if no window appears by ``n_max`` the table is
    returned with ``e = None`` (status "unstabilized").
    """
    d = I.dim
    if d < 1:
        raise ValueError("Hilbert-Samuel fit needs dimension >= 1")
    n_max = default_n_max(d) if n_max is None else n_max
    if n_max < d + 3:
        raise ValueError(f"n_max must be at least d + 3 = {d + 3}")
    key = f"hs:{n_max}"
    if key in I.cache:
        return I.cache[key]
    ll = loewy_length(I)
    values = [0]
    stab, e = None, None
    for n in range(1, n_max + 1):
        P = I.power(n).with_hint(n * ll + 1)
        values.append(P.length())
        diffs = finite_differences(values)
        if len(diffs) > d:
            stab = _stable_window(diffs[d])
            if stab is not None:
                e = diffs[d][-1]
                break
    table = HilbertSamuelTable(I, tuple(values), finite_differences(values), stab, e)
    I.cache[key] = table
    return table


def multiplicity(I: IdealHandle, n_max: Optional[int] = None) -> int:
    t = hs_table(I, n_max)
    if t.e is None:
        raise Unstabilized(f"Hilbert-Samuel function of {I.describe()} unstabilized by n = {t.n_max}")
    return t.e


def ring_multiplicity(ring: RingPresentation) -> int:
    """e(R) = e(m), cached per presentation."""
    return _ring_e(ring)


_E_CACHE: Dict[RingPresentation, int] = {}


def _ring_e(ring):
    if ring not in _E_CACHE:
        _E_CACHE[ring] = multiplicity(IdealHandle.maximal(ring))
    return _E_CACHE[ring]


def hs_coefficients(I: IdealHandle, n_max: Optional[int] = None) -> Tuple[int, int, int]:
    """(e, e1, e2) with length(R/I^(n+1)) = e C(n+2,2) - e1 (n+1) + e2 on the tail.

    Solved from three stabilised values and checked against every other
    stabilised value (at least one held out).
    """
    if I.dim != 2:
        raise ValueError("Hilbert coefficients are extracted in dimension 2 only")
    t = hs_table(I, n_max)
    if t.e is None:
        raise Unstabilized("unstabilized table")
    s = t.stabilized_at
    pts = list(range(max(s, 1), len(t.values)))
    if len(pts) < 4:
        raise Unstabilized("need four stabilised values")
    # v_k = e C(k+1,2) - e1 k + e2 with k = n+1
    e = Fraction(t.e)
    k0, k1 = pts[0], pts[1]
    r0 = t.values[k0] - e * comb(k0 + 1, 2)
    r1 = t.values[k1] - e * comb(k1 + 1, 2)
    e1 = -(r1 - r0) / (k1 - k0)
    e2 = r0 + e1 * k0
    for k in pts:
        if e * comb(k + 1, 2) - e1 * k + e2 != t.values[k]:
            raise Inconsistent(f"Hilbert polynomial residue at n = {k}")
    if e1.denominator != 1 or e2.denominator != 1:
        raise Inconsistent("non-integral Hilbert coefficients")
    t.e1, t.e2 = int(e1), int(e2)
    return t.e, t.e1, t.e2


def mixed_multiplicity(I: IdealHandle, J: IdealHandle, n_max: Optional[int] = None) -> int:
    """e(I|J) = (e(IJ) - e(I) - e(J)) / 2 in dimension 2."""
    if I.dim != 2 or J.ring != I.ring:
        raise ValueError("mixed multiplicity needs two ideals of one 2-dimensional ring")
    IJ = I.times(J)
    total = multiplicity(IJ, n_max) - multiplicity(I, n_max) - multiplicity(J, n_max)
    if total % 2:
        raise Inconsistent(f"odd cross term {total}: the fit is not trustworthy")
    return total // 2


def rees_mixed(I: IdealHandle, J: IdealHandle) -> int:
    """length(R/IJ) - length(R/I) - length(R/J).

    Equals e(I|J) when R is an analytically unramified 2-dimensional CM ring,
    J is normal with reduction number one and I is integrally closed; those
    hypotheses are the caller's responsibility.
    """
    if I.dim != 2 or J.ring != I.ring:
        raise ValueError("needs two ideals of one 2-dimensional ring")
    IJ = I.times(J).with_hint(I.model().truncation_N + J.model().truncation_N)
    return IJ.length() - I.length() - J.length()


def _fit_growth(values: Sequence[int], degree: int) -> Tuple[Optional[int], Optional[int]]:
    """Constant ``degree``-th difference over a window of 3: (value, start)."""
    diffs = finite_differences(values)
    if len(diffs) <= degree:
        return None, None
    start = _stable_window(diffs[degree])
    if start is None:
        return None, None
    return diffs[degree][-1], start


@dataclass
class GrowthFit:
    values: Tuple[int, ...]  # index n-1 holds the count for the n-th power
    multiplicity: Optional[int]
    stabilized_at: Optional[int]

    @property
    def status(self) -> str:
        return "stabilized" if self.multiplicity is not None else "unstabilized"


def fiber_growth(I: IdealHandle, n_max: Optional[int] = None) -> GrowthFit:
    d = I.dim
    n_max = default_n_max(d) if n_max is None else n_max
    ll = loewy_length(I)
    counts = []
    for n in range(1, n_max + 1):
        counts.append(mu(I.power(n).with_hint(n * ll + 1)))
        val, start = _fit_growth(counts, d - 1)
        if val is not None:
            return GrowthFit(tuple(counts), val, start)
    return GrowthFit(tuple(counts), None, None)


def fiber_multiplicity(I: IdealHandle, n_max: Optional[int] = None) -> int:
    """e(F(I)) from the growth of mu(I^n): (d-1)! times the leading coefficient."""
    fit = fiber_growth(I, n_max)
    if fit.multiplicity is None:
        raise Unstabilized("mu(I^n) growth unstabilized")
    return fit.multiplicity


def normal_fiber_growth(I: MonomialIdeal, n_max: Optional[int] = None) -> GrowthFit:
    d = I.dim
    n_max = default_n_max(d) if n_max is None else n_max
    counts = []
    for n in range(1, n_max + 1):
        counts.append(len(integral_closure(mpower(I, n)).gens))
        val, start = _fit_growth(counts, d - 1)
        if val is not None:
            return GrowthFit(tuple(counts), val, start)
    return GrowthFit(tuple(counts), None, None)


def normal_fiber_multiplicity(I: MonomialIdeal, n_max: Optional[int] = None) -> int:
    """Multiplicity of the normal fiber cone, from mu of the closures of I^n."""
    fit = normal_fiber_growth(I, n_max)
    if fit.multiplicity is None:
        raise Unstabilized("mu(closure(I^n)) growth unstabilized")
    return fit.multiplicity


def normal_multiplicity(I: MonomialIdeal, n_max: Optional[int] = None) -> int:
    """Asymptotic normal multiplicity from colengths of closures of I^n."""
    from .monomial import colength

    d = I.dim
    n_max = default_n_max(d) if n_max is None else n_max
    values = [0]
    for n in range(1, n_max + 1):
        values.append(colength(integral_closure(mpower(I, n))))
        val, _ = _fit_growth(values, d)
        if val is not None:
            return val
    raise Unstabilized("normal Hilbert function unstabilized")


# ------------------------------------------------------------------ h-vectors


@dataclass(frozen=True)
class HVector:
    a: Tuple[int, ...]
    d: int
    hilbert: Tuple[int, ...]  # h(n) = length(m^n / m^(n+1)), n = 0..window

    @property
    def e(self) -> int:
        return sum(self.a)

    def regenerate(self, n: int) -> int:
        if self.d == 0:
            return self.a[n] if n < len(self.a) else 0
        return sum(ai * comb(n - i + self.d - 1, self.d - 1) for i, ai in enumerate(self.a) if n >= i)


def h_vector(ring: RingPresentation, window: int = 10) -> HVector:
    """Numerator of the Hilbert series of gr_m(R) from h(0..window)."""
    d = ring.declared_dim
    lengths = [0] + [gb.length_with_truncation(ring, (), n) for n in range(1, window + 2)]
    h = [lengths[n + 1] - lengths[n] for n in range(window + 1)]
    a = list(h)
    for _ in range(d):
        a = [a[0]] + [a[i] - a[i - 1] for i in range(1, len(a))]
    last = max((i for i, v in enumerate(a) if v), default=0)
    if last + 2 > window:
        raise ValueError(f"window {window} too small: h-vector did not terminate")
    hv = HVector(tuple(a[: last + 1]), d, tuple(h))
    if any(hv.regenerate(n) != h[n] for n in range(window + 1)):
        raise ValueError("h-vector does not regenerate the Hilbert function; check the declared dimension")
    return hv


def h_vector_criterion_value(a: Sequence[int], d: int) -> Fraction:
    """sum_i ((d-1)d/2 - (d-1)i) a_i."""
    return sum((Fraction((d - 1) * d, 2) - (d - 1) * i) * ai for i, ai in enumerate(a))
