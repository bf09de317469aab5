"""Frobenius powers, the nu_e ladder and F-threshold instance checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from . import groebner as gb
from .invariants import IdealHandle, loewy_length, ord
from .monomial import MonomialIdeal, integral_closure, power
from .multiplicity import multiplicity


class HypothesisError(ValueError):
    pass


def _require_char_p(I: IdealHandle) -> int:
    p = I.ring.field.characteristic
    if not p:
        raise HypothesisError("ring is not of prime characteristic")
    if not I.ring.is_regular:
        raise HypothesisError(f"{I.ring.describe()} is not a regular presentation; F-thresholds are computed in regular rings only")
    return p


def bracket_power(J: IdealHandle, q: int) -> IdealHandle:
    """Ideal generated by the q-th powers of J's generators (q a power of p)."""
    p = _require_char_p(J)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise HypothesisError(f"{q} is not a power of {p}")
    return IdealHandle(J.ring, [g**q for g in J.gens])


def _power_gens(a: IdealHandle, N: int):
    """Generators of a^N as products; monomial ideals are handled combinatorially."""
    M = a.monomial_ideal()
    PR = a.ring.poly_ring
    if M is not None:
        return [PR.monomial(g) for g in power(M, N).gens]
    return [math.prod((a.gens[i] for i in c), start=PR.one()) for c in combinations_with_replacement(range(len(a.gens)), N)]


def contained_power(a: IdealHandle, target: gb.ArtinianModel, N: int) -> bool:
    """a^N inside the (certified) model's ideal, via normal forms."""
    return all(not target.normal_form(g) for g in _power_gens(a, N))


def _monomial_contained(a: MonomialIdeal, J: MonomialIdeal, N: int) -> bool:
    return all(J.contains(g) for g in power(a, N).gens)


def nu(a: IdealHandle, J: IdealHandle, e: int) -> int:
    """Least N with a^N inside J^[p^e], by binary search on [1, (ll(J)+1) p^e]."""
    p = _require_char_p(J)
    q = p**e
    Jq = bracket_power(J, q) if e else J
    # m^((ll(J) + d) q) lies in J^[q] in a regular ring
    hi = (loewy_length(J) + 1) * q
    Ma, MJ = a.monomial_ideal(), Jq.monomial_ideal()
    if Ma is not None and MJ is not None:
        inside = lambda N: _monomial_contained(Ma, MJ, N)  # noqa: E731
    else:
        hint = (loewy_length(J) + J.dim) * q + 1
        model = gb.certified_model(Jq.ring, Jq.gens, hint=hint, cap=max(gb.truncation_cap(), 2 * hint))
        inside = lambda N: contained_power(a, model, N)  # noqa: E731
    if not inside(hi):
        raise RuntimeError(f"search cap exceeded: a^{hi} not inside J^[{q}]")
    lo = 1
    if inside(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class NuSequence:
    a: IdealHandle
    J: IdealHandle
    p: int
    entries: Dict[int, int]
    regular_closed_form: Optional[int] = None  # ll(J) + d - 1 when a = m, R regular
    closed_form_consistent: Optional[bool] = None

    @property
    def estimates(self) -> Dict[int, Fraction]:
        return {e: Fraction(v, self.p**e) for e, v in self.entries.items()}

    def last_estimate(self) -> Fraction:
        e = max(self.entries)
        return Fraction(self.entries[e], self.p**e)


def _is_maximal(a: IdealHandle) -> bool:
    return a.length() == 1


def regular_threshold(J: IdealHandle) -> int:
    """th^J(m) = ll(J) + d - 1 for a parameter ideal J of a d-dim regular ring
    (ll(J) + 1 in dimension two)."""
    return loewy_length(J) + J.dim - 1


def fthreshold_estimate(a: IdealHandle, J: IdealHandle, e_max: int) -> NuSequence:
    """nu_e for e = 0..e_max with exact estimates nu_e / p^e.

    For a = m and J a parameter ideal of a regular ring the threshold is
    ll(J) + d - 1; the ladder is checked to stay inside [nu_e/p^e, ll(J)+1] and
    to be nondecreasing.
    """
    p = _require_char_p(J)
    seq = NuSequence(a, J, p, {e: nu(a, J, e) for e in range(e_max + 1)})
    for e in range(e_max):
        if seq.entries[e + 1] < p * seq.entries[e]:
            raise RuntimeError(f"containment monotonicity broken: nu_{e + 1} < p nu_{e}")
    if J.ring.is_regular and _is_maximal(a) and len(J.gens) == J.dim:
        c = regular_threshold(J)
        seq.regular_closed_form = c
        ests = [seq.estimates[e] for e in range(e_max + 1)]
        seq.closed_form_consistent = all(x <= c for x in ests) and all(x <= y for x, y in zip(ests, ests[1:]))
    return seq


@dataclass(frozen=True)
class FVerdict:
    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


def _check_parameter_ideal(J: IdealHandle, d: Optional[int] = None):
    if not J.ring.is_regular or J.ring.relations:
        raise HypothesisError("needs a regular polynomial ring without relations")
    if d is not None and J.dim != d:
        raise HypothesisError(f"needs dimension {d}")
    if len(J.gens) != J.dim:
        raise HypothesisError("J must be generated by a system of parameters")
    try:
        J.length()
    except gb.NotMPrimary:
        raise HypothesisError("J is not m-primary") from None


def check_hmtw_dim2(J: IdealHandle) -> FVerdict:
    """e(J) <= (ll(J) + 1)^2 / 4 for a parameter ideal of a 2-dim regular ring."""
    _require_char_p(J)
    _check_parameter_ideal(J, 2)
    e = multiplicity(J)
    ll = loewy_length(J)
    rhs = Fraction((ll + 1) ** 2, 4)
    return FVerdict("HMTW_dim2", Fraction(e), rhs, e <= rhs, {"e": e, "loewy": ll, "threshold": ll + 1})


def check_crll(J: IdealHandle) -> FVerdict:
    """ll(closure J) <= ceil((th - ord J)/(d - 1)) with th = ll(J) + d - 1."""
    _require_char_p(J)
    _check_parameter_ideal(J)
    M = J.monomial_ideal()
    if M is None:
        raise HypothesisError("closure is only available for monomial J")
    d = J.dim
    if d < 2:
        raise HypothesisError("needs dimension at least 2")
    th = regular_threshold(J)
    r = ord(J)
    closure = integral_closure(M)
    ll_bar = closure.loewy_length()
    rhs = -((-(th - r)) // (d - 1))
    return FVerdict(
        "CRLL", Fraction(ll_bar), Fraction(rhs), ll_bar <= rhs, {"threshold": th, "ord": r, "closure": str(closure)}
    )


def check_htw(J: IdealHandle) -> FVerdict:
    """Characteristic-free reading: e(J) <= ((d + ll(J) - 1)/d)^d."""
    _check_parameter_ideal(J)
    d = J.dim
    e = multiplicity(J)
    rhs = Fraction(regular_threshold(J), d) ** d
    return FVerdict("HTW", Fraction(e), rhs, e <= rhs, {"e": e, "loewy": loewy_length(J)})
