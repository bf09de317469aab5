"""Per-ideal invariants: number of generators, Loewy length, order,
m-fullness and fullness, integral closedness (monomial case) and
hyperplane sections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from . import groebner as gb
from .groebner import RingPresentation
from .monomial import MonomialIdeal, integral_closure
from .polyarith import Polynomial

DEFAULT_TRIALS = 5
COEFF_RANGE = 10


class IdealHandle:
    """A finite generator list of an m-primary ideal of a ring presentation.

    Invariants are computed lazily and cached write-once in ``cache``.
    """

    def __init__(self, ring: RingPresentation, gens: Sequence[Polynomial]):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring.poly_ring:
                raise ValueError(f"generator {g} is not in {ring.poly_ring}")
        self.ring = ring
        self.gens = gens
        self.cache: Dict[str, object] = {}

    @classmethod
    def parse(cls, ring: RingPresentation, *texts: str) -> "IdealHandle":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def maximal(cls, ring: RingPresentation) -> "IdealHandle":
        return cls(ring, ring.maximal_ideal())

    @classmethod
    def from_monomial(cls, ring: RingPresentation, I: MonomialIdeal) -> "IdealHandle":
        PR = ring.poly_ring
        return cls(ring, [PR.monomial(g) for g in I.gens])

    def __repr__(self):
        return f"IdealHandle(({', '.join(map(str, self.gens))}) in {self.ring.describe()})"

    def describe(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def _memo(self, name, fn):
        if name not in self.cache:
            self.cache[name] = fn()
        return self.cache[name]

    @property
    def dim(self) -> int:
        return self.ring.declared_dim

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def monomial_ideal(self) -> Optional[MonomialIdeal]:
        """The ideal as a MonomialIdeal when that is meaningful (no relations)."""
        if self.ring.relations or not self.is_monomial():
            return None
        return MonomialIdeal.from_gens([next(iter(g._terms)) for g in self.gens], self.ring.nvars)

    def model(self) -> gb.ArtinianModel:
        return self._memo("model", lambda: gb.certified_model(self.ring, self.gens, self.cache.get("hint")))

    def length(self) -> int:
        return self.model().length

    def times(self, other: "IdealHandle") -> "IdealHandle":
        return IdealHandle(self.ring, _prune(self.ring, [f * g for f in self.gens for g in other.gens]))

    def times_m(self) -> "IdealHandle":
        return self.times(IdealHandle.maximal(self.ring))

    def power(self, n: int) -> "IdealHandle":
        """Explicit generator products; gens are pruned but not made minimal."""
        if n == 0:
            return IdealHandle(self.ring, [self.ring.poly_ring.one()])
        key = f"power:{n}"
        if key not in self.cache:
            prev = self.power(n - 1) if n > 1 else None
            if prev is None:
                self.cache[key] = self
            else:
                self.cache[key] = prev.times(self)
        return self.cache[key]

    def with_hint(self, hint: int) -> "IdealHandle":
        self.cache.setdefault("hint", hint)
        return self


def _prune(ring: RingPresentation, polys: List[Polynomial]) -> List[Polynomial]:
    """Drop duplicates, monomials divisible by other monomial generators, and
    polynomials that are k-linear combinations of earlier ones."""
    polys = [p for p in dict.fromkeys(polys) if p]
    if not ring.relations and all(p.is_monomial() for p in polys):
        I = MonomialIdeal.from_gens([next(iter(p._terms)) for p in polys], ring.nvars)
        return [ring.poly_ring.monomial(g) for g in I.gens]
    # incremental sparse echelon form: pivot monomial -> monic reduced row
    field = ring.field
    pc = field.characteristic
    pivots: Dict[tuple, dict] = {}
    kept = []
    for p in polys:
        row = dict(p._terms)
        for piv in sorted(pivots):
            c = row.get(piv)
            if not c:
                continue
            for m, a in pivots[piv].items():
                v = row.get(m, 0) - c * a
                if pc:
                    v %= pc
                if v:
                    row[m] = v
                else:
                    row.pop(m, None)
        if row:
            lead = min(row)
            inv = field.inv(row[lead])
            row = {m: (a * inv) % pc if pc else a * inv for m, a in row.items()}
            for other in pivots.values():
                c = other.get(lead)
                if c:
                    for m, a in row.items():
                        v = other.get(m, 0) - c * a
                        if pc:
                            v %= pc
                        if v:
                            other[m] = v
                        else:
                            other.pop(m, None)
            pivots[lead] = row
            kept.append(p)
    return kept


# ---------------------------------------------------------------- invariants


def mu(I: IdealHandle) -> int:
    """Minimal number of generators: length(R/mI) - length(R/I)."""

    def compute():
        base = I.model()
        mI = I.times_m().with_hint(base.truncation_N + 1)
        return mI.length() - base.length

    return I._memo("mu", compute)


def ord(I: IdealHandle) -> int:
    """Largest s with I inside m^s."""

    def compute():
        if I.length() == 0:
            return 0
        s = 0
        while True:
            nxt = s + 1
            if gb.length_with_truncation(I.ring, I.gens, nxt) != gb.length_with_truncation(I.ring, (), nxt):
                return s
            s = nxt

    return I._memo("ord", compute)


def loewy_length(I: IdealHandle) -> int:
    """Least n with m^n inside I, scanning upward from ord(I)."""

    def compute():
        target = I.length()
        if target == 0:
            return 0
        n = max(ord(I), 1)
        while gb.length_with_truncation(I.ring, I.gens, n) != target:
            n += 1
        return n

    return I._memo("loewy", compute)


@dataclass(frozen=True)
class MFullVerdict:
    m_full: bool
    witness: Optional[Polynomial]
    tried: Tuple[Polynomial, ...]
    colon_dims: Tuple[int, ...]

    def __bool__(self):
        return self.m_full


def general_forms(ring: RingPresentation, count: int, seed: int = 0) -> List[Polynomial]:
    """The all-ones linear form, then seeded random nonzero forms with
    coefficients in [-10, 10]."""
    PR = ring.poly_ring
    xs = PR.gens()
    out = [sum(xs[1:], xs[0])]
    rng = random.Random(seed)
    attempts = 0
    while len(out) < count and attempts < 1000 * count:
        attempts += 1
        coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in xs]
        f = PR.zero()
        for c, x in zip(coeffs, xs):
            f = f + x.scale(c)
        if f and f not in out:
            out.append(f)
    return out[:count]


def is_m_full(I: IdealHandle, trials: int = DEFAULT_TRIALS, seed: int = 0) -> MFullVerdict:
    """Search for z with mI : z = I among general linear forms.

    (mI : z)/mI always contains I/mI, which has dimension mu(I); equality of
    the ideals is equality of these dimensions.
    """
    key = f"m_full:{trials}:{seed}"

    def compute():
        target = mu(I)
        model = I.times_m().with_hint(I.model().truncation_N + 1).model()
        tried, dims = [], []
        for z in general_forms(I.ring, trials, seed):
            dim = gb.colon_dimension(model, z)
            tried.append(z)
            dims.append(dim)
            if dim == target:
                return MFullVerdict(True, z, tuple(tried), tuple(dims))
        return MFullVerdict(False, None, tuple(tried), tuple(dims))

    return I._memo(key, compute)


def colon_by_maximal_dimension(model: gb.ArtinianModel) -> int:
    """dim_k of (J : m)/J, the socle of the model algebra."""
    rows: List[list] = []
    for x in model.ring.poly_ring.gens():
        rows.extend(gb.multiplication_matrix(model, x))
    if not rows:
        return 0
    n = len(model.standard_monomials)
    return n - gb._rank(rows, model.ring.field)


def is_full(I: IdealHandle, trials: int = DEFAULT_TRIALS, seed: int = 0) -> MFullVerdict:
    """Search for z with I : z = I : m."""
    model = I.model()
    target = colon_by_maximal_dimension(model)
    tried, dims = [], []
    for z in general_forms(I.ring, trials, seed):
        dim = gb.colon_dimension(model, z)
        tried.append(z)
        dims.append(dim)
        if dim == target:
            return MFullVerdict(True, z, tuple(tried), tuple(dims))
    return MFullVerdict(False, None, tuple(tried), tuple(dims))


def is_integrally_closed(I: IdealHandle) -> Optional[bool]:
    """Decided for monomial ideals of a polynomial ring; None means undecidable here."""
    M = I.monomial_ideal()
    if M is None:
        return None
    return I._memo("integrally_closed", lambda: integral_closure(M) == M)


def section_ring(ring: RingPresentation, z: Polynomial) -> RingPresentation:
    """R/(z) for a linear form z."""
    if not z or any(sum(m) != 1 for m in z._terms):
        raise ValueError(f"{z} is not a linear form")
    if ring.declared_dim < 1:
        raise ValueError("cannot cut a zero-dimensional ring")
    return RingPresentation(ring.field, ring.variables, ring.relations + (z,), ring.declared_dim - 1)


def in_ring(I: IdealHandle, ring: RingPresentation) -> IdealHandle:
    """Image of I in a quotient presentation over the same variables."""
    return IdealHandle(ring, I.gens)


@dataclass
class InvariantBundle:
    mu: int
    loewy: int
    ord: int
    colength: int
    e: Optional[int] = None
    m_full: Optional[bool] = None
    m_full_witness: Optional[str] = None
    m_full_trials: int = 0
    integrally_closed: Optional[bool] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def invariant_bundle(I: IdealHandle, trials: int = DEFAULT_TRIALS, seed: int = 0) -> InvariantBundle:
    v = is_m_full(I, trials, seed)
    return InvariantBundle(
        mu=mu(I),
        loewy=loewy_length(I),
        ord=ord(I),
        colength=I.length(),
        m_full=v.m_full,
        m_full_witness=str(v.witness) if v.witness is not None else None,
        m_full_trials=len(v.tried),
        integrally_closed=is_integrally_closed(I),
    )
