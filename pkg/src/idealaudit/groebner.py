"""Lengths, membership and colons in Artinian truncations of local rings.

A local ring R = k[x]_(x) / (relations) and an m-primary ideal J are modelled
by the finite-dimensional algebra A = k[x] / (J + relations + m^N).  Once
m^(N-1) lies in J + m^N, Nakayama gives m^(N-1) inside J in R, so A = R/J and
its dimension (the number of standard monomials of a Groebner basis) is the
length of R/J.

Bases are computed by Buchberger's algorithm with the Gebauer-Moeller pair
criteria.  The default order is the local degree order (``negdegrevlex``):
leading terms are lowest-degree terms, terms of degree >= N are dropped on
the fly, and no S-pair with the truncation monomials ever survives.  The
global ``degrevlex`` order is also supported; there the degree-N monomials
are added as explicit generators.
"""

from __future__ import annotations

import heapq
import os
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .polyarith import (
    DEGREVLEX,
    NEGDEGREVLEX,
    QQ,
    FieldSpec,
    Monomial,
    PolyRing,
    Polynomial,
    TermOrder,
    GF,
    monomials_of_degree,
)

DEFAULT_CAP = 64
MODCHECK_PRIME = 2147483647
WATCHDOG = 2_000_000


class NotMPrimary(RuntimeError):
    """Length did not stabilise below the truncation cap."""


class UncertifiedTruncation(UserWarning):
    pass


def truncation_cap() -> int:
    env = os.environ.get("IDEAL_AUDIT_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class RingPresentation:
    """k[x_1..x_n] localised at the origin, modulo ``relations``.

    ``normal_m`` records a user assertion that all powers of m are integrally
    closed (not decidable here); ``normal_m_citation`` says who asserted it.
    """

    field: FieldSpec
    variables: Tuple[str, ...]
    relations: Tuple[Polynomial, ...] = ()
    declared_dim: int = -1
    normal_m: Optional[bool] = None
    normal_m_citation: str = ""

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.declared_dim < 0:
            object.__setattr__(self, "declared_dim", len(self.variables) - len(self.relations))
        if self.declared_dim > len(self.variables):
            raise ValueError("declared dimension exceeds the number of variables")
        for f in self.relations:
            if f.ring != self.poly_ring:
                raise ValueError(f"relation {f} lives in {f.ring}, not {self.poly_ring}")
            if not f:
                raise ValueError("a relation vanishes over this field")
            if f.coeff((0,) * len(self.variables)):
                raise ValueError(f"relation {f} does not vanish at the origin")

    @property
    def poly_ring(self) -> PolyRing:
        return _poly_ring(self.field, self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_regular(self) -> bool:
        """Presentation-level regularity: no relations, or only linear ones."""
        return all(f.order() == 1 for f in self.relations) and _linear_rank(self) == len(self.relations)

    @property
    def is_complete_intersection(self) -> bool:
        return len(self.relations) == self.nvars - self.declared_dim

    def maximal_ideal(self) -> List[Polynomial]:
        return list(self.poly_ring.gens())

    def parse(self, text: str) -> Polynomial:
        return self.poly_ring.parse(text)

    def describe(self) -> str:
        base = f"{self.field}[{','.join(self.variables)}]"
        if self.relations:
            base += "/(" + ", ".join(str(f) for f in self.relations) + ")"
        return f"{base} dim {self.declared_dim}"

    def with_field(self, field: FieldSpec) -> "RingPresentation":
        return RingPresentation(
            field,
            self.variables,
            tuple(f.map_field(field) for f in self.relations),
            self.declared_dim,
            self.normal_m,
            self.normal_m_citation,
        )


@lru_cache(maxsize=None)
def _poly_ring(field: FieldSpec, names: Tuple[str, ...]) -> PolyRing:
    return PolyRing(field, names)


def _linear_rank(ring: RingPresentation) -> int:
    n = ring.nvars
    rows = []
    for f in ring.relations:
        row = [f.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)]
        rows.append(row)
    return _rank(rows, ring.field)


# ----------------------------------------------------------- raw arithmetic
#
# Inside the engine a polynomial is a dict {monomial: coefficient} over the
# field; ``p`` is the characteristic (0 for the rationals).


def _keyer(order: TermOrder):
    cache: Dict[Monomial, tuple] = {}
    base = order.key

    def key(m):
        k = cache.get(m)
        if k is None:
            k = cache[m] = base(m)
        return k

    return key


def _lead(f: dict, key):
    return max(f, key=key)


def _sub_mul(f: dict, c, t: Monomial, g: dict, p: int, T: Optional[int]):
    """f <- f - c * t * g, dropping terms of degree >= T."""
    dt = sum(t)
    for m, a in g.items():
        if T is not None and dt + sum(m) >= T:
            continue
        mm = tuple(x + y for x, y in zip(m, t))
        v = f.get(mm, 0) - c * a
        if p:
            v %= p
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Basis:
    """Reducers: lead monomial, lead coefficient inverse, polynomial."""

    def __init__(self, p: int):
        self.p = p
        self.items: List[Tuple[Monomial, object, dict]] = []

    def find(self, m: Monomial, skip: int = -1):
        for i, (lm, inv, g) in enumerate(self.items):
            if i != skip and _divides(lm, m):
                return lm, inv, g
        return None


def _inv(c, p):
    return pow(c, -1, p) if p else 1 / c


def _normal_form(f: dict, basis: _Basis, key, T, full: bool = True, skip: int = -1) -> dict:
    p = basis.p
    f = dict(f)
    rem: dict = {}
    steps = 0
    while f:
        m = _lead(f, key)
        hit = basis.find(m, skip)
        if hit is None:
            if not full:
                rem.update(f)
                return rem
            rem[m] = f.pop(m)
            continue
        lm, inv, g = hit
        c = f[m] * inv
        if p:
            c %= p
        t = tuple(x - y for x, y in zip(m, lm))
        _sub_mul(f, c, t, g, p, T)
        f.pop(m, None)
        steps += 1
        if steps > WATCHDOG:
            raise RuntimeError("normal form watchdog tripped")
    return rem


def _spoly(f, lf, g, lg, p, T):
    l = tuple(max(a, b) for a, b in zip(lf, lg))
    out: dict = {}
    cf, cg = f[lf], g[lg]
    _sub_mul(out, -_inv(cf, p), tuple(a - b for a, b in zip(l, lf)), f, p, T)
    _sub_mul(out, _inv(cg, p), tuple(a - b for a, b in zip(l, lg)), g, p, T)
    out.pop(l, None)
    return out


def buchberger(polys: Sequence[dict], order: TermOrder, p: int, T: Optional[int]) -> List[dict]:
    """Reduced Groebner basis (monic) of the given raw polynomials.

    With ``T`` set every term of degree >= T is treated as zero, which is
    only legitimate for a local degree order.
    """
    key = _keyer(order)
    polys_: List[dict] = []
    leads: List[Monomial] = []
    G: List[int] = []
    B: Dict[Tuple[int, int], Monomial] = {}
    heap: List[tuple] = []
    counter = 0
    live = _Basis(p)

    def refresh_live():
        live.items = [(leads[i], _inv(polys_[i][leads[i]], p), polys_[i]) for i in G]

    def add(h: dict):
        nonlocal G, B, counter
        lh = _lead(h, key)
        hidx = len(polys_)
        polys_.append(h)
        leads.append(lh)
        # Gebauer-Moeller update
        C = [g for g in G]
        lcm = {g: tuple(max(a, b) for a, b in zip(lh, leads[g])) for g in C}

        def disjoint(g):
            return all(a == 0 or b == 0 for a, b in zip(lh, leads[g]))

        D = []
        for i, g1 in enumerate(C):
            if disjoint(g1):
                D.append(g1)
                continue
            l1 = lcm[g1]
            rest = C[i + 1 :]
            if any(_divides(lcm[g2], l1) for g2 in rest) or any(_divides(lcm[g2], l1) for g2 in D):
                continue
            D.append(g1)
        E = [g for g in D if not disjoint(g)]
        newB = {}
        for (a, b), l in B.items():
            if _divides(lh, l):
                la = tuple(max(x, y) for x, y in zip(leads[a], lh))
                lb = tuple(max(x, y) for x, y in zip(leads[b], lh))
                if la != l and lb != l:
                    continue
            newB[(a, b)] = l
        B = newB
        for g in E:
            B[(g, hidx)] = lcm[g]
            counter += 1
            heapq.heappush(heap, (sum(lcm[g]), key(lcm[g]) if order.kind == "degrevlex" else (), counter, g, hidx))
        G = [g for g in G if not _divides(lh, leads[g])] + [hidx]
        refresh_live()

    start = []
    for f in polys:
        f = {m: c for m, c in f.items() if (T is None or sum(m) < T) and c}
        if f:
            start.append(f)
    start.sort(key=lambda f: key(_lead(f, key)))
    for f in start:
        h = _normal_form(f, live, key, T)
        if h:
            add(h)
    rounds = 0
    while B:
        rounds += 1
        if rounds > WATCHDOG:
            raise RuntimeError("Buchberger watchdog tripped")
        _, _, _, a, b = heapq.heappop(heap)
        if (a, b) not in B:
            continue
        del B[(a, b)]
        s = _spoly(polys_[a], leads[a], polys_[b], leads[b], p, T)
        h = _normal_form(s, live, key, T)
        if h:
            add(h)
    # interreduce
    out = []
    for i, g in enumerate(live.items):
        lm, inv, f = g
        red = _Basis(p)
        red.items = [x for j, x in enumerate(live.items) if j != i]
        r = _normal_form(f, red, key, T)
        c = _inv(r[lm], p)
        if p:
            r = {m: v * c % p for m, v in r.items()}
        else:
            r = {m: v * c for m, v in r.items()}
        out.append(r)
    out.sort(key=lambda f: key(_lead(f, key)), reverse=True)
    return out


def standard_monomials(leads: Sequence[Monomial], nvars: int, T: Optional[int]) -> List[Monomial]:
    """Monomials (of degree < T) divisible by no lead, in lex-ascending order."""
    out: List[Monomial] = []
    cur = [0] * nvars

    def rec(i, deg):
        if i == nvars:
            out.append(tuple(cur))
            return
        e = 0
        while True:
            cur[i] = e
            if T is not None and deg + e >= T:
                break
            probe = tuple(cur[: i + 1]) + (0,) * (nvars - i - 1)
            if any(_divides(l, probe) for l in leads):
                break
            rec(i + 1, deg + e)
            e += 1
        cur[i] = 0

    rec(0, 0)
    return out


# ------------------------------------------------------------------- models


@dataclass(frozen=True)
class ArtinianModel:
    ring: RingPresentation
    ideal_gens: Tuple[Polynomial, ...]
    truncation_N: int
    groebner_basis: Tuple[Polynomial, ...]
    standard_monomials: Tuple[Monomial, ...]
    order: TermOrder = NEGDEGREVLEX
    certified: bool = False

    @property
    def length(self) -> int:
        return len(self.standard_monomials)

    @property
    def socle_degree(self) -> int:
        """Top degree of a standard monomial (-1 for the zero algebra)."""
        return max((sum(m) for m in self.standard_monomials), default=-1)

    def _raw_basis(self) -> _Basis:
        b = _Basis(self.ring.field.characteristic)
        key = self.order.key
        for g in self.groebner_basis:
            lm, lc = g.lead(self.order)
            b.items.append((lm, _inv(lc, b.p), g._terms))
        return b

    def normal_form(self, f: Polynomial) -> Polynomial:
        T = self.truncation_N if self.order.kind == "negdegrevlex" else None
        r = _normal_form(f._terms, self._raw_basis(), _keyer(self.order), T)
        return Polynomial(f.ring, r)

    def coordinates(self, f: Polynomial) -> list:
        """Vector of ``f`` in the standard-monomial basis."""
        r = self.normal_form(f)
        zero = self.ring.field(0)
        return [r._terms.get(m, zero) for m in self.standard_monomials]


def _to_raw(polys: Sequence[Polynomial], ring: RingPresentation) -> List[dict]:
    out = []
    for f in polys:
        if f.ring != ring.poly_ring:
            raise ValueError(f"{f} is not in {ring.poly_ring}")
        out.append(f._terms)
    return out


def build_model(
    ring: RingPresentation, gens: Sequence[Polynomial], N: int, order: TermOrder = NEGDEGREVLEX
) -> ArtinianModel:
    """Groebner model of gens + relations + m^N, with its standard monomials."""
    if N < 1:
        raise ValueError("truncation degree must be at least 1")
    return _build_model(ring, tuple(gens), int(N), order)


@lru_cache(maxsize=4096)
def _build_model(ring, gens, N, order) -> ArtinianModel:
    p = ring.field.characteristic
    raw = _to_raw(gens, ring) + _to_raw(ring.relations, ring)
    PR = ring.poly_ring
    if order.kind == "negdegrevlex":
        G = buchberger(raw, order, p, N)
        leads = [_lead(g, _keyer(order)) for g in G]
        std = standard_monomials(leads, ring.nvars, N)
        certified = max((sum(m) for m in std), default=-1) <= N - 2
    else:
        one = PR.field(1)
        raw = raw + [{m: one} for m in monomials_of_degree(ring.nvars, N)]
        G = buchberger(raw, order, p, None)
        leads = [_lead(g, _keyer(order)) for g in G]
        std = standard_monomials(leads, ring.nvars, None)
        basis = _Basis(p)
        basis.items = [(l, _inv(g[l], p), g) for l, g in zip(leads, G)]
        key = _keyer(order)
        certified = all(not _normal_form({m: one}, basis, key, None) for m in monomials_of_degree(ring.nvars, N - 1))
    return ArtinianModel(
        ring,
        gens,
        N,
        tuple(Polynomial(PR, g) for g in G),
        tuple(std),
        order,
        certified,
    )


def certified_model(
    ring: RingPresentation,
    gens: Sequence[Polynomial],
    hint: Optional[int] = None,
    cap: Optional[int] = None,
    order: TermOrder = NEGDEGREVLEX,
) -> ArtinianModel:
    """Smallest model in the doubling ladder (starting at ``hint``) that is certified.

    Certification: every monomial of degree N-1 vanishes in the model, so
    m^(N-1) lies in J + m^N and hence in J (Nakayama); the count is exact.
    """
    cap = truncation_cap() if cap is None else cap
    N = max(2, hint or 2)
    while True:
        model = build_model(ring, gens, N, order)
        if model.certified:
            return model
        if N >= cap:
            raise NotMPrimary(f"ideal not m-primary up to truncation cap {cap}")
        N = min(2 * N, cap)


def length(
    ring: RingPresentation,
    gens: Sequence[Polynomial],
    hint: Optional[int] = None,
    cap: Optional[int] = None,
    modcheck: bool = False,
) -> int:
    """Length of R/(gens), certified by the Nakayama test above."""
    model = certified_model(ring, gens, hint, cap)
    if modcheck and not ring.field.characteristic:
        modular = ring.with_field(GF(MODCHECK_PRIME))
        other = certified_model(modular, [g.map_field(modular.field) for g in gens], model.truncation_N, cap)
        if other.length != model.length:
            raise RuntimeError(
                f"modular self-test failed: length {model.length} over QQ, {other.length} mod {MODCHECK_PRIME}"
            )
    return model.length


def length_with_truncation(ring, gens, N: int) -> int:
    """Length of R/(gens + m^N); exact for every N because m^N is in the ideal."""
    return build_model(ring, gens, N).length


def member(p: Polynomial, model: ArtinianModel) -> bool:
    if not model.certified:
        warnings.warn("membership test on an uncertified truncation", UncertifiedTruncation)
    return not model.normal_form(p)


# ------------------------------------------------------------ linear algebra


def _rank(rows, field: FieldSpec) -> int:
    return len(_rref([list(r) for r in rows], field)[1])


def _rref(rows, field: FieldSpec):
    p = field.characteristic
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _inv(rows[r][c], p)
        rows[r] = [(v * inv) % p if p else v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [((a - f * b) % p if p else a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix, field: FieldSpec) -> list:
    """Basis of {v : matrix v = 0} over the field (matrix given as rows)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    R, pivots = _rref(matrix, field)
    p = field.characteristic
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field(0)] * ncols
        v[fcol] = field(1)
        for row, pc in zip(R, pivots):
            v[pc] = (-row[fcol]) % p if p else -row[fcol]
        basis.append(v)
    return basis


def multiplication_matrix(model: ArtinianModel, z: Polynomial):
    """Rows indexed by standard monomials; column j is NF(z * s_j)."""
    std = model.standard_monomials
    PR = model.ring.poly_ring
    cols = [model.coordinates(z.mul_monomial(s)) for s in std]
    n = len(std)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def colon_element(model: ArtinianModel, z: Polynomial) -> List[Polynomial]:
    """Basis of {a : a*z in the ideal} modulo the ideal, as polynomials.

    Together with the ideal's generators these span (ideal : z) in R when the
    model is certified.
    """
    if not model.certified:
        raise NotMPrimary("colon needs a certified truncation")
    M = multiplication_matrix(model, z)
    PR = model.ring.poly_ring
    out = []
    for v in nullspace(M, model.ring.field):
        out.append(PR.from_dict({m: c for m, c in zip(model.standard_monomials, v) if c}))
    return out


def colon_dimension(model: ArtinianModel, z: Polynomial) -> int:
    """dim_k of (ideal : z)/ideal, i.e. the kernel of multiplication by z."""
    M = multiplication_matrix(model, z)
    return len(M) - _rank(M, model.ring.field) if M else 0
