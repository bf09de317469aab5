"""The inequality suite.

Every check is stated as ``lhs REL rhs`` with REL one of ">=" or "<=" and
evaluated exactly.  The slack is oriented so that a check holds exactly when
its slack is nonnegative.

Checks
------
A        (d-1)! (mu - d + 1) ll >= e(I)
B        (d-1)! e(R) ll (mu - d + 1) >= e(I)
C        (d-1)! e(R) (mu - d + 1) >= e(I R/(x)),  x general
D        mu - d + 1 <= e(I R/(x)),  x general
E        e(I) <= ll ord   (d = 2; the regular-ring refinement)
F        e(I) <= ll e(I|m)   (d = 2)
G        mu(closure m^n) <= n e(R) + 1   (d = 2, I = m^n)
H_lower  length(R/I) <= e(I)
H_upper  e(I) <= d! e(R) length(R/I)
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import groebner as gb
from .groebner import RingPresentation
from .invariants import (
    DEFAULT_TRIALS,
    IdealHandle,
    general_forms,
    in_ring,
    invariant_bundle,
    is_full,
    is_m_full,
    mu,
    section_ring,
)
from .multiplicity import (
    Unstabilized,
    h_vector,
    h_vector_criterion_value,
    hs_table,
    mixed_multiplicity,
    multiplicity,
    ring_multiplicity,
)
from .monomial import MonomialIdeal, integral_closure
from .polyarith import QQ

CHECKS = ("A", "B", "C", "D", "E", "F", "G", "H_lower", "H_upper")
STATUSES = ("holds", "violated", "skipped", "inconclusive")
RETRIES = 5


@dataclass(frozen=True)
class AuditConfig:
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    n_max: Optional[int] = None
    checks: Tuple[str, ...] = CHECKS
    retries: int = RETRIES
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")


@dataclass(frozen=True)
class InequalityVerdict:
    name: str
    relation: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    status: str
    hypotheses: Tuple[Tuple[str, Optional[bool]], ...] = ()
    witnesses: Tuple[Tuple[str, str], ...] = ()
    reason: str = ""

    @property
    def slack(self) -> Optional[Fraction]:
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs if self.relation == ">=" else self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def equality(self) -> bool:
        return self.slack == 0

    @property
    def hypotheses_met(self) -> bool:
        return all(v is True for _, v in self.hypotheses)

    @property
    def counterexample(self) -> bool:
        """A violation with every hypothesis behind the check verified."""
        return self.status == "violated" and self.hypotheses_met

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "status": self.status,
            "equality": self.equality,
            "hypotheses": {k: v for k, v in self.hypotheses},
            "hypotheses_met": self.hypotheses_met,
            "witnesses": {k: v for k, v in self.witnesses},
            "reason": self.reason,
        }


def compare(name, relation, lhs, rhs, hypotheses=(), witnesses=()) -> InequalityVerdict:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    ok = lhs >= rhs if relation == ">=" else lhs <= rhs
    return InequalityVerdict(name, relation, lhs, rhs, "holds" if ok else "violated", tuple(hypotheses), tuple(witnesses))


def _skip(name, relation, reason, status="skipped", hypotheses=()) -> InequalityVerdict:
    return InequalityVerdict(name, relation, None, None, status, tuple(hypotheses), (), reason)


@dataclass(frozen=True)
class AuditRecord:
    ring: str
    ideal: str
    invariants: Dict[str, object]
    verdicts: Tuple[InequalityVerdict, ...]
    meta: Dict[str, object]

    def verdict(self, name: str) -> InequalityVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "ideal": self.ideal,
            "invariants": dict(self.invariants),
            "inequalities": [v.to_dict() for v in self.verdicts],
            "meta": dict(self.meta),
        }


def _try(fn: Callable, *args):
    try:
        return fn(*args)
    except Unstabilized:
        return None


def _section_multiplicity(I: IdealHandle, z, n_max) -> Tuple[Optional[int], Optional[int]]:
    """(e(I R/(z)), e(R/(z))), or None entries when a fit fails."""
    S = section_ring(I.ring, z)
    J = in_ring(I, S)
    if S.declared_dim == 0:
        ell = gb.length(S, ())
        return ell, ell
    return _try(multiplicity, J, n_max), _try(ring_multiplicity, S)


def _general_check(I, config, first, build) -> InequalityVerdict:
    """Evaluate ``build(z, e_section)`` at ``first``, retrying fresh elements on
    a violation or on a non-superficial section."""
    eR = ring_multiplicity(I.ring)
    fresh = general_forms(I.ring, config.retries + 1, config.seed + 1)
    candidates = [first] + [z for z in fresh if z != first][: config.retries]
    verdict = None
    for attempt, z in enumerate(candidates):
        e_sec, e_ring_sec = _section_multiplicity(I, z, config.n_max)
        if e_sec is None or e_ring_sec != eR:
            continue
        verdict = build(z, e_sec, attempt)
        if verdict.status == "holds":
            return verdict
    return verdict


def audit_ideal(I: IdealHandle, config: AuditConfig = AuditConfig()) -> AuditRecord:
    start = time.perf_counter()
    R = I.ring
    d = R.declared_dim
    if d < 1:
        raise ValueError("auditing needs a ring of positive dimension")
    bundle = invariant_bundle(I, config.trials, config.seed)
    fact = factorial(d - 1)
    m, ll, r, ell = bundle.mu, bundle.loewy, bundle.ord, bundle.colength
    e = _try(multiplicity, I, config.n_max)
    eR = _try(ring_multiplicity, R)
    bundle.e = e

    mu_m = mu(IdealHandle.maximal(R))
    regular = R.is_regular
    cm = regular or R.is_complete_intersection
    minimal_mult = None if eR is None else eR == mu_m - d + 1
    normal_m = True if regular else R.normal_m
    want = set(config.checks)
    verdicts: List[InequalityVerdict] = []
    inv: Dict[str, object] = dict(bundle.as_dict())
    inv.update(e_ring=eR, mu_m=mu_m, dim=d)

    def e_dependent(name, relation, hyps, need_eR=False):
        if e is None or (need_eR and eR is None):
            return _skip(name, relation, "Hilbert-Samuel fit unstabilized", "inconclusive", hyps)
        return None

    if "A" in want:
        hyps = (("regular", regular), ("m_full", bundle.m_full))
        verdicts.append(e_dependent("A", ">=", hyps) or compare("A", ">=", fact * (m - d + 1) * ll, e, hyps))

    if "B" in want:
        hyps = (("m_full", bundle.m_full),)
        verdicts.append(
            e_dependent("B", ">=", hyps, True) or compare("B", ">=", fact * eR * ll * (m - d + 1), e, hyps)
        )

    if "C" in want or "D" in want:
        first = is_m_full(I, config.trials, config.seed).witness or general_forms(R, 1, config.seed)[0]
        for name in ("C", "D"):
            if name not in want:
                continue
            if eR is None:
                verdicts.append(_skip(name, ">=" if name == "C" else "<=", "e(R) unstabilized", "inconclusive"))
                continue

            def build(z, e_sec, attempt, name=name):
                w = (("x", str(z)), ("e_section", str(e_sec)), ("attempt", str(attempt)), ("seed", str(config.seed)))
                if name == "C":
                    return compare("C", ">=", fact * eR * (m - d + 1), e_sec, (("m_full", bundle.m_full),), w)
                return compare("D", "<=", m - d + 1, e_sec, (("cohen_macaulay", cm),), w)

            v = _general_check(I, config, first, build)
            relation = ">=" if name == "C" else "<="
            verdicts.append(v or _skip(name, relation, "no general element gave a superficial section", "inconclusive"))

    if "E" in want:
        if d != 2:
            verdicts.append(_skip("E", "<=", "dimension is not 2"))
        else:
            fv = is_full(I, config.trials, config.seed)
            hyps = (("regular", regular), ("full", fv.m_full))
            w = (("mu_minus_1", str(m - 1)), ("ord", str(r)))
            verdicts.append(e_dependent("E", "<=", hyps) or compare("E", "<=", e, ll * r, hyps, w))

    if "F" in want:
        if d != 2:
            verdicts.append(_skip("F", "<=", "dimension is not 2"))
        else:
            hyps = (
                ("cohen_macaulay", cm),
                ("minimal_multiplicity", minimal_mult),
                ("normal_m", normal_m),
                ("integrally_closed", bundle.integrally_closed),
            )
            try:
                mixed = mixed_multiplicity(I, IdealHandle.maximal(R), config.n_max)
            except Unstabilized:
                mixed = None
            if e is None or mixed is None:
                verdicts.append(_skip("F", "<=", "Hilbert-Samuel fit unstabilized", "inconclusive", hyps))
            else:
                inv["mixed_m"] = mixed
                verdicts.append(compare("F", "<=", e, ll * mixed, hyps, (("e(I|m)", str(mixed)),)))

    if "G" in want:
        verdicts.append(_check_G(I, d, r, ell, m, eR, cm, normal_m))

    if "H_lower" in want:
        hyps = (("cohen_macaulay", cm),)
        verdicts.append(e_dependent("H_lower", "<=", hyps) or compare("H_lower", "<=", ell, e, hyps))
    if "H_upper" in want:
        verdicts.append(e_dependent("H_upper", "<=", (), True) or compare("H_upper", "<=", e, factorial(d) * eR * ell))

    meta = {
        "truncation_N": I.model().truncation_N,
        "n_max": hs_table(I, config.n_max).n_max,
        "seed": config.seed,
        "trials": config.trials,
        "lech_ratio": None if e is None else Fraction(e, factorial(d) * ell),
        "runtime_ms": round((time.perf_counter() - start) * 1000) if config.timing else None,
    }
    return AuditRecord(R.describe(), I.describe(), inv, tuple(verdicts), meta)


def _check_G(I, d, r, ell, m, eR, cm, normal_m) -> InequalityVerdict:
    hyps = (("cohen_macaulay", cm), ("normal_m", normal_m))
    if d != 2:
        return _skip("G", "<=", "dimension is not 2")
    if r < 1 or ell != gb.length_with_truncation(I.ring, (), r):
        return _skip("G", "<=", "ideal is not a power of m")
    if normal_m is not True:
        return _skip("G", "<=", "closure of m^n not computable without normality of m", hypotheses=hyps)
    if eR is None:
        return _skip("G", "<=", "e(R) unstabilized", "inconclusive", hyps)
    # m normal: the closure of m^n is m^n = I itself
    return compare("G", "<=", m, r * eR + 1, hyps, (("n", str(r)),))


# ----------------------------------------------------------------- families


@dataclass
class FamilySummary:
    count: int
    tallies: Dict[str, Dict[str, int]]
    retained: List[AuditRecord]
    rows: List[AuditRecord]

    def violations(self, name: str) -> List[AuditRecord]:
        return [r for r in self.rows if r.verdict(name).status == "violated"]

    def equalities(self, name: str) -> List[AuditRecord]:
        return [r for r in self.rows if r.verdict(name).equality]


def _audit_job(args):
    ring, gens, config = args
    return audit_ideal(IdealHandle(ring, gens), config)


def audit_family(source: Iterable[IdealHandle], config: AuditConfig = AuditConfig()) -> FamilySummary:
    """Audit every ideal of ``source`` and tally the verdicts per check.

    Records are ordered by the canonical ideal string, so the result does
    not depend on the worker count.
    """
    ideals = list(source)
    rings = {I.ring for I in ideals}
    if len(rings) > 1:
        raise ValueError("a family must live in one ring")
    if config.workers > 1 and len(ideals) > 1:
        jobs = [(I.ring, I.gens, config) for I in ideals]
        with ProcessPoolExecutor(config.workers) as pool:
            records = list(pool.map(_audit_job, jobs, chunksize=4))
    else:
        records = [audit_ideal(I, config) for I in ideals]
    records.sort(key=lambda rec: (len(rec.ideal), rec.ideal))
    tallies = {name: {"holds": 0, "equality": 0, "violated": 0, "skipped": 0, "inconclusive": 0} for name in config.checks}
    retained = []
    for rec in records:
        keep = False
        for v in rec.verdicts:
            tallies[v.name][v.status] += 1
            if v.equality:
                tallies[v.name]["equality"] += 1
            keep |= v.status == "violated" or v.equality
        if keep:
            retained.append(rec)
    return FamilySummary(len(records), tallies, retained, records)


@dataclass(frozen=True)
class ClosureFamilyRow:
    a: int
    b: int
    c: int
    ideal: str
    e: int
    loewy: int
    ord: int
    status: str
    equality: bool


def closure_family(a_max: int, config: AuditConfig = AuditConfig()) -> List[ClosureFamilyRow]:
    """Check E on closure((x^a, y^a, x^b y^c)) for 1 <= b + c <= a <= a_max.

    No extra condition is put on b and c; the rows say where equality occurs.
    """
    ring = RingPresentation(QQ, ("x", "y"))
    cfg = AuditConfig(config.seed, config.trials, config.n_max, ("E",), config.retries)
    rows = []
    for a in range(1, a_max + 1):
        for b in range(a + 1):
            for c in range(a + 1 - b):
                if b + c == 0:
                    continue
                M = integral_closure(MonomialIdeal.from_gens([(a, 0), (0, a), (b, c)], 2))
                rec = audit_ideal(IdealHandle.from_monomial(ring, M), cfg)
                v = rec.verdict("E")
                inv = rec.invariants
                rows.append(ClosureFamilyRow(a, b, c, str(M), inv["e"], inv["loewy"], inv["ord"], v.status, v.equality))
    return rows


# ---------------------------------------------------------------- h-vectors


@dataclass(frozen=True)
class HVectorVerdict:
    a: Tuple[int, ...]
    d: int
    value: Fraction
    large_powers_hold: bool
    symmetric_dominance: bool  # a_i >= a_(d-i) for i <= d/2, h <= d
    palindromic_dim3: Optional[bool]  # a_i = a_(3-i); None unless d = 3

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def criterion_from_h(a: Sequence[int], d: int) -> HVectorVerdict:
    a = tuple(a)
    value = h_vector_criterion_value(a, d)
    at = lambda i: a[i] if 0 <= i < len(a) else 0  # noqa: E731
    h = len(a) - 1
    dominance = h <= d and all(at(i) >= at(d - i) for i in range(d // 2 + 1))
    pal = None
    if d == 3:
        pal = h <= 3 and all(at(i) == at(3 - i) for i in range(4))
    return HVectorVerdict(a, d, Fraction(value), value >= 0, dominance, pal)


def h_vector_criterion(ring: RingPresentation, window: int = 10) -> HVectorVerdict:
    hv = h_vector(ring, window)
    return criterion_from_h(hv.a, hv.d)
