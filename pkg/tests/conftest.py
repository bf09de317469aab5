import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from idealaudit import GF, QQ, IdealHandle, RingPresentation
from idealaudit.monomial import MonomialIdeal, enumerate_integrally_closed

settings.register_profile(
    "fixed", derandomize=True, deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("fixed")


def plane(field=QQ):
    return RingPresentation(field, ("x", "y"))


def space(field=QQ):
    return RingPresentation(field, ("x", "y", "z"))


def quotient(relation: str, dim: int = 2, names=("x", "y", "z")) -> RingPresentation:
    base = RingPresentation(QQ, names)
    return RingPresentation(QQ, names, (base.parse(relation),), dim)


E8 = quotient("x^2+y^3+z^5")
CYLINDER = quotient("x^2+y^2")
X2Y5Z5 = quotient("x^2+y^5+z^5")


def ideal(ring, *gens) -> IdealHandle:
    return IdealHandle.parse(ring, *gens)


def mono(*gens) -> MonomialIdeal:
    return MonomialIdeal.from_gens(gens, len(gens[0]))


def segment_closure_member(v, gens) -> bool:
    """Planar Newton membership without linear programming: v dominates a
    generator or a point on a segment joining two generators."""
    vx, vy = v
    for gx, gy in gens:
        if vx >= gx and vy >= gy:
            return True
    for i, (gx, gy) in enumerate(gens):
        for hx, hy in gens[i + 1 :]:
            # v >= h + t (g - h) for some t in [0, 1]
            lo, hi = Fraction(0), Fraction(1)
            for vc, gc, hc in ((vx, gx, hx), (vy, gy, hy)):
                diff = gc - hc
                slack = vc - hc
                if diff > 0:
                    hi = min(hi, Fraction(slack, diff))
                elif diff < 0:
                    lo = max(lo, Fraction(slack, diff))
                elif slack < 0:
                    lo, hi = Fraction(1), Fraction(0)
            if lo <= hi:
                return True
    return False


def brute_closure(M: MonomialIdeal) -> MonomialIdeal:
    a, b = M.pure_powers()
    pts = [(i, j) for i in range(a + 1) for j in range(b + 1) if segment_closure_member((i, j), M.gens)]
    return MonomialIdeal.from_gens(pts, 2)


@pytest.fixture(scope="session")
def closed_family_12():
    return list(enumerate_integrally_closed(2, 12))


@pytest.fixture(scope="session")
def closed_family_10():
    return list(enumerate_integrally_closed(2, 10))


@pytest.fixture(scope="session")
def closed_family_8():
    return list(enumerate_integrally_closed(2, 8))


__all__ = ["GF"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
