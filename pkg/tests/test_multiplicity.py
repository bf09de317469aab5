from fractions import Fraction

import pytest

from conftest import CYLINDER, E8, ideal, mono, plane, space
from idealaudit.groebner import RingPresentation
from idealaudit.invariants import IdealHandle, ord
from idealaudit.monomial import MonomialIdeal, normalized_volume
from idealaudit.multiplicity import (
    Unstabilized,
    fiber_growth,
    fiber_multiplicity,
    h_vector,
    h_vector_criterion_value,
    hs_coefficients,
    hs_table,
    mixed_multiplicity,
    multiplicity,
    normal_fiber_growth,
    normal_fiber_multiplicity,
    normal_multiplicity,
    rees_mixed,
    ring_multiplicity,
)

R = plane()
M = IdealHandle.maximal(R)


def test_hs_examples():
    assert multiplicity(ideal(R, "x^2", "y^3")) == 6
    assert multiplicity(ideal(CYLINDER, "x", "z^4")) == 8
    assert multiplicity(ideal(E8, "x", "y^2", "y*z^2", "z^4")) == 10


def test_hs_table_never_extrapolates():
    t = hs_table(ideal(R, "x^5", "x*y", "y^7"), n_max=5)
    assert t.values == (0, 11, 34, 69, 116) and t.e == 12
    # second differences 14, 17, 16, 16: two equal values are not a plateau
    late = ideal(R, "x^4", "x^3*y", "x*y^3", "y^4")
    short = hs_table(late, n_max=5)
    assert short.values == (0, 11, 36, 78, 136, 210)
    assert short.status == "unstabilized" and short.e is None
    with pytest.raises(Unstabilized):
        multiplicity(late, n_max=5)
    assert multiplicity(late) == 16


def test_hs_table_requires_room():
    with pytest.raises(ValueError):
        hs_table(ideal(R, "x", "y"), n_max=4)


def test_hs_coefficients():
    assert hs_coefficients(M) == (1, 0, 0)
    e, e1, _ = hs_coefficients(IdealHandle.maximal(E8))
    assert (e, e1) == (2, 1)
    e, e1, e2 = hs_coefficients(ideal(R, "x^2", "y^3"))
    assert e == 6 and e1 == 0 and e2 == 0


def test_hs_coefficients_fit_every_tail_value(closed_family_8):
    for Mi in closed_family_8[:40]:
        I = IdealHandle.from_monomial(R, Mi)
        e, e1, e2 = hs_coefficients(I)
        t = hs_table(I)
        tail = range(max(t.stabilized_at, 1), len(t.values))
        assert len(tail) >= 4
        for k in tail:
            assert e * k * (k + 1) // 2 - e1 * k + e2 == t.values[k]


def test_multiplicity_equals_volume(closed_family_10):
    for Mi in closed_family_10:
        assert multiplicity(IdealHandle.from_monomial(R, Mi)) == normalized_volume(Mi)


SAMPLE = [
    ("x", "y"),
    ("x^2", "y^3"),
    ("x^2", "x*y", "y^2"),
    ("x^3", "x*y", "y^3"),
    ("x^2", "x*y^2", "y^3"),
    ("x^4", "x^2*y", "y^2"),
    ("x^3", "x^2*y", "x*y^2", "y^3"),
    ("x", "y^5"),
    ("x^2+y^3", "x*y"),
    ("x^3", "y^3", "x*y^2"),
]


@pytest.mark.parametrize("gens", SAMPLE)
def test_multiplicity_is_homogeneous(gens):
    I = ideal(R, *gens)
    e = multiplicity(I)
    for n in (2, 3):
        assert multiplicity(I.power(n)) == n**2 * e


LEMMA_SAMPLE = [
    ("x", "y", "z"),
    ("x^2", "y^2", "z"),
    ("x", "y^2", "z^3"),
    ("x^2", "x*y", "y^2", "z^2"),
    ("x*y", "x^2", "y^3", "z^2", "x*z"),
]


@pytest.mark.parametrize("gens", LEMMA_SAMPLE)
def test_cut_by_product_is_subadditive(gens):
    S = space()
    x, y = S.parse("x"), S.parse("y")

    def cut(*relations):
        ring = RingPresentation(S.field, S.variables, relations, 2)
        return multiplicity(IdealHandle(ring, [ring.parse(g) for g in gens]))

    assert cut(x * y) <= cut(x) + cut(y)


def test_rees_mixed_examples():
    assert rees_mixed(M, M) == 1
    assert rees_mixed(M.power(2), M) == 2 == ord(M.power(2))


def test_mixed_symmetry_and_agreement(closed_family_8):
    for Mi in closed_family_8[:30]:
        I = IdealHandle.from_monomial(R, Mi)
        assert mixed_multiplicity(I, M) == mixed_multiplicity(M, I) == rees_mixed(I, M)
    pairs = [("x^2", "y^3"), ("x^3", "x*y", "y^2")]
    I, J = ideal(R, *pairs[0]), ideal(R, *pairs[1])
    assert mixed_multiplicity(I, J) == mixed_multiplicity(J, I)


def test_fiber_multiplicities():
    assert fiber_multiplicity(M) == 1
    assert fiber_multiplicity(ideal(R, "x^2", "y^3")) == 1
    fit = fiber_growth(IdealHandle.maximal(E8))
    assert fit.values == (3, 5, 7, 9)
    assert fit.multiplicity == 2


def test_normal_fiber():
    assert normal_fiber_multiplicity(MonomialIdeal.maximal(2)) == 1
    # closures of (x^2, y^3)^n have 2n + 1 generators
    fit = normal_fiber_growth(mono((2, 0), (0, 3)))
    assert fit.values[:4] == (3, 5, 7, 9)
    assert fit.multiplicity == 2


def test_normal_multiplicity_is_e_for_monomials():
    for gens in ([(2, 0), (0, 3)], [(3, 0), (1, 1), (0, 3)], [(4, 0), (1, 2), (0, 5)]):
        I = mono(*gens)
        assert normal_multiplicity(I) == normalized_volume(I)


def test_h_vectors():
    assert h_vector(space()).a == (1,)
    hv = h_vector(E8)
    assert hv.a == (1, 1)
    assert h_vector_criterion_value(hv.a, 2) == 1
    for ring in (space(), R, E8, CYLINDER):
        hv = h_vector(ring)
        assert hv.a[0] == 1 and sum(hv.a) == ring_multiplicity(ring)


def test_criterion_arithmetic():
    assert h_vector_criterion_value((1,), 3) == 3
    assert h_vector_criterion_value((1, 1, 1, 1), 3) == 0
    assert h_vector_criterion_value((1, 2), 2) == Fraction(1)
