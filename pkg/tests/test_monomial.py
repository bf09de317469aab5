from fractions import Fraction
from itertools import product as iproduct

import pytest

from conftest import brute_closure, ideal, mono, plane
from idealaudit.monomial import (
    INFINITE,
    MonomialIdeal,
    colength,
    enumerate_integrally_closed,
    enumerate_staircases,
    integral_closure,
    is_integrally_closed,
    minimalize,
    newton_member,
    normalized_volume,
    power,
    product,
    staircase_heights,
)
from idealaudit.multiplicity import finite_differences, multiplicity

M2 = MonomialIdeal.maximal(2)


def test_minimalize_examples():
    assert minimalize([(2, 0), (2, 1), (0, 3)]).gens == mono((2, 0), (0, 3)).gens
    assert set(minimalize([(1, 0), (0, 1)]).gens) == {(1, 0), (0, 1)}
    assert set(minimalize([(3, 0), (1, 1), (0, 2), (2, 1)]).gens) == {(3, 0), (1, 1), (0, 2)}


@pytest.mark.parametrize(
    "gens, expected",
    [([(3, 0), (1, 1), (0, 2)], 4), ([(1, 0), (0, 1)], 1), ([(2, 0), (0, 3)], 6)],
)
def test_colength(gens, expected):
    assert colength(mono(*gens)) == expected


def test_colength_not_primary():
    assert colength(mono((1, 1))) == INFINITE


def test_products():
    assert product(M2, M2) == mono((2, 0), (1, 1), (0, 2))
    I = mono((2, 0), (0, 3))
    assert product(I, MonomialIdeal.unit(2)) == I
    assert product(I, M2) == mono((3, 0), (2, 1), (1, 3), (0, 4))


def test_product_by_lattice_membership():
    I, J = mono((2, 0), (0, 3)), M2
    IJ = product(I, J)
    for v in iproduct(range(6), range(6)):
        direct = any(
            all(a >= g + h for a, g, h in zip(v, gi, hj)) for gi in I.gens for hj in J.gens
        )
        assert IJ.contains(v) == direct


def test_newton_member_examples():
    cert = newton_member((1, 1), mono((2, 0), (0, 2)))
    assert cert is not None and cert.weights == (Fraction(1, 2), Fraction(1, 2))
    assert cert.slack == (0, 0)
    I = mono((2, 0), (0, 3))
    cert = newton_member((1, 2), I)
    assert cert is not None and cert.verify(I)
    assert newton_member((1, 0), I) is None


def test_non_member_by_power_criterion():
    # x^k is never in I^k for (x^2, y^3)
    I = mono((2, 0), (0, 3))
    for k in range(1, 13):
        assert not power(I, k).contains((k, 0))


@pytest.mark.parametrize(
    "gens, closure",
    [
        ([(3, 0), (0, 3)], [(3, 0), (2, 1), (1, 2), (0, 3)]),
        ([(1, 0), (0, 1)], [(1, 0), (0, 1)]),
        ([(2, 0), (0, 3)], [(2, 0), (1, 2), (0, 3)]),
    ],
)
def test_closure_examples(gens, closure):
    assert integral_closure(mono(*gens)) == mono(*closure)


def test_closure_matches_segment_oracle():
    for I in enumerate_staircases(12):
        assert integral_closure(I) == brute_closure(I)


def test_closure_idempotent_and_extensive():
    for I in enumerate_staircases(12):
        C = integral_closure(I)
        assert integral_closure(C) == C
        assert all(C.contains(g) for g in I.gens)


def test_closure_of_powers_contains_powers_of_closure(closed_family_12):
    for I in closed_family_12:
        C = integral_closure(I)
        for n in range(1, 5):
            big = integral_closure(power(I, n))
            assert all(big.contains(g) for g in power(C, n).gens)


def test_certificates_verify():
    for I in enumerate_staircases(8):
        a, b = I.pure_powers()
        for v in iproduct(range(a + 1), range(b + 1)):
            cert = newton_member(v, I)
            if cert is not None:
                assert cert.verify(I)


@pytest.mark.parametrize(
    "gens, vol",
    [([(2, 0), (0, 3)], 6), ([(1, 0), (0, 1)], 1), ([(3, 0), (1, 1), (0, 3)], 6)],
)
def test_normalized_volume(gens, vol):
    assert normalized_volume(mono(*gens)) == vol


def test_volume_of_three_point_hull_agrees_with_reduction():
    # (xy, x^3 + y^3) is a reduction; its colength counts 1, x, y, x^2, y^2, x^3
    R = plane()
    J = ideal(R, "x*y", "x^3+y^3")
    I = ideal(R, "x^3", "x*y", "y^3")
    assert J.length() == 6 == multiplicity(I) == normalized_volume(mono((3, 0), (1, 1), (0, 3)))


def test_normalized_volume_three_variables():
    assert normalized_volume(MonomialIdeal.maximal(3)) == 1
    assert normalized_volume(mono((2, 0, 0), (0, 3, 0), (0, 0, 5))) == 30
    assert normalized_volume(power(MonomialIdeal.maximal(3), 2)) == 8


def test_enumeration_small():
    assert list(enumerate_integrally_closed(2, 1)) == [M2]
    fam = list(enumerate_integrally_closed(2, 3))
    assert len(fam) == 6
    assert set(fam) == {
        M2,
        mono((2, 0), (0, 1)),
        mono((1, 0), (0, 2)),
        mono((1, 0), (0, 3)),
        mono((3, 0), (0, 1)),
        mono((2, 0), (1, 1), (0, 2)),
    }


def test_enumeration_is_complete_and_duplicate_free():
    fam = list(enumerate_staircases(8))
    assert len(fam) == len(set(fam))
    # brute force: every antichain-generated ideal inside the box has a staircase
    seen = {staircase_heights(I) for I in fam}
    # partitions of n for n <= 8
    assert len(seen) == sum([1, 2, 3, 5, 7, 11, 15, 22])


def test_enumeration_closed_filter_matches_oracle():
    fam = set(enumerate_integrally_closed(2, 10))
    for I in enumerate_staircases(10):
        assert (I in fam) == (brute_closure(I) == I)


def test_colength_of_powers_is_eventually_polynomial(closed_family_10):
    for I in closed_family_10:
        values = [0] + [colength(power(I, n)) for n in range(1, 13)]
        second = finite_differences(values)[2]
        assert len(set(second[-3:])) == 1
        assert second[-1] == normalized_volume(I)


def test_integrally_closed_predicate():
    assert not is_integrally_closed(mono((2, 0), (0, 3)))
    assert is_integrally_closed(mono((2, 0), (1, 1), (0, 2)))
