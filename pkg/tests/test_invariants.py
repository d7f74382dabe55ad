import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hilbert_sturm.ideals import FracIdeal, narrow_class_group
from hilbert_sturm.invariants import (APPENDIX_B, UnsupportedSurface, classify, cusp_multiplicity, degree,
                                      general_type_exception, intersection_numbers, select_n, sl2_order,
                                      unit_index, zeta_minus_one)
from hilbert_sturm.qfield import QuadElem, fundamental_unit, is_fundamental_discriminant
from oracles import residue_field, sl2_count

FUND = [D for D in range(5, 200) if is_fundamental_discriminant(D)]


def test_zeta_values():
    assert zeta_minus_one(5) == F(1, 30)
    assert zeta_minus_one(8) == F(1, 12)
    assert zeta_minus_one(12) == F(1, 6)
    assert zeta_minus_one(29) == F(1, 2)
    assert zeta_minus_one(40) == F(7, 6)
    assert zeta_minus_one(44) == F(7, 6)


@pytest.mark.parametrize("D", FUND)
def test_zeta_denominator(D):
    z = zeta_minus_one(D)
    assert z > 0 and 60 % z.denominator == 0


def _brute_unit_index(D, n):
    eps0 = fundamental_unit(D).eps0
    u = eps0
    for m in range(1, 10**4):
        for v in (u - 1, u + 1):
            # coordinates in the basis 1, (t + sqrt D)/2 with t = D mod 4
            c1, c2 = v.x - v.y * (D % 4), 2 * v.y
            if c1 % n == 0 and c2 % n == 0:
                return m
        u = u * eps0


def test_unit_index_examples():
    assert unit_index(40, 3) == 2
    assert unit_index(29, 3) == 4
    assert unit_index(44, 3) == 1
    for D in (29, 40, 44, 60):
        for n in (3, 4, 5, 7):
            assert unit_index(D, n) == _brute_unit_index(D, n)


@pytest.mark.parametrize("D,n", [(D, n) for D in (5, 29, 40, 44) for n in (2, 3, 4)])
def test_sl2_order_brute(D, n):
    assert sl2_order(D, n) == sl2_count(*residue_field(D, n))


@pytest.mark.slow
@pytest.mark.parametrize("D,n", [(5, 5), (40, 5), (29, 5)])
def test_sl2_order_brute_larger(D, n):
    assert sl2_order(D, n) == sl2_count(*residue_field(D, n))


def test_sl2_order_fields():
    assert sl2_order(5, 2) == 60     # SL2(F4)
    # residue fields of size q <= 9: |SL2(F_q)| = q^3 - q
    for D, p in [(5, 3), (8, 3), (13, 2), (40, 7), (29, 2)]:
        P = FracIdeal.unit(D) * p
        q = int(P.norm())
        if q == p * p:   # p inert
            assert sl2_order(D, p) == q ** 3 - q
    for D, p in [(29, 5), (40, 3), (44, 5), (8, 7)]:
        from hilbert_sturm.ideals import prime_ideals_above
        for P, q in prime_ideals_above(D, p):
            assert sl2_order(D, P) == q ** 3 - q
            if q <= 9:
                assert sl2_order(D, P) == sl2_count(*residue_field(D, q, root=True))


def test_degree_and_multiplicity():
    assert (degree(40, 3), cusp_multiplicity(40, 3)) == (288, 16)
    assert (degree(29, 3), cusp_multiplicity(29, 3)) == (360, 10)
    assert (degree(44, 3), cusp_multiplicity(44, 3)) == (360, 40)
    with pytest.raises(ValueError):
        degree(40, 2)


def _reports():
    out = []
    for D in (29, 40, 44, 60, 136, 229):
        for a in narrow_class_group(D).reps:
            for n in (3, 4, 5, 6, 7):
                try:
                    out.append(intersection_numbers(D, a, n))
                except ArithmeticError:
                    pass
    return out


def test_adjunction_everywhere():
    reps = _reports()
    assert len(reps) > 40
    assert all(r.adjunction_holds() for r in reps)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(29, 3), (40, 3), (44, 3), (40, 6), (60, 5)]),
       st.integers(1, 300), st.integers(0, 50), st.integers(0, 500), st.integers(0, 1))
def test_pairing_identity(Dn, k, s, a, i0):
    D, n = Dn
    r = intersection_numbers(D, None, n)
    i0 = min(i0, len(r.sigmas) - 1)
    assert r.pairing_lhs(k, s, a, i0) == r.pairing_rhs(k, s, a, i0)


def test_classification():
    assert classify(5).is_rational
    assert classify(12).is_rational
    p = narrow_class_group(12).reps[1]
    assert classify(12, p).is_rational and not classify(12, p).principal_genus
    assert not classify(29).is_rational and classify(29).conjecture_known
    assert select_n(40).n == 3 and select_n(40).route == "Conjecture"
    assert select_n(5).route == "AppendixB"
    with pytest.raises(UnsupportedSurface):
        select_n(28)


def test_select_n_at_least_three():
    for D in FUND:
        for a in narrow_class_group(D).reps:
            try:
                ch = select_n(D, a)
            except UnsupportedSurface:
                continue
            if ch.route != "AppendixB":
                assert ch.n >= 3 and not general_type_exception(D, ch.n ** 2)


def test_appendix_b_table():
    assert {k: (v.k_coeff, v.s_coeff) for k, v in APPENDIX_B.items()} == {
        (5, True): (48, 10), (8, True): (F(14, 3), 8), (12, False): (4, 3), (13, True): (F(40, 3), 5),
        (17, True): (4, 9), (21, True): (F(40, 9), 5), (24, True): (12, 3),
    }
