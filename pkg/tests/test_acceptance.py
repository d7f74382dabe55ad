"""Acceptance criteria 1-9. The terminal summary prints one PASS/FAIL line per criterion."""
import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from hilbert_sturm.bounds import PreconditionError, hecke_bound, sturm_bound
from hilbert_sturm.cuspres import resolve_all_cusps, resolve_cusp, scaled_resolution
from hilbert_sturm.fourier import CoeffMap, canonical_rep, certifying_reps, sturm_count, sturm_set
from hilbert_sturm.ideals import dual_basis, narrow_class_group
from hilbert_sturm.invariants import intersection_numbers, zeta_minus_one
from hilbert_sturm.qfield import QuadElem, ceil_quad, fundamental_unit, is_fundamental_discriminant
from hilbert_sturm.sturmcheck import CERTIFIED, FAILED, PRECONDITION, canonical_map, check_vanishing
from oracles import brute_sturm_orbits
from reference_data import COUNTS, WEIGHT2_SETS, elem

P40 = narrow_class_group(40).reps[1]
P44 = narrow_class_group(44).reps[1]


def q(D, a, b):
    return QuadElem.from_radical(F(a), F(b), D)


# 1 -----------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_c1_cusp_cycles():
    c = resolve_all_cusps(40)
    assert c[0].cycle == (8, 2, 2, 2, 2, 2)
    assert c[0].vertices[1:7] == tuple(q(40, a, -b) for a, b in [(1, 0), (4, 1), (7, 2), (10, 3), (13, 4), (16, 5)])
    assert c[1].cycle == (4, 3, 2, 3)
    assert c[1].vertices[1:5] == (q(40, 2, 0), q(40, 4, -1), q(40, 10, -3), q(40, 16, -5))
    assert resolve_all_cusps(29)[0].cycle == (7, 2, 2, 2, 2)
    assert resolve_all_cusps(44)[0].cycle == (8, 2, 2, 8, 2, 2)
    np_ = resolve_all_cusps(44, P44)[0]
    assert np_.cycle == (5, 2, 2, 2, 2, 2, 5, 2, 2, 2, 2, 2)
    first = [F(1, 11), (F(5, 22), F(-1, 22)), (F(4, 11), F(-1, 11)), (F(1, 2), F(-3, 22)),
             (F(7, 11), F(-2, 11)), (F(17, 22), F(-5, 22))]
    want = [QuadElem(first[0], 0, 44)] + [q(44, x, y) for x, y in first[1:]]
    assert tuple(v / 11 for v in np_.vertices[1:7]) == tuple(want)


# 2 -----------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_c2_zeta():
    assert (zeta_minus_one(40), zeta_minus_one(29), zeta_minus_one(44)) == (F(7, 6), F(1, 2), F(7, 6))


# 3 -----------------------------------------------------------------------------

FORMULAS = [
    ((40, None, 0), lambda k, s: F(7 * k - 2 * s, 3) - s),
    ((40, None, 1), lambda k, s: F(7 * k - 3 * s, 2) - s),
    ((29, None, 0), lambda k, s: F(6 * k, 5) - s),
    ((44, None, 0), lambda k, s: F(7 * k, 6) - s),
    ((44, P44, 0), lambda k, s: F(7 * k, 3) - s),
]


@pytest.mark.criterion(3)
@pytest.mark.parametrize("idx", range(len(FORMULAS)))
def test_c3_bound_formulas(idx):
    (D, a, i0), f = FORMULAS[idx]
    rng = random.Random(idx)
    for _ in range(20):
        k, s = rng.randint(1, 500), rng.randint(0, 100)
        assert hecke_bound(D, a, i0, 2 * k, s).threshold == f(k, s)


# 4 -----------------------------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("key,D,i0", [("D29", 29, 0), ("D40", 40, 0), ("D40b", 40, 1), ("D44", 44, 0)])
def test_c4_weight_two_sets(key, D, i0):
    S = sturm_set(D, None, (2, 2), 1, i0)
    want = {canonical_rep(elem(D, x, c), S.cusp.eta) for x, c in WEIGHT2_SETS[key]}
    assert len(S) == {"D29": 5, "D40": 6, "D40b": 12, "D44": 12}[key]
    assert S.elements() == want


# 5 -----------------------------------------------------------------------------

COUNT_ARGS = {"D40": (40, None, 0), "D40b": (40, None, 1), "D29": (29, None, 0),
              "D44": (44, None, 0), "D44b": (44, P44, 0)}
CELLS = [(key, w, n) for key, row in COUNTS.items() for w, n in row.items()]


@pytest.mark.criterion(5)
@pytest.mark.parametrize("key,weight,expected", CELLS, ids=[f"{k}-{w}" for k, w, _ in CELLS])
def test_c5_count_cells(key, weight, expected):
    D, a, i0 = COUNT_ARGS[key]
    assert sturm_count(D, a, weight, 1, i0) == expected


# 6 -----------------------------------------------------------------------------

APPENDIX = [(5, 0, 48, 10), (8, 0, F(14, 3), 8), (12, 1, 4, 3), (13, 0, F(40, 3), 5),
            (17, 0, 4, 9), (21, 0, F(40, 9), 5), (24, 0, 12, 3)]


@pytest.mark.criterion(6)
@pytest.mark.parametrize("D,cls,kc,sc", APPENDIX)
def test_c6_appendix_bounds(D, cls, kc, sc):
    a = narrow_class_group(D).reps[cls]
    for k, s in [(1, 0), (2, 1), (7, 3), (30, 11)]:
        assert hecke_bound(D, a, 0, k, s).threshold == kc * k - sc * s


# 7 -----------------------------------------------------------------------------

def _pair(e):
    return (e.x, e.y)


ORACLE_CUSPS = [(D, ci, i0) for D in (29, 40, 44) for ci in range(narrow_class_group(D).order)
                for i0 in range(len(resolve_all_cusps(D, narrow_class_group(D).reps[ci])))]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("D,ci,i0", ORACLE_CUSPS)
def test_c7_rectangle_oracle(D, ci, i0):
    c = resolve_all_cusps(D, narrow_class_group(D).reps[ci])[i0]
    e1, e2 = dual_basis((c.vertices[0], c.vertices[1]))
    rt = c.r_tilde
    window = [_pair(c.vertex(j)) for j in range(-3 * rt, 4 * rt)]
    det = e1.x * e2.y - e2.x * e1.y
    for T in (1, 2, 3, 4):
        orbits = brute_sturm_orbits(D, (_pair(e1), _pair(e2)), window, _pair(c.eta), T, box=400)
        reps = certifying_reps(c, T)
        assert len(reps) == len(orbits)
        hits = set()
        for r in reps:
            xi = r.xi
            co = (int((xi.x * e2.y - e2.x * xi.y) / det), int((e1.x * xi.y - xi.x * e1.y) / det))
            hits |= {i for i, o in enumerate(orbits) if co in o}
        assert len(hits) == len(orbits)


@pytest.mark.criterion(7)
def test_c7_ceil_interval():
    rng = random.Random(7)
    mpmath.iv.prec = 200
    for _ in range(1000):
        D = rng.choice([5, 8, 12, 13, 29, 40, 44, 61, 136, 229, 997])
        xi = QuadElem(F(rng.randint(-10**9, 10**9), rng.randint(1, 10**4)),
                      F(rng.randint(-10**9, 10**9), rng.randint(1, 10**4)), D)
        iv = mpmath.iv
        v = iv.mpf(xi.x.numerator) / xi.x.denominator + iv.mpf(xi.y.numerator) / xi.y.denominator * iv.sqrt(D)
        lo, hi = int(mpmath.ceil(v.a)), int(mpmath.ceil(v.b))
        assert lo == hi == ceil_quad(xi)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [3, 5, 7])
def test_c7_scaled_resolution(n):
    for D in (29, 40, 44):
        for M in narrow_class_group(D).reps:
            a, b = scaled_resolution(M, n, "direct"), scaled_resolution(M, n, "repeat")
            assert (a.cycle, a.vertices, a.eta) == (b.cycle, b.vertices, b.eta)


# 8 -----------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_c8_sigma_positive():
    for D in range(5, 500):
        if is_fundamental_discriminant(D):
            for M in narrow_class_group(D).reps:
                assert resolve_cusp(M).sigma >= 1


@pytest.mark.criterion(8)
def test_c8_adjunction_and_pairing():
    rng = random.Random(8)
    for D in (29, 40, 44, 60, 136):
        for a in narrow_class_group(D).reps:
            for n in (3, 4, 5, 7):
                try:
                    r = intersection_numbers(D, a, n)
                except ArithmeticError:
                    continue
                assert r.adjunction_holds()
                for _ in range(20):
                    k, s, m = rng.randint(1, 99), rng.randint(0, 20), rng.randint(0, 400)
                    i0 = rng.randrange(len(r.sigmas))
                    assert r.pairing_lhs(k, s, m, i0) == r.pairing_rhs(k, s, m, i0)


@pytest.mark.criterion(8)
def test_c8_homothety_and_unit_invariance():
    for D in (29, 40, 44, 136):
        u = fundamental_unit(D)
        for M in narrow_class_group(D).reps:
            base = resolve_cusp(M)
            rots = {base.cycle[i:] + base.cycle[:i] for i in range(len(base.cycle))}
            for lam in (QuadElem(5, 0, D), QuadElem(D + 3, 1, D), u.eps_plus):
                assert resolve_cusp(M * lam).cycle in rots
            c = resolve_all_cusps(D, M)[0]
            for r in certifying_reps(c, 3):
                assert canonical_rep(r.xi * c.eta ** 2, c.eta) == r.xi
                assert canonical_rep(r.xi / c.eta, c.eta) == r.xi


# 9 -----------------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_c9_checker_end_to_end():
    S = sturm_set(40, None, (4, 4), 1)
    rng = random.Random(9)
    entries = [(r.xi, F(7 * rng.randint(-20, 20))) for r in S.reps]
    A = canonical_map(entries, S)
    assert check_vanishing(A, S, 7).status == CERTIFIED
    for r in S.reps:
        B = CoeffMap(A.lattice, {**A.coeffs, r.xi: A.coeffs[r.xi] + 1})
        assert check_vanishing(B, S, 7).status == FAILED
    assert S.report.n == 3
    for p in (2, 3):
        assert check_vanishing(A, S, p).status == PRECONDITION
        with pytest.raises(PreconditionError):
            sturm_bound(40, None, 0, 4, 1, p)
