"""Surface invariants: zeta_K(-1), intersection numbers on the level-n
surface, classification flags and the choice of the auxiliary level n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .ideals import FracIdeal, factor_int, is_principal_genus, kronecker, narrow_class_group
from .qfield import QuadElem, check_discriminant, fundamental_unit

RATIONAL_D = (5, 8, 12, 13, 17, 21, 24, 28, 33, 60)

# (D, norms of the level ideal, genus annotation) -- stored verbatim
GENERAL_TYPE_EXCEPTIONS = (
    (5, (4, 5), "+"), (8, (2, 4), "+"),
    (12, (2, 3, 4, 6), "+,+"), (12, (2, 3), "-,-"),
    (13, (3,), "+"), (17, (2,), "+"),
    (21, (3,), "-,-"), (24, (2,), "-,-"),
    (24, (3,), "+,+"), (28, (2,), "+,+"),
    (28, (3,), "-,-"), (33, (2,), "-,-"),
)


@dataclass(frozen=True)
class AppendixBEntry:
    D: int
    principal_genus: bool
    level: str            # description of the level ideal
    cusps: int
    cycle: tuple[int, ...]
    k_coeff: Fraction     # bound: a > k_coeff * k - s_coeff * s
    s_coeff: Fraction


# k is the parallel weight as tabulated
APPENDIX_B = {
    (5, True): AppendixBEntry(5, True, "(3)", 10, (3, 3, 3, 3), Fraction(48), Fraction(10)),
    (8, True): AppendixBEntry(8, True, "p7, a prime of norm 7", 8, (4, 2, 4, 2, 4, 2),
                              Fraction(14, 3), Fraction(8)),
    (12, False): AppendixBEntry(12, False, "(2)", 3, (2, 3), Fraction(4), Fraction(3)),
    (13, True): AppendixBEntry(13, True, "(2)", 5, (2, 2, 3, 2, 2, 3, 2, 2, 3),
                               Fraction(40, 3), Fraction(5)),
    (17, True): AppendixBEntry(17, True, "(2)", 9, (2, 2, 3, 3, 3), Fraction(4), Fraction(9)),
    (21, True): AppendixBEntry(21, True, "(2)", 5, (5, 5, 5, 5, 5, 5), Fraction(40, 9), Fraction(5)),
    (24, True): AppendixBEntry(24, True, "p2, the prime of norm 2", 3, (2, 2, 2, 3, 2, 2, 2, 3),
                               Fraction(12), Fraction(3)),
}


class UnsupportedSurface(ValueError):
    """Rational surface with no stored minimal model."""


def sigma1(n: int) -> int:
    return sum(d + n // d for d in range(1, math.isqrt(n) + 1) if n % d == 0) - (
        math.isqrt(n) if math.isqrt(n) ** 2 == n else 0)


@lru_cache(maxsize=None)
def zeta_minus_one(D: int) -> Fraction:
    """zeta_K(-1) = (1/60) sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2)/4)."""
    check_discriminant(D)
    total = 0
    b = -math.isqrt(D)
    while b * b < D or b < 0:
        if b * b < D and (b - D) % 2 == 0:
            total += sigma1((D - b * b) // 4)
        b += 1
    return Fraction(total, 60)


def _is_one_mod(u: QuadElem, n: int) -> bool:
    return ((u - 1) / n).is_integral()


@lru_cache(maxsize=None)
def unit_index(D: int, n: int) -> int:
    """[U^2 : V] with V the squares of the units congruent to 1 mod n.

    Equal to the least m >= 1 with eps0^m = +-1 mod n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    eps0 = fundamental_unit(D).eps0
    u = eps0
    for m in range(1, 10 * n ** 4 + 10):
        if _is_one_mod(u, n) or _is_one_mod(-u, n):
            return m
        u = u * eps0
    raise ArithmeticError("unit order search failed")


def sl2_order(D: int, c: FracIdeal | int) -> int:
    """|SL2(O_K/c)| = N(c)^3 prod_{P | c} (1 - N(P)^-2)."""
    if isinstance(c, int):
        c = FracIdeal.unit(D) * c
    if not c.is_integral():
        raise ValueError("level ideal must be integral")
    N = int(c.norm())
    out = Fraction(N) ** 3
    from .ideals import prime_ideals_above

    for p in factor_int(N):
        for P, q in prime_ideals_above(D, p):
            if c <= P:
                out *= 1 - Fraction(1, q * q)
    assert out.denominator == 1
    return int(out)


def degree(D: int, n: int) -> int:
    """Degree d of the covering from level (n) to level one (PSL convention)."""
    if n < 3:
        raise ValueError("the level-n covering is only used for n >= 3")
    return sl2_order(D, n) // 2


def cusp_multiplicity(D: int, n: int) -> int:
    """c' = d/(n^2 [U^2 : V]): cusps of level n over each level-one cusp."""
    d = degree(D, n)
    q, r = divmod(d, n * n * unit_index(D, n))
    if r:
        raise ArithmeticError(f"non-integral cusp multiplicity for D={D}, n={n}")
    return q


@dataclass(frozen=True)
class IntersectionReport:
    D: int
    n: int
    d: int
    unit_index: int
    c_prime: int
    zeta: Fraction
    sigmas: tuple[int, ...]
    K_S: tuple[Fraction, ...]       # K . S'_i
    S_S: tuple[Fraction, ...]       # S'_i . S'_i
    K_K: Fraction

    @property
    def total_sigma(self) -> int:
        return sum(self.sigmas)

    def adjunction_holds(self) -> bool:
        return all(ks + ss == 0 for ks, ss in zip(self.K_S, self.S_S))

    def pairing_lhs(self, k, s, a, i0: int = 0) -> Fraction:
        """K.(k(K + S') - s n S' - a n S'_{i0})."""
        KS = sum(self.K_S)
        return k * (self.K_K + KS) - s * self.n * KS - a * self.n * self.K_S[i0]

    def pairing_rhs(self, k, s, a, i0: int = 0) -> Fraction:
        n, z = self.n, self.zeta
        return self.d * (4 * k * z + Fraction(s, n) * -self.total_sigma
                         + Fraction(a, n) * -self.sigmas[i0])


def intersection_numbers(D: int, a: FracIdeal | None, n: int, sigmas=None) -> IntersectionReport:
    """Intersection numbers on the level-(n) surface from level-one cycle data."""
    if sigmas is None:
        from .cuspres import resolve_all_cusps

        sigmas = resolve_all_cusps(D, a).sigmas()
    sigmas = tuple(sigmas)
    d = degree(D, n)
    idx = unit_index(D, n)
    cp = cusp_multiplicity(D, n)
    z = zeta_minus_one(D)
    ks = tuple(Fraction(d, n * n) * s for s in sigmas)
    kk = 4 * d * z - Fraction(d, n * n) * sum(sigmas)
    return IntersectionReport(D, n, d, idx, cp, z, sigmas, ks, tuple(-x for x in ks), kk)


# classification ---------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _pell_minus_eight(D: int) -> bool:
    bound = 8 * math.isqrt(D) + 8
    for m in range(7, bound + 1, 8):
        q, r = divmod(m * m - 8, D)
        if r == 0 and q > 0 and math.isqrt(q) ** 2 == q:
            return True
    return False


@dataclass(frozen=True)
class SurfaceClass:
    D: int
    a_class: int
    principal_genus: bool
    is_rational: bool
    genus_of_o_or_sqrt: bool
    conjecture_known: bool
    reasons: tuple[str, ...] = field(default_factory=tuple)


def classify(D: int, a: FracIdeal | None = None) -> SurfaceClass:
    check_discriminant(D)
    G = narrow_class_group(D)
    if a is None:
        a = FracIdeal.unit(D)
    ci = G.class_index(a)
    pg = is_principal_genus(a)
    rational = (D in RATIONAL_D and pg) or (D == 12 and not pg)
    # genus of a equals genus of O_K or of (sqrt D): a or a*(sqrt D) is a square
    sq = G.squares()
    genus_ok = ci in sq or G.table[ci][G.sqrt_class] in sq
    reasons = []
    known = False
    if genus_ok:
        if D % 8 != 1:
            known = True
            reasons.append("D != 1 mod 8")
        else:
            if any(x % 8 != 1 for x in _divisors(D)):
                known = True
                reasons.append("D = 1 mod 8 with a divisor != 1 mod 8")
            if _pell_minus_eight(D):
                known = True
                reasons.append("D = (m^2 - 8)/n^2 with m = 7 mod 8")
    return SurfaceClass(D, ci, pg, rational, genus_ok, known, tuple(reasons))


def general_type_exception(D: int, norm: int) -> bool:
    """Conservative lookup: any row of the exception table with this D and norm."""
    return any(D == row[0] and norm in row[1] for row in GENERAL_TYPE_EXCEPTIONS)


@dataclass(frozen=True)
class LevelChoice:
    n: int
    route: str          # "AppendixB" | "Conjecture" | "Cconstant"
    detail: str


def select_n(D: int, a: FracIdeal | None = None, total_sigma: int | None = None) -> LevelChoice:
    sc = classify(D, a)
    if sc.is_rational:
        key = (D, sc.principal_genus)
        if key not in APPENDIX_B:
            raise UnsupportedSurface(f"rational surface for D={D} without a stored minimal model")
        e = APPENDIX_B[key]
        return LevelChoice(0, "AppendixB", f"level {e.level}")
    if sc.conjecture_known:
        n, route, detail = 3, "Conjecture", "; ".join(sc.reasons)
    else:
        if total_sigma is None:
            from .cuspres import resolve_all_cusps

            total_sigma = resolve_all_cusps(D, a).total_sigma
        C = 3 * total_sigma
        n = max(3, math.isqrt(C - 1) + 1 if C > 0 else 0)
        route, detail = "Cconstant", f"n^2 >= C = {C}"
    while general_type_exception(D, n * n):
        n += 1
    return LevelChoice(n, route, detail)


def appendix_b_data(D: int, principal_genus: bool = True) -> AppendixBEntry:
    try:
        return APPENDIX_B[(D, principal_genus)]
    except KeyError:
        raise UnsupportedSurface(f"no stored data for D={D}") from None
