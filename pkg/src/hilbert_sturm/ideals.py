"""Fractional ideals of the maximal order as oriented rank-2 lattices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .qfield import QuadElem, check_discriminant
from .qforms import BQF, canonical_reduced, enumerate_reduced_forms, form_of_lattice


def omega(D: int) -> QuadElem:
    """Generator of the maximal order: O_K = Z + Z*omega."""
    return QuadElem(Fraction(D % 4, 2), Fraction(1, 2), D)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _hnf(rows: list[list[int]]) -> tuple[int, int, int]:
    """HNF {(A, 0), (B, C)} of the Z-span of integer rows (x, y)."""
    rows = [r[:] for r in rows if r[0] or r[1]]
    pivot = None
    while True:
        nz = [r for r in rows if r[1]]
        if len(nz) <= 1:
            pivot = nz[0] if nz else None
            break
        nz.sort(key=lambda r: abs(r[1]))
        p = nz[0]
        for r in nz[1:]:
            q = r[1] // p[1]
            r[0] -= q * p[0]
            r[1] -= q * p[1]
    if pivot is None:
        raise ValueError("generators span a lattice of rank < 2")
    A = reduce(math.gcd, (abs(r[0]) for r in rows if r is not pivot and r[1] == 0), 0)
    if A == 0:
        raise ValueError("generators span a lattice of rank < 2")
    B, C = pivot
    if C < 0:
        B, C = -B, -C
    return A, B % A, C


class FracIdeal:
    """Lattice (1/d)(Z*A + Z*(B + C sqrt D)) in normal form.

    `basis` is the oriented pair (alpha, beta) with alpha = (B + C sqrt D)/d and
    beta = A/d, so that det((alpha, beta), (alpha', beta')) > 0.
    """

    __slots__ = ("D", "d", "A", "B", "C")

    def __init__(self, D: int, d: int, A: int, B: int, C: int):
        g = math.gcd(math.gcd(d, A), math.gcd(B, C))
        self.D, self.d, self.A, self.B, self.C = D, d // g, A // g, B // g, C // g

    @classmethod
    def from_lattice_gens(cls, gens: Iterable[QuadElem], D: int) -> FracIdeal:
        gens = list(gens)
        d = 1
        for g in gens:
            d = _lcm(d, _lcm(g.x.denominator, g.y.denominator))
        rows = [[int(g.x * d), int(g.y * d)] for g in gens]
        A, B, C = _hnf(rows)
        M = cls(D, d, A, B, C)
        return M

    @classmethod
    def from_generators(cls, gens: Iterable, D: int) -> FracIdeal:
        """The O_K-module generated by gens (elements, ints or Fractions)."""
        w = omega(D)
        els = [g if isinstance(g, QuadElem) else QuadElem(g, 0, D) for g in gens]
        M = cls.from_lattice_gens(els + [g * w for g in els], D)
        return M

    @classmethod
    def principal(cls, xi, D: int | None = None) -> FracIdeal:
        if not isinstance(xi, QuadElem):
            xi = QuadElem(xi, 0, D)
        if not xi:
            raise ValueError("zero ideal")
        return cls.from_generators([xi], xi.D)

    @classmethod
    def unit(cls, D: int) -> FracIdeal:
        return cls.from_lattice_gens([QuadElem(1, 0, D), omega(D)], D)

    @classmethod
    def from_form(cls, Q: BQF) -> FracIdeal:
        """The integral ideal Z a + Z (b + sqrt D)/2 = a (Z w0 + Z)."""
        D = Q.disc
        return cls.from_lattice_gens([Q.root() * Q.a, QuadElem(Q.a, 0, D)], D)

    # lattice data
    @property
    def basis(self) -> tuple[QuadElem, QuadElem]:
        D, d = self.D, self.d
        return (QuadElem(Fraction(self.B, d), Fraction(self.C, d), D),
                QuadElem(Fraction(self.A, d), 0, D))

    def key(self) -> tuple[int, int, int, int, int]:
        return (self.D, self.d, self.A, self.B, self.C)

    def __eq__(self, other):
        return isinstance(other, FracIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        a, b = self.basis
        return f"FracIdeal(D={self.D}: <{b}, {a}>)"

    def norm(self) -> Fraction:
        # covolume relative to O_K, whose coordinate determinant is 1/2
        return Fraction(2 * self.A * self.C, self.d * self.d)

    def coords(self, xi: QuadElem) -> tuple[Fraction, Fraction]:
        """Coordinates of xi in the basis (alpha, beta)."""
        u = xi.y * self.d / self.C
        v = (xi.x * self.d - u * self.B) / self.A
        return u, v

    def __contains__(self, xi) -> bool:
        if not isinstance(xi, QuadElem):
            xi = QuadElem(xi, 0, self.D)
        u, v = self.coords(xi)
        return u.denominator == 1 and v.denominator == 1

    def __le__(self, other: FracIdeal) -> bool:
        return all(b in other for b in self.basis)

    def is_integral(self) -> bool:
        return self <= FracIdeal.unit(self.D)

    def is_module(self) -> bool:
        w = omega(self.D)
        return all(b * w in self for b in self.basis)

    # arithmetic
    def __mul__(self, other):
        if isinstance(other, FracIdeal):
            gens = [a * b for a in self.basis for b in other.basis]
            return FracIdeal.from_lattice_gens(gens, self.D)
        if isinstance(other, (int, Fraction)):
            other = QuadElem(other, 0, self.D)
        if isinstance(other, QuadElem):
            if not other:
                raise ValueError("scaling by zero")
            return FracIdeal.from_lattice_gens([b * other for b in self.basis], self.D)
        return NotImplemented

    __rmul__ = __mul__

    def dual(self) -> FracIdeal:
        return FracIdeal.from_lattice_gens(dual_basis(self.basis), self.D)

    def inverse(self) -> FracIdeal:
        # M^-1 = sqrt(D) * M^dual since the different is (sqrt D)
        return self.dual() * QuadElem(0, 1, self.D)

    def __pow__(self, e: int) -> FracIdeal:
        if e < 0:
            return self.inverse() ** (-e)
        out = FracIdeal.unit(self.D)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other: FracIdeal) -> FracIdeal:
        return self * other.inverse()


def dual_basis(basis: Sequence[QuadElem]) -> tuple[QuadElem, QuadElem]:
    """(f1, f2) with Tr(e_i f_j) = delta_ij."""
    e1, e2 = basis
    g11, g12, g22 = (e1 * e1).trace(), (e1 * e2).trace(), (e2 * e2).trace()
    det = g11 * g22 - g12 * g12
    if det == 0:
        raise ValueError("degenerate basis")
    f1 = (e1 * g22 - e2 * g12) / det
    f2 = (e2 * g11 - e1 * g12) / det
    return f1, f2


def dual_lattice(M: FracIdeal) -> FracIdeal:
    return M.dual()


@dataclass(frozen=True)
class NarrowClassGroup:
    D: int
    forms: tuple[BQF, ...]      # canonical reduced form per class
    reps: tuple[FracIdeal, ...]  # integral ideal a (Z w0 + Z) for each form
    table: tuple[tuple[int, ...], ...]
    sqrt_class: int              # class of the principal ideal (sqrt D)

    @property
    def order(self) -> int:
        return len(self.reps)

    def class_index(self, M: FracIdeal) -> int:
        return _class_lookup(self.D)[canonical_reduced(form_of_lattice(M))[0]]

    def squares(self) -> frozenset[int]:
        return frozenset(self.table[i][i] for i in range(self.order))

    def wide_class(self, i: int) -> frozenset[int]:
        return frozenset((i, self.table[i][self.sqrt_class]))

    def wide_reps(self) -> tuple[int, ...]:
        """Smallest narrow index of every wide class, in increasing order."""
        seen, out = set(), []
        for i in range(self.order):
            if i not in seen:
                w = self.wide_class(i)
                seen |= w
                out.append(min(w))
        return tuple(out)

    @property
    def wide_order(self) -> int:
        return len(self.wide_reps())


@lru_cache(maxsize=None)
def _class_lookup(D: int) -> dict[BQF, int]:
    return {cyc[0]: i for i, cyc in enumerate(enumerate_reduced_forms(D))}


@lru_cache(maxsize=None)
def narrow_class_group(D: int) -> NarrowClassGroup:
    check_discriminant(D)
    cycles = enumerate_reduced_forms(D)
    forms = tuple(cyc[0] for cyc in cycles)
    reps = tuple(FracIdeal.from_form(Q) for Q in forms)
    look = _class_lookup(D)

    def idx(M):
        return look[canonical_reduced(form_of_lattice(M))[0]]

    assert idx(reps[0]) == 0 and reps[0] == FracIdeal.unit(D)
    table = tuple(tuple(idx(reps[i] * reps[j]) for j in range(len(reps)))
                  for i in range(len(reps)))
    sqrt_class = idx(FracIdeal.principal(QuadElem(0, 1, D)))
    return NarrowClassGroup(D, forms, reps, table, sqrt_class)


def class_index(M: FracIdeal) -> int:
    return narrow_class_group(M.D).class_index(M)


def is_principal_genus(M: FracIdeal) -> bool:
    G = narrow_class_group(M.D)
    return G.class_index(M) in G.squares()


def isotropy_lattice(a: FracIdeal, b: FracIdeal, c: FracIdeal | int = 1) -> FracIdeal:
    """The lattice a^-1 b^-2 c."""
    if not isinstance(c, FracIdeal):
        c = FracIdeal.unit(a.D) * c
    if not c.is_integral():
        raise ValueError("level ideal must be integral")
    return a.inverse() * b.inverse() * b.inverse() * c


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a prime p."""
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def prime_ideals_above(D: int, p: int) -> list[tuple[FracIdeal, int]]:
    """Primes above the rational prime p, each with its absolute norm."""
    s = kronecker(D, p)
    one = FracIdeal.unit(D)
    if s == -1:
        return [(one * p, p * p)]
    w = omega(D)
    # roots of the minimal polynomial of omega mod p give the split/ramified primes
    t, n = int(w.trace()), int(w.norm())
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    out = [(FracIdeal.from_generators([QuadElem(p, 0, D), w - r], D), p) for r in roots]
    return out[:1] if s == 0 else out


def factor_int(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out
