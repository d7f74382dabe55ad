"""Indefinite binary quadratic forms and the lattice <-> form dictionary.

A form (a, b, c) is *reduced* when 0 < (b - sqrt D)/2a < 1 < (b + sqrt D)/2a.
Such forms are grouped into cycles by the step attached to the recursion
w -> 1/(ceil(w) - w); the cycles are in bijection with the narrow class group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qfield import QuadElem, _sign_quad, ceil_quad, check_discriminant

Matrix = tuple[int, int, int, int]  # (p, q, r, s) for [[p, q], [r, s]]
IDENTITY: Matrix = (1, 0, 0, 1)


def matmul(g: Matrix, h: Matrix) -> Matrix:
    return (g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3],
            g[2] * h[0] + g[3] * h[2], g[2] * h[1] + g[3] * h[3])


@dataclass(frozen=True, order=True)
class BQF:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g: Matrix) -> BQF:
        """The form (x, y) -> Q(p x + q y, r x + s y)."""
        p, q, r, s = g
        a, b, c = self.a, self.b, self.c
        return BQF(a * p * p + b * p * r + c * r * r,
                   2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
                   a * q * q + b * q * s + c * s * s)

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def root(self) -> QuadElem:
        """w = (b + sqrt D)/(2a)."""
        return QuadElem(Fraction(self.b, 2 * self.a), Fraction(1, 2 * self.a), self.disc)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def is_reduced(Q: BQF) -> bool:
    D = Q.disc
    if Q.a <= 0:
        return False
    two_a = Fraction(2 * Q.a)
    b = Fraction(Q.b)
    # 0 < b - sqrt D < 2a < b + sqrt D
    return (_sign_quad(b, Fraction(-1), D) > 0
            and _sign_quad(b - two_a, Fraction(-1), D) < 0
            and _sign_quad(b - two_a, Fraction(1), D) > 0)


def _is_cohen_reduced(Q: BQF) -> bool:
    # |sqrt D - 2|a|| < b < sqrt D
    D, b, a2 = Q.disc, Q.b, 2 * abs(Q.a)
    if b <= 0 or b * b >= D:
        return False
    if (a2 + b) ** 2 <= D:
        return False
    return a2 - b < 0 or (a2 - b) ** 2 < D


def _rho(Q: BQF) -> tuple[BQF, Matrix]:
    D, c = Q.disc, Q.c
    ac = abs(c)
    if ac * ac > D:
        r = (-Q.b) % (2 * ac)
        if r > ac:
            r -= 2 * ac
    else:
        top = math.isqrt(D)
        r = top - ((top + Q.b) % (2 * ac))
    t = (r + Q.b) // (2 * c)
    g = (0, -1, 1, t)
    return Q.act(g), g


def zagier_step(Q: BQF) -> tuple[BQF, Matrix, int]:
    """Next reduced form in the cycle, the matrix, and b_k = ceil(w)."""
    n = ceil_quad(Q.root())
    g = (n, 1, -1, 0)
    return Q.act(g), g, n


def _check_form(Q: BQF) -> int:
    D = Q.disc
    if D <= 0 or math.isqrt(D) ** 2 == D:
        raise ValueError(f"form {Q} is not indefinite with non-square discriminant")
    if not Q.is_primitive():
        raise ValueError(f"form {Q} is not primitive")
    return D


def reduce_form(Q: BQF, max_steps: int = 100000) -> tuple[BQF, Matrix]:
    """Return (R, g) with R = Q.act(g) reduced and g in SL2(Z)."""
    _check_form(Q)
    if is_reduced(Q):
        return Q, IDENTITY
    g: Matrix = IDENTITY
    cur = Q
    for _ in range(max_steps):
        if _is_cohen_reduced(cur):
            break
        cur, h = _rho(cur)
        g = matmul(g, h)
    else:
        raise ArithmeticError(f"reduction of {Q} did not terminate")
    # signs of a alternate along the rho-cycle; move to a > 0
    for _ in range(max_steps):
        if cur.a > 0:
            break
        cur, h = _rho(cur)
        g = matmul(g, h)
    else:
        raise ArithmeticError(f"no positive leading coefficient in the cycle of {Q}")
    shift = (1, 1, 0, 1)
    cur, g = cur.act(shift), matmul(g, shift)
    assert is_reduced(cur), (Q, cur)
    assert Q.act(g) == cur
    return cur, g


def cycle_of(Q: BQF, max_len: int = 100000) -> list[BQF]:
    """The cycle of reduced forms through the reduced form Q, in step order."""
    if not is_reduced(Q):
        raise ValueError(f"{Q} is not reduced")
    out = [Q]
    cur = zagier_step(Q)[0]
    while cur != Q:
        out.append(cur)
        if len(out) > max_len:
            raise ArithmeticError("cycle too long")
        cur = zagier_step(cur)[0]
    return out


def canonical_reduced(Q: BQF) -> tuple[BQF, Matrix]:
    """Smallest (a, b) in the cycle of Q, with the transform from Q."""
    R, g = reduce_form(Q)
    best, best_g = R, g
    cur, cg = R, g
    for _ in range(len(cycle_of(R)) - 1):
        cur, h, _ = zagier_step(cur)
        cg = matmul(cg, h)
        if (cur.a, cur.b) < (best.a, best.b):
            best, best_g = cur, cg
    return best, best_g


@lru_cache(maxsize=None)
def all_reduced_forms(D: int) -> tuple[BQF, ...]:
    check_discriminant(D)
    out = []
    # b = a + c + t with t >= 1 and (a - c)^2 + 2t(a + c) + t^2 = D
    t = 1
    while t * t < D:
        rest = D - t * t
        for s in range(2, rest // (2 * t) + 1):
            e = math.isqrt(rest - 2 * t * s)
            if e * e != rest - 2 * t * s or (s + e) % 2:
                continue
            for a in {(s + e) // 2, (s - e) // 2}:
                c = s - a
                if a > 0 and c > 0:
                    Q = BQF(a, a + c + t, c)
                    if Q.is_primitive():
                        out.append(Q)
        t += 1
    out = sorted(set(out))
    assert all(is_reduced(Q) and Q.disc == D for Q in out)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_reduced_forms(D: int) -> tuple[tuple[BQF, ...], ...]:
    """All reduced primitive forms grouped into cycles.

    Each cycle starts at its lexicographically smallest (a, b); cycles are
    sorted by that representative, so the principal cycle comes first.
    """
    remaining = set(all_reduced_forms(D))
    cycles = []
    while remaining:
        start = min(remaining, key=lambda q: (q.a, q.b))
        cyc = cycle_of(start)
        remaining.difference_update(cyc)
        cycles.append(tuple(cyc))
    cycles.sort(key=lambda cyc: (cyc[0].a, cyc[0].b))
    return tuple(cycles)


def form_from_basis(alpha: QuadElem, beta: QuadElem, norm: Fraction) -> BQF:
    """Form attached to the oriented basis (alpha, beta) of a lattice of norm N.

    Q(x, y) = N(beta x + alpha y)/N, so that the lattice with oriented basis
    (w0, 1) gives back the reduced form whose root is w0.
    """
    D = alpha.D
    if (alpha.y * beta.x - alpha.x * beta.y) <= 0:
        raise ValueError("basis is degenerate or not oriented")
    a = beta.norm() / norm
    b = (beta * alpha.conjugate()).trace() / norm
    c = alpha.norm() / norm
    if any(v.denominator != 1 for v in (a, b, c)):
        raise ValueError("lattice is not an invertible ideal of the maximal order")
    Q = BQF(int(a), int(b), int(c))
    if Q.disc != D or not Q.is_primitive():
        raise ValueError(f"unexpected form {Q} for discriminant {D}")
    return Q


def form_of_lattice(M) -> BQF:
    alpha, beta = M.basis
    return form_from_basis(alpha, beta, M.norm())
