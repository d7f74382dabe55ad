"""Exact arithmetic in a real quadratic field Q(sqrt(D)).

Elements are stored as x + y*sqrt(D) with rational x, y, where D is the
field discriminant.  For D = 4m the element a + b*sqrt(m) is therefore stored
with y = b/2.  Every comparison is reduced to integer sign tests; floats are
only used for display and for first guesses that are corrected exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]

DEFAULT_UNIT_CAP = 10**7


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (m, f) with n = f*f*m and m squarefree."""
    m, f, p = n, 1, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            f *= p
        p += 1
    return m, f


def is_fundamental_discriminant(D: int) -> bool:
    if D <= 1:
        return False
    if D % 4 == 1:
        return squarefree_part(D)[1] == 1
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_part(m)[1] == 1
    return False


def check_discriminant(D: int) -> int:
    if not isinstance(D, int) or not is_fundamental_discriminant(D):
        raise ValueError(f"{D!r} is not a positive fundamental discriminant")
    return D


def _sign_quad(a: Fraction, b: Fraction, D: int) -> int:
    # sign of a + b*sqrt(D)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with D*b^2
    lhs, rhs = a * a, D * b * b
    if lhs == rhs:
        return 0  # impossible for non-square D, kept for safety
    return sa if lhs > rhs else sb


class QuadElem:
    """Immutable element x + y*sqrt(D)."""

    __slots__ = ("x", "y", "D", "_hash")

    def __init__(self, x: Rational, y: Rational, D: int):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    def __reduce__(self):
        return (QuadElem, (self.x, self.y, self.D))

    # construction helpers
    @classmethod
    def from_radical(cls, a: Rational, b: Rational, D: int) -> QuadElem:
        """a + b*sqrt(m) where m is the squarefree kernel of D."""
        _, f = squarefree_part(D)
        return cls(a, Fraction(b) / f, D)

    def _coerce(self, other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.D)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.x + o.x, self.y + o.y, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.x - o.x, self.y - o.y, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.x * o.x + self.D * self.y * o.y,
                        self.x * o.y + self.y * o.x, self.D)

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.x / n, -self.y / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadElem(1, 0, self.D), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # field structure
    def conjugate(self) -> QuadElem:
        return QuadElem(self.x, -self.y, self.D)

    def trace(self) -> Fraction:
        return 2 * self.x

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def is_rational(self) -> bool:
        return self.y == 0

    def sign(self) -> int:
        return _sign_quad(self.x, self.y, self.D)

    # ordering by the first real embedding
    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadElem with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.D == other.D and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.x) if self.y == 0 else hash((self.x, self.y, self.D))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __float__(self):
        return float(self.x) + float(self.y) * math.sqrt(self.D)

    def pair(self) -> tuple[Fraction, Fraction]:
        return self.x, self.y

    def __repr__(self):
        return f"QuadElem({self.x}, {self.y}, {self.D})"

    def __str__(self):
        return format_elem(self)


def format_elem(xi: QuadElem) -> str:
    """Render using sqrt of the squarefree kernel, e.g. '4 - √10'."""
    m, f = squarefree_part(xi.D)
    a, b = xi.x, xi.y * f
    if b == 0:
        return str(a)
    rad = f"√{m}"
    mag = abs(b)
    if mag == 1:
        tail = rad
    elif mag.denominator == 1:
        tail = f"{mag.numerator}{rad}"
    elif mag.numerator == 1:
        tail = f"{rad}/{mag.denominator}"
    else:
        tail = f"{mag.numerator}{rad}/{mag.denominator}"
    if a == 0:
        return tail if b > 0 else f"-{tail}"
    return f"{a} {'+' if b > 0 else '-'} {tail}"


def sqrt_elem(D: int) -> QuadElem:
    return QuadElem(0, 1, D)


def totally_positive(xi: QuadElem) -> bool:
    """xi > 0 and xi' > 0, i.e. x > |y| sqrt(D)."""
    if xi.x <= 0:
        return False
    return xi.x * xi.x > xi.D * xi.y * xi.y


def floor_quad(w: QuadElem) -> int:
    """Exact floor of x + y*sqrt(D) using only integer arithmetic."""
    if w.y == 0:
        return math.floor(w.x)
    # write w = (X + Y sqrt D)/Z with Z > 0
    Z = w.x.denominator * w.y.denominator // math.gcd(w.x.denominator, w.y.denominator)
    X = int(w.x * Z)
    Y = int(w.y * Z)
    s = math.isqrt(Y * Y * w.D)
    if Y > 0:
        f = s  # floor(Y sqrt D), never exact for non-square D
    else:
        f = -s - 1
    # X + Y sqrt D lies in (X + f, X + f + 1)
    n0 = (X + f) // Z
    # floor is n0 unless (n0 + 1) * Z <= X + Y sqrt D
    if _sign_quad(Fraction(X - (n0 + 1) * Z), Fraction(Y), w.D) >= 0:
        return n0 + 1
    return n0


def ceil_quad(w: QuadElem) -> int:
    return -floor_quad(-w)


@dataclass(frozen=True)
class UnitData:
    D: int
    eps0: QuadElem
    nu: int
    eps_plus: QuadElem

    @property
    def norm_eps0(self) -> int:
        return int(self.eps0.norm())


@lru_cache(maxsize=None)
def fundamental_unit(D: int, method: str = "cf", cap: int = DEFAULT_UNIT_CAP) -> UnitData:
    """Fundamental unit eps0 > 1 of the maximal order, nu and eps_plus = eps0^2.

    method="search" runs the bounded Pell search t^2 - D u^2 = +-4 for u <= cap;
    method="cf" reads the unit off one period of the reduced principal cycle.
    """
    check_discriminant(D)
    if method == "search":
        eps0 = _unit_search(D, cap)
    elif method == "cf":
        eps0 = _unit_cf(D, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    nu = 1 if eps0.norm() == -1 else 2
    return UnitData(D, eps0, nu, eps0 * eps0)


def _unit_search(D: int, cap: int) -> QuadElem:
    # units of O_K are (t + u sqrt D)/2 with t^2 - D u^2 = +-4
    for u in range(1, cap + 1):
        du2 = D * u * u
        for target in (du2 - 4, du2 + 4):
            t = math.isqrt(target)
            if t * t == target:
                return QuadElem(Fraction(t, 2), Fraction(u, 2), D)
    raise ArithmeticError(f"no unit with y <= {cap} for D={D}")


def _unit_cf(D: int, cap: int) -> QuadElem:
    # principal reduced form (1, b, c): sqrt D < b < sqrt D + 2, b = D mod 2
    b = math.isqrt(D) + 1
    if (b - D) % 2:
        b += 1
    w0 = QuadElem(Fraction(b, 2), Fraction(1, 2), D)
    w, prev, cur = w0, w0, QuadElem(1, 0, D)
    for _ in range(cap):
        bk = ceil_quad(w)
        prev, cur = cur, bk * cur - prev
        w = 1 / (bk - w)
        if w == w0:
            break
    else:
        raise ArithmeticError(f"period not found for D={D}")
    eta = 1 / cur  # totally positive generator of the totally positive units
    # eta = eps0^2 exactly when a unit of norm -1 exists; then Tr(eta) - 2 = t^2
    t2 = eta.trace() - 2
    t = math.isqrt(int(t2))
    if t * t == t2:
        cand = QuadElem(Fraction(t, 2), eta.y / t, D)
        if cand.norm() == -1 and cand.is_integral():
            return cand
    return eta
