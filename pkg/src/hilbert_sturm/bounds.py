"""Vanishing thresholds for Hilbert modular forms.

A form of weight (k1, k2) vanishing to order s at every cusp and to order
a > threshold at cusp i0 is zero, where

    threshold = (k1 + k2) n [index] zeta_K(-1) / S_i0  -  s * SS / S_i0

with S_i = sum_j (b_ij - 2) for cusp i and SS the sum over all cusps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cuspres import resolve_all_cusps
from .ideals import FracIdeal, class_index
from .invariants import appendix_b_data, classify, select_n, sl2_order, zeta_minus_one


@dataclass(frozen=True)
class BoundReport:
    D: int
    a_class: int
    i0: int
    weight: tuple[int, int]
    s: int
    n: int
    route: str
    zeta: Fraction
    sigmas: tuple[int, ...]
    index: int
    k_coeff: Fraction     # threshold = k_coeff * (k1 + k2) - s_coeff * s
    s_coeff: Fraction
    threshold: Fraction
    a_min: int
    notes: tuple[str, ...] = field(default_factory=tuple)
    prime: int | None = None

    @property
    def T(self) -> int:
        """Traces below T = a_min + s must be checked."""
        return self.a_min + self.s

    def as_dict(self) -> dict:
        return {
            "D": self.D, "a_class": self.a_class, "i0": self.i0,
            "weight": list(self.weight), "s": self.s, "n": self.n,
            "route": self.route, "zeta": str(self.zeta),
            "sigmas": list(self.sigmas), "index": self.index,
            "k_coeff": str(self.k_coeff), "s_coeff": str(self.s_coeff),
            "threshold": str(self.threshold), "a_min": self.a_min, "T": self.T,
            "prime": self.prime, "notes": list(self.notes),
        }


def _a_min(threshold: Fraction) -> int:
    return math.floor(threshold) + 1


def general_bound(D: int, a: FracIdeal | None = None, i0: int = 0,
                  weights: tuple[int, int] = (2, 2), s: int = 0, index: int = 1,
                  convention: str = "wide", character=None) -> BoundReport:
    """Threshold for weights (k1, k2), level subgroup of the given index.

    `character` is accepted and ignored: its order cancels in the bound.
    """
    k1, k2 = weights
    if (k1 - k2) % 2:
        raise ValueError("k1 and k2 must have the same parity")
    if index < 1 or s < 0:
        raise ValueError("index must be >= 1 and s >= 0")
    if a is None:
        a = FracIdeal.unit(D)
    cusps = resolve_all_cusps(D, a, convention=convention)
    sigmas = cusps.sigmas()
    if not 0 <= i0 < len(sigmas):
        raise IndexError(f"cusp index {i0} out of range 0..{len(sigmas) - 1}")
    choice = select_n(D, a, total_sigma=cusps.total_sigma)
    if choice.route == "AppendixB":
        raise ValueError("rational surface: use appendix_b_bound")
    z = zeta_minus_one(D)
    kc = Fraction(choice.n * index) * z / sigmas[i0]
    sc = Fraction(sum(sigmas), sigmas[i0])
    thr = kc * (k1 + k2) - sc * s
    return BoundReport(D, class_index(a), i0, (k1, k2), s, choice.n,
                       choice.route, z, sigmas, index, kc, sc, thr, _a_min(thr),
                       (choice.detail, f"cusp convention: {convention}"))


def hecke_bound(D: int, a: FracIdeal | None = None, i0: int = 0, weight: int = 2,
                s: int = 0, convention: str = "wide") -> BoundReport:
    """Parallel weight (weight, weight); weight = 2k in the usual notation.

    Rational surfaces with stored data are answered from the stored table.
    """
    if a is None:
        a = FracIdeal.unit(D)
    sc = classify(D, a)
    if sc.is_rational:
        return appendix_b_bound(D, weight, s, principal_genus=sc.principal_genus)
    return general_bound(D, a, i0, (weight, weight), s, 1, convention)


def appendix_b_bound(D: int, k: int, s: int = 0, principal_genus: bool = True) -> BoundReport:
    """Stored bound a > k_coeff*k - s_coeff*s, k the parallel weight as tabulated."""
    e = appendix_b_data(D, principal_genus)
    thr = e.k_coeff * k - e.s_coeff * s
    # k_coeff is reported per unit of (k1 + k2) = 2k
    return BoundReport(D, 0 if principal_genus else 1, 0, (k, k), s, 0, "AppendixB",
                       zeta_minus_one(D), (sum(b - 2 for b in e.cycle),) * e.cusps, 1,
                       e.k_coeff / 2, e.s_coeff, thr, _a_min(thr),
                       (f"level {e.level}", f"{e.cusps} cusps with cycle {e.cycle}"))


def subgroup_index(D: int, c) -> int:
    """|SL2(O_K/c)|; the image in PSL2 has half this size when -1 != 1 mod c."""
    return sl2_order(D, c)


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


class PreconditionError(ValueError):
    pass


def sturm_bound(D: int, a: FracIdeal | None = None, i0: int = 0, weight: int = 2,
                s: int = 0, p: int = 2, convention: str = "wide") -> BoundReport:
    """Same threshold as hecke_bound, valid mod a prime above p when p does not divide D n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rep = hecke_bound(D, a, i0, weight, s, convention)
    if rep.route == "AppendixB":
        raise PreconditionError("congruence checks need an explicit level n")
    if (D * rep.n) % p == 0:
        raise PreconditionError(f"p={p} divides D*n = {D * rep.n}; the Sturm argument needs p unramified and prime to n")
    return BoundReport(**{**rep.__dict__, "prime": p})
