"""Fourier indices: the finite certifying set, order at a cusp and the
p-transform of coefficient maps.

For a cusp with vertex line (A_j) and a totally positive xi in the dual
lattice, the traces t_j = Tr(xi A_j) satisfy t_{j+1} = b_j t_j - t_{j-1} and
form a convex sequence.  Indexing xi by the first j where t_j is minimal and
using (t_{j-1}, t_j) as coordinates turns "min_j t_j < T" into the integer
triangle 1 <= q < T, q < p <= (b_j - 1) q.  Taking j in one period picks one
element per orbit of the squared units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import kernels
from .bounds import BoundReport, general_bound
from .cuspres import CuspResolution, resolve_all_cusps
from .ideals import FracIdeal, dual_basis
from .qfield import QuadElem, fundamental_unit, squarefree_part, totally_positive


def _better(a: QuadElem, b: QuadElem) -> bool:
    ta, tb = a.trace(), b.trace()
    return ta < tb or (ta == tb and a.y > b.y)


def canonical_rep_with_exponent(xi: QuadElem, unit: QuadElem | None = None) -> tuple[QuadElem, int]:
    """The element of smallest trace in the orbit xi * unit^Z (ties: larger xi - xi').

    Returns (rep, m) with rep = unit^m * xi.  unit defaults to eps_plus.
    """
    if not totally_positive(xi):
        raise ValueError(f"{xi} is not totally positive")
    if unit is None:
        unit = fundamental_unit(xi.D).eps_plus
    inv = unit.conjugate()
    m = 0
    # jump close to the balanced point xi ~ xi' first
    try:
        rho = math.log(float(xi.conjugate())) - math.log(float(xi))
        m = round(rho / (2 * math.log(float(unit))))
    except (OverflowError, ValueError):
        m = 0
    if m:
        xi = xi * unit ** m
    while True:
        up = xi * unit
        if _better(up, xi):
            xi, m = up, m + 1
            continue
        down = xi * inv
        if _better(down, xi):
            xi, m = down, m - 1
            continue
        return xi, m


def canonical_rep(xi: QuadElem, unit: QuadElem | None = None) -> QuadElem:
    return canonical_rep_with_exponent(xi, unit)[0]


def format_dual(xi: QuadElem) -> str:
    """Render as x + c/sqrt(m), m the squarefree kernel of D, e.g. 1/2 + 3/(2√29)."""
    m, f = squarefree_part(xi.D)
    c = abs(m * xi.y * f)   # xi.y sqrt(D) = c / sqrt(m) up to sign
    if not c:
        return str(xi.x)
    rad = f"{c.numerator}/√{m}" if c.denominator == 1 else f"{c.numerator}/({c.denominator}√{m})"
    sign = "+" if xi.y > 0 else "-"
    if not xi.x:
        return rad if sign == "+" else f"-{rad}"
    return f"{xi.x} {sign} {rad}"


@dataclass(frozen=True)
class SturmRep:
    xi: QuadElem
    witness: int      # index j of a vertex with Tr(xi A_j) = trace
    trace: int

    def row(self) -> tuple[int, int, int, int, int, int]:
        return (self.xi.x.numerator, self.xi.x.denominator,
                self.xi.y.numerator, self.xi.y.denominator, self.witness, self.trace)


@dataclass(frozen=True)
class SturmSet:
    D: int
    cusp: CuspResolution
    dual: FracIdeal
    report: BoundReport
    reps: tuple[SturmRep, ...]

    @property
    def T(self) -> int:
        return self.report.T

    @property
    def count(self) -> int:
        return len(self.reps)

    def __len__(self):
        return len(self.reps)

    def elements(self) -> frozenset[QuadElem]:
        return frozenset(r.xi for r in self.reps)

    def ideal_count(self) -> int:
        """Experimental: classes modulo all totally positive units (eps0 when it
        is totally positive, otherwise eps_plus)."""
        u = fundamental_unit(self.D)
        unit = u.eps0 if u.nu == 2 else u.eps_plus
        keys = {canonical_rep(r.xi, unit) if r.xi else r.xi for r in self.reps}
        return len(keys)


def _cusp_and_report(D, a, weights, s, i0, convention):
    if a is None:
        a = FracIdeal.unit(D)
    report = general_bound(D, a, i0, weights, s, 1, convention)
    cusp = resolve_all_cusps(D, a, convention=convention)[i0]
    return cusp, report


def certifying_reps(cusp: CuspResolution, T: int, include_zero: bool = False,
                    verify: bool = True) -> tuple[SturmRep, ...]:
    """Orbit representatives of totally positive xi in the dual of the cusp
    lattice with min_j Tr(xi A_j) < T."""
    A = cusp.vertices
    f_m1, f_0 = dual_basis((A[0], A[1]))
    rt = cusp.r_tilde
    unit = cusp.eta
    reps = []
    seen = set()
    for j, p, q, P, Q in kernels.chart_points(cusp.cycle, T):
        xi = f_m1 * P + f_0 * Q
        rep, m = canonical_rep_with_exponent(xi, unit)
        w = j + m * rt
        if verify:
            if (rep * cusp.vertex(w)).trace() != q:
                raise ArithmeticError(f"witness check failed for {rep}")
            if rep in seen:
                raise ArithmeticError(f"duplicate orbit representative {rep}")
        seen.add(rep)
        reps.append(SturmRep(rep, w, q))
    if include_zero:
        reps.append(SturmRep(QuadElem(0, 0, cusp.D), 0, 0))
    reps.sort(key=lambda r: (r.trace, r.xi.x, r.xi.y))
    return tuple(reps)


def sturm_set(D: int, a: FracIdeal | None = None, weights: tuple[int, int] = (2, 2),
              s: int = 0, i0: int = 0, convention: str = "wide",
              verify: bool = True) -> SturmSet:
    """Orbit representatives xi in the totally positive dual lattice (plus 0
    when s = 0) with Tr(xi A_j) < a_min + s for some j."""
    cusp, report = _cusp_and_report(D, a, weights, s, i0, convention)
    reps = certifying_reps(cusp, report.T, s == 0, verify)
    return SturmSet(D, cusp, cusp.lattice.dual(), report, reps)


def sturm_count(D: int, a: FracIdeal | None = None, weight: int = 2, s: int = 0,
                i0: int = 0, convention: str = "wide") -> int:
    """Size of the certifying set at parallel weight (weight, weight)."""
    cusp, report = _cusp_and_report(D, a, (weight, weight), s, i0, convention)
    return kernels.chart_count(cusp.cycle, report.T) + (1 if s == 0 else 0)


# coefficient maps ---------------------------------------------------------------

@dataclass(frozen=True)
class CoeffMap:
    lattice: FracIdeal                      # the dual lattice the keys live in
    coeffs: Mapping[QuadElem, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            if not isinstance(k, QuadElem):
                k = QuadElem(k, 0, self.lattice.D)
            if k and k not in self.lattice:
                raise ValueError(f"index {k} is not in the dual lattice")
            clean[k] = Fraction(v)
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, xi):
        return self.coeffs.get(xi, Fraction(0))

    def support(self) -> list[QuadElem]:
        return [k for k, v in self.coeffs.items() if v != 0]


def order_at_cusp(coeffs: CoeffMap, res: CuspResolution) -> float | int:
    """inf { Tr(xi A_j) : a_xi != 0 } over the whole vertex line."""
    best = math.inf
    a_m1, a_0 = res.vertices[0], res.vertices[1]
    for xi in coeffs.support():
        if not xi:
            return 0
        t1, t0 = (xi * a_m1).trace(), (xi * a_0).trace()
        if t1.denominator != 1 or t0.denominator != 1:
            raise ValueError(f"index {xi} is not in the dual lattice of the cusp")
        val, _ = kernels.min_trace(res.cycle, int(t1), int(t0))
        best = min(best, val)
    return best


def hecke_p11_transform(coeffs: CoeffMap, p: int = 11) -> CoeffMap:
    """b_xi = p a_xi + a_{xi/p}."""
    out: dict[QuadElem, Fraction] = {}
    for xi, v in coeffs.coeffs.items():
        out[xi] = out.get(xi, Fraction(0)) + p * v
        out[xi * p] = out.get(xi * p, Fraction(0)) + v
    return CoeffMap(coeffs.lattice, {k: v for k, v in out.items() if v != 0})
