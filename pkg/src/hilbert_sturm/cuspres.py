"""Resolution cycles of cusps.

For a lattice M the totally positive vertices A_k of the convex hull of M_+
satisfy A_{k+1} = b_k A_k - A_{k-1}, with b_k = ceil(w_k) and
w_{k+1} = 1/(b_k - w_k), starting from the root w_0 of a reduced form of M.
The curves of the resolution have self-intersection -b_k.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .ideals import FracIdeal, narrow_class_group
from .qfield import QuadElem, ceil_quad, fundamental_unit, totally_positive
from .qforms import BQF, canonical_reduced, form_of_lattice

DEFAULT_MAX_PERIOD = 10**4


def max_period() -> int:
    env = os.environ.get("HSM_MAX_PERIOD")
    return int(env) if env else DEFAULT_MAX_PERIOD


@dataclass(frozen=True)
class CuspResolution:
    lattice: FracIdeal
    form: BQF                      # canonical reduced form of the lattice
    vertices: tuple[QuadElem, ...]  # A_{-1}, A_0, ..., A_{r_tilde}
    cycle: tuple[int, ...]          # b_0 .. b_{r_tilde - 1}
    r: int
    nu: int
    unit_index: int
    eta: QuadElem                   # A_{j + r_tilde} = A_j / eta
    multiplicity: int = 1           # number of cusps sharing this resolution

    @property
    def r_tilde(self) -> int:
        return len(self.cycle)

    @property
    def D(self) -> int:
        return self.lattice.D

    @property
    def singular(self) -> bool:
        return self.r_tilde == 1

    @property
    def double_point(self) -> bool:
        return self.r_tilde == 2

    @property
    def self_intersections(self) -> tuple[int, ...]:
        if self.singular:
            return (-self.cycle[0] + 2,)
        return tuple(-b for b in self.cycle)

    @property
    def sigma(self) -> int:
        """sum_j (b_j - 2)."""
        return sum(b - 2 for b in self.cycle)

    @property
    def w0(self) -> QuadElem:
        return self.form.root()

    def vertex(self, j: int) -> QuadElem:
        """A_j for any integer j, using A_{j + r_tilde} = A_j / eta."""
        q, i = divmod(j + 1, self.r_tilde)
        base = self.vertices[i]
        return base * self.eta ** (-q) if q else base

    def normalized_vertices(self) -> tuple[QuadElem, ...]:
        a0 = self.vertices[1]
        return tuple(v / a0 for v in self.vertices)


def _orient_positive(alpha: QuadElem, beta: QuadElem) -> tuple[QuadElem, QuadElem]:
    if not totally_positive(beta):
        alpha, beta = -alpha, -beta
    if not totally_positive(beta):
        raise ArithmeticError("reduced basis vector is not totally positive")
    return alpha, beta


def resolve_cusp(M: FracIdeal, V_index: int = 1, cap: int | None = None) -> CuspResolution:
    """Resolution of the cusp with lattice M and unit group of index V_index in U^2."""
    if V_index < 1:
        raise ValueError("V_index must be >= 1")
    cap = max_period() if cap is None else cap
    D = M.D
    units = fundamental_unit(D)
    Q = form_of_lattice(M)
    R, g = canonical_reduced(Q)
    alpha, beta = M.basis
    p, q, r_, s = g
    new_beta = beta * p + alpha * r_
    new_alpha = beta * q + alpha * s
    a_m1, a_0 = _orient_positive(new_alpha, new_beta)
    w0 = R.root()
    if a_m1 / a_0 != w0:
        raise ArithmeticError("basis transport disagrees with the reduced root")
    # period of w
    cycle, w = [], w0
    for _ in range(cap):
        b = ceil_quad(w)
        cycle.append(b)
        w = 1 / (b - w)
        if w == w0:
            break
    else:
        raise ArithmeticError(f"period not found within {cap} steps")
    r = len(cycle)
    nu = units.nu
    r_tilde = r * nu * V_index
    full = tuple(cycle * (nu * V_index))
    # pick the unit translate of the chart with the smallest trace of A_0
    eps = units.eps_plus
    while (a_0 * eps).trace() < a_0.trace():
        a_m1, a_0 = a_m1 * eps, a_0 * eps
    inv = eps.conjugate()
    while (a_0 * inv).trace() < a_0.trace():
        a_m1, a_0 = a_m1 * inv, a_0 * inv
    verts = [a_m1, a_0]
    for b in full:
        verts.append(b * verts[-1] - verts[-2])
    eta = verts[1] / verts[-1]
    expected = eps ** V_index
    if eta != expected:
        raise ArithmeticError(f"unit relation failed: {eta} != {expected}")
    if len(cycle) > 0 and sum(b - 2 for b in cycle) < 1:
        raise ArithmeticError("cycle without a curve of self-intersection below -2")
    return CuspResolution(M, R, tuple(verts), full, r, nu, V_index, eta)


@dataclass(frozen=True)
class CuspSet:
    D: int
    a: FracIdeal
    level: int
    convention: str
    classes: tuple[int, ...]               # narrow class index of the cusp representative
    cusps: tuple[CuspResolution, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.cusps)

    def __getitem__(self, i):
        return self.cusps[i]

    def sigmas(self) -> tuple[int, ...]:
        return tuple(c.sigma for c in self.cusps)

    @property
    def total_sigma(self) -> int:
        """sum over cusps of sum_j (b_{i,j} - 2), each cusp counted with multiplicity."""
        return sum(c.sigma * c.multiplicity for c in self.cusps)


CONVENTIONS = ("wide", "isotropy")


def resolve_all_cusps(D: int, a: FracIdeal | None = None, n: int = 1,
                      convention: str = "wide") -> CuspSet:
    """One resolution per class of cusps of the Hilbert modular group of (O_K + a) at level n.

    convention="wide": cusps are indexed by wide ideal classes c with lattice a^-1 c.
    convention="isotropy": one cusp per narrow class b with lattice a^-1 b^-2.
    At level n the lattice is scaled by n and the unit index becomes
    unit_index(n); each entry then stands for multiplicity c' cusps.
    """
    from .invariants import cusp_multiplicity, unit_index

    G = narrow_class_group(D)
    if a is None:
        a = FracIdeal.unit(D)
    if convention == "wide":
        lattices = [(i, a.inverse() * G.reps[i]) for i in G.wide_reps()]
    elif convention == "isotropy":
        lattices = [(i, a.inverse() * G.reps[i].inverse() ** 2) for i in range(G.order)]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    idx = unit_index(D, n) if n > 1 else 1
    mult = cusp_multiplicity(D, n) if n > 1 else 1
    cusps = []
    for _, L in lattices:
        res = resolve_cusp(L * n, idx)
        cusps.append(CuspResolution(res.lattice, res.form, res.vertices, res.cycle, res.r,
                                    res.nu, res.unit_index, res.eta, mult))
    return CuspSet(D, a, n, convention, tuple(i for i, _ in lattices), tuple(cusps))


def scaled_resolution(M: FracIdeal, n: int, method: str = "direct") -> CuspResolution:
    """Resolution for the lattice n*M with unit group U^2 of units = 1 mod n.

    method="direct" runs the recursion on n*M for r*nu*index steps and checks
    the unit relation; method="repeat" repeats the level-one cycle.
    """
    from .invariants import unit_index

    if n < 1:
        raise ValueError("n must be positive")
    idx = unit_index(M.D, n) if n > 1 else 1
    if method == "direct":
        return resolve_cusp(M * n, idx)
    if method == "repeat":
        base = resolve_cusp(M, 1)
        cyc = base.cycle * idx
        verts = [v * n for v in base.vertices[:2]]
        for b in cyc:
            verts.append(b * verts[-1] - verts[-2])
        eta = base.eta ** idx
        return CuspResolution(M * n, base.form, tuple(verts), cyc, base.r, base.nu, idx, eta)
    raise ValueError(f"unknown method {method!r}")
