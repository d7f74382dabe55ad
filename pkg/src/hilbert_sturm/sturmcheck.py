"""Checking coefficient data against the certifying set.

Coefficient files are CSV:

    D,a_class,weight,s[,cusp]
    40,0,2,1
    x_num,x_den,y_num,y_den,coeff_num,coeff_den
    1,2,1,20,0,1
    ...

with xi = x + y*sqrt(D).  Lines starting with '#' are ignored.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .fourier import CoeffMap, SturmSet, canonical_rep, sturm_set
from .ideals import narrow_class_group
from .qfield import QuadElem, totally_positive

CERTIFIED = "certified"
FAILED = "hypothesis-failed"
INCOMPLETE = "input-incomplete"
PRECONDITION = "precondition-failed"

ROW_HEADER = ["x_num", "x_den", "y_num", "y_den", "coeff_num", "coeff_den"]


@dataclass(frozen=True)
class CoeffFile:
    D: int
    a_class: int
    weight: int
    s: int
    cusp: int
    entries: tuple[tuple[QuadElem, Fraction], ...]


def parse_coeff_text(text: str) -> CoeffFile:
    rows = [r for r in csv.reader(io.StringIO(text))
            if r and not r[0].lstrip().startswith("#")]
    if len(rows) < 3:
        raise ValueError("coefficient file needs a header, a parameter row and a row header")
    head = [h.strip() for h in rows[0]]
    if head[:4] != ["D", "a_class", "weight", "s"]:
        raise ValueError(f"bad header {rows[0]!r}")
    vals = dict(zip(head, (int(v) for v in rows[1])))
    if [h.strip() for h in rows[2]] != ROW_HEADER:
        raise ValueError(f"bad row header {rows[2]!r}")
    D = vals["D"]
    entries = []
    for n, r in enumerate(rows[3:], start=4):
        if len(r) != 6:
            raise ValueError(f"line {n}: expected 6 fields")
        xn, xd, yn, yd, cn, cd = (int(v) for v in r)
        entries.append((QuadElem(Fraction(xn, xd), Fraction(yn, yd), D), Fraction(cn, cd)))
    return CoeffFile(D, vals["a_class"], vals["weight"], vals["s"], vals.get("cusp", 0),
                     tuple(entries))


def read_coeff_file(path) -> CoeffFile:
    return parse_coeff_text(Path(path).read_text())


def write_coeff_file(path, cf: CoeffFile) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["D", "a_class", "weight", "s", "cusp"])
        w.writerow([cf.D, cf.a_class, cf.weight, cf.s, cf.cusp])
        w.writerow(ROW_HEADER)
        for xi, c in cf.entries:
            w.writerow([xi.x.numerator, xi.x.denominator, xi.y.numerator, xi.y.denominator,
                        c.numerator, c.denominator])


def sturm_set_for(cf: CoeffFile) -> SturmSet:
    a = narrow_class_group(cf.D).reps[cf.a_class]
    return sturm_set(cf.D, a, (cf.weight, cf.weight), cf.s, cf.cusp)


def canonical_map(entries, sset: SturmSet) -> CoeffMap:
    """Reduce keys to orbit representatives; parallel weight keeps coefficients."""
    unit = sset.cusp.eta
    out: dict[QuadElem, Fraction] = {}
    for xi, c in entries:
        if xi and xi not in sset.dual:
            raise ValueError(f"index {xi} is not in the dual lattice")
        if xi and not totally_positive(xi):
            raise ValueError(f"index {xi} is not totally positive")
        key = canonical_rep(xi, unit) if xi else xi
        if key in out and out[key] != c:
            raise ValueError(f"conflicting coefficients {out[key]} and {c} for the orbit of {key}")
        out[key] = Fraction(c)
    return CoeffMap(sset.dual, out)


@dataclass(frozen=True)
class CongruenceVerdict:
    status: str
    prime: int | None
    sset: SturmSet
    checked: tuple[tuple[QuadElem, str], ...] = ()
    offending: tuple[QuadElem, ...] = ()
    message: str = ""

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "prime": self.prime,
            "bound": self.sset.report.as_dict(),
            "set_size": self.sset.count,
            "checked": [[str(x.x), str(x.y), r] for x, r in self.checked],
            "offending": [[str(x.x), str(x.y)] for x in self.offending],
            "message": self.message,
        }


def _residue(c: Fraction, p: int | None) -> Fraction | int:
    if p is None:
        return c
    if c.denominator % p == 0:
        raise ValueError(f"coefficient {c} is not p-integral for p={p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def check_vanishing(coeffs: CoeffMap, sset: SturmSet, p: int | None = None) -> CongruenceVerdict:
    """Certified iff every representative is present and vanishes (mod p when given)."""
    if p is not None:
        pre = _precondition(sset, p)
        if pre:
            return CongruenceVerdict(PRECONDITION, p, sset, message=pre)
    if coeffs.lattice != sset.dual:
        raise ValueError("coefficient map and certifying set use different lattices")
    missing, bad, checked = [], [], []
    for rep in sset.reps:
        if rep.xi not in coeffs.coeffs:
            missing.append(rep.xi)
            continue
        res = _residue(coeffs.coeffs[rep.xi], p)
        checked.append((rep.xi, str(res)))
        if res != 0:
            bad.append(rep.xi)
    if missing:
        return CongruenceVerdict(INCOMPLETE, p, sset, tuple(checked), tuple(missing),
                                 f"{len(missing)} representatives missing from the input")
    if bad:
        return CongruenceVerdict(FAILED, p, sset, tuple(checked), tuple(bad),
                                 f"{len(bad)} representatives do not vanish")
    return CongruenceVerdict(CERTIFIED, p, sset, tuple(checked))


def _precondition(sset: SturmSet, p: int) -> str:
    Dn = sset.D * sset.report.n
    if Dn % p == 0:
        return f"p={p} divides D*n = {Dn}"
    return ""


def check_congruence(A: CoeffMap, B: CoeffMap, p: int, sset: SturmSet) -> CongruenceVerdict:
    """Certified iff a_xi(A) = a_xi(B) mod p on the whole certifying set."""
    pre = _precondition(sset, p)
    if pre:
        return CongruenceVerdict(PRECONDITION, p, sset, message=pre)
    keys = set(A.coeffs) & set(B.coeffs)
    diff = CoeffMap(A.lattice, {k: A.coeffs[k] - B.coeffs[k] for k in keys})
    for M in (A, B):
        for c in M.coeffs.values():
            _residue(c, p)
    return check_vanishing(diff, sset, p)
