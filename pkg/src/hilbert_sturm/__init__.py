"""Hecke and Sturm bounds for Hilbert modular forms over real quadratic fields."""
from .qfield import QuadElem, UnitData, ceil_quad, floor_quad, fundamental_unit, totally_positive
from .ideals import FracIdeal, dual_lattice, is_principal_genus, isotropy_lattice, narrow_class_group
from .qforms import BQF, enumerate_reduced_forms, form_of_lattice, reduce_form
from .cuspres import CuspResolution, resolve_all_cusps, resolve_cusp, scaled_resolution
from .invariants import intersection_numbers, select_n, unit_index, zeta_minus_one
from .bounds import BoundReport, appendix_b_bound, general_bound, hecke_bound, sturm_bound
from .fourier import CoeffMap, SturmSet, canonical_rep, certifying_reps, sturm_count, sturm_set
from .sturmcheck import check_congruence, check_vanishing, read_coeff_file

__version__ = "0.1.0"

__all__ = [
    "QuadElem", "UnitData", "ceil_quad", "floor_quad", "fundamental_unit", "totally_positive",
    "FracIdeal", "dual_lattice", "is_principal_genus", "isotropy_lattice", "narrow_class_group",
    "BQF", "enumerate_reduced_forms", "form_of_lattice", "reduce_form",
    "CuspResolution", "resolve_all_cusps", "resolve_cusp", "scaled_resolution",
    "intersection_numbers", "select_n", "unit_index", "zeta_minus_one",
    "BoundReport", "appendix_b_bound", "general_bound", "hecke_bound", "sturm_bound",
    "CoeffMap", "SturmSet", "canonical_rep", "certifying_reps", "sturm_count", "sturm_set",
    "check_congruence", "check_vanishing", "read_coeff_file",
]
