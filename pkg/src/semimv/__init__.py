"""Exact mixed volumes of lattice polytopes and the suture formula for semi-interlaced families."""

from .applications import (
    CayleyInput,
    ConeSpec,
    detect_stretched_bk,
    ed_degree,
    ml_degree,
    newton_number,
    off_coordinate_family,
    orbit_multiplicity,
    polar_degree,
    voff,
)
from .errors import CheckFailed, DomainError, InputError
from .lattice import QuotientMap, hermite_normal_form, lattice_index, quotient_projection, smith_decompose
from .mixed import Lift, MVReport, khovanskii_mv, mixed_volume, mv_split, mv_zero_witness, regular_cell
from .polytope import Face, PointSet, Polytope, convex_hull, enumerate_faces, lattice_volume, minkowski_sum, support_face
from .semi import (
    DaughterFamily,
    SutureTable,
    c_coefficient,
    classify_faces,
    daughter_family,
    is_interlaced,
    suture_system,
    verify_main_lemma,
)

__all__ = [
    "CayleyInput", "CheckFailed", "ConeSpec", "DaughterFamily", "DomainError", "Face", "InputError",
    "Lift", "MVReport", "PointSet", "Polytope", "QuotientMap", "SutureTable",
    "c_coefficient", "classify_faces", "convex_hull", "daughter_family", "detect_stretched_bk",
    "ed_degree", "enumerate_faces", "hermite_normal_form", "is_interlaced", "khovanskii_mv",
    "lattice_index", "lattice_volume", "minkowski_sum", "ml_degree", "mixed_volume", "mv_split",
    "mv_zero_witness", "newton_number", "off_coordinate_family", "orbit_multiplicity",
    "polar_degree", "quotient_projection", "regular_cell", "smith_decompose", "support_face",
    "suture_system", "verify_main_lemma", "voff",
]
