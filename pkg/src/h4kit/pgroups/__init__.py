"""Closed-form low-degree cohomology of elementary abelian and extraspecial p-groups."""

from .cohomology import (
    CohomologyDescription,
    Layer,
    elem_abelian_cohomology,
    extraspecial_odd_cohomology,
    extraspecial_two_h4,
    gl_generators,
    gsp_generators,
    orthogonal_generators,
)
from .extraspecial import bilinear, extraspecial_inverse, extraspecial_multiply, extraspecial_power
from .forms import (
    FormAnalysis,
    QuadraticForm,
    SymplecticForm,
    alt2_from_sq1_image,
    arf_sign,
    monomial,
    poly_add,
    poly_mul,
    quadratic_form_analyze,
    sq1,
)
from .module import (
    FUNCTORS,
    ModuleError,
    ModuleWithAction,
    apply_functors,
    find_invariant_line,
    fixed_points,
    line_scalars,
    load_module,
    module_functor,
    parse_matrices,
)

__all__ = [
    "CohomologyDescription", "Layer", "elem_abelian_cohomology", "extraspecial_odd_cohomology",
    "extraspecial_two_h4", "gl_generators", "gsp_generators", "orthogonal_generators",
    "bilinear", "extraspecial_inverse", "extraspecial_multiply", "extraspecial_power",
    "FormAnalysis", "QuadraticForm", "SymplecticForm", "alt2_from_sq1_image", "arf_sign",
    "monomial", "poly_add", "poly_mul", "quadratic_form_analyze", "sq1",
    "FUNCTORS", "ModuleError", "ModuleWithAction", "apply_functors", "find_invariant_line",
    "fixed_points", "line_scalars", "load_module", "module_functor", "parse_matrices",
]
