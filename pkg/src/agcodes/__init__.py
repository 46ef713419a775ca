"""Additive left group codes in finite group algebras.

Construction and analysis of additive left group codes in KG over a field
tower F = GF(q) inside K = GF(q^m): the Euclidean / trace-Euclidean /
Hermitian / trace-Hermitian forms and their duals, FG-linear projectors and
adjoints, LCD and self-dual criteria, Murray-von Neumann equivalence, and
module-dual quotient checks.
"""

from ._kernels import BACKEND
from .algebra import (
    AlgebraElement,
    Ambient,
    ambient,
    coef_identity,
    conj,
    format_element,
    from_coords,
    multiply,
    parse_element,
    star,
    to_coords,
)
from .codes import (
    AdditiveCode,
    CodeParameters,
    enumerate_idempotents,
    fg_code,
    fg_complement,
    from_elements,
    full_code,
    gram_on_fg,
    ideal_code,
    ideal_selfdual_idempotent,
    intersection,
    is_lcd,
    is_self_dual,
    lcd_criterion_rhoe,
    lcd_ideal_idempotent,
    min_distance,
    module_dual_check,
    parameters,
    restricted_code,
    restricted_projector_code,
    selfdual_criterion_rhoe,
    span_fg,
    span_ideal,
    sum_codes,
    zero_code,
)
from .equivalence import (
    INDETERMINATE,
    HomSpace,
    ModuleHom,
    MvnWitness,
    hom_space,
    modules_isomorphic,
    mvn_idempotents,
    mvn_projectors,
)
from .fields import FieldElement, FieldTower, conway_polynomial, embed, parse_field_spec
from .fields import conjugate, trace
from .forms import (
    E,
    H,
    TE,
    TH,
    Form,
    euclidean_orthogonal_of_ideal,
    orthogonal,
    pair,
    parse_form,
    trace_gram,
)
from .groups import (
    Group,
    cyclic,
    dihedral,
    direct_product,
    from_table_file,
    is_isomorphic,
    parse_group_spec,
    symmetric,
    trivial,
)
from .operators import (
    FLinearOperator,
    SubfieldSubspace,
    adjoint,
    as_right_multiplication,
    coefficientwise_projector,
    identity_operator,
    image,
    is_fg_linear,
    is_projector,
    is_self_adjoint,
    kernel,
    left_translation,
    projector_from_summand,
    rho,
    zero_operator,
)

__version__ = "0.1.0"
