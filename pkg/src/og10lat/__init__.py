"""Exact-arithmetic toolkit for the OG10 lattice: certified isometries,
Eichler transvection machinery, constructive generator decompositions,
discriminant-form calculus, and the rank-3 Mukai-side dictionaries."""

from .exactlin import IntMatrix, SnfDecomposition, det, kernel_basis, smith_normal_form, solve_integral
from .lattice import (
    Lattice,
    LatVector,
    Sublattice,
    direct_sum,
    divisibility,
    glue_index,
    lattice_det,
    orthogonal_complement,
    pair,
    square,
    standard_lattice,
    vector_content,
)
from .discriminant import (
    FiniteQuadraticForm,
    discriminant_group,
    extends_across_gluing,
    forms_isomorphic,
    induced_action,
    is_stable,
    sublattice_disc,
)
from .isometry import (
    GeneratorWord,
    Isometry,
    eichler_transport,
    factor_off_hyperbolic,
    identity_isometry,
    is_orientation_preserving,
    make_isometry,
    random_isometry,
    reflection,
    transvection,
)
from .og10 import (
    NamedClasses,
    decompose_monodromy,
    g2_order,
    in_G1,
    in_G2,
    in_G3,
    lt_monodromy_check,
    named_classes,
    og10_lattice,
    restrict_to_sigma_perp,
    sigma_perp,
)
from .mukai import (
    FujikiTheta,
    GammaElement,
    MukaiVector,
    V2,
    V_OG10,
    fm_pushforward,
    fujiki_theta_pairing,
    gamma_element,
    gamma_pair,
    gamma_to_h2,
    hbs_lattice,
    mukai_pair,
    p1,
    p2,
    parallel_transport_P,
    psi_pullback,
    solve_theta_class,
    spans_match,
    v_perp_basis,
)

__all__ = [
    "IntMatrix",
    "SnfDecomposition",
    "det",
    "kernel_basis",
    "smith_normal_form",
    "solve_integral",
    "Lattice",
    "LatVector",
    "Sublattice",
    "direct_sum",
    "divisibility",
    "glue_index",
    "lattice_det",
    "orthogonal_complement",
    "pair",
    "square",
    "standard_lattice",
    "vector_content",
    "FiniteQuadraticForm",
    "discriminant_group",
    "extends_across_gluing",
    "forms_isomorphic",
    "induced_action",
    "is_stable",
    "sublattice_disc",
    "GeneratorWord",
    "Isometry",
    "eichler_transport",
    "factor_off_hyperbolic",
    "identity_isometry",
    "is_orientation_preserving",
    "make_isometry",
    "random_isometry",
    "reflection",
    "transvection",
    "NamedClasses",
    "decompose_monodromy",
    "g2_order",
    "in_G1",
    "in_G2",
    "in_G3",
    "lt_monodromy_check",
    "named_classes",
    "og10_lattice",
    "restrict_to_sigma_perp",
    "sigma_perp",
    "FujikiTheta",
    "GammaElement",
    "MukaiVector",
    "V2",
    "V_OG10",
    "fm_pushforward",
    "fujiki_theta_pairing",
    "gamma_element",
    "gamma_pair",
    "gamma_to_h2",
    "hbs_lattice",
    "mukai_pair",
    "p1",
    "p2",
    "parallel_transport_P",
    "psi_pullback",
    "solve_theta_class",
    "spans_match",
    "v_perp_basis",
]
