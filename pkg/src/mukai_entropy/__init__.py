"""Exact Mukai-lattice arithmetic for autoequivalence dynamics on K3 surfaces.

The package computes the numerical shadow of derived-category dynamics:
integer quadratic-form arithmetic on the algebraic Mukai lattice, the
isometries induced by spherical twists and line-bundle tensors, exact
characteristic polynomials with certified spectral radii, categorical
entropy curves of spherical twists, and the entropy-versus-radius gap of
the twist-tensor family, together with an orthogonal-class search.
"""

from .errors import (
    CertificationError,
    InvarianceError,
    LatticeInputError,
    SearchExhaustedError,
)
from .lattice import (
    K3LatticeModel,
    MukaiVector,
    Signature,
    doubled_square_is_nonsquare,
    euler_pairing,
    is_spherical_class,
    line_bundle_vector,
    model_from_dict,
    model_to_dict,
    mukai_pairing,
    orthogonal_complement_basis,
    pairing_matrix,
    rank_one_model,
    signature_of,
    square,
    structure_sheaf_vector,
    vector_from_dict,
    vector_to_dict,
)
from .isometries import (
    Isometry,
    compose,
    fixes_pointwise,
    identity_action,
    inverse,
    isometry_from_dict,
    isometry_to_dict,
    polarized_sublattice_basis,
    power,
    restrict_to_sublattice,
    shift_action,
    spherical_twist_action,
    tensor_line_bundle_action,
    twist_tensor_action,
)
from .spectral import (
    CertifiedRadius,
    CharPoly,
    QuadraticSurd,
    char_poly,
    radius_closed_form,
    spectral_radius,
)
from .entropy import (
    EntropyCurve,
    ExtRecursionTable,
    GapReport,
    entropy_lower_bound_from_radius,
    ext_recursion_table,
    ext_top_dim,
    gy_gap,
    h0_line_bundle,
    hom_growth_lower_bound,
    iterated_chi,
    reference_growth_bound,
    twist_entropy_curve,
)
from .orthosearch import (
    Rank2Form,
    SignatureReport,
    find_positive_orthogonal,
    rank2_form,
    rank2_isotropy_free,
    search_report,
    signature_report,
)

__version__ = "0.1.0"
