"""Schur-class functions on the symmetrized skew bidisc.

Computational counterparts of the operator-model theory of the domain
G_r = {(l1 + r l2, r l1 l2) : |l1| < 1, |l2| < 1} and its scaled relative
r.G: unitary-colligation realizations, Gramian-based model synthesis, the
operator kernels linking the bidisc picture to r.G, and a closed-form
function catalog with dual-path certification.
"""

from .colligation import (
    Colligation,
    ROperator,
    SubspaceSplit,
    build_R,
    norm_bound,
    random_colligation,
    s_T,
    s_UR,
    validate_colligation,
)
from .domains import (
    Point2,
    fq_disc,
    in_bidisc,
    in_G,
    in_Gr,
    in_rG,
    magic_phi,
    mobius_phi,
    pi_map,
    quad_roots,
    sample_rG,
    scale_psi,
    sigma,
    t_r,
    upsilon,
)
from .errors import SkewBidiscError
from .kernels import (
    KernelContext,
    bidisc_model_residual,
    factorization_residual,
    kernel_Y,
    kernel_Z,
    substitution_residual,
)
from .linalg import (
    PartialIsometry,
    adjoint,
    inverse,
    is_unitary,
    isometry_from_gramians,
    spectral_norm,
    unitary_extension,
)
from .realization import (
    CertReport,
    GrModel,
    RealizedFunction,
    eval_f,
    eval_u,
    model_residual,
    realization_from_model,
    scaled_model_residual,
    schur_certify,
)
from .synthesis import (
    BidiscModelSpec,
    PolyVectorMap,
    ScalarPoly,
    SynthesizedModel,
    eval_u_model,
    eval_v,
    eval_w,
    eval_x,
    synthesize,
    wrap_as_GrModel,
)
from .catalog import (
    RankOneParams,
    blend_params,
    catalog_crosscheck,
    magic_params,
    rank_one_build,
    random_params,
    upsilon_params,
)

__version__ = "0.1.0"

__all__ = [
    "BidiscModelSpec",
    "CertReport",
    "Colligation",
    "GrModel",
    "KernelContext",
    "PartialIsometry",
    "Point2",
    "PolyVectorMap",
    "RankOneParams",
    "ROperator",
    "RealizedFunction",
    "ScalarPoly",
    "SkewBidiscError",
    "SubspaceSplit",
    "SynthesizedModel",
    "adjoint",
    "bidisc_model_residual",
    "blend_params",
    "build_R",
    "catalog_crosscheck",
    "eval_f",
    "eval_u",
    "eval_u_model",
    "eval_v",
    "eval_w",
    "eval_x",
    "factorization_residual",
    "fq_disc",
    "in_G",
    "in_Gr",
    "in_bidisc",
    "in_rG",
    "inverse",
    "is_unitary",
    "isometry_from_gramians",
    "kernel_Y",
    "kernel_Z",
    "magic_params",
    "magic_phi",
    "mobius_phi",
    "model_residual",
    "norm_bound",
    "pi_map",
    "quad_roots",
    "random_colligation",
    "random_params",
    "rank_one_build",
    "realization_from_model",
    "s_T",
    "s_UR",
    "sample_rG",
    "scale_psi",
    "scaled_model_residual",
    "schur_certify",
    "sigma",
    "spectral_norm",
    "substitution_residual",
    "synthesize",
    "t_r",
    "unitary_extension",
    "upsilon",
    "upsilon_params",
    "validate_colligation",
    "wrap_as_GrModel",
]
