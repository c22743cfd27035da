"""Function spaces engine: slowly varying weights, sampled functions, norms and spectra.

The pieces build on each other bottom-up:
1. svfun: slowly varying functions and their class audits
2. grid / norms: sampled functions, rearrangements, Lorentz-Karamata and mixed norms
3. spectral: Fourier coefficients, dyadic blocks and hyperbolic crosses
4. besov: the class functional and the extremal polynomials
"""

from lkapprox.spaces.besov import (
    BesovParams,
    BesovParts,
    DerivedParams,
    TheoremParams,
    besov_functional,
    besov_parts,
    block_norm_ratio,
    derive_theorem_params,
    dirichlet_block,
    dirichlet_prediction,
    extremal_f1,
    extremal_f2,
    normalize_member,
)
from lkapprox.spaces.errors import (
    AliasingError,
    CatalogError,
    DimensionMismatchError,
    DomainError,
    EmptyIndexSetError,
    HypothesisError,
    LKError,
    ParseError,
    TailToleranceError,
)
from lkapprox.spaces.grid import (
    CATALOG,
    GridFunction,
    RearrangedProfile,
    TestFunction,
    iterated_rearrangement,
    rearrange_1d,
    rearrange_axis,
    sample,
)
from lkapprox.spaces.norms import (
    MixedSeqParams,
    ReadingComparison,
    SpaceParams,
    aniso_lk_norm,
    compare_readings,
    lk_norm_1d,
    lorentz_norm,
    lp_norm_reference,
    mixed_seq_norm,
)
from lkapprox.spaces.spectral import (
    BlockIndex,
    CrossSpec,
    SpectralFunction,
    analyze,
    block_decomposition,
    block_of,
    cross_blocks,
    cross_residual,
    cross_size,
    dyadic_block,
    minimal_sizes,
    project_onto_cross,
    rho_set,
    rho_size,
    shell_kappa,
    shell_Y,
    synthesize,
)
from lkapprox.spaces.svfun import (
    C_SLACK,
    CERT_EPS,
    RATIO_TOL,
    ClassReport,
    SVFunction,
    WeightV,
    check_almost_increasing,
    check_sv_class,
    check_svl_class,
    dyadic_grid,
    sv_eval,
    sv_quotient,
    weight_eval,
)

__all__ = [
    # Errors
    "LKError",
    "DomainError",
    "DimensionMismatchError",
    "AliasingError",
    "CatalogError",
    "ParseError",
    "HypothesisError",
    "EmptyIndexSetError",
    "TailToleranceError",
    # Slowly varying functions
    "C_SLACK",
    "CERT_EPS",
    "RATIO_TOL",
    "SVFunction",
    "WeightV",
    "ClassReport",
    "sv_eval",
    "weight_eval",
    "sv_quotient",
    "dyadic_grid",
    "check_almost_increasing",
    "check_sv_class",
    "check_svl_class",
    # Grids and rearrangements
    "CATALOG",
    "GridFunction",
    "RearrangedProfile",
    "TestFunction",
    "rearrange_1d",
    "rearrange_axis",
    "iterated_rearrangement",
    "sample",
    # Norms
    "SpaceParams",
    "MixedSeqParams",
    "ReadingComparison",
    "lk_norm_1d",
    "lorentz_norm",
    "aniso_lk_norm",
    "compare_readings",
    "mixed_seq_norm",
    "lp_norm_reference",
    # Spectra
    "BlockIndex",
    "CrossSpec",
    "SpectralFunction",
    "analyze",
    "synthesize",
    "minimal_sizes",
    "block_of",
    "rho_set",
    "rho_size",
    "dyadic_block",
    "block_decomposition",
    "cross_blocks",
    "cross_size",
    "shell_Y",
    "shell_kappa",
    "project_onto_cross",
    "cross_residual",
    # Besov class
    "BesovParams",
    "BesovParts",
    "DerivedParams",
    "TheoremParams",
    "besov_parts",
    "besov_functional",
    "normalize_member",
    "dirichlet_block",
    "dirichlet_prediction",
    "block_norm_ratio",
    "derive_theorem_params",
    "extremal_f1",
    "extremal_f2",
]
