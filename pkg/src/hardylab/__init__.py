"""Hardy-space numerics for discrete-time signals and systems.

Time-domain convolution systems, boundary-grid Fourier analysis,
rational transfer functions, inner/outer factorization, Hankel/Toeplitz
operators with best causal approximation, minimal-norm disk
interpolation, cascade model matching, band-limited sampling, and the
dyadic model of the Dirichlet space.
"""

from .errors import ConvergenceError, DomainError
from .signals import (
    Signal,
    StabilityReport,
    convolve,
    shift,
    lp_norm,
    stability_report,
    linf_extremal_witness,
)
from .spectrum import (
    BoundaryGrid,
    DiskPoint,
    SupremumEstimate,
    fourier_grid,
    grid_to_coefficients,
    z_transform_eval,
    convolution_theorem_check,
    sup_norm_grid,
    refine_sup,
    poisson_value,
    szego_kernel,
)
from .rational import (
    Polynomial,
    RationalFunction,
    PoleZeroReport,
    poly_roots,
    classify,
    impulse_response,
    feedback_closure,
    compose_mobius,
)
from .inner_outer import (
    InnerFunction,
    OuterFunction,
    BlaschkeDiagnostic,
    WeakFactorization,
    blaschke_factor,
    inner_eval,
    blaschke_condition,
    outer_from_log_modulus,
    factorize_rational,
    h1_weak_factor,
)
from .operators import (
    HankelOperatorData,
    SchmidtPair,
    HankelNormResult,
    ContractionMatrix,
    AakResult,
    ToeplitzBracket,
    VonNeumannReport,
    hankel_from_symbol,
    hankel_matrix,
    hankel_norm,
    hankel_bilinear_form,
    nehari_distance,
    best_causal_approx,
    toeplitz_apply,
    toeplitz_norm_lower,
    von_neumann_check,
    bmoa_carleson_estimate,
)
from .pick import (
    PickProblem,
    FeasibilityReport,
    pick_matrix,
    is_feasible,
    minimal_radius,
    solve_pick,
)
from .model_matching import (
    MatchProblem,
    PickReduction,
    MatchSolution,
    MatchReport,
    reduce_to_pick,
    model_match,
    verify_match,
)
from .sampling import (
    SampleSet,
    sinc,
    reconstruct,
    reconstruct_with_bound,
    sample_energy,
    orthonormality_check,
)
from .dirichlet import (
    DyadicTree,
    TreeFunction,
    TreeMeasure,
    I_op,
    delta_op,
    tree_norm,
    tree_inner,
    tree_kernel,
    tree_carleson_constant,
    dirichlet_kernel,
    dirichlet_norm,
    derivative_area_norm,
    embed_tree_in_disk,
    restrict_to_tree,
)

__version__ = "0.1.0"
