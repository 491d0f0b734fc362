"""The quantum dilogarithm Phi_b, its Borel transform G(xi, z) with the pole
lattice, Laplace transforms along rays, Stokes jumps and error bounds."""

from .borel import (
    DeltaStrip,
    OnWall,
    PoleRecord,
    borel_G,
    cone_of,
    enumerate_poles,
    inv_one_plus_exp_bound,
    numeric_residue,
    pole_location,
    pole_residue,
    residue_const,
    sup_bound_G,
)
from .errors import (
    BranchCut,
    CircleOverlapsPole,
    DomainError,
    NonConvergence,
    PoleHit,
    PoleProximity,
    QdilogError,
    RayHitsPole,
    SectorError,
    UnknownCheck,
    VanishingFactor,
    ZeroIndex,
)
from .faddeev import (
    BParam,
    EvalMethod,
    check_functional_eqs,
    check_inversion,
    fourier_sech,
    log_phi,
    log_phi_integral,
    log_phi_product,
    log_phi_woronowicz,
    phi,
    phi_integral,
    phi_product,
    phi_zero,
    poles_zeros,
)
from .laplace import (
    RaySpec,
    borel_sum,
    laplace_ray,
    laplace_vertical,
    optimal_truncation,
    stokes_jump,
    truncated_series,
    watson_bound,
)
from .quadrature import QuadratureConfig
from .special import (
    asymptotic_coefficient,
    bernoulli_half,
    dilog,
    li2_derivative_poly,
    log_qpochhammer,
)
from .verify import VerificationReport, coefficient_match, run_suite

__version__ = "0.1.0"
