"""Numerical laboratory for Hankel operators on the Paley-Wiener space
of the unit disc, built from translated radial bump symbols.

The package verifies, at desk scale, every step of the estimate chain
for these operators: certified disjointness of the output spectral
regions, the orthogonal decomposition of the operator, the pi r^2 upper
bound on the operator norm, the duality lower bound for the
bounded-symbol infimum, and the growth of their ratio with the number of
bumps.
"""

from ._backend import backend_name
from .bounds import (
    BoundsReport,
    ScalingResult,
    TailBound,
    closed_form_lower_bound,
    compute_report,
    duality_lower_bound,
    estimate_tail_constant,
    scaling_experiment,
)
from .fourier import (
    DEFAULT_PROFILE,
    AnnularSectorRegion,
    DiscRegion,
    LensRegion,
    PlanarGrid,
    RadialBump,
    RadialProfile,
    bump_profile_eval,
    disc_quadrature,
    inverse_radial_transform,
    j0,
    tail_mass,
)
from .geometry import (
    R0,
    AngularInterval,
    admissible_radius,
    certify_disjoint,
    circle_intersection_angles,
    closed_form_half_width,
    component_interval,
    lens_area,
)
from .hankel import (
    HankelKernel,
    apply,
    build_kernel,
    cross_orthogonality,
    hs_norm_direct,
    hs_norm_lens,
    operator_norm,
    peng_integral,
)
from .symbols import (
    SymbolSpec,
    bhat_norms,
    build_symbol,
    f_l1_norm,
    f_spatial_eval,
    phi_hat_eval,
)

__version__ = "0.1.0"
