"""twistbeam: local velocity fields and vorticity of relativistic vortex beams.

Exact free-Dirac Bessel-beam solutions, the three competing local velocity
definitions (probability current, canonical momentum, symmetrized
momentum), and the radial regime analysis that separates rigid-body-like
swirl from irrotational whirlpool flow. Natural units: hbar = c = 1,
lengths in 1/mass.
"""

__version__ = "0.1.0"

from .errors import (
    BasisError,
    BesselZeroError,
    DomainError,
    InsufficientSamplesError,
    NoCrossoverError,
    ScenarioError,
    StencilCrossesAxisError,
    TwistbeamError,
    ZeroDensityError,
)
from .special import bessel_j, bessel_j_over_x, bessel_j_prime, bessel_small_arg
from .kinematics import (
    BeamParameters,
    CharacteristicRadii,
    characteristic_radii,
    derive_kinematics,
)
from .spinor import (
    BispinorGradient,
    BispinorValue,
    DiracMatrices,
    Family,
    SolutionSpec,
    SpacetimePoint,
    WEYL_MAP,
    analytic_gradient,
    dirac_matrices,
    dirac_residual,
    evaluate,
    helicity_solution,
    mixed_helicity_solution,
    scalar_mode,
    to_weyl,
    uniform_orbital_near_axis,
    uniform_orbital_solution,
)
from .bilinear import (
    DEFINITIONS,
    BilinearComparison,
    DensitySet,
    VelocityVector,
    densities,
    uniform_orbital_bilinear_check,
    velocity,
    velocity_closed_form,
)
from .vortex import (
    CirculationSample,
    Regime,
    RegimeReport,
    VortexLineVerdict,
    circulation,
    classify_profile,
    curl_fd,
    rankine_sampler,
    rigid_rotation_sampler,
    slope_sign_crossings,
    transition_radius_measured,
    velocity_phi_sampler,
    velocity_plane_sampler,
    vortex_line_verdict,
    whirlpool_sampler,
)
from .scenario import Scenario, load_scenario

__all__ = [
    "__version__",
    # errors
    "TwistbeamError",
    "DomainError",
    "BasisError",
    "ZeroDensityError",
    "BesselZeroError",
    "StencilCrossesAxisError",
    "InsufficientSamplesError",
    "NoCrossoverError",
    "ScenarioError",
    # special functions
    "bessel_j",
    "bessel_j_prime",
    "bessel_j_over_x",
    "bessel_small_arg",
    # kinematics
    "BeamParameters",
    "CharacteristicRadii",
    "derive_kinematics",
    "characteristic_radii",
    # spinor fields
    "Family",
    "SolutionSpec",
    "SpacetimePoint",
    "BispinorValue",
    "BispinorGradient",
    "DiracMatrices",
    "WEYL_MAP",
    "dirac_matrices",
    "scalar_mode",
    "evaluate",
    "helicity_solution",
    "mixed_helicity_solution",
    "uniform_orbital_solution",
    "uniform_orbital_near_axis",
    "to_weyl",
    "analytic_gradient",
    "dirac_residual",
    # bilinears and velocities
    "DEFINITIONS",
    "DensitySet",
    "VelocityVector",
    "BilinearComparison",
    "densities",
    "velocity",
    "velocity_closed_form",
    "uniform_orbital_bilinear_check",
    # vorticity
    "CirculationSample",
    "Regime",
    "RegimeReport",
    "VortexLineVerdict",
    "circulation",
    "curl_fd",
    "classify_profile",
    "slope_sign_crossings",
    "transition_radius_measured",
    "vortex_line_verdict",
    "velocity_phi_sampler",
    "velocity_plane_sampler",
    "rigid_rotation_sampler",
    "whirlpool_sampler",
    "rankine_sampler",
    # scenarios
    "Scenario",
    "load_scenario",
]
