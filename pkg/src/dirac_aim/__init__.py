"""AIM bound states of the q-deformed Dirac problem in D dimensions."""
from .angular import AngularChain, AxisSolution, ScarfParams, angular_chain, angular_wavefunction
from .config import ConfigError, RunConfig, load_config, parse_config
from .pekeris import PekerisCoeffs, centrifugal_omega, pekeris_coeffs
from .qdeform import Deformation, deformed_hyperbolic, deformed_trig, deformation_shift
from .radial import RadialConfig, RadialShape, energy_residual, radial_wavefunction, substituted_params
from .spectrum import BoundState, ProblemConfig, doublet_energies, kappa_of, residual_at, solve_bound_states

__all__ = [
    "AngularChain", "AxisSolution", "ScarfParams", "angular_chain", "angular_wavefunction",
    "ConfigError", "RunConfig", "load_config", "parse_config",
    "PekerisCoeffs", "centrifugal_omega", "pekeris_coeffs",
    "Deformation", "deformed_hyperbolic", "deformed_trig", "deformation_shift",
    "RadialConfig", "RadialShape", "energy_residual", "radial_wavefunction", "substituted_params",
    "BoundState", "ProblemConfig", "doublet_energies", "kappa_of", "residual_at", "solve_bound_states",
]
__version__ = "0.1.0"
