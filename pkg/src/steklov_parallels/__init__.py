"""Steklov transmission eigenvalues of parallel circles on the sphere.

Spectra of weighted circle configurations on the conformal cylinder, the
closed-form two-circle case, balanced catenoid stacks in the unit ball and
a maximizer for the normalized first eigenvalue.
"""

from .catenoid import (
    AnglePair,
    BalancedConfiguration,
    Catenary,
    balance_residuals,
    build_sequence,
    catenary_from_angles,
    circle_intersections,
    configuration_area,
    derive_cylinder_data,
    find_symmetric_balanced,
    measure_angles,
)
from .cylinder import (
    CircleConfig,
    TransmissionSpectrum,
    mode_problem,
    reduce_zero_weights,
    tau1_bar,
    transmission_spectrum,
)
from .drum import DrumParams, DrumProfile, drum_eigenvalues, drum_profile, maximize_F
from .errors import InputError, NonConvergence, NumericDegeneracy, SteklovError
from .mesh import TriMesh, mesh
from .numerics import Bracket, find_root, solve_t1, solve_t2
from .optimizer import (
    OptimizationResult,
    criticality_report,
    maximize_full,
    maximize_weights,
)

__version__ = "0.1.0"

__all__ = [
    "AnglePair", "BalancedConfiguration", "Bracket", "Catenary", "CircleConfig",
    "DrumParams", "DrumProfile", "InputError", "NonConvergence", "NumericDegeneracy",
    "OptimizationResult", "SteklovError", "TransmissionSpectrum", "TriMesh",
    "balance_residuals", "build_sequence", "catenary_from_angles", "circle_intersections",
    "configuration_area", "criticality_report", "derive_cylinder_data", "drum_eigenvalues",
    "drum_profile", "find_root", "find_symmetric_balanced", "maximize_F", "maximize_full",
    "maximize_weights", "measure_angles", "mesh", "mode_problem", "reduce_zero_weights",
    "solve_t1", "solve_t2", "tau1_bar", "transmission_spectrum",
]
