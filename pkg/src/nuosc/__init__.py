"""Exact spectrum, expectation values and numerical cross-checks for a charged
particle in an isotropic oscillator plus inverse-square potential under a
uniform magnetic field, in two dimensions.
"""

from .errors import (
    ComplexBranch,
    ConfigError,
    DegenerateStep,
    DomainError,
    GridTooCoarse,
    NoConvergenceUnderRefinement,
    NoSignChange,
    NonConvergence,
    NuoscError,
)
from .model import (
    DEFAULT_MOLECULES,
    FieldParams,
    MoleculeConstants,
    QuantumNumbers,
    WorkingUnits,
    effective_potential,
    read_molecules,
    to_nu_coefficients,
    working_units,
)
from .nu_core import NUCoefficients, NUConstants, derive_constants, energy_residual, solve_energy
from .observables import (
    SusceptibilityConstants,
    energy,
    expectation_p2,
    expectation_r2,
    expectation_T,
    expectation_V,
    hft_check,
    magnetic_moment,
    spectrum_record,
    susceptibility,
)
from .specfun import gauss_laguerre, laguerre, ln_gamma
from .wavefunction import RadialState, node_count, radial_state, radial_value

__version__ = "0.1.0"

__all__ = [
    "ComplexBranch",
    "ConfigError",
    "DegenerateStep",
    "DomainError",
    "GridTooCoarse",
    "NoConvergenceUnderRefinement",
    "NoSignChange",
    "NonConvergence",
    "NuoscError",
    "DEFAULT_MOLECULES",
    "FieldParams",
    "MoleculeConstants",
    "QuantumNumbers",
    "WorkingUnits",
    "effective_potential",
    "read_molecules",
    "to_nu_coefficients",
    "working_units",
    "SusceptibilityConstants",
    "energy",
    "expectation_p2",
    "expectation_r2",
    "expectation_T",
    "expectation_V",
    "hft_check",
    "magnetic_moment",
    "spectrum_record",
    "susceptibility",
    "NUCoefficients",
    "NUConstants",
    "derive_constants",
    "energy_residual",
    "solve_energy",
    "gauss_laguerre",
    "laguerre",
    "ln_gamma",
    "RadialState",
    "node_count",
    "radial_state",
    "radial_value",
]
