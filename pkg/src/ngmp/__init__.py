"""Bound states of diatomic molecules in the generalized Morse-like potential."""

from .approximation import ApproximationScheme, approx_error_profile, centrifugal_approx
from .errors import (DegenerateParameter, DivisionByZero, InvalidExponent, NGMPError, NonNormalizable,
                     NoRealBoundState, ParseError, SingularRadius, TailNotConverged, ValidationError)
from .molecules import (CONSTANTS, HBAR_C, MoleculeRecord, PhysicalConstants, builtin_molecules, get_molecule,
                        load_molecules, mu_in_natural_units)
from .potential import (CoefficientSet, PotentialParams, derive_coefficients, evaluate_potential,
                        evaluate_potential_decomposed, from_deng_fan, from_hulthen, singularity_radius)
from .spectrum import EnergyLevel, QuantumNumbers, energy, enumerate_levels, epsilon, gamma, zeta
from .wavefunction import RadialWavefunction, build_wavefunction, evaluate_radial, jacobi_polynomial, normalize

__version__ = "0.1.0"
