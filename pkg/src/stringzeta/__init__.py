"""Spectral sum rules, bounds and estimates for inhomogeneous strings.

Solves nothing by diagonalization unless asked: Z(s) = sum_n E_n^-s for
-psi'' = E Sigma psi on [-a/2, a/2] comes from integrals of Green's
functions, and eigenvalue bounds and estimates follow from Z(s).
"""

from .asymptotics import (AsymptoticCoefficients, TailSum, asym_coeffs,
                          homogeneous_eigenvalue, tail_sum)
from .density import (DensityProfile, borg, custom, evaluate, gottlieb_transform,
                      horgan_chan, mean_density, mobius_map, oscillating, parse_density,
                      sigma, table, table_from_csv, total_sigma, uniform)
from .diagrams import CycleDiagram, diagram_count, enumerate_diagrams, prefactor
from .errors import (AccuracyError, CapabilityError, DataError, DomainError,
                     NumericalError, OrderingError, ParameterError, ProfileError,
                     StringZetaError, TailInconsistencyError)
from .extrapolate import (BoundPair, EstimateSequence, ShanksTable, berry_estimate,
                          berry_sequence, euler_bounds, excited_estimate, shanks,
                          shanks_table, waring_sequence)
from .greens import BC, BoundaryCondition, green, green_diagonal, green_plus
from .oracle import SpectrumResult, solve_spectrum, zeta_from_spectrum
from .sumrules import (QuadratureConfig, SumIdentityReport, SumRuleTable, sum_rules,
                       verify_sum_identities, zero_mode_gap, zeta_diagram, zeta_kernel_trace,
                       zeta_one)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
