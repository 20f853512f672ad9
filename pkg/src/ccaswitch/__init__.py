"""Quantum switch for single-photon transport in a coupled resonator array.

A defect bond of tunable strength t' = (1 + lam) t in a tight-binding
chain of resonators acts as a switch for an incident photon; the
transmission has a closed form in (lam, k).  The package bundles the
closed-form solution, an independent wavepacket-propagation oracle, and
the circuit-level model mapping an external magnetic flux to the
effective bond strength.
"""

from .circuit import (CircuitParams, CouplerDerived, charging_energy,
                      cpb_frequency, coupling_strengths, derive_coupler,
                      direct_coupling_ratio, effective_coupling,
                      flux_to_lambda, josephson_energy, paper_parameters,
                      renormalized_frequencies)
from .dynamics import (PropagationResult, WavepacketSpec, default_wavepacket,
                       evolve_on_grid, gaussian_packet, measure_transmission,
                       propagate, validate_adiabatic_elimination)
from .errors import (ConfigError, ContractViolation, NormDriftError,
                     PreconditionError)
from .lattice import (LatticeSpec, SingleExcitationState, build_hamiltonian,
                      diagonalize_periodic, dispersion, group_velocity)
from .scattering import (ScatteringSolution, fold_wavevector, reflection,
                         scattering_amplitudes, solve_scattering,
                         transmission, verify_ansatz_residual)

__version__ = "0.1.0"
