"""Defect tight-binding chain of coupled resonators.

A chain of N identical resonators with uniform nearest-neighbor hopping t,
except for one tunable bond of strength t' = (1 + lam) * t between sites
l and l + 1 (sites are numbered 1..N).  The site spacing is fixed to 1, so
wavevectors are dimensionless.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError

__all__ = [
    "LatticeSpec",
    "SingleExcitationState",
    "build_hamiltonian",
    "dispersion",
    "group_velocity",
    "diagonalize_periodic",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry and couplings of the defect chain.

    Attributes
    ----------
    n_sites : number of resonators N (>= 3).
    cavity_frequency : common resonator frequency omega (angular units).
    hopping : uniform hopping t > 0 (angular units).
    defect_bond_index : l in [1, N-1]; the tunable bond joins sites l, l+1.
    lam : dimensionless bond detuning, t' = (1 + lam) * t.
    """

    n_sites: int
    cavity_frequency: float = 0.0
    hopping: float = 1.0
    defect_bond_index: int = 1
    lam: float = 0.0

    def __post_init__(self):
        if self.n_sites < 3:
            raise PreconditionError(f"n_sites must be >= 3, got {self.n_sites}")
        if not (1 <= self.defect_bond_index <= self.n_sites - 1):
            raise PreconditionError(
                f"defect_bond_index must lie in [1, {self.n_sites - 1}], "
                f"got {self.defect_bond_index}"
            )
        if not self.hopping > 0:
            raise PreconditionError(f"hopping must be > 0, got {self.hopping}")
        if not np.isfinite(self.lam):
            raise PreconditionError(f"lam must be finite, got {self.lam}")

    @property
    def defect_hopping(self) -> float:
        """t' = (1 + lam) * t, recomputed from the stored fields."""
        return (1.0 + self.lam) * self.hopping

    @property
    def negative_defect_hopping(self) -> bool:
        """True when lam < -1, i.e. t' < 0 (valid but undiscussed regime)."""
        return self.lam < -1.0


@dataclass
class SingleExcitationState:
    """One photon shared across the chain: amplitudes A_n and a time stamp."""

    amplitudes: np.ndarray
    time: float = 0.0

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


def build_hamiltonian(spec: LatticeSpec) -> np.ndarray:
    """Single-excitation Hamiltonian of the open defect chain.

    Returns a real symmetric tridiagonal N x N matrix: omega on the
    diagonal, -t on the off-diagonals, and -t' on the defect bond
    (matrix indices l-1, l for 1-indexed bond l).
    """
    n = spec.n_sites
    h = np.zeros((n, n))
    np.fill_diagonal(h, spec.cavity_frequency)
    for i in range(n - 1):
        h[i, i + 1] = h[i + 1, i] = -spec.hopping
    d = spec.defect_bond_index - 1
    h[d, d + 1] = h[d + 1, d] = -spec.defect_hopping
    return h


def dispersion(k, omega: float, t: float):
    """Band energy Omega_k = omega - 2 t cos k of the uniform chain."""
    return omega - 2.0 * t * np.cos(k)


def group_velocity(k, t: float):
    """Packet speed v_g = d Omega_k / dk = 2 t sin k."""
    return 2.0 * t * np.sin(k)


def diagonalize_periodic(n_sites: int, omega: float, t: float):
    """Band structure of the uniform periodic chain.

    Returns [(k_m, Omega_{k_m})] for k_m = 2 pi m / N with
    -N/2 < m <= N/2, i.e. the first Brillouin zone with k = pi included
    once and k = -pi excluded.  The energies coincide (as a multiset) with
    the eigenvalues of the periodic uniform Hamiltonian.
    """
    if n_sites < 3:
        raise PreconditionError(f"n_sites must be >= 3, got {n_sites}")
    out = []
    for m in range(-((n_sites - 1) // 2), n_sites // 2 + 1):
        k = 2.0 * np.pi * m / n_sites
        out.append((k, float(dispersion(k, omega, t))))
    return out


def build_periodic_hamiltonian(n_sites: int, omega: float, t: float) -> np.ndarray:
    """Uniform chain with the wrap-around bond (site N coupled to site 1)."""
    spec = LatticeSpec(n_sites=n_sites, cavity_frequency=omega,
                       hopping=t if t > 0 else 1.0, lam=0.0)
    h = build_hamiltonian(spec) if t > 0 else omega * np.eye(n_sites)
    if t > 0:
        h[0, n_sites - 1] = h[n_sites - 1, 0] = -t
    return h
