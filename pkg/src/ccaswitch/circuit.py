"""Circuit model of the flux-tunable coupler between two resonators.

Two identical transmission line resonators are joined through a
charge-qubit-style superconducting loop (two junctions, external flux)
operated deep in the harmonic regime E_J >> E_C.  The derivation chain

    flux -> E_J -> coupler frequency -> renormalized mode frequencies
         -> resonator-coupler couplings -> effective resonator-resonator g

turns raw device parameters into the effective hopping that drives the
scattering switch (lam = (g - t) / t).

Unit conventions
----------------
Two input conventions are supported and must agree:

* "si"    - capacitances in farads, energies (E_C, E_J0) in joules; hbar
            is restored explicitly where needed.
* "paper" - energies given as angular frequencies (hbar = 1), e.g.
            E_C = 2 pi x 0.35e9; capacitances still in farads.

All derived quantities are reported as angular frequencies (rad/s).
"""

import math
from dataclasses import dataclass, replace

from .errors import PreconditionError

__all__ = [
    "CircuitParams",
    "CouplerDerived",
    "charging_energy",
    "josephson_energy",
    "cpb_frequency",
    "renormalized_frequencies",
    "coupling_strengths",
    "effective_coupling",
    "derive_coupler",
    "flux_to_lambda",
    "direct_coupling_ratio",
    "paper_parameters",
]

# CODATA values
E_CHARGE = 1.602176634e-19      # C
HBAR = 1.054571817e-34          # J s
PHI0 = 2.067833848e-15          # Wb, flux quantum h / 2e

HARMONIC_RATIO = 100.0          # E_J >= 100 E_C
DISPERSIVE_RATIO = 5.0          # Delta_j >= 5 |g_j|


@dataclass(frozen=True)
class CircuitParams:
    """Raw device inputs for the coupler circuit.

    Energies (josephson_energy_scale, charging_energy_override) are joules
    in "si" mode and angular frequencies (rad/s) in "paper" mode;
    tlr_frequency is rad/s and capacitances are farads in both modes.
    """

    tlr_frequency: float                 # omega, rad/s
    tlr_total_capacitance: float         # C0 * d, F
    coupling_capacitance_left: float     # C_l, F
    coupling_capacitance_right: float    # C_r, F
    josephson_energy_scale: float        # E_J^(0)
    external_flux_ratio: float = 0.0     # f = Phi_x / Phi_0
    junction_capacitance: float | None = None        # C_J, F
    charging_energy_override: float | None = None    # E_C, if given directly
    units: str = "si"

    def __post_init__(self):
        if self.units not in ("si", "paper"):
            raise PreconditionError(f"units must be 'si' or 'paper', got {self.units!r}")
        for name in ("tlr_frequency", "tlr_total_capacitance",
                     "coupling_capacitance_left", "coupling_capacitance_right",
                     "josephson_energy_scale"):
            if not getattr(self, name) > 0:
                raise PreconditionError(f"{name} must be > 0")
        if self.junction_capacitance is None and self.charging_energy_override is None:
            raise PreconditionError(
                "provide junction_capacitance or charging_energy_override")
        if self.junction_capacitance is not None and not self.junction_capacitance > 0:
            raise PreconditionError("junction_capacitance must be > 0")


@dataclass(frozen=True)
class CouplerDerived:
    """Derived coupler quantities, all as angular frequencies (rad/s)."""

    e_c: float
    e_j_eff: float
    omega_b: float
    omega_l: float
    omega_r: float
    omega_b_prime: float
    g_l: float
    g_r: float
    delta_l: float
    delta_r: float
    omega_l_prime: float
    omega_r_prime: float
    g_eff: float
    omega_b_doubleprime: float
    harmonic_regime_ok: bool
    dispersive_regime_ok: bool
    flux_past_half_quantum: bool = False

    @classmethod
    def from_modes(cls, omega_l: float, omega_r: float, omega_b_prime: float,
                   g_l: float, g_r: float) -> "CouplerDerived":
        """Synthetic three-mode parameters (for dynamics validation)."""
        d_l = omega_b_prime - omega_l
        d_r = omega_b_prime - omega_r
        g, wl, wr, wb = effective_coupling(g_l, g_r, d_l, d_r,
                                           omega_l, omega_r, omega_b_prime)
        dispersive = (abs(d_l) >= DISPERSIVE_RATIO * abs(g_l)
                      and abs(d_r) >= DISPERSIVE_RATIO * abs(g_r))
        return cls(
            e_c=math.nan, e_j_eff=math.nan, omega_b=math.nan,
            omega_l=omega_l, omega_r=omega_r, omega_b_prime=omega_b_prime,
            g_l=g_l, g_r=g_r, delta_l=d_l, delta_r=d_r,
            omega_l_prime=wl, omega_r_prime=wr, g_eff=g,
            omega_b_doubleprime=wb,
            harmonic_regime_ok=True, dispersive_regime_ok=dispersive,
        )


def charging_energy(c_left: float, c_right: float, c_junction: float) -> float:
    """E_C = 2 e^2 / (C_l + C_r + 2 C_J), in joules."""
    for name, c in (("c_left", c_left), ("c_right", c_right),
                    ("c_junction", c_junction)):
        if not c > 0:
            raise PreconditionError(f"{name} must be > 0, got {c}")
    return 2.0 * E_CHARGE**2 / (c_left + c_right + 2.0 * c_junction)


def josephson_energy(e_j0: float, flux_ratio: float) -> float:
    """E_J(Phi_x) = 2 E_J0 cos(pi Phi_x / Phi_0), same units as e_j0.

    Negative values (flux past half a quantum) are returned as-is; the
    caller flags them.
    """
    return 2.0 * e_j0 * math.cos(math.pi * flux_ratio)


def cpb_frequency(e_c: float, e_j_eff: float, units: str = "paper") -> float:
    """Harmonic coupler frequency omega_b = sqrt(2 E_C E_J), rad/s."""
    if not e_j_eff > 0:
        raise PreconditionError(
            f"effective Josephson energy must be > 0 (got {e_j_eff}); "
            "flux is past half a quantum")
    if units == "paper":
        return math.sqrt(2.0 * e_c * e_j_eff)
    return math.sqrt(2.0 * e_c * e_j_eff) / HBAR


def renormalized_frequencies(omega: float, c_left: float, c_right: float,
                             c_total: float, omega_b: float,
                             e_c: float, e_j_eff: float,
                             units: str = "paper"):
    """Coupling-shifted mode frequencies (omega_l, omega_r, omega_b')."""
    omega_l = omega * (1.0 + c_left / c_total)
    omega_r = omega * (1.0 + c_right / c_total)
    root = math.sqrt(e_c / (2.0 * e_j_eff))
    # E_C / E_J is dimensionless, so the hbar-restored shift has the same
    # form in both unit modes (paper mode absorbs hbar into the flux quantum)
    shift = (c_left + c_right) * omega_b**2 * (PHI0 / (2.0 * math.pi))**2 \
        * root / HBAR
    return omega_l, omega_r, omega_b + shift


def coupling_strengths(omega: float, c_left: float, c_right: float,
                       c_total: float, omega_b: float,
                       e_c: float, e_j_eff: float,
                       units: str = "paper"):
    """Resonator-coupler couplings (g_l, g_r), rad/s; sign is negative."""
    quart = (e_c / (2.0 * e_j_eff)) ** 0.25
    if units == "paper":
        # hbar = 1 form: the reduced flux quantum absorbs one sqrt(hbar)
        phi_red = PHI0 / (2.0 * math.pi * math.sqrt(HBAR))
        volt = math.sqrt(omega / c_total)
        g_l = -c_left * omega_b * phi_red * volt * quart
        g_r = -c_right * omega_b * phi_red * volt * quart
    else:
        volt = math.sqrt(HBAR * omega / c_total)
        g_l = -c_left * omega_b * (PHI0 / (2.0 * math.pi)) * volt * quart / HBAR
        g_r = -c_right * omega_b * (PHI0 / (2.0 * math.pi)) * volt * quart / HBAR
    return g_l, g_r


def effective_coupling(g_l: float, g_r: float, delta_l: float, delta_r: float,
                       omega_l: float = 0.0, omega_r: float = 0.0,
                       omega_b_prime: float = 0.0):
    """Adiabatic-elimination results.

    Returns (g, omega_l', omega_r', omega_b'') with

        g = g_l g_r (Delta_l + Delta_r) / (2 Delta_l Delta_r),
        omega_j' = omega_j + g_j^2 / Delta_j,
        omega_b'' = omega_b' - g_l^2 / Delta_l - g_r^2 / Delta_r.
    """
    if delta_l == 0.0 or delta_r == 0.0:
        raise PreconditionError("zero detuning: adiabatic elimination invalid")
    g = g_l * g_r * (delta_l + delta_r) / (2.0 * delta_l * delta_r)
    omega_l_prime = omega_l + g_l**2 / delta_l
    omega_r_prime = omega_r + g_r**2 / delta_r
    omega_b_dd = omega_b_prime - g_l**2 / delta_l - g_r**2 / delta_r
    return g, omega_l_prime, omega_r_prime, omega_b_dd


def derive_coupler(params: CircuitParams) -> CouplerDerived:
    """Run the full derivation chain for one flux point."""
    units = params.units
    if params.charging_energy_override is not None:
        e_c = params.charging_energy_override
    else:
        e_c_joule = charging_energy(params.coupling_capacitance_left,
                                    params.coupling_capacitance_right,
                                    params.junction_capacitance)
        e_c = e_c_joule if units == "si" else e_c_joule / HBAR

    e_j = josephson_energy(params.josephson_energy_scale,
                           params.external_flux_ratio)
    flux_past_half = e_j <= 0.0

    omega_b = cpb_frequency(e_c, e_j, units)
    omega_l, omega_r, omega_b_prime = renormalized_frequencies(
        params.tlr_frequency, params.coupling_capacitance_left,
        params.coupling_capacitance_right, params.tlr_total_capacitance,
        omega_b, e_c, e_j, units)
    g_l, g_r = coupling_strengths(
        params.tlr_frequency, params.coupling_capacitance_left,
        params.coupling_capacitance_right, params.tlr_total_capacitance,
        omega_b, e_c, e_j, units)
    delta_l = omega_b_prime - omega_l
    delta_r = omega_b_prime - omega_r
    g, omega_l_prime, omega_r_prime, omega_b_dd = effective_coupling(
        g_l, g_r, delta_l, delta_r, omega_l, omega_r, omega_b_prime)

    # report E_C, E_J as angular frequencies regardless of input mode
    e_c_out = e_c if units == "paper" else e_c / HBAR
    e_j_out = e_j if units == "paper" else e_j / HBAR

    return CouplerDerived(
        e_c=e_c_out, e_j_eff=e_j_out, omega_b=omega_b,
        omega_l=omega_l, omega_r=omega_r, omega_b_prime=omega_b_prime,
        g_l=g_l, g_r=g_r, delta_l=delta_l, delta_r=delta_r,
        omega_l_prime=omega_l_prime, omega_r_prime=omega_r_prime,
        g_eff=g, omega_b_doubleprime=omega_b_dd,
        harmonic_regime_ok=e_j >= HARMONIC_RATIO * e_c,
        dispersive_regime_ok=(abs(delta_l) >= DISPERSIVE_RATIO * abs(g_l)
                              and abs(delta_r) >= DISPERSIVE_RATIO * abs(g_r)),
        flux_past_half_quantum=flux_past_half,
    )


def flux_to_lambda(params: CircuitParams, t: float):
    """Map the flux point to the scattering parameter lam = (t' - t) / t.

    The effective coupling plays the role of the defect hopping t'.  A
    negative g (negative detuning) gives lam < -1; the scattering formula
    still applies but the regime is flagged through the derived record.
    """
    if not t > 0:
        raise PreconditionError(f"uniform hopping t must be > 0, got {t}")
    derived = derive_coupler(params)
    t_prime = derived.g_eff  # |g| when positive; kept signed when negative
    lam = (t_prime - t) / t
    return lam, derived


def direct_coupling_ratio(params: CircuitParams) -> float:
    """min(C_sum_j / C_j): how strongly the coupler route dominates the
    direct resonator-resonator Coulomb term (C_sum_j = C0 d / 2 + C_j)."""
    half = params.tlr_total_capacitance / 2.0
    return min(
        (half + params.coupling_capacitance_left) / params.coupling_capacitance_left,
        (half + params.coupling_capacitance_right) / params.coupling_capacitance_right,
    )


def paper_parameters(units: str = "paper", flux_ratio: float = 0.0) -> CircuitParams:
    """The quoted device point: omega = 2 pi x 3 GHz, C_l = C_r = 6 fF,
    C0 d = 1.6 pF, E_C = 2 pi x 0.35 GHz, E_J0 = 1e3 E_C."""
    e_c = 2.0 * math.pi * 0.35e9
    if units == "si":
        e_c *= HBAR
    return CircuitParams(
        tlr_frequency=2.0 * math.pi * 3e9,
        tlr_total_capacitance=1.6e-12,
        coupling_capacitance_left=6e-15,
        coupling_capacitance_right=6e-15,
        josephson_energy_scale=1e3 * e_c,
        external_flux_ratio=flux_ratio,
        charging_energy_override=e_c,
        units=units,
    )


def at_flux(params: CircuitParams, flux_ratio: float) -> CircuitParams:
    """Same device at a different flux point."""
    return replace(params, external_flux_ratio=flux_ratio)
