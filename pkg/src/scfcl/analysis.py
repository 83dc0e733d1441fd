"""
Closed-form relations for fault current limiting and saturated-core limiter design.

All voltages are peak values. These functions double as oracles for the transient simulator.
"""

from __future__ import annotations

import dataclasses
import math

from .material import mu_0


class Resonance(ArithmeticError):
    """The parallel LC limiter is tuned to the network frequency; its impedance is unbounded."""


@dataclasses.dataclass(frozen=True)
class LineParams:
    U_peak: float
    omega: float
    R_L: float
    L_L: float

    def __post_init__(self) -> None:
        if not (self.omega > 0 and self.R_L > 0 and self.L_L >= 0):
            raise ValueError("line parameters must satisfy omega > 0, R_L > 0, L_L >= 0")

    @staticmethod
    def from_frequency(U_peak: float, frequency: float, R_L: float, L_L: float) -> LineParams:
        return LineParams(U_peak, 2 * math.pi * frequency, R_L, L_L)

    @property
    def phi_L(self) -> float:
        """Impedance angle of the line [rad]."""
        return math.atan2(self.omega * self.L_L, self.R_L)

    @property
    def Z_abs(self) -> float:
        return math.hypot(self.R_L, self.omega * self.L_L)

    @property
    def tau(self) -> float:
        return self.L_L / self.R_L

    @property
    def steady_amplitude(self) -> float:
        """Prospective (bolted) fault current amplitude [A]."""
        return self.U_peak / self.Z_abs


def fault_current(
    line: LineParams,
    I_L_tf: float,
    t_f: float,
    tau: float,
    t: float,
    *,
    phase: float = 0.0,
    literal: bool = False,
) -> float:
    """
    Line current after a bolted fault at ``t_f``, for a source U_peak*sin(omega*t + phase).

    The decaying offset is the mismatch between the pre-fault current and the steady fault sinusoid at
    the inception instant. ``literal=True`` instead multiplies the exponential by the time-varying
    sinusoid, which does not satisfy the initial condition; it is kept for comparison only.
    """
    if t < t_f:
        raise ValueError(f"t={t} precedes the fault inception t_f={t_f}")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    amp = line.steady_amplitude
    steady = amp * math.sin(line.omega * t + phase - line.phi_L)
    at_tf = amp * math.sin(line.omega * (t if literal else t_f) + phase - line.phi_L)
    return steady + (I_L_tf - at_tf) * math.exp(-(t - t_f) / tau)


def time_constants(R_L: float, L_L: float, R_FCL: float = 0.0, L_FCL: float = 0.0) -> tuple[float, float]:
    """(tau with a resistive limiter, tau with an inductive limiter) [s]."""
    if not R_L > 0:
        raise ValueError(f"R_L must be positive, got {R_L}")
    return L_L / (R_L + R_FCL), (L_L + L_FCL) / R_L


def resonant_impedance(omega: float, L_FCL: float, C_FCL: float) -> float:
    """Signed reactance omega*L / (1 - omega^2 L C) of the parallel LC limiter [ohm]."""
    if not (omega > 0 and L_FCL > 0 and C_FCL >= 0):
        raise ValueError("omega and L_FCL must be positive, C_FCL non-negative")
    den = 1.0 - omega * omega * L_FCL * C_FCL
    if abs(den) < 1e-9:
        raise Resonance(f"omega^2 L C = {1 - den:.12g}; impedance is unbounded at resonance")
    return omega * L_FCL / den


def inductances(N: float, A: float, l_mean: float, mu_r: float, mu_r_sat: float) -> tuple[float, float]:
    """Winding inductance for the unsaturated and saturated relative permeabilities [H]."""
    k = mu_0 * N * N * A / l_mean
    return mu_r * k, mu_r_sat * k


def saturation_margin(N_dc: float, I_dc: float, N_ac: float, I_L_max: float, H_sat: float, l_mean: float) -> tuple[bool, float]:
    """
    Whether the dc bias keeps the core saturated at the peak line current, and the safe-zone width
    H_s = (N_dc I_dc - N_ac I_L_max) / l_mean - H_sat [A/m].
    """
    net = N_dc * I_dc - N_ac * I_L_max
    return net > H_sat * l_mean, net / l_mean - H_sat


def induced_dc_overvoltage(N_dc: float, N_ac: float, U_L_peak: float) -> float:
    """Voltage transformed into the dc winding by a perfectly coupled ac winding [V]."""
    return N_dc / N_ac * U_L_peak


def aux_turns(N_ac: int, I_L: float, I_dc: float) -> int:
    """Auxiliary dc turns whose MMF balances the ac winding's, rounded up."""
    if not I_dc > 0:
        raise ValueError(f"I_dc must be positive, got {I_dc}")
    # Round away float noise before the ceiling so exact ratios stay exact.
    return int(math.ceil(round(N_ac * I_L / I_dc, 9)))


def inductive_dc_bias(mu_sat: float, N_dc: float, I_dc: float, l_mean_outer: float, B_sat: float, H_sat: float) -> tuple[float, float]:
    """
    dc flux density in the middle and outer legs of the inductive limiter [T].

    ``mu_sat`` is an absolute permeability [H/m] (the slope of the saturated branch), not a relative one.
    """
    B_o = mu_sat * N_dc * I_dc / l_mean_outer + (B_sat - mu_sat * H_sat)
    return 0.0, B_o


def inductive_fcl_inductances(N_ac: float, A_core_outer: float, l_mean_outer: float, l_gap: float) -> tuple[float, float]:
    """(saturated, linear) inductance of the inductive limiter [H]."""
    L_sat = mu_0 * N_ac * N_ac * A_core_outer / (l_mean_outer + l_gap)
    L_lin = mu_0 * N_ac * N_ac * 2 * A_core_outer / l_gap
    return L_sat, L_lin
