"""Transient co-simulation of saturated-core fault current limiters."""

from .cosim import (
    CircuitScenario,
    DcSource,
    FaultSpec,
    SimConfig,
    SummaryReport,
    TimeSeries,
    energy_drift,
    extract_metrics,
    measure_induced_dc_voltage,
    run,
)
from .material import SOFT_IRON, BHCurve, b_of_h, h_of_b, mu_differential
from .mec import Branch, MagneticNetwork, MecSolution, NonConvergence, WindingLink, solve
from .topology import GeometrySpec, ScfclModel, WindingSpec, build, dc_bias_check

__version__ = "0.1.0"

__all__ = [
    "BHCurve",
    "Branch",
    "CircuitScenario",
    "DcSource",
    "FaultSpec",
    "GeometrySpec",
    "MagneticNetwork",
    "MecSolution",
    "NonConvergence",
    "SOFT_IRON",
    "ScfclModel",
    "SimConfig",
    "SummaryReport",
    "TimeSeries",
    "WindingLink",
    "WindingSpec",
    "b_of_h",
    "build",
    "dc_bias_check",
    "energy_drift",
    "extract_metrics",
    "h_of_b",
    "measure_induced_dc_voltage",
    "mu_differential",
    "run",
    "solve",
]
