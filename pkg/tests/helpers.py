"""Cached transient runs shared by the test modules (each run takes a few seconds)."""

from __future__ import annotations

import functools

from scfcl.cosim import CircuitScenario, FaultSpec, SimConfig, SummaryReport, TimeSeries, extract_metrics, run
from scfcl.topology import WindingSpec, build

T_FAULT = 0.023
T_END = 0.1


def scenario(model: str, condition: str, wind: WindingSpec | None = None, r_fault: float = 1e-4) -> CircuitScenario:
    fault = FaultSpec(T_FAULT, r_fault=r_fault) if condition == "fault" else None
    return CircuitScenario(device=build(model, wind=wind), fault=fault)


@functools.lru_cache(maxsize=None)
def cached_run(model: str, condition: str, dt: float = 1e-5, wind: WindingSpec | None = None) -> TimeSeries:
    return run(scenario(model, condition, wind), SimConfig(dt=dt, t_end=T_END))


@functools.lru_cache(maxsize=None)
def cached_report(model: str, condition: str, dt: float = 1e-5) -> SummaryReport:
    ts = cached_run(model, condition, dt)
    base = cached_run("none", condition, dt)
    return extract_metrics(ts, base, scenario(model, condition))


ACCEPTANCE_LINES: list[str] = []
"""One pass/fail line per acceptance criterion, printed in the pytest terminal summary."""
