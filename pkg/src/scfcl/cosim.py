"""
Coupled magnetic/electric transient solver.

Electrical side, one equation per loop (flux linkage Lambda = sum of sign * N * Phi over the loop's windings):

    ac line   d/dt(L_L i + Lambda_ac) = U sin(wt + theta) - (R_L + R_eff(t)) i
    dc bias   d/dt(Lambda_dc)         = V_dc - R_dc i_dc        (voltage mode; current mode fixes i_dc)
    shorted   d/dt(Lambda_s)          = -R_s i_s

R_eff is the load resistance before the fault and the fault resistance while it is applied. The loop
equations are integrated with the theta-method (trapezoidal theta=1/2, backward Euler theta=1); each step
solves the loop currents and all magnetic nodal potentials together with one damped Newton iteration.
Resistance switching happens on step boundaries: each step uses the value at its midpoint.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Sequence
from logging import getLogger
from typing import Literal

import numpy as np
import numpy.typing as npt

from .material import coenergy_density, energy_density
from .mec import MagneticNetwork, NonConvergence, _FluxLaw
from .topology import FclDevice, ScfclModel, build

_logger = getLogger(__name__)

Array = npt.NDArray[np.float64]


@dataclasses.dataclass(frozen=True)
class FaultSpec:
    t_fault: float
    r_fault: float = 1e-4
    t_clear: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_fault) and self.t_fault >= 0):
            raise ValueError(f"fault time must be >= 0, got {self.t_fault}")
        if not (math.isfinite(self.r_fault) and self.r_fault >= 0):
            raise ValueError(f"fault resistance must be >= 0, got {self.r_fault}")
        if self.t_clear is not None and not self.t_clear > self.t_fault:
            raise ValueError("clearing time must be after the fault time")

    def active(self, t: float) -> bool:
        return t >= self.t_fault and (self.t_clear is None or t < self.t_clear)


@dataclasses.dataclass(frozen=True)
class DcSource:
    mode: Literal["current", "voltage"] = "current"
    v_dc: float | None = None
    """Source voltage in voltage mode; defaults to i_dc * r_dc_winding (same steady current)."""

    def __post_init__(self) -> None:
        if self.mode not in ("current", "voltage"):
            raise ValueError(f"dc mode must be 'current' or 'voltage', got {self.mode!r}")


@dataclasses.dataclass(frozen=True)
class CircuitScenario:
    """
    Single-phase test circuit: source, series line impedance, resistive load, optional load-bus fault and
    a limiter in series with the line. Defaults are the equivalent-circuit values of the reference study,
    with the 10*sqrt(2) kV supply figure read as the peak voltage.
    """

    u_peak: float = 14142.1
    frequency: float = 50.0
    phase: float = 0.0
    r_line: float = 0.1095
    l_line: float = 5.63419e-4
    r_load: float = 8.79
    fault: FaultSpec | None = None
    dc: DcSource = DcSource()
    device: FclDevice = dataclasses.field(default_factory=lambda: build(ScfclModel.NONE))

    def __post_init__(self) -> None:
        for name in ("u_peak", "frequency", "r_line", "r_load"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v}")
        if not (math.isfinite(self.l_line) and self.l_line >= 0):
            raise ValueError(f"l_line must be >= 0, got {self.l_line}")

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.frequency

    @property
    def period(self) -> float:
        return 1.0 / self.frequency

    def r_eff(self, t: float) -> float:
        if self.fault is not None and self.fault.active(t):
            return self.fault.r_fault
        return self.r_load


@dataclasses.dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-5
    t_end: float = 0.1
    integrator: Literal["trapezoidal", "backward-euler"] = "trapezoidal"
    newton_tol: float = 1e-9
    max_newton_iter: int = 50
    decimation: int = 1
    max_dt_halvings: int = 6

    def validate(self, frequency: float) -> None:
        if not (self.dt > 0 and self.dt < 1.0 / (20.0 * frequency)):
            raise ValueError(f"dt must satisfy 0 < dt < 1/(20 f) = {1 / (20 * frequency):g} s, got {self.dt}")
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.integrator not in ("trapezoidal", "backward-euler"):
            raise ValueError(f"unknown integrator {self.integrator!r}")
        if int(self.decimation) != self.decimation or self.decimation < 1:
            raise ValueError(f"decimation must be a positive integer, got {self.decimation}")

    @property
    def theta(self) -> float:
        return 0.5 if self.integrator == "trapezoidal" else 1.0

    @property
    def n_steps(self) -> int:
        return int(math.floor(self.t_end / self.dt + 1e-9))


@dataclasses.dataclass(frozen=True)
class SolverStats:
    steps: int
    newton_iterations: int
    max_newton_iterations: int
    max_flux_residual: float
    """Largest converged nodal flux imbalance relative to the largest branch flux of that solve."""
    dt_halvings: int


@dataclasses.dataclass(frozen=True)
class TimeSeries:
    t: Array
    i_line: Array
    v_fcl: Array
    v_dc: Array
    i_dc: Array
    i_shorted: Array
    """Shape (samples, shorted loops)."""
    shorted_ids: tuple[str, ...]
    B: Array
    """Shape (samples, branches) [T]."""
    H: Array
    flux: Array
    branch_ids: tuple[str, ...]
    loop_names: tuple[str, ...]
    loop_currents: Array
    loop_linkages: Array
    stats: SolverStats
    dt: float

    def __len__(self) -> int:
        return self.t.size

    def branch(self, branch_id: str) -> int:
        return self.branch_ids.index(branch_id)


class _Assembly:
    """All cores of a device flattened into one block-diagonal network plus the loop incidence."""

    def __init__(self, device: FclDevice, scenario: CircuitScenario) -> None:
        cores: Sequence[MagneticNetwork] = device.cores
        branches = [b for c in cores for b in c.branches]
        windings = [w for c in cores for w in c.windings]
        self.branches = branches
        self.branch_ids = tuple(b.id for b in branches)
        nb = len(branches)
        nfree = sum(len(c.compiled.free_nodes) for c in cores)
        A = np.zeros((nfree, nb))
        S_w = np.zeros((nb, len(windings)))
        pm = np.zeros(nb)
        r0 = c0 = w0 = 0
        for c in cores:
            cp = c.compiled
            A[r0 : r0 + cp.incidence.shape[0], c0 : c0 + cp.incidence.shape[1]] = cp.incidence
            S_w[c0 : c0 + cp.turns.shape[0], w0 : w0 + cp.turns.shape[1]] = cp.turns
            pm[c0 : c0 + cp.turns.shape[0]] = cp.pm_mmf
            r0 += cp.incidence.shape[0]
            c0 += cp.turns.shape[0]
            w0 += cp.turns.shape[1]
        self.A = A
        self.pm = pm
        self.law = _FluxLaw(branches) if branches else None

        wind = device.windings
        loops: list[str] = ["ac"]
        member: list[list[int]] = [[j for j, w in enumerate(windings) if w.role == "ac-series"]]
        dc = [j for j, w in enumerate(windings) if w.role in ("dc-source", "dc-auxiliary")]
        self.has_dc = bool(dc)
        if dc:
            loops.append("dc")
            member.append(dc)
        self.shorted_ids = tuple(w.id for w in windings if w.role == "shorted")
        for j, w in enumerate(windings):
            if w.role == "shorted":
                loops.append(w.id)
                member.append([j])
        M = np.zeros((len(windings), len(loops)))
        for k, js in enumerate(member):
            M[js, k] = 1.0
        self.S = S_w @ M  # branches x loops
        self.loop_names = tuple(loops)
        n = len(loops)
        self.L_ext = np.zeros(n)
        self.L_ext[0] = scenario.l_line
        self.R_fixed = np.zeros(n)
        self.e_const = np.zeros(n)
        self.dc_index = loops.index("dc") if dc else None
        self.i_fixed = np.zeros(n)
        self.fixed = np.zeros(n, dtype=bool)
        if dc:
            k = self.dc_index
            self.R_fixed[k] = wind.r_dc_winding
            if scenario.dc.mode == "current":
                self.fixed[k] = True
                self.i_fixed[k] = wind.i_dc
            else:
                self.e_const[k] = scenario.dc.v_dc if scenario.dc.v_dc is not None else wind.i_dc * wind.r_dc_winding
                self.i_fixed[k] = self.e_const[k] / wind.r_dc_winding
        for k, name in enumerate(loops):
            if name in self.shorted_ids:
                self.R_fixed[k] = wind.r_shorted
        self.unknown = np.flatnonzero(~self.fixed)
        self.S_u = self.S[:, self.unknown]
        self.P = np.vstack([A, self.S_u.T]) if len(branches) else np.zeros((self.unknown.size, 0))
        self.nfree = nfree
        self.scenario = scenario

    def flux(self, u: Array, i: Array) -> tuple[Array, Array, Array]:
        if self.law is None:
            z = np.zeros(0)
            return z, z, z
        d = self.A.T @ u + self.S @ i + self.pm
        phi, g = self.law(d)
        return d, phi, g

    def resistance(self, t_mid: float) -> Array:
        R = self.R_fixed.copy()
        R[0] = self.scenario.r_line + self.scenario.r_eff(t_mid)
        return R

    def emf(self, t: float) -> Array:
        e = self.e_const.copy()
        sc = self.scenario
        e[0] = sc.u_peak * math.sin(sc.omega * t + sc.phase)
        return e

    def static_solve(self, i: Array, u0: Array, tol: float, max_iter: int) -> tuple[Array, float]:
        """Magnetic potentials for fixed loop currents."""
        u = u0.copy()
        if self.nfree == 0:
            return u, 0.0
        _, phi, g = self.flux(u, i)
        hist: list[float] = []
        for _ in range(max_iter + 1):
            r = self.A @ phi
            rel = _rel(r, phi)
            hist.append(rel)
            if rel <= tol:
                return u, rel
            J = (self.A * g) @ self.A.T
            du = np.linalg.solve(J, -r)
            merit = float(np.linalg.norm(r))
            step = 1.0
            for _ in range(31):
                _, phi2, g2 = self.flux(u + step * du, i)
                if float(np.linalg.norm(self.A @ phi2)) < merit:
                    break
                step *= 0.5
            else:
                raise NonConvergence("initial magnetic solve: damping exhausted", hist)
            u = u + step * du
            phi, g = phi2, g2
        raise NonConvergence("initial magnetic solve did not converge", hist)


def _rel(r: Array, phi: Array) -> float:
    if r.size == 0:
        return 0.0
    res = float(np.max(np.abs(r)))
    if res == 0.0:
        return 0.0
    return res / max(float(np.max(np.abs(phi))), 1e-300)


@dataclasses.dataclass
class _State:
    t: float
    u: Array
    i: Array
    lam: Array
    phi: Array
    d: Array


class _Stepper:
    def __init__(self, asm: _Assembly, sim: SimConfig) -> None:
        self.asm = asm
        self.sim = sim
        self.theta = sim.theta
        self.newton_total = 0
        self.newton_max = 0
        self.max_res = 0.0
        self.halvings = 0

    def step(self, s: _State, h: float, depth: int = 0) -> _State:
        try:
            return self._newton(s, h)
        except (NonConvergence, np.linalg.LinAlgError) as ex:
            if depth >= self.sim.max_dt_halvings:
                raise NonConvergence(
                    f"step at t={s.t:.9g} s failed after {depth} dt halvings: {ex}",
                    getattr(ex, "residual_history", ()),
                ) from ex
            self.halvings += 1
            mid = self.step(s, 0.5 * h, depth + 1)
            return self.step(mid, 0.5 * h, depth + 1)

    def _newton(self, s: _State, h: float) -> _State:
        asm, th = self.asm, self.theta
        t1 = s.t + h
        R = asm.resistance(s.t + 0.5 * h)
        e0, e1 = asm.emf(s.t), asm.emf(t1)
        f0 = e0 - R * s.i
        # Everything known from the previous state.
        rhs = s.lam + asm.L_ext * s.i + h * ((1 - th) * f0 + th * e1)
        uk = asm.unknown
        nfree = asm.nfree
        scale = np.maximum(np.abs(s.lam), np.abs(asm.L_ext * s.i))
        scale = np.maximum(scale, h * np.maximum(np.abs(f0), np.abs(e1)))
        scale = np.maximum(scale, 1e-12)[uk]
        # J = P diag(g) P^T + diag(0, L + h theta R) with P = [A; S_u^T].
        P = asm.P
        extra = np.concatenate([np.zeros(nfree), (asm.L_ext + h * th * R)[uk]])
        lin = (asm.L_ext + h * th * R)[uk]
        rhs_u = rhs[uk]

        u = s.u.copy()
        i = s.i.copy()
        d, phi, g = asm.flux(u, i)
        pp = P @ phi if phi.size else np.zeros(P.shape[0])
        rv = pp.copy()
        rv[nfree:] += lin * i[uk] - rhs_u

        flux_ref = max(float(np.max(np.abs(phi))) if phi.size else 0.0, 1e-300)
        weights = np.concatenate([np.full(nfree, 1.0 / flux_ref), 1.0 / scale])
        tol = self.sim.newton_tol
        it = 0
        hist: list[float] = []
        while True:
            r_u = rv[:nfree]
            fl = _rel(r_u, phi)
            lam_u = pp[nfree:]
            if fl <= tol and np.all(np.abs(rv[nfree:]) <= tol * np.maximum(scale, np.abs(lam_u))):
                break
            hist.append(float(np.sqrt(np.dot(rv * weights, rv * weights))))
            if it >= self.sim.max_newton_iter:
                raise NonConvergence(f"Newton did not converge in {it} iterations at t={t1:.9g}", hist)
            J = (P * g) @ P.T if phi.size else np.zeros((P.shape[0], P.shape[0]))
            J[np.diag_indices_from(J)] += extra
            dsc = 1.0 / np.sqrt(np.abs(np.diag(J)))
            dx = dsc * np.linalg.solve(J * dsc[:, None] * dsc[None, :], -rv * dsc)
            wr = rv * weights
            merit = float(np.dot(wr, wr))
            step = 1.0
            for _ in range(31):
                u2 = u + step * dx[:nfree]
                i2 = i.copy()
                i2[uk] += step * dx[nfree:]
                d2, phi2, g2 = asm.flux(u2, i2)
                pp2 = P @ phi2 if phi2.size else np.zeros(P.shape[0])
                rv2 = pp2.copy()
                rv2[nfree:] += lin * i2[uk] - rhs_u
                wr = rv2 * weights
                if float(np.dot(wr, wr)) < merit:
                    break
                step *= 0.5
            else:
                raise NonConvergence(f"Newton damping exhausted at t={t1:.9g}", hist)
            u, i, d, phi, g, pp, rv = u2, i2, d2, phi2, g2, pp2, rv2
            it += 1
        self.newton_total += it
        self.newton_max = max(self.newton_max, it)
        self.max_res = max(self.max_res, _rel(rv[:nfree], phi))
        lam = asm.S.T @ phi if phi.size else np.zeros(i.size)
        return _State(t=t1, u=u, i=i, lam=lam, phi=phi, d=d)


def run(scenario: CircuitScenario, sim: SimConfig | None = None) -> TimeSeries:
    """Integrate the coupled circuit; the limiter starts pre-energised by its dc bias with zero line current."""
    sim = sim or SimConfig()
    sim.validate(scenario.frequency)
    asm = _Assembly(scenario.device, scenario)
    stepper = _Stepper(asm, sim)

    i0 = asm.i_fixed.copy()
    u0, res0 = asm.static_solve(i0, np.zeros(asm.nfree), sim.newton_tol, sim.max_newton_iter)
    stepper.max_res = res0
    d0, phi0, _ = asm.flux(u0, i0)
    lam0 = asm.S.T @ phi0 if phi0.size else np.zeros(i0.size)
    state = _State(t=0.0, u=u0, i=i0, lam=lam0, phi=phi0, d=d0)

    n_steps = sim.n_steps
    dec = int(sim.decimation)
    n_out = n_steps // dec + 1
    nb, nl = len(asm.branches), len(asm.loop_names)
    area = np.array([b.area for b in asm.branches])
    out_i = np.zeros((n_out, nl))
    out_lam = np.zeros((n_out, nl))
    out_phi = np.zeros((n_out, nb))
    out_d = np.zeros((n_out, nb))
    v_fcl = np.zeros(n_out)
    v_dc = np.zeros(n_out)

    def record(k: int, s: _State, lam_prev: Array, h: float) -> None:
        out_i[k] = s.i
        out_lam[k] = s.lam
        out_phi[k] = s.phi
        out_d[k] = s.d
        if h > 0:
            v_fcl[k] = (s.lam[0] - lam_prev[0]) / h
            if asm.dc_index is not None:
                j = asm.dc_index
                v_dc[k] = asm.R_fixed[j] * s.i[j] + (s.lam[j] - lam_prev[j]) / h
        elif asm.dc_index is not None:
            v_dc[k] = asm.R_fixed[asm.dc_index] * s.i[asm.dc_index]

    record(0, state, state.lam, 0.0)
    for n in range(1, n_steps + 1):
        prev = state
        state = stepper.step(state, sim.dt)
        state.t = n * sim.dt  # keep the grid exact
        if n % dec == 0:
            record(n // dec, state, prev.lam, sim.dt)

    t = np.arange(n_out) * sim.dt * dec
    H = np.empty_like(out_phi)
    for k, b in enumerate(asm.branches):
        if b.kind == "core":
            H[:, k] = out_d[:, k] / b.length
        elif b.kind == "gap":
            H[:, k] = out_phi[:, k] / (4e-7 * math.pi * b.area * b.fringing)
        else:
            H[:, k] = out_phi[:, k] / area[k] / (4e-7 * math.pi)
    shorted_cols = [asm.loop_names.index(s) for s in asm.shorted_ids]
    dc_col = out_i[:, asm.dc_index] if asm.dc_index is not None else np.zeros(n_out)
    stats = SolverStats(
        steps=n_steps,
        newton_iterations=stepper.newton_total,
        max_newton_iterations=stepper.newton_max,
        max_flux_residual=stepper.max_res,
        dt_halvings=stepper.halvings,
    )
    return TimeSeries(
        t=t,
        i_line=out_i[:, 0].copy(),
        v_fcl=v_fcl,
        v_dc=v_dc,
        i_dc=dc_col.copy(),
        i_shorted=out_i[:, shorted_cols].copy(),
        shorted_ids=asm.shorted_ids,
        B=out_phi / area if nb else np.zeros((n_out, 0)),
        H=H,
        flux=out_phi,
        branch_ids=asm.branch_ids,
        loop_names=asm.loop_names,
        loop_currents=out_i,
        loop_linkages=out_lam,
        stats=stats,
        dt=sim.dt * dec,
    )


# --------------------------------------------------------------------------------------------------------------
# Post-processing


def _window(ts: TimeSeries, t0: float, t1: float) -> slice:
    eps = 1e-9 * ts.dt
    k0 = int(np.searchsorted(ts.t, t0 - eps, side="left"))
    k1 = int(np.searchsorted(ts.t, t1 + eps, side="right"))
    return slice(k0, k1)


def fundamental_amplitude(ts: TimeSeries, signal: Array, t_end: float, frequency: float) -> float:
    """Amplitude of the fundamental over the full cycle ending at ``t_end`` (rectangle rule, periodic)."""
    n = int(round(1.0 / (frequency * ts.dt)))
    k1 = int(round(t_end / ts.dt))
    if k1 - n < 0:
        raise ValueError("not enough samples for one full cycle")
    x = signal[k1 - n : k1]
    w = 2 * math.pi * frequency * ts.t[k1 - n : k1]
    a = 2.0 / n * float(np.dot(x, np.cos(w)))
    b = 2.0 / n * float(np.dot(x, np.sin(w)))
    return math.hypot(a, b)


def normal_amplitude(ts: TimeSeries, scenario: CircuitScenario) -> float:
    """Fundamental line-current amplitude over the last cycle before the fault (or before the end)."""
    end = scenario.fault.t_fault if scenario.fault is not None else ts.t[-1]
    return fundamental_amplitude(ts, ts.i_line, end, scenario.frequency)


def measure_induced_dc_voltage(ts: TimeSeries, scenario: CircuitScenario) -> float:
    """Peak |v| across the dc winding string while the fault is applied [V]."""
    f = scenario.fault
    if f is None or f.t_fault > ts.t[-1]:
        raise ValueError("time series contains no fault window")
    t1 = ts.t[-1] if f.t_clear is None else min(f.t_clear, ts.t[-1])
    w = _window(ts, f.t_fault, t1)
    return float(np.max(np.abs(ts.v_dc[w]))) if ts.v_dc[w].size else 0.0


def desaturation_events(ts: TimeSeries, branch_ids: Sequence[str], t0: float) -> list[tuple[float, int, list[int]]]:
    """
    Split the line current after ``t0`` into half cycles at its zero crossings and count, per half cycle,
    the sign reversals of H in each listed branch (a leg passing through its unsaturated region).

    Returns (half-cycle start time, current polarity, reversal count per branch).
    """
    ks = [ts.branch(b) for b in branch_ids]
    k0 = int(np.searchsorted(ts.t, t0 - 1e-9 * ts.dt))
    s = np.sign(ts.i_line[k0:])
    cuts = np.flatnonzero(np.diff(s) != 0) + k0 + 1
    bounds = np.r_[k0, cuts]
    out = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        counts = [int(np.count_nonzero(np.diff(np.sign(ts.H[a:b, k])))) for k in ks]
        out.append((float(ts.t[a]), int(np.sign(ts.i_line[min(a + 1, b - 1)])), counts))
    return out


@dataclasses.dataclass(frozen=True)
class SummaryReport:
    model: str
    normal_amplitude: float
    baseline_normal_amplitude: float
    insertion_drop: float
    first_fault_peak: float | None
    post_first_cycle_peak: float | None
    steady_fault_amplitude: float | None
    baseline_steady_fault_amplitude: float | None
    limiting_ratio: float | None
    peak_B: dict[str, float]
    peak_v_dc: float
    newton_iterations: int
    max_flux_residual: float

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _fault_metrics(ts: TimeSeries, scenario: CircuitScenario) -> tuple[float, float, float]:
    f = scenario.fault
    assert f is not None
    T = scenario.period
    t_stop = ts.t[-1] if f.t_clear is None else min(f.t_clear, ts.t[-1])
    if t_stop - f.t_fault < 2 * T:
        raise ValueError("fault window shorter than two cycles")
    x = np.abs(ts.i_line)
    first = float(np.max(x[_window(ts, f.t_fault, f.t_fault + T)]))
    later = float(np.max(x[_window(ts, f.t_fault + T, t_stop)]))
    steady = float(np.max(x[_window(ts, t_stop - T, t_stop)]))
    return first, later, steady


def extract_metrics(ts: TimeSeries, baseline: TimeSeries, scenario: CircuitScenario) -> SummaryReport:
    """
    Compare a run against the same scenario without limiter.

    limiting ratio = baseline steady fault amplitude / limited steady fault amplitude
    insertion drop = 1 - normal amplitude with limiter / normal amplitude without
    """
    if ts.t.shape != baseline.t.shape or not np.array_equal(ts.t, baseline.t):
        raise ValueError("time grids of run and baseline differ")
    amp = normal_amplitude(ts, scenario)
    amp0 = normal_amplitude(baseline, scenario)
    first = later = steady = steady0 = ratio = None
    peak_v = 0.0
    if scenario.fault is not None:
        first, later, steady = _fault_metrics(ts, scenario)
        steady0 = _fault_metrics(baseline, scenario)[2]
        ratio = steady0 / steady
        peak_v = measure_induced_dc_voltage(ts, scenario)
    else:
        peak_v = float(np.max(np.abs(ts.v_dc))) if ts.v_dc.size else 0.0
    peak_B = {b: float(np.max(np.abs(ts.B[:, k]))) for k, b in enumerate(ts.branch_ids)}
    return SummaryReport(
        model=scenario.device.model.value,
        normal_amplitude=amp,
        baseline_normal_amplitude=amp0,
        insertion_drop=1.0 - amp / amp0,
        first_fault_peak=first,
        post_first_cycle_peak=later,
        steady_fault_amplitude=steady,
        baseline_steady_fault_amplitude=steady0,
        limiting_ratio=ratio,
        peak_B=peak_B,
        peak_v_dc=peak_v,
        newton_iterations=ts.stats.newton_iterations,
        max_flux_residual=ts.stats.max_flux_residual,
    )


def stored_energy(ts: TimeSeries, device: FclDevice) -> tuple[Array, Array]:
    """Stored magnetic energy and co-energy of the whole device per sample [J]."""
    branches = [b for c in device.cores for b in c.branches]
    W = np.zeros(ts.t.size)
    Wc = np.zeros(ts.t.size)
    for k, b in enumerate(branches):
        if b.kind == "core":
            vol = b.area * b.length
            H = ts.H[:, k]
            W += vol * energy_density(b.material, H)
            Wc += vol * coenergy_density(b.material, H)
        else:
            e = 0.5 * ts.flux[:, k] ** 2 * b.linear_reluctance
            W += e
            Wc += e
    return W, Wc


def energy_drift(ts: TimeSeries, scenario: CircuitScenario, t0: float, t1: float) -> tuple[float, float]:
    """
    Energy balance of the magnetic network over [t0, t1].

    Returns (drift, peak co-energy) where drift = (energy delivered by the driven windings)
    - (shorted-loop dissipation) - (change of stored magnetic energy).
    """
    w = _window(ts, t0, t1)
    i = ts.loop_currents[w]
    lam = ts.loop_linkages[w]
    i_mid = 0.5 * (i[1:] + i[:-1])
    dlam = np.diff(lam, axis=0)
    shorted = [ts.loop_names.index(s) for s in ts.shorted_ids]
    driven = [k for k in range(len(ts.loop_names)) if k not in shorted]
    e_in = float(np.sum(i_mid[:, driven] * dlam[:, driven]))
    r_s = scenario.device.windings.r_shorted
    p = r_s * (0.5 * (i[1:, shorted] ** 2 + i[:-1, shorted] ** 2)) if shorted else np.zeros((len(i) - 1, 0))
    diss = float(np.sum(p)) * ts.dt
    W, Wc = stored_energy(ts, scenario.device)
    dW = float(W[w][-1] - W[w][0])
    return e_in - diss - dW, float(np.max(Wc[w]))
