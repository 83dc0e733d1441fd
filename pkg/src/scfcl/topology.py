"""
Builders for the stock limiter configurations.

    A     partial magnetic separation: model B plus an auxiliary dc winding on the ac leg
    B     100% magnetic separation: dc winding on the left leg, ac winding on the middle leg, gap in the right leg
    C     model A with the main dc winding short-circuited; the auxiliary winding carries the dc source
    D     single-core inductive limiter: gap in the (double-width) middle leg, ac and dc windings on both outer legs
    E     single-core ring with two ac legs, two gap legs and short-circuited windings on the yokes
    NONE  no limiter

A, B and C use two identical cores per phase whose ac windings are connected in series with opposite
orientation, so one core is pushed out of saturation in each half cycle. Every leg of a three-leg core is a
branch between the bottom node (reference) and the top node, oriented upwards; the yokes are lumped into
the leg lengths.
"""

from __future__ import annotations

import dataclasses
import enum
from collections.abc import Mapping
from types import MappingProxyType

import numpy as np

from .material import SOFT_IRON, BHCurve
from .mec import Branch, MagneticNetwork, MecSolution, WindingLink, solve


class ScfclModel(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    NONE = "none"

    @classmethod
    def parse(cls, tag: str | ScfclModel | None) -> ScfclModel:
        if isinstance(tag, ScfclModel):
            return tag
        if tag is None or str(tag).lower() in ("none", "null", ""):
            return cls.NONE
        try:
            return cls(str(tag).upper())
        except ValueError:
            raise ValueError(f"unknown limiter model {tag!r}; expected one of A, B, C, D, E, none") from None


DEFAULT_CORES_PER_PHASE = {
    ScfclModel.A: 2,
    ScfclModel.B: 2,
    ScfclModel.C: 2,
    ScfclModel.D: 1,
    ScfclModel.E: 1,
    ScfclModel.NONE: 0,
}


@dataclasses.dataclass(frozen=True)
class GeometrySpec:
    """
    Leg length and cross-section shared by all legs, plus the gap length.
    ``leg_overrides`` maps a leg name (e.g. ``"mid"``, ``"yoke_t"``) to ``{"length": m, "area": m2}``.
    """

    l_mean: float = 2.0
    a_core: float = 0.04
    l_gap: float = 0.3
    fringing: float = 1.0
    leg_overrides: Mapping[str, Mapping[str, float]] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("l_mean", "a_core", "l_gap", "fringing"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"geometry {name} must be positive, got {v}")
        for leg, ov in self.leg_overrides.items():
            for key, v in ov.items():
                if key not in ("length", "area"):
                    raise ValueError(f"geometry override for {leg!r}: unknown key {key!r}")
                if not (np.isfinite(v) and v > 0):
                    raise ValueError(f"geometry override {leg}.{key} must be positive, got {v}")
        object.__setattr__(self, "leg_overrides", MappingProxyType({k: dict(v) for k, v in self.leg_overrides.items()}))

    def length(self, leg: str, default: float | None = None) -> float:
        return self.leg_overrides.get(leg, {}).get("length", self.l_mean if default is None else default)

    def area(self, leg: str, default: float | None = None) -> float:
        return self.leg_overrides.get(leg, {}).get("area", self.a_core if default is None else default)


@dataclasses.dataclass(frozen=True)
class WindingSpec:
    n_ac: int = 60
    n_dc: int = 500
    i_dc: float = 450.0
    n_dc_aux: int = 76
    n_shorted: int = 500
    r_shorted: float = 0.01
    r_dc_winding: float = 0.1
    shorted_open: bool = False
    """Leave the short-circuited coils open (they then carry no current and are omitted)."""

    def __post_init__(self) -> None:
        for name in ("n_ac", "n_dc", "n_dc_aux", "n_shorted"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"winding {name} must be a positive integer, got {v}")
        for name in ("i_dc", "r_shorted", "r_dc_winding"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"winding {name} must be positive, got {v}")


@dataclasses.dataclass(frozen=True)
class FclDevice:
    """A built limiter: one magnetic network per core plus the electrical data of its windings."""

    model: ScfclModel
    cores: tuple[MagneticNetwork, ...]
    windings: WindingSpec
    geometry: GeometrySpec
    material: BHCurve

    def roles(self) -> dict[str, str]:
        return {w.id: w.role for core in self.cores for w in core.windings}

    def windings_with_role(self, *roles: str) -> list[tuple[int, WindingLink]]:
        return [(k, w) for k, core in enumerate(self.cores) for w in core.windings if w.role in roles]

    def branch_ids(self) -> list[str]:
        return [b.id for core in self.cores for b in core.branches]

    def dc_currents(self, i_dc: float | None = None) -> list[dict[str, float]]:
        """Per-core winding currents with only the dc source energised."""
        i = self.windings.i_dc if i_dc is None else i_dc
        return [
            {w.id: (i if w.role in ("dc-source", "dc-auxiliary") else 0.0) for w in core.windings}
            for core in self.cores
        ]


def _gap_leg(name: str, frm: str, to: str, geom: GeometrySpec, material: BHCurve, area: float | None = None) -> Branch:
    # Iron part of the gapped leg stays at the initial permeability.
    return Branch.gap(
        name, frm, to,
        length=geom.l_gap,
        area=geom.area(name.split(".")[-1], area),
        iron_length=geom.length(name.split(".")[-1]),
        iron_mu_r=material.mu_r_initial,
        fringing=geom.fringing,
    )


def _core_leg(name: str, frm: str, to: str, geom: GeometrySpec, material: BHCurve) -> Branch:
    leg = name.split(".")[-1]
    return Branch.core(name, frm, to, geom.length(leg), geom.area(leg), material)


def _three_leg_core(
    prefix: str, ac_sign: int, model: ScfclModel, geom: GeometrySpec, wind: WindingSpec, material: BHCurve
) -> MagneticNetwork:
    bot, top = f"{prefix}.bot", f"{prefix}.top"
    branches = (
        _core_leg(f"{prefix}.left", bot, top, geom, material),
        _core_leg(f"{prefix}.mid", bot, top, geom, material),
        _gap_leg(f"{prefix}.right", bot, top, geom, material),
    )
    windings = [WindingLink(f"{prefix}.ac", f"{prefix}.mid", wind.n_ac, ac_sign, "ac-series")]
    # dc flux runs up the left leg and back down the middle leg.
    if model in (ScfclModel.A, ScfclModel.B):
        windings.insert(0, WindingLink(f"{prefix}.dc", f"{prefix}.left", wind.n_dc, +1, "dc-source"))
    elif not wind.shorted_open:
        windings.insert(0, WindingLink(f"{prefix}.sc", f"{prefix}.left", wind.n_shorted, +1, "shorted"))
    if model in (ScfclModel.A, ScfclModel.C):
        windings.append(WindingLink(f"{prefix}.aux", f"{prefix}.mid", wind.n_dc_aux, -1, "dc-auxiliary"))
    return MagneticNetwork(nodes=(bot, top), branches=branches, windings=tuple(windings), reference=bot)


def _inductive_core(prefix: str, geom: GeometrySpec, wind: WindingSpec, material: BHCurve) -> MagneticNetwork:
    bot, top = f"{prefix}.bot", f"{prefix}.top"
    branches = (
        _core_leg(f"{prefix}.left", bot, top, geom, material),
        _gap_leg(f"{prefix}.mid", bot, top, geom, material, area=2.0 * geom.a_core),
        _core_leg(f"{prefix}.right", bot, top, geom, material),
    )
    # ac windings push flux up both outer legs (returning through the gap); the dc windings circulate
    # flux around the outer loop only, so the middle leg carries no dc flux.
    windings = (
        WindingLink(f"{prefix}.ac_l", f"{prefix}.left", wind.n_ac, +1, "ac-series"),
        WindingLink(f"{prefix}.ac_r", f"{prefix}.right", wind.n_ac, +1, "ac-series"),
        WindingLink(f"{prefix}.dc_l", f"{prefix}.left", wind.n_dc, +1, "dc-source"),
        WindingLink(f"{prefix}.dc_r", f"{prefix}.right", wind.n_dc, -1, "dc-source"),
    )
    return MagneticNetwork(nodes=(bot, top), branches=branches, windings=windings, reference=bot)


def _ring_core(prefix: str, geom: GeometrySpec, wind: WindingSpec, material: BHCurve) -> MagneticNetwork:
    tl, tr, bl, br = (f"{prefix}.{n}" for n in ("tl", "tr", "bl", "br"))
    branches = (
        _core_leg(f"{prefix}.ac_l", bl, tl, geom, material),
        _core_leg(f"{prefix}.ac_r", br, tr, geom, material),
        _core_leg(f"{prefix}.yoke_t", tl, tr, geom, material),
        _core_leg(f"{prefix}.yoke_b", br, bl, geom, material),
        _gap_leg(f"{prefix}.gap_l", tl, bl, geom, material),
        _gap_leg(f"{prefix}.gap_r", tr, br, geom, material),
    )
    # dc circulates around the ring (up ac_l, across the top, down ac_r); the series-opposed ac windings
    # both push upwards, so their flux closes through the gap legs rather than the yokes.
    windings = [
        WindingLink(f"{prefix}.ac_l", f"{prefix}.ac_l", wind.n_ac, +1, "ac-series"),
        WindingLink(f"{prefix}.ac_r", f"{prefix}.ac_r", wind.n_ac, +1, "ac-series"),
        WindingLink(f"{prefix}.dc_l", f"{prefix}.ac_l", wind.n_dc, +1, "dc-source"),
        WindingLink(f"{prefix}.dc_r", f"{prefix}.ac_r", wind.n_dc, -1, "dc-source"),
    ]
    if not wind.shorted_open:
        windings += [
            WindingLink(f"{prefix}.sc_t", f"{prefix}.yoke_t", wind.n_shorted, +1, "shorted"),
            WindingLink(f"{prefix}.sc_b", f"{prefix}.yoke_b", wind.n_shorted, +1, "shorted"),
        ]
    return MagneticNetwork(nodes=(tl, tr, bl, br), branches=branches, windings=tuple(windings), reference=bl)


def build(
    model: ScfclModel | str | None,
    geom: GeometrySpec | None = None,
    wind: WindingSpec | None = None,
    material: BHCurve = SOFT_IRON,
    cores_per_phase: int | None = None,
    *,
    allow_core_override: bool = False,
) -> FclDevice:
    """
    Build the magnetic networks of one phase of the given limiter.

    ``cores_per_phase`` must match the configuration (2 for A/B/C, 1 for D/E) unless
    ``allow_core_override`` is set.
    """
    model = ScfclModel.parse(model)
    geom = geom or GeometrySpec()
    wind = wind or WindingSpec()
    expected = DEFAULT_CORES_PER_PHASE[model]
    n = expected if cores_per_phase is None else int(cores_per_phase)
    if n != expected and not allow_core_override:
        raise ValueError(f"model {model.value} uses {expected} core(s) per phase, got {n}")
    if model is not ScfclModel.NONE and n < 1:
        raise ValueError("cores_per_phase must be at least 1")

    cores: list[MagneticNetwork] = []
    for k in range(n if model is not ScfclModel.NONE else 0):
        prefix = f"c{k + 1}"
        if model in (ScfclModel.A, ScfclModel.B, ScfclModel.C):
            cores.append(_three_leg_core(prefix, +1 if k % 2 == 0 else -1, model, geom, wind, material))
        elif model is ScfclModel.D:
            cores.append(_inductive_core(prefix, geom, wind, material))
        else:
            cores.append(_ring_core(prefix, geom, wind, material))
    return FclDevice(model=model, cores=tuple(cores), windings=wind, geometry=geom, material=material)


@dataclasses.dataclass(frozen=True)
class DcBiasReport:
    model: ScfclModel
    B: dict[str, float]
    """Flux density per branch under dc-only excitation [T]."""
    flux: dict[str, float]
    solutions: tuple[MecSolution, ...]
    checks: dict[str, bool]
    mid_to_outer: float | None = None
    outer_gap_sensitivity: float | None = None
    """Relative change of the outer-leg flux density when the gap length is halved (model D)."""


def _dc_solve(device: FclDevice) -> tuple[list[MecSolution], dict[str, float], dict[str, float]]:
    sols = [solve(core, cur) for core, cur in zip(device.cores, device.dc_currents())]
    B, flux = {}, {}
    for core, sol in zip(device.cores, sols):
        for k, b in enumerate(core.branches):
            B[b.id] = float(sol.B[k])
            flux[b.id] = float(sol.flux[k])
    return sols, B, flux


def dc_bias_check(
    model: ScfclModel | str,
    geom: GeometrySpec | None = None,
    wind: WindingSpec | None = None,
    material: BHCurve = SOFT_IRON,
) -> DcBiasReport:
    """Solve the magnetic circuit with zero ac current and report the bias flux density per leg."""
    geom = geom or GeometrySpec()
    device = build(model, geom, wind, material)
    sols, B, flux = _dc_solve(device)
    checks: dict[str, bool] = {}
    mid_ratio = sens = None
    if device.model is ScfclModel.D:
        outer = abs(B["c1.left"])
        mid_ratio = abs(B["c1.mid"]) / outer
        checks["mid_leg_flux_free"] = mid_ratio <= 1e-3
        half = dataclasses.replace(geom, l_gap=0.5 * geom.l_gap)
        _, B_half, _ = _dc_solve(build(model, half, wind, material))
        sens = abs(B_half["c1.left"] - B["c1.left"]) / outer
        checks["outer_independent_of_gap"] = sens <= 1e-6
    elif device.model in (ScfclModel.A, ScfclModel.B):
        checks["gap_leg_bypassed"] = abs(flux["c1.right"]) <= 0.01 * abs(flux["c1.left"])
    return DcBiasReport(
        model=device.model, B=B, flux=flux, solutions=tuple(sols), checks=checks,
        mid_to_outer=mid_ratio, outer_gap_sensitivity=sens,
    )
