"""
Scenario files: JSON with unit-suffixed keys, validated against a schema before anything is built.

Minimal example::

    {
      "name": "model-a-fault",
      "circuit": {"u_l_v": 14142.1},
      "fault": {"t_fault_s": 0.023},
      "fcl": {"model": "A"},
      "sim": {"dt_s": 1e-5, "t_end_s": 0.1}
    }

Every section and key is optional except ``name``; omitted values take the library defaults.
``sweep`` lists expand into the cartesian product of scenario variants.
"""

from __future__ import annotations

import dataclasses
import hashlib
import itertools
import json
import math
from pathlib import Path
from typing import Any

import jsonschema

from .cosim import CircuitScenario, DcSource, FaultSpec, SimConfig
from .material import BHCurve
from .topology import GeometrySpec, ScfclModel, WindingSpec, build

_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_POS_INT = {"type": "integer", "minimum": 1}


def _obj(props: dict[str, Any], required: tuple[str, ...] = ()) -> dict[str, Any]:
    return {"type": "object", "properties": props, "additionalProperties": False, "required": list(required)}


SCHEMA: dict[str, Any] = _obj(
    {
        "name": {"type": "string", "pattern": r"^[A-Za-z0-9_.\-]+$"},
        "description": {"type": "string"},
        "circuit": _obj(
            {
                "u_l_v": _POS,
                "u_l_kind": {"enum": ["peak", "rms"]},
                "frequency_hz": _POS,
                "phase_rad": {"type": "number"},
                "r_line_ohm": _POS,
                "l_line_h": _NONNEG,
                "r_load_ohm": _POS,
            }
        ),
        "fault": {
            "oneOf": [
                {"type": "null"},
                _obj({"t_fault_s": _NONNEG, "r_fault_ohm": _NONNEG, "t_clear_s": _POS}, ("t_fault_s",)),
            ]
        },
        "dc": _obj({"mode": {"enum": ["current", "voltage"]}, "v_dc_v": {"type": "number"}}),
        "fcl": _obj(
            {
                "model": {"enum": ["A", "B", "C", "D", "E", "none", "a", "b", "c", "d", "e", "NONE"]},
                "cores_per_phase": _POS_INT,
                "allow_core_override": {"type": "boolean"},
                "geometry": _obj(
                    {
                        "l_mean_m": _POS,
                        "a_core_m2": _POS,
                        "l_gap_m": _POS,
                        "fringing": _POS,
                        "leg_overrides": {
                            "type": "object",
                            "additionalProperties": _obj({"length_m": _POS, "area_m2": _POS}),
                        },
                    }
                ),
                "windings": _obj(
                    {
                        "n_ac": _POS_INT,
                        "n_dc": _POS_INT,
                        "i_dc_a": _POS,
                        "n_dc_aux": _POS_INT,
                        "n_shorted": _POS_INT,
                        "r_shorted_ohm": _POS,
                        "r_dc_winding_ohm": _POS,
                        "shorted_open": {"type": "boolean"},
                    }
                ),
                "material": _obj(
                    {
                        "kind": {"enum": ["linear", "saturating"]},
                        "mu_r": {"type": "number", "minimum": 1},
                        "b_sat_t": _POS,
                        "h_knee_a_per_m": _POS,
                    }
                ),
            }
        ),
        "sim": _obj(
            {
                "dt_s": _POS,
                "t_end_s": _POS,
                "integrator": {"enum": ["trapezoidal", "backward-euler"]},
                "newton_tol": _POS,
                "max_newton_iter": _POS_INT,
                "decimation": _POS_INT,
                "max_dt_halvings": {"type": "integer", "minimum": 0},
            }
        ),
        "sweep": _obj(
            {
                "phase_rad": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                "l_gap_m": {"type": "array", "items": _POS, "minItems": 1},
                "n_shorted": {"type": "array", "items": _POS_INT, "minItems": 1},
            }
        ),
        "output": _obj({"svg": {"type": "boolean"}}),
    },
    ("name",),
)


class ConfigError(ValueError):
    """Invalid scenario file; ``key`` is the dotted path of the offending entry."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


@dataclasses.dataclass(frozen=True)
class ScenarioConfig:
    name: str
    scenario: CircuitScenario
    sim: SimConfig
    raw: dict[str, Any]
    svg: bool = False

    @property
    def config_hash(self) -> str:
        return config_hash(self.raw)


def config_hash(raw: dict[str, Any]) -> str:
    """sha256 of the canonical JSON form (sorted keys, no whitespace)."""
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(canon.encode()).hexdigest()


def _error_key(err: jsonschema.ValidationError) -> str:
    path = ".".join(str(p) for p in err.absolute_path)
    if err.validator == "additionalProperties":
        extra = sorted(set(err.instance) - set(err.schema.get("properties", {})))
        if extra:
            return f"{path}.{extra[0]}" if path else extra[0]
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            return f"{path}.{missing[0]}" if path else missing[0]
    return path


def validate(raw: Any) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise ConfigError(_error_key(err), err.message)


def _section(raw: dict[str, Any], key: str) -> dict[str, Any]:
    v = raw.get(key)
    return {} if v is None else v


def _build(raw: dict[str, Any]) -> ScenarioConfig:
    c = _section(raw, "circuit")
    defaults = CircuitScenario.__dataclass_fields__
    u = c.get("u_l_v", defaults["u_peak"].default)
    if c.get("u_l_kind", "peak") == "rms":
        u = u * math.sqrt(2.0)

    f = raw.get("fault")
    fault = None
    if f is not None:
        try:
            fault = FaultSpec(f["t_fault_s"], f.get("r_fault_ohm", 1e-4), f.get("t_clear_s"))
        except ValueError as ex:
            raise ConfigError("fault", str(ex)) from None

    d = _section(raw, "dc")
    dc = DcSource(d.get("mode", "current"), d.get("v_dc_v"))

    fcl = _section(raw, "fcl")
    try:
        m = _section(fcl, "material")
        material = BHCurve(
            kind=m.get("kind", "saturating"),
            mu_r=m.get("mu_r", 1000.0),
            B_sat=m.get("b_sat_t", 1.8),
            H_knee=m.get("h_knee_a_per_m", 500.0),
        )
    except ValueError as ex:
        raise ConfigError("fcl.material", str(ex)) from None
    g = _section(fcl, "geometry")
    overrides = {
        leg: {k.removesuffix("_m2").removesuffix("_m"): v for k, v in ov.items()}
        for leg, ov in _section(g, "leg_overrides").items()
    }
    geom = GeometrySpec(
        l_mean=g.get("l_mean_m", 2.0),
        a_core=g.get("a_core_m2", 0.04),
        l_gap=g.get("l_gap_m", 0.3),
        fringing=g.get("fringing", 1.0),
        leg_overrides=overrides,
    )
    w = _section(fcl, "windings")
    wd = WindingSpec()
    wind = WindingSpec(
        n_ac=w.get("n_ac", wd.n_ac),
        n_dc=w.get("n_dc", wd.n_dc),
        i_dc=w.get("i_dc_a", wd.i_dc),
        n_dc_aux=w.get("n_dc_aux", wd.n_dc_aux),
        n_shorted=w.get("n_shorted", wd.n_shorted),
        r_shorted=w.get("r_shorted_ohm", wd.r_shorted),
        r_dc_winding=w.get("r_dc_winding_ohm", wd.r_dc_winding),
        shorted_open=w.get("shorted_open", wd.shorted_open),
    )
    try:
        device = build(
            ScfclModel.parse(fcl.get("model", "none")),
            geom,
            wind,
            material,
            fcl.get("cores_per_phase"),
            allow_core_override=fcl.get("allow_core_override", False),
        )
    except ValueError as ex:
        raise ConfigError("fcl", str(ex)) from None

    try:
        scenario = CircuitScenario(
            u_peak=u,
            frequency=c.get("frequency_hz", defaults["frequency"].default),
            phase=c.get("phase_rad", 0.0),
            r_line=c.get("r_line_ohm", defaults["r_line"].default),
            l_line=c.get("l_line_h", defaults["l_line"].default),
            r_load=c.get("r_load_ohm", defaults["r_load"].default),
            fault=fault,
            dc=dc,
            device=device,
        )
    except ValueError as ex:
        raise ConfigError("circuit", str(ex)) from None

    s = _section(raw, "sim")
    sd = SimConfig()
    sim = SimConfig(
        dt=s.get("dt_s", sd.dt),
        t_end=s.get("t_end_s", sd.t_end),
        integrator=s.get("integrator", sd.integrator),
        newton_tol=s.get("newton_tol", sd.newton_tol),
        max_newton_iter=s.get("max_newton_iter", sd.max_newton_iter),
        decimation=s.get("decimation", sd.decimation),
        max_dt_halvings=s.get("max_dt_halvings", sd.max_dt_halvings),
    )
    try:
        sim.validate(scenario.frequency)
    except ValueError as ex:
        raise ConfigError("sim", str(ex)) from None
    if fault is not None and fault.t_fault > sim.t_end:
        raise ConfigError("fault.t_fault_s", f"fault time {fault.t_fault} lies after t_end_s={sim.t_end}")
    return ScenarioConfig(
        name=raw["name"], scenario=scenario, sim=sim, raw=raw, svg=bool(_section(raw, "output").get("svg", False))
    )


def from_dict(raw: Any, *, dt: float | None = None, t_end: float | None = None) -> ScenarioConfig:
    """Validate and build; ``dt``/``t_end`` override the file's sim section."""
    validate(raw)
    raw = json.loads(json.dumps(raw))
    if dt is not None or t_end is not None:
        sim = raw.setdefault("sim", {})
        if dt is not None:
            sim["dt_s"] = dt
        if t_end is not None:
            sim["t_end_s"] = t_end
        validate(raw)
    return _build(raw)


def load(path: str | Path, *, dt: float | None = None, t_end: float | None = None) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as ex:
        raise ConfigError("", f"cannot read {path}: {ex.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ConfigError("", f"{path}: invalid JSON at line {ex.lineno}: {ex.msg}") from None
    return from_dict(raw, dt=dt, t_end=t_end)


_SWEEP_TARGETS = {
    "phase_rad": ("circuit", "phase_rad"),
    "l_gap_m": ("fcl", "geometry", "l_gap_m"),
    "n_shorted": ("fcl", "windings", "n_shorted"),
}


def expand_sweep(cfg: ScenarioConfig) -> list[ScenarioConfig]:
    """One config per point of the sweep grid (the config itself when there is no sweep)."""
    sweep = cfg.raw.get("sweep") or {}
    keys = [k for k in _SWEEP_TARGETS if k in sweep]
    if not keys:
        return [cfg]
    out = []
    for values in itertools.product(*(sweep[k] for k in keys)):
        raw = json.loads(json.dumps(cfg.raw))
        raw.pop("sweep")
        label = []
        for k, v in zip(keys, values):
            node = raw
            *parents, leaf = _SWEEP_TARGETS[k]
            for p in parents:
                node = node.setdefault(p, {})
            node[leaf] = v
            label.append(f"{k}={v:g}")
        raw["name"] = f"{cfg.name}__{'_'.join(label)}"
        out.append(_build(raw))
    return out
