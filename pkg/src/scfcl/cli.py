"""
Command line front end.

    scfcl run <file> [--out DIR]               one scenario (or its sweep grid)
    scfcl suite <name> [--out DIR] [--jobs N]  stock model comparison
    scfcl analyze <sub> [flags]                closed-form design relations

Global flags (accepted before or after the subcommand): --dt, --t-end, --format {csv,json}, --seed-free.
Exit codes: 0 success, 2 configuration or argument error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__, analysis
from .config import ConfigError, ScenarioConfig, expand_sweep, load
from .cosim import (
    CircuitScenario,
    FaultSpec,
    SimConfig,
    SolverStats,
    SummaryReport,
    TimeSeries,
    extract_metrics,
    run,
)
from .mec import NonConvergence
from .topology import ScfclModel, build

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3

CSV_FORMAT_VERSION = 1


class _UsageError(Exception):
    pass


# --------------------------------------------------------------------------------------------------------------
# Output files


def _atomic_write(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def csv_columns(ts: TimeSeries) -> list[str]:
    cols = ["time_s", "i_line_A", "v_fcl_V", "v_dc_V", "i_shorted_A"]
    cols += [f"i_shorted_{s}_A" for s in ts.shorted_ids]
    cols += [f"B_{b}_T" for b in ts.branch_ids]
    cols += [f"H_{b}_A_per_m" for b in ts.branch_ids]
    return cols


def waveform_csv(ts: TimeSeries) -> str:
    """
    Waveform table. The first line is a comment carrying the format version and the column list;
    ``i_shorted_A`` is the first shorted loop (zero when there is none), followed by one column per loop.
    """
    cols = csv_columns(ts)
    first_shorted = ts.i_shorted[:, 0] if ts.i_shorted.shape[1] else np.zeros(ts.t.size)
    data = np.column_stack([ts.t, ts.i_line, ts.v_fcl, ts.v_dc, first_shorted, ts.i_shorted, ts.B, ts.H])
    buf = io.StringIO()
    buf.write(f"# scfcl-waveform v{CSV_FORMAT_VERSION} dt_s={ts.dt!r} columns={'|'.join(cols)}\n")
    buf.write(",".join(cols) + "\n")
    np.savetxt(buf, data, fmt="%.17g", delimiter=",")
    return buf.getvalue()


def read_waveform_csv(path: str | Path) -> TimeSeries:
    """Rebuild the waveform part of a TimeSeries from a CSV written by :func:`waveform_csv`."""
    path = Path(path)
    with path.open() as fh:
        head = fh.readline()
        cols = fh.readline().strip().split(",")
    if not head.startswith("# scfcl-waveform v"):
        raise ValueError(f"{path} is not a scfcl waveform file")
    dt = float(head.split("dt_s=")[1].split()[0])
    data = np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
    col = {c: k for k, c in enumerate(cols)}
    shorted = tuple(c[len("i_shorted_") : -2] for c in cols if c.startswith("i_shorted_") and c != "i_shorted_A")
    branches = tuple(c[2:-2] for c in cols if c.startswith("B_"))
    pick = lambda names: data[:, [col[n] for n in names]] if names else np.zeros((data.shape[0], 0))  # noqa: E731
    B = pick([f"B_{b}_T" for b in branches])
    return TimeSeries(
        t=data[:, col["time_s"]],
        i_line=data[:, col["i_line_A"]],
        v_fcl=data[:, col["v_fcl_V"]],
        v_dc=data[:, col["v_dc_V"]],
        i_dc=np.zeros(data.shape[0]),
        i_shorted=pick([f"i_shorted_{s}_A" for s in shorted]),
        shorted_ids=shorted,
        B=B,
        H=pick([f"H_{b}_A_per_m" for b in branches]),
        flux=np.zeros_like(B),
        branch_ids=branches,
        loop_names=(),
        loop_currents=np.zeros((data.shape[0], 0)),
        loop_linkages=np.zeros((data.shape[0], 0)),
        stats=SolverStats(0, 0, 0, 0.0, 0),
        dt=dt,
    )


def _svg(ts: TimeSeries, title: str) -> str:
    """Line chart of the line current, written as raw SVG path data."""
    w, h, pad = 800, 300, 40
    t, y = ts.t, ts.i_line
    t0, t1 = float(t[0]), float(t[-1]) if t[-1] > t[0] else float(t[0]) + 1.0
    ymax = float(np.max(np.abs(y))) or 1.0
    xs = pad + (t - t0) / (t1 - t0) * (w - 2 * pad)
    ys = h / 2 - y / ymax * (h / 2 - pad)
    step = max(1, t.size // 2000)
    pts = " ".join(f"{x:.2f},{v:.2f}" for x, v in zip(xs[::step], ys[::step]))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
        f'<rect width="{w}" height="{h}" fill="white"/>\n'
        f'<line x1="{pad}" y1="{h / 2}" x2="{w - pad}" y2="{h / 2}" stroke="#999"/>\n'
        f'<path d="M {pts.replace(" ", " L ")}" fill="none" stroke="#1f77b4" stroke-width="1"/>\n'
        f'<text x="{pad}" y="20" font-family="sans-serif" font-size="13">{title}: i_line, peak {ymax:.4g} A</text>\n'
        "</svg>\n"
    )


def _provenance(cfg_hash: str, sim: SimConfig) -> dict[str, Any]:
    return {
        "config_hash": cfg_hash,
        "version": __version__,
        "dt_s": sim.dt,
        "t_end_s": sim.t_end,
        "integrator": sim.integrator,
        "decimation": sim.decimation,
    }


def _finite(obj: Any) -> Any:
    # JSON has no inf/nan; report them as null.
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _summary_json(name: str, report: SummaryReport, ts: TimeSeries, provenance: dict[str, Any]) -> str:
    doc = {
        "scenario": name,
        "metrics": report.as_dict(),
        "solver": dataclasses.asdict(ts.stats),
        "provenance": provenance,
    }
    return json.dumps(_finite(doc), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------------------------------------------
# Runs


def _baseline(scenario: CircuitScenario) -> CircuitScenario:
    return dataclasses.replace(scenario, device=build(ScfclModel.NONE))


def _run_pair(scenario: CircuitScenario, sim: SimConfig) -> tuple[TimeSeries, TimeSeries]:
    ts = run(scenario, sim)
    base = ts if scenario.device.model is ScfclModel.NONE else run(_baseline(scenario), sim)
    return ts, base


def _write_residual_trace(path: Path, name: str, ex: NonConvergence) -> None:
    lines = [f"# scenario {name}", f"# {ex}", "iteration,residual"]
    lines += [f"{k},{r:.17g}" for k, r in enumerate(ex.residual_history)]
    _atomic_write(path, "\n".join(lines) + "\n")


def _emit_run(out: Path, cfg: ScenarioConfig, ts: TimeSeries, base: TimeSeries) -> SummaryReport:
    report = extract_metrics(ts, base, cfg.scenario)
    _atomic_write(out / f"{cfg.name}.csv", waveform_csv(ts))
    _atomic_write(out / f"{cfg.name}.summary.json", _summary_json(cfg.name, report, ts, _provenance(cfg.config_hash, cfg.sim)))
    if cfg.svg:
        _atomic_write(out / f"{cfg.name}.svg", _svg(ts, cfg.name))
    return report


def cmd_run(args: argparse.Namespace) -> int:
    cfg = load(args.file, dt=args.dt, t_end=args.t_end)
    out = Path(args.out)
    reports = []
    for variant in expand_sweep(cfg):
        try:
            ts, base = _run_pair(variant.scenario, variant.sim)
        except NonConvergence as ex:
            _write_residual_trace(out / f"{variant.name}.residuals.csv", variant.name, ex)
            print(f"solver failure in {variant.name}: {ex}", file=sys.stderr)
            return EXIT_SOLVER
        reports.append((variant.name, _emit_run(out, variant, ts, base)))
    for name, rep in reports:
        _print_report(name, rep, args.format)
    return EXIT_OK


def _print_report(name: str, rep: SummaryReport, fmt: str) -> None:
    d = rep.as_dict()
    if fmt == "json":
        print(json.dumps(_finite({"scenario": name, **d}), sort_keys=True))
        return
    flat = {k: v for k, v in d.items() if not isinstance(v, dict)}
    print("scenario," + ",".join(flat))
    print(name + "," + ",".join("" if v is None else (f"{v:.10g}" if isinstance(v, float) else str(v)) for v in flat.values()))


# --------------------------------------------------------------------------------------------------------------
# Suites

SUITE_T_FAULT = 0.023
SUITE_T_END = 0.1

SUITES: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    # name -> (models, conditions)
    "normal-comparison": (("none", "A", "B", "C"), ("normal",)),
    "fault-comparison": (("none", "A", "B", "C"), ("fault",)),
    "flux-comparison": (("none", "A", "B", "C"), ("normal", "fault")),
    "model-DE": (("none", "D", "E"), ("normal", "fault")),
}


def suite_scenario(model: str, condition: str) -> CircuitScenario:
    fault = FaultSpec(SUITE_T_FAULT) if condition == "fault" else None
    return CircuitScenario(device=build(model), fault=fault)


def _suite_task(model: str, condition: str, sim: SimConfig) -> TimeSeries:
    return run(suite_scenario(model, condition), sim)


@dataclasses.dataclass
class SuiteResult:
    name: str
    reports: dict[tuple[str, str], SummaryReport]
    checks: dict[str, bool]
    files: list[str]


def _suite_checks(name: str, reports: dict[tuple[str, str], SummaryReport], all_series: dict[tuple[str, str], TimeSeries]) -> dict[str, bool]:
    checks = {
        "flux_residual_le_1e-9": all(ts.stats.max_flux_residual <= 1e-9 for ts in all_series.values()),
    }
    if name in ("normal-comparison", "flux-comparison"):
        for m in "ABC":
            checks[f"insertion_drop_{m}_le_5pct"] = reports[(m, "normal")].insertion_drop <= 0.05
        checks["insertion_drop_A_le_B"] = reports[("A", "normal")].insertion_drop <= reports[("B", "normal")].insertion_drop
    if name in ("fault-comparison", "flux-comparison"):
        for m in "ABC":
            ratio = reports[(m, "fault")].limiting_ratio
            checks[f"limiting_ratio_{m}_gt_1"] = ratio is not None and ratio > 1.0
    if name == "model-DE":
        checks["insertion_drop_D_lt_E"] = reports[("D", "normal")].insertion_drop < reports[("E", "normal")].insertion_drop
        for m in "DE":
            ratio = reports[(m, "fault")].limiting_ratio
            checks[f"limiting_ratio_{m}_gt_1"] = ratio is not None and ratio > 1.0
    return checks


def _comparison_table(reports: dict[tuple[str, str], SummaryReport]) -> tuple[list[dict[str, Any]], str]:
    rows = []
    models = sorted({m for m, _ in reports if m != "none"})
    for m in models:
        normal = reports.get((m, "normal"))
        fault = reports.get((m, "fault"))
        rows.append(
            {
                "model": m,
                "limiting_ratio": fault.limiting_ratio if fault else None,
                "insertion_drop_pct": 100.0 * normal.insertion_drop if normal else None,
                "first_fault_peak_A": fault.first_fault_peak if fault else None,
                "steady_fault_amplitude_A": fault.steady_fault_amplitude if fault else None,
                "peak_v_dc_V": fault.peak_v_dc if fault else None,
                "normal_amplitude_A": normal.normal_amplitude if normal else None,
            }
        )
    # Best limiter first; ties broken by the smaller insertion drop.
    rows.sort(key=lambda r: (-(r["limiting_ratio"] or 0.0), r["insertion_drop_pct"] if r["insertion_drop_pct"] is not None else math.inf))
    cols = list(rows[0]) if rows else ["model"]
    lines = [",".join(cols)]
    for r in rows:
        lines.append(",".join("" if r[c] is None else (f"{r[c]:.10g}" if isinstance(r[c], float) else str(r[c])) for c in cols))
    return rows, "\n".join(lines) + "\n"


def run_suite(
    name: str,
    out: str | Path,
    *,
    dt: float | None = None,
    t_end: float | None = None,
    jobs: int = 1,
    log: Callable[[str], None] = lambda s: None,
) -> SuiteResult:
    """Run every (model, condition) pair of a suite and write waveforms, summaries and the comparison table."""
    if name not in SUITES:
        raise _UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    models, conditions = SUITES[name]
    sim = SimConfig(dt=dt or 1e-5, t_end=t_end or SUITE_T_END)
    sim.validate(50.0)
    if "fault" in conditions and sim.t_end < SUITE_T_FAULT + 2.0 / 50.0:
        raise _UsageError(f"t_end must be at least {SUITE_T_FAULT + 0.04:g} s for suites with a fault")
    out = Path(out)
    tasks = [(m, c) for c in conditions for m in models]
    series: dict[tuple[str, str], TimeSeries] = {}
    manifest: dict[str, Any] = {"suite": name, "version": __version__, "dt_s": sim.dt, "t_end_s": sim.t_end, "runs": []}
    failure: tuple[tuple[str, str], BaseException] | None = None

    def finish(key: tuple[str, str], ts: TimeSeries) -> None:
        series[key] = ts
        fname = f"{key[0]}_{key[1]}.csv"
        _atomic_write(out / fname, waveform_csv(ts))
        manifest["runs"].append({"model": key[0], "condition": key[1], "status": "ok", "file": fname})
        log(f"  {key[0]:>4} {key[1]:<6} done ({ts.stats.newton_iterations} Newton iterations)")

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = {pool.submit(_suite_task, m, c, sim): (m, c) for m, c in tasks}
            for fut in concurrent.futures.as_completed(futs):
                key = futs[fut]
                try:
                    finish(key, fut.result())
                except NonConvergence as ex:
                    failure = failure or (key, ex)
    else:
        for key in tasks:
            try:
                finish(key, _suite_task(*key, sim))
            except NonConvergence as ex:
                failure = (key, ex)
                break

    if failure is not None:
        (m, c), ex = failure
        manifest["runs"].append({"model": m, "condition": c, "status": "failed", "error": str(ex)})
        manifest["status"] = "partial"
        _atomic_write(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
        raise ex

    reports: dict[tuple[str, str], SummaryReport] = {}
    for (m, c), ts in series.items():
        scen = suite_scenario(m, c)
        reports[(m, c)] = extract_metrics(ts, series[("none", c)], scen)
        doc = _summary_json(f"{m}_{c}", reports[(m, c)], ts, _provenance(f"suite:{name}:{m}:{c}", sim))
        _atomic_write(out / f"{m}_{c}.summary.json", doc)
    checks = _suite_checks(name, reports, series)
    rows, table = _comparison_table(reports)
    _atomic_write(out / "comparison.csv", table)
    manifest["status"] = "complete"
    manifest["runs"].sort(key=lambda r: (r["condition"], r["model"]))
    manifest["checks"] = checks
    manifest["comparison"] = _finite(rows)
    _atomic_write(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    return SuiteResult(name, reports, checks, sorted(r["file"] for r in manifest["runs"]))


def cmd_suite(args: argparse.Namespace) -> int:
    out = Path(args.out) / args.name
    print(f"suite {args.name} -> {out}", file=sys.stderr)
    try:
        res = run_suite(args.name, out, dt=args.dt, t_end=args.t_end, jobs=args.jobs, log=lambda s: print(s, file=sys.stderr))
    except NonConvergence as ex:
        print(f"suite aborted, partial manifest written: {ex}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as ex:
        raise _UsageError(str(ex)) from None
    rows, table = _comparison_table(res.reports)
    if args.format == "json":
        print(json.dumps(_finite({"suite": res.name, "comparison": rows, "checks": res.checks}), indent=2))
    else:
        sys.stdout.write(table)
        for k, v in res.checks.items():
            print(f"# check {k}: {'pass' if v else 'FAIL'}")
    return EXIT_OK if (all(res.checks.values()) or not args.strict) else 1


# --------------------------------------------------------------------------------------------------------------
# Closed-form calculator


def _analyze(args: argparse.Namespace) -> list[tuple[str, float, str]]:
    sub = args.sub
    if sub == "overvoltage":
        v = analysis.induced_dc_overvoltage(args.ndc, args.nac, args.u)
        return [("v_dc_peak", v, "V"), ("v_dc_rms", v / math.sqrt(2), "V")]
    if sub == "tau":
        t_r, t_x = analysis.time_constants(args.rl, args.ll, args.rfcl, args.lfcl)
        return [("tau_rfcl", t_r, "s"), ("tau_xfcl", t_x, "s")]
    if sub == "aux-turns":
        return [("n_dc_aux", float(analysis.aux_turns(args.nac, args.il, args.idc)), "turns")]
    if sub == "margin":
        ok, hs = analysis.saturation_margin(args.ndc, args.idc, args.nac, args.ilmax, args.hsat, args.l)
        return [("h_s", hs, "A/m"), ("satisfied", float(ok), "bool")]
    if sub == "inductances":
        lx, ly = analysis.inductances(args.n, args.a, args.l, args.mur, args.mursat)
        return [("l_unsaturated", lx, "H"), ("l_saturated", ly, "H")]
    if sub == "inductive-bias":
        b_mid, b_o = analysis.inductive_dc_bias(args.musat, args.ndc, args.idc, args.l, args.bsat, args.hsat)
        return [("b_mid", b_mid, "T"), ("b_outer", b_o, "T")]
    if sub == "inductive-l":
        l_sat, l_lin = analysis.inductive_fcl_inductances(args.nac, args.a, args.l, args.lgap)
        return [("l_sat", l_sat, "H"), ("l_lin", l_lin, "H"), ("ratio", l_lin / l_sat, "-")]
    if sub == "resonance":
        omega = args.omega if args.omega is not None else 2 * math.pi * args.f
        return [("z", analysis.resonant_impedance(omega, args.l, args.c), "ohm")]
    if sub == "fault-amplitude":
        line = analysis.LineParams.from_frequency(args.u, args.f, args.rl, args.ll)
        rows = [
            ("steady_amplitude", line.steady_amplitude, "A"),
            ("z_abs", line.Z_abs, "ohm"),
            ("phi_l", line.phi_L, "rad"),
            ("tau", line.tau, "s"),
        ]
        if args.t is not None:
            i = analysis.fault_current(line, args.il_tf, args.tf, line.tau, args.t, phase=args.phase, literal=args.literal)
            rows.append(("i_fault", i, "A"))
        return rows
    raise _UsageError(f"unknown analyze subcommand {sub!r}")


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        rows = _analyze(args)
    except analysis.Resonance as ex:
        print(f"resonance: {ex}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as ex:
        raise _UsageError(str(ex)) from None
    if args.format == "csv":
        print("quantity,value,unit")
        for k, v, u in rows:
            print(f"{k},{v:.12g},{u}")
    elif args.format == "json":
        print(json.dumps({k: {"value": v, "unit": u} for k, v, u in rows}, sort_keys=True))
    else:
        for k, v, u in rows:
            print(f"{k} = {v:.12g} {u}")
    return EXIT_OK


# --------------------------------------------------------------------------------------------------------------
# Parser


def _globals(defaults: bool) -> argparse.ArgumentParser:
    # Parsed both before and after the subcommand; only the top-level copy sets defaults.
    p = argparse.ArgumentParser(add_help=False)
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--dt", type=float, help="time step [s]", **({"default": None} if defaults else sup))
    p.add_argument("--t-end", type=float, dest="t_end", help="simulated horizon [s]", **({"default": None} if defaults else sup))
    p.add_argument("--format", choices=("csv", "json"), help="stdout format", **({"default": "text"} if defaults else sup))
    p.add_argument("--seed-free", action="store_true", help="no-op; nothing in this program draws random numbers", **({"default": False} if defaults else sup))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scfcl", description="Saturated-core fault current limiter co-simulator.", parents=[_globals(True)])
    parser.add_argument("--version", action="version", version=f"scfcl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    g = _globals(False)

    p = sub.add_parser("run", parents=[g], help="run one scenario file")
    p.add_argument("file")
    p.add_argument("--out", default="scfcl-out", help="output directory")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("suite", parents=[g], help="run a stock comparison suite")
    p.add_argument("name", choices=tuple(SUITES))
    p.add_argument("--out", default="scfcl-out")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--strict", action="store_true", help="exit 1 when a suite check fails")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("analyze", parents=[g], help="evaluate a closed-form relation")
    asub = p.add_subparsers(dest="sub", required=True)
    p.set_defaults(func=cmd_analyze)

    def req(q: argparse.ArgumentParser, *names: str, **kw: Any) -> None:
        for n in names:
            q.add_argument(f"--{n}", type=float, required=kw.get("required", True), default=kw.get("default"))

    q = asub.add_parser("overvoltage", parents=[g], help="dc winding voltage of a perfectly coupled pair")
    req(q, "ndc", "nac", "u")
    q = asub.add_parser("tau", parents=[g], help="time constants with resistive and inductive limiters")
    req(q, "rl", "ll")
    req(q, "rfcl", "lfcl", required=False, default=0.0)
    q = asub.add_parser("aux-turns", parents=[g], help="auxiliary dc turns")
    req(q, "nac", "il", "idc")
    q = asub.add_parser("margin", parents=[g], help="saturation safe-zone width")
    req(q, "ndc", "idc", "nac", "ilmax", "hsat", "l")
    q = asub.add_parser("inductances", parents=[g], help="unsaturated and saturated winding inductance")
    req(q, "n", "a", "l", "mur", "mursat")
    q = asub.add_parser("inductive-bias", parents=[g], help="dc flux density in the inductive limiter legs")
    req(q, "musat", "ndc", "idc", "l", "bsat", "hsat")
    q = asub.add_parser("inductive-l", parents=[g], help="saturated and linear inductance of the inductive limiter")
    req(q, "nac", "a", "l", "lgap")
    q = asub.add_parser("resonance", parents=[g], help="parallel LC limiter reactance")
    req(q, "l", "c")
    req(q, "omega", required=False)
    req(q, "f", required=False, default=50.0)
    q = asub.add_parser("fault-amplitude", parents=[g], help="prospective fault current")
    req(q, "u", "rl", "ll")
    req(q, "f", required=False, default=50.0)
    req(q, "t", required=False)
    req(q, "tf", "il-tf", "phase", required=False, default=0.0)
    q.add_argument("--literal", action="store_true", help="use the bracket-inside-exponential variant")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code) if isinstance(ex.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as ex:
        print(f"config error: {ex}", file=sys.stderr)
        return EXIT_CONFIG
    except (_UsageError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
