"""
Acceptance criteria 1-11, each evaluated at its stated tolerance.

Every ``criterion_N`` returns ``(passed, detail)``; the pytest wrappers record one line per criterion for the
terminal summary and then assert. Run this file directly to print the lines without pytest.
"""

from __future__ import annotations

import contextlib
import io
import json
import math
import time

import numpy as np
import pytest

from helpers import ACCEPTANCE_LINES, T_END, T_FAULT, cached_report, cached_run, scenario
from scfcl import analysis as an
from scfcl import cli
from scfcl.cosim import CircuitScenario, FaultSpec, SimConfig, energy_drift, fundamental_amplitude, run
from scfcl.mec import incremental_inductance
from scfcl.topology import WindingSpec, build, dc_bias_check

MODELS = ("A", "B", "C", "D", "E")
LINE = an.LineParams.from_frequency(14142.1, 50.0, 0.1095, 5.63419e-4)


def criterion_1():
    sc = CircuitScenario(fault=FaultSpec(T_FAULT, r_fault=0.0))
    start = time.perf_counter()
    ts = run(sc, SimConfig(dt=1e-5, t_end=T_END))
    elapsed = time.perf_counter() - start
    k_f = int(round(T_FAULT / ts.dt))
    i0 = ts.i_line[k_f]
    ref = np.array([an.fault_current(LINE, i0, T_FAULT, LINE.tau, t) for t in ts.t[k_f:]])
    dev = float(np.max(np.abs(ts.i_line[k_f:] - ref)))
    bound = 0.01 * LINE.steady_amplitude
    ok = dev <= bound and elapsed <= 10.0 and abs(LINE.tau - 5.1454e-3) <= 5e-8
    return ok, f"max deviation {dev:.3g} A (bound {bound:.4g} A), runtime {elapsed:.2f} s (bound 10 s)"


def criterion_2():
    sc = CircuitScenario()
    ts = cached_run("none", "normal")
    tau = sc.l_line / (sc.r_line + sc.r_load)
    # First full cycle that starts after five time constants.
    amp_early = fundamental_amplitude(ts, ts.i_line, 5 * tau + sc.period, sc.frequency)
    amp_end = fundamental_amplitude(ts, ts.i_line, ts.t[-1], sc.frequency)
    ok = all(abs(a / 1588.8 - 1.0) <= 1e-3 for a in (amp_early, amp_end))
    return ok, f"amplitude {amp_early:.2f} A after 5 tau, {amp_end:.2f} A at horizon (target 1588.8 A +- 0.1%)"


def criterion_3():
    worst, where = 0.0, ""
    for model in ("none",) + MODELS:
        for cond in ("normal", "fault"):
            r = cached_run(model, cond).stats.max_flux_residual
            if r >= worst:
                worst, where = r, f"{model}/{cond}"
    return worst <= 1e-9, f"largest relative nodal flux residual {worst:.2e} ({where}), bound 1e-9"


def _model_d_series_inductance(i_dc: float) -> float:
    core = build("D").cores[0]
    cur = {w.id: (i_dc if w.role == "dc-source" else 0.0) for w in core.windings}
    L = incremental_inductance(core, cur)
    ac = [core.compiled.winding_index[w] for w in ("c1.ac_l", "c1.ac_r")]
    return float(L[np.ix_(ac, ac)].sum())


def criterion_4():
    l_lin = _model_d_series_inductance(0.0)
    l_sat = _model_d_series_inductance(build("D").windings.i_dc)
    ratio = l_lin / l_sat
    e15 = abs(l_lin / 1.20637e-3 - 1.0)
    e14 = abs(l_sat / 7.86765e-5 - 1.0)
    ok = ratio >= 10.0 and e15 <= 0.1 and e14 <= 0.1
    return ok, (
        f"L_lin {l_lin:.5g} H ({100 * e15:.1f}% off), L_sat {l_sat:.5g} H ({100 * e14:.1f}% off), "
        f"ratio {ratio:.2f} (need >= 10, both within 10%)"
    )


def criterion_5():
    rep = dc_bias_check("D")
    ok = rep.mid_to_outer <= 1e-3 and rep.outer_gap_sensitivity <= 1e-6
    return ok, f"|B_mid|/|B_outer| {rep.mid_to_outer:.2e} (<= 1e-3), gap-halving change {rep.outer_gap_sensitivity:.2e} (<= 1e-6)"


def _suite_checks(name: str, models: tuple[str, ...], conditions: tuple[str, ...]) -> dict[str, bool]:
    reports = {(m, c): cached_report(m, c) for m in models for c in conditions}
    series = {(m, c): cached_run(m, c) for m in models + ("none",) for c in conditions}
    return cli._suite_checks(name, reports, series)


def criterion_6():
    checks = _suite_checks("flux-comparison", ("A", "B", "C"), ("normal", "fault"))
    keys = ["limiting_ratio_A_gt_1", "limiting_ratio_B_gt_1", "limiting_ratio_C_gt_1", "insertion_drop_A_le_B"]
    ratios = ", ".join(f"{m} {cached_report(m, 'fault').limiting_ratio:.3f}" for m in "ABC")
    drops = f"A {100 * cached_report('A', 'normal').insertion_drop:.3f}% vs B {100 * cached_report('B', 'normal').insertion_drop:.3f}%"
    return all(checks[k] for k in keys), f"limiting ratios {ratios}; insertion drop {drops}"


def criterion_7():
    abc = _suite_checks("normal-comparison", ("A", "B", "C"), ("normal",))
    de = _suite_checks("model-DE", ("D", "E"), ("normal", "fault"))
    ok = all(abc[f"insertion_drop_{m}_le_5pct"] for m in "ABC") and de["insertion_drop_D_lt_E"]
    drops = ", ".join(f"{m} {100 * cached_report(m, 'normal').insertion_drop:.4g}%" for m in MODELS)
    return ok, f"insertion drops {drops} (A-C <= 5%, D < E)"


def criterion_8():
    shorted = cached_run("C", "fault")
    opened = cached_run("C", "fault", wind=WindingSpec(shorted_open=True))
    k = shorted.branch(build("C").cores[0].winding("c1.sc").branch)

    def rate(ts):
        return float(np.max(np.abs(np.diff(ts.flux[:, k]))) / ts.dt)

    n250 = cached_run("C", "fault", wind=WindingSpec(n_shorted=250))
    i500, i250 = float(np.max(np.abs(shorted.i_shorted))), float(np.max(np.abs(n250.i_shorted)))
    ok = rate(shorted) < rate(opened) and i250 > i500
    return ok, (
        f"peak dPhi/dt {rate(shorted):.4g} Wb/s shorted vs {rate(opened):.4g} Wb/s open; "
        f"loop current {i500:.4g} A at 500 turns vs {i250:.4g} A at 250 turns"
    )


def criterion_9():
    parts, ok = [], True
    for m in MODELS:
        drift, w_peak = energy_drift(cached_run(m, "normal"), scenario(m, "normal"), T_END - 0.02, T_END)
        rel = abs(drift) / w_peak
        ok &= rel <= 1e-3
        parts.append(f"{m} {rel:.2e}")
    return ok, "drift / peak co-energy over the last cycle: " + ", ".join(parts) + " (<= 1e-3)"


def _metric_values(rep) -> dict[str, float]:
    out = {}
    for key, value in rep.as_dict().items():
        if key in ("model", "newton_iterations", "max_flux_residual") or value is None:
            continue
        if isinstance(value, dict):
            out.update({f"peak_B[{b}]": v for b, v in value.items()})
        else:
            out[key] = value
    return out


def criterion_10():
    worst, where = 0.0, ""
    for m in MODELS:
        for cond in ("normal", "fault"):
            coarse, fine = _metric_values(cached_report(m, cond)), _metric_values(cached_report(m, cond, 5e-6))
            for key, a in coarse.items():
                b = fine[key]
                rel = abs(a - b) / max(abs(a), abs(b)) if max(abs(a), abs(b)) > 0 else 0.0
                if rel >= worst:
                    worst, where = rel, f"{m}/{cond} {key} {a:.6g} -> {b:.6g}"
    sc = CircuitScenario(fault=FaultSpec(T_FAULT, r_fault=0.0))
    ref = run(sc, SimConfig(dt=2.5e-6, t_end=0.05))
    errs = []
    for dt in (2e-5, 1e-5):
        ts = run(sc, SimConfig(dt=dt, t_end=0.05))
        errs.append(float(np.max(np.abs(ts.i_line - ref.i_line[:: int(round(dt / 2.5e-6))]))))
    order = math.log2(errs[0] / errs[1])
    ok = worst < 5e-3 and 1.7 <= order <= 2.3
    return ok, f"largest relative metric change {100 * worst:.3f}% ({where}); observed order {order:.3f}"


ANALYZE_CASES = [
    (["tau", "--rl", "0.1095", "--ll", "5.63419e-4"], "tau_rfcl", 5.1454e-3),
    (["overvoltage", "--ndc", "500", "--nac", "60", "--u", "14142.1"], "v_dc_peak", 117851.0),
    (["margin", "--ndc", "500", "--idc", "450", "--nac", "60", "--ilmax", "1000", "--hsat", "5000", "--l", "2"], "h_s", 77500.0),
    (["inductances", "--n", "60", "--a", "0.04", "--l", "2", "--mur", "1000", "--mursat", "2"], "l_unsaturated", 9.04779e-2),
    (["inductances", "--n", "60", "--a", "0.04", "--l", "2", "--mur", "1000", "--mursat", "2"], "l_saturated", 1.80956e-4),
    (["inductive-l", "--nac", "60", "--a", "0.04", "--l", "2", "--lgap", "0.3"], "l_sat", 7.86765e-5),
    (["inductive-l", "--nac", "60", "--a", "0.04", "--l", "2", "--lgap", "0.3"], "l_lin", 1.20637e-3),
    (["inductive-l", "--nac", "60", "--a", "0.04", "--l", "2", "--lgap", "0.3"], "ratio", 15.333),
    (["fault-amplitude", "--u", "14142.1", "--rl", "0.1095", "--ll", "5.63419e-4"], "steady_amplitude", 67950.0),
]


def _sig5(x: float) -> float:
    return float(f"{x:.5g}")


def criterion_11():
    bad = []
    for argv, key, expected in ANALYZE_CASES:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            rc = cli.main(["--format", "json", "analyze", *argv])
        got = json.loads(buf.getvalue())[key]["value"] if rc == 0 else None
        # The 67.95 kA figure carries four digits; compare at the precision given.
        digits = 4 if expected == 67950.0 else 5
        if got is None or float(f"{got:.{digits}g}") != float(f"{expected:.{digits}g}"):
            bad.append(f"{argv[0]}:{key}={got}")
    ratio = _sig5(9.04779e-2 / 1.80956e-4)
    return not bad, f"{len(ANALYZE_CASES) - len(bad)}/{len(ANALYZE_CASES)} values match (L_x/L_y {ratio:g})" + (
        "; mismatched " + ", ".join(bad) if bad else ""
    )


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


def evaluate(n: int) -> tuple[bool, str]:
    passed, detail = CRITERIA[n]()
    line = f"criterion {n}: {'PASS' if passed else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed, line


@pytest.mark.slow
@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n):
    passed, line = evaluate(n)
    assert passed, line


if __name__ == "__main__":
    for n in CRITERIA:
        evaluate(n)
