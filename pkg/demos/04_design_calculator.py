"""
Closed-form design relations for the test line.

Prospective fault current, time constants, the dc bias margin, the turns-ratio overvoltage on the dc
winding and the inductance swing of a gapped inductive limiter, all from lumped formulas.
"""

import numpy as np

from scfcl import analysis as an

line = an.LineParams.from_frequency(14142.1, 50.0, 0.1095, 5.63419e-4)
print(f"|Z| = {line.Z_abs:.5f} ohm, tau = {1e3 * line.tau:.4f} ms, steady fault amplitude = {line.steady_amplitude / 1e3:.2f} kA")

t = np.linspace(0.023, 0.063, 9)
i = [an.fault_current(line, 0.0, 0.023, line.tau, tk) for tk in t]
print("fault current from zero at 23 ms [kA]:", " ".join(f"{x / 1e3:+.1f}" for x in i))

print("time constants with a 0.1095 ohm resistive limiter:", an.time_constants(0.1095, 5.63419e-4, R_FCL=0.1095))
ok, hs = an.saturation_margin(500, 450.0, 60, 1000.0, 5000.0, 2.0)
print(f"bias margin: H_s = {hs:.0f} A/m, ac peaks stay inside = {ok}")
print(f"dc winding overvoltage if fully coupled: {an.induced_dc_overvoltage(500, 60, 14142.1):.0f} V")
print(f"auxiliary turns for 570 A line current: {an.aux_turns(60, 570.0, 450.0)}")
l_sat, l_lin = an.inductive_fcl_inductances(60, 0.04, 2.0, 0.3)
print(f"inductive limiter: L_sat = {l_sat:.4e} H, L_lin = {l_lin:.4e} H, ratio {l_lin / l_sat:.2f}")
