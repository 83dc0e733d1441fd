"""
Saturating iron and a three-leg magnetic circuit.

Walks from the B-H law to a reluctance network: how permeability collapses past the knee, how a
nonlinear nodal solve splits flux between legs, and how the winding inductance falls once the iron
saturates.
"""

import numpy as np

from scfcl import SOFT_IRON, Branch, MagneticNetwork, WindingLink, b_of_h, mu_differential, solve
from scfcl.mec import incremental_inductance

# The default curve: 1.8 T saturation, 500 A/m knee.
for H in (0.0, 500.0, 5e3, 5e4):
    mu_r = float(mu_differential(SOFT_IRON, H)) / (4e-7 * np.pi)
    print(f"H = {H:>8.0f} A/m   B = {float(b_of_h(SOFT_IRON, H)):.4f} T   differential mu_r = {mu_r:9.1f}")

# Two iron legs around a gapped middle leg; a 60-turn coil sits on the left leg.
net = MagneticNetwork(
    nodes=("bot", "top"),
    branches=(
        Branch.core("left", "bot", "top", 2.0, 0.04, SOFT_IRON),
        Branch.gap("mid", "bot", "top", 0.3, 0.08),
        Branch.core("right", "bot", "top", 2.0, 0.04, SOFT_IRON),
    ),
    windings=(WindingLink("coil", "left", 60),),
)

print("\ncoil current  left flux  mid flux  right flux  L_coil")
for i in (1.0, 100.0, 1e3, 1e4):
    sol = solve(net, {"coil": i})
    L = incremental_inductance(net, {"coil": i})[0, 0]
    print(f"{i:>10.0f} A  " + "  ".join(f"{f:+.3e}" for f in sol.flux) + f"  {L:.3e} H")

# Nodal conservation holds at every operating point: the three leg fluxes sum to zero.
print("\nflux imbalance at 10 kA:", abs(solve(net, {"coil": 1e4}).flux.sum()))
