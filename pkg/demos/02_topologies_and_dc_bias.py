"""
The five limiter topologies under dc bias alone.

Before any fault, the dc winding must drive the ac legs deep into saturation. This script prints
the bias flux density per leg for each model and shows that the inductive design keeps its gapped
middle leg flux-free whatever the gap length.
"""

from scfcl import GeometrySpec, build, dc_bias_check

for model in "ABCDE":
    dev = build(model)
    rep = dc_bias_check(model)
    legs = ", ".join(f"{b} {B:+.3f} T" for b, B in rep.B.items() if b.startswith("c1."))
    print(f"model {model}: {len(dev.cores)} core(s), windings {sorted(dev.roles())}")
    print(f"    core 1 bias: {legs}")

print()
for l_gap in (0.6, 0.3, 0.15):
    rep = dc_bias_check("D", GeometrySpec(l_gap=l_gap))
    print(f"model D, gap {l_gap:.2f} m: outer {rep.B['c1.left']:.6f} T, middle {rep.B['c1.mid']:.1e} T")
