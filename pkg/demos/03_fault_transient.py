"""
A line-to-ground fault with and without a limiter.

Runs the 50 Hz test line with a fault at 23 ms, once bare and once per limiter model, then compares
the limited fault current, the insertion drop in normal operation and the voltage induced on the dc
supply. Takes about thirty seconds.
"""

from scfcl import CircuitScenario, FaultSpec, SimConfig, build, extract_metrics, run

SIM = SimConfig(dt=1e-5, t_end=0.1)
FAULT = FaultSpec(t_fault=0.023)

bare_fault = run(CircuitScenario(fault=FAULT), SIM)
bare_normal = run(CircuitScenario(), SIM)

print("model  limiting ratio  first peak [kA]  steady [kA]  insertion drop [%]  peak v_dc [kV]")
for model in "ABCDE":
    dev = build(model)
    fault = extract_metrics(run(CircuitScenario(device=dev, fault=FAULT), SIM), bare_fault, CircuitScenario(device=dev, fault=FAULT))
    normal = extract_metrics(run(CircuitScenario(device=dev), SIM), bare_normal, CircuitScenario(device=dev))
    print(
        f"  {model}    {fault.limiting_ratio:10.3f}   {fault.first_fault_peak / 1e3:12.2f}   "
        f"{fault.steady_fault_amplitude / 1e3:9.2f}   {100 * normal.insertion_drop:14.4f}   {fault.peak_v_dc / 1e3:12.2f}"
    )
