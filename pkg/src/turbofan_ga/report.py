"""Plain-text reports for single design points."""

from .cycle import DESIGN_VARIABLES, check_takeoff, energy_balance_residual, run_cycle
from .metrics import component_destructions, performance
from .optimizer import TAKEOFF_PREFIX

STATION_ORDER = (
    "0", "1", "1.3", "2", "2.5", "3", "bleed", "cool1", "cool2", "3.1",
    "4", "4.1", "4.4", "4.5", "5", "6", "7",
)


def analyze(design, fc, eff, fuel, pi_max, efficiency_mode="overall",
            chemical_mode="paper-constant", destruction_set="internal"):
    """Cruise cycle, take-off check and metrics for one design, as a dict."""
    res = run_cycle(design, fc, eff, fuel, pi_max)
    _, to = check_takeoff(design, eff, fuel, pi_max, fc.mdot)
    out = {"result": res, "takeoff": to, "performance": None, "exergy": None}
    if res.feasible:
        out["performance"] = performance(res, efficiency_mode)
        out["exergy"] = component_destructions(res, chemical_mode, destruction_set)
    return out


def format_report(design, analysis):
    res = analysis["result"]
    to = analysis["takeoff"]
    lines = ["Design variables"]
    for name, v in zip(DESIGN_VARIABLES, design.as_tuple()):
        lines.append(f"  {name:16s} {v:.6g}")
    lines.append(f"  {'opr':16s} {design.opr:.6g}")
    fc = res.flight
    lines += [
        "",
        f"Flight condition: M={fc.mach:g} H={fc.altitude:g} m mdot={fc.mdot:g} kg/s",
        f"Ambient: T0={res.T0:.4f} K P0={res.P0:.2f} Pa V0={res.V0:.4f} m/s",
        "",
        "Stations (stagnation)",
        f"  {'id':6s} {'Tt [K]':>11s} {'Pt [Pa]':>13s} {'far':>9s} {'mdot [kg/s]':>12s}",
    ]
    for k in STATION_ORDER:
        if k in res.stations:
            s = res.stations[k]
            lines.append(f"  {k:6s} {s.Tt:11.4f} {s.Pt:13.2f} {s.far:9.6f} {s.mdot:12.6f}")
    if res.works:
        lines += ["", "Shaft power [MW]"]
        for k, v in res.works.items():
            lines.append(f"  {k:6s} {v / 1e6:12.6f}")

    cruise = res.violations or ["none"]
    takeoff = [f"{TAKEOFF_PREFIX} {v}" for v in to.violations] or ["none"]
    lines += ["", "Feasibility", f"  cruise violations:  {', '.join(cruise)}",
              f"  take-off violations: {', '.join(takeoff)}",
              f"  feasible: {res.feasible and to.feasible}"]

    perf = analysis["performance"]
    ex = analysis["exergy"]
    if perf is not None:
        lines += [
            "",
            "Performance",
            f"  core thrust      {perf.thrust_core:.3f} N",
            f"  bypass thrust    {perf.thrust_bypass:.3f} N",
            f"  specific thrust  {perf.specific_thrust:.4f} N/(kg/s)",
            f"  TSFC             {perf.tsfc:.6f} kg/(h N)",
            f"  eta_I ({perf.mode})  {perf.energy_eff:.6f}",
            f"  V6 / V7          {res.V6:.4f} / {res.V7:.4f} m/s",
            f"  fuel flow        {res.fuel_flow:.6f} kg/s (far {res.far:.6f})",
            f"  turbine expansion ratio {res.turbine_expansion_ratio:.4f}",
            f"  energy balance residual {energy_balance_residual(res):.3e}",
            "",
            f"Exergy ({ex.destruction_set})",
            f"  fuel exergy rate {ex.fuel_exergy_rate / 1e6:.6f} MW",
        ]
        for k, v in ex.destruction.items():
            lines.append(f"  destruction {k:14s} {v / 1e6:10.6f} MW")
        for k, v in ex.losses.items():
            lines.append(f"  loss        {k:14s} {v / 1e6:10.6f} MW")
        lines += [
            f"  thrust exergy    {ex.thrust_exergy / 1e6:.6f} MW",
            f"  eta_II           {ex.exergy_eff:.6f}",
            f"  balance residual {ex.balance_residual():.3e}",
        ]
    return "\n".join(lines) + "\n"
