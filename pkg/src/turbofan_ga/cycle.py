"""On-design cycle of a separate-flow two-spool turbofan with bleed and turbine cooling.

Station ids used in :attr:`CycleResult.stations`::

    "0"    freestream (stagnation)
    "1"    diffuser exit / fan face
    "1.3"  fan exit, bypass stream
    "2"    fan exit, core stream
    "2.5"  LPC exit
    "3"    HPC exit, full core flow
    "3.1"  burner inlet, after bleed and cooling extraction
    "4"    burner exit
    "4.1"  HPT inlet, after the first cooling-air mixer
    "4.4"  HPT exit
    "4.5"  LPT inlet, after the second cooling-air mixer
    "5"    LPT exit
    "6"    core nozzle exit
    "7"    bypass nozzle exit

plus the extracted streams ``"bleed"``, ``"cool1"`` and ``"cool2"`` (all at HPC
exit conditions). Bleed, cooling air and both cooling fractions are drawn at HPC
exit; bleed is dumped overboard with no thrust.
"""

import math
from dataclasses import dataclass, field, fields, astuple

from . import fluid
from .environment import (
    FlightCondition,
    freestream_state,
    temperature_from_enthalpy,
    temperature_from_entropy,
)
from .exceptions import ConvergenceError, InfeasibleDesign, TemperatureRangeError

REL_TOL = 1e-5
MAX_ITER = 200
FAR_LIMIT = 0.05

# Names of the constraint violations recorded on a CycleResult.
OPR_LIMIT = "opr_limit"
CORE_NOZZLE_PRESSURE = "core_nozzle_pressure"
BYPASS_NOZZLE_PRESSURE = "bypass_nozzle_pressure"
MODEL_ENVELOPE = "model_envelope"


@dataclass(frozen=True)
class GasState:
    """Stagnation state of a stream: Tt (K), Pt (Pa), fuel-air ratio, mass flow (kg/s)."""

    Tt: float
    Pt: float
    far: float
    mdot: float

    @property
    def ht(self):
        return fluid.enthalpy(self.Tt, self.far)

    def with_mdot(self, mdot):
        return GasState(self.Tt, self.Pt, self.far, mdot)


@dataclass(frozen=True)
class ComponentEfficiencies:
    """Pressure ratios of passive components, component and polytropic efficiencies."""

    pi_d: float = 0.99
    pi_b: float = 0.96
    pi_nf: float = 0.96
    pi_nc: float = 0.96
    eta_b: float = 0.99
    eta_mL: float = 0.99
    eta_mH: float = 0.99
    e_f: float = 0.89
    e_c: float = 0.90
    e_t: float = 0.89

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{f.name} must be in (0, 1], got {v}")


DESIGN_VARIABLES = (
    "bypass_ratio",
    "bleed_fraction",
    "cooling_hpt",
    "cooling_lpt",
    "fan_pr",
    "lpc_pr",
    "hpc_pr",
    "Tt4",
)

DESIGN_BOUNDS = (
    (3.0, 10.0),
    (0.01, 0.02),
    (0.05, 0.15),
    (0.05, 0.15),
    (1.2, 2.0),
    (2.0, 5.0),
    (4.0, 10.0),
    (1400.0, 2000.0),
)


@dataclass(frozen=True)
class EngineDesign:
    """The eight design variables, in chromosome order."""

    bypass_ratio: float
    bleed_fraction: float
    cooling_hpt: float
    cooling_lpt: float
    fan_pr: float
    lpc_pr: float
    hpc_pr: float
    Tt4: float

    @property
    def opr(self):
        return self.fan_pr * self.lpc_pr * self.hpc_pr

    def as_tuple(self):
        return astuple(self)

    @classmethod
    def from_sequence(cls, values):
        values = [float(v) for v in values]
        if len(values) != len(DESIGN_VARIABLES):
            raise ValueError(f"expected {len(DESIGN_VARIABLES)} values, got {len(values)}")
        return cls(*values)

    def bound_violations(self, bounds=DESIGN_BOUNDS, rtol=1e-12):
        """Names and values of variables outside ``bounds``."""
        out = []
        for name, (lo, hi), v in zip(DESIGN_VARIABLES, bounds, self.as_tuple()):
            slack = rtol * max(abs(lo), abs(hi))
            if not lo - slack <= v <= hi + slack:
                out.append(f"{name}={v:g} outside [{lo:g}, {hi:g}]")
        return out

    def replace(self, **changes):
        kw = dict(zip(DESIGN_VARIABLES, self.as_tuple()))
        kw.update(changes)
        return EngineDesign(**kw)


@dataclass
class CycleResult:
    """Everything :func:`run_cycle` computes for one design point.

    Powers in ``works`` are in W. Compressor entries are shaft power absorbed,
    turbine entries shaft power delivered (before mechanical losses).
    """

    design: EngineDesign
    flight: FlightCondition
    efficiencies: ComponentEfficiencies
    fuel: fluid.FuelSpec
    pi_max: float
    T0: float = math.nan
    P0: float = math.nan
    V0: float = math.nan
    stations: dict = field(default_factory=dict)
    works: dict = field(default_factory=dict)
    V6: float = math.nan
    V7: float = math.nan
    T6_static: float = math.nan
    T7_static: float = math.nan
    fuel_flow: float = math.nan
    far: float = math.nan
    hpt_pr: float = math.nan
    lpt_pr: float = math.nan
    violations: list = field(default_factory=list)

    @property
    def feasible(self):
        return not self.violations

    @property
    def complete(self):
        """True when every station and both exit velocities were computed."""
        return not (math.isnan(self.V6) or math.isnan(self.V7))

    @property
    def turbine_expansion_ratio(self):
        return self.hpt_pr * self.lpt_pr

    @property
    def mechanical_losses(self):
        w = self.works
        return (w["hpt"] - w["hpc"]) + (w["lpt"] - w["fan"] - w["lpc"])


COMPRESSOR_METHODS = ("exact", "mean-gamma")


def compress(inlet, pr, e, method="exact"):
    """Fan/compressor outlet state and specific work (J/kg).

    ``"exact"`` integrates the polytropic path with the full property model:
    ``s(Tt_out) - s(Tt_in) = R ln(pr) / e``. ``"mean-gamma"`` is the classic
    two-pass procedure with gamma taken at the mean stage temperature; it
    drifts by several kelvin at high pressure ratio and hot inlet.
    """
    if pr < 1.0:
        raise ValueError(f"compressor pressure ratio must be >= 1, got {pr}")
    if not 0.0 < e <= 1.0:
        raise ValueError(f"polytropic efficiency must be in (0, 1], got {e}")
    if method not in COMPRESSOR_METHODS:
        raise ValueError(f"method must be one of {COMPRESSOR_METHODS}, got {method!r}")
    if pr == 1.0:
        return inlet, 0.0

    f = inlet.far
    T_in = inlet.Tt
    h_in = fluid.enthalpy(T_in, f)
    if method == "exact":
        R = fluid.gas_constant(f)
        guess = T_in * pr ** (0.2857 / e)
        T_out = temperature_from_entropy(fluid.entropy_fn(T_in, f) + R * math.log(pr) / e, f, guess)
    else:
        T_out = _compress_mean_gamma(T_in, h_in, pr, e, f)
    work = fluid.enthalpy(T_out, f) - h_in
    return GasState(T_out, inlet.Pt * pr, f, inlet.mdot), work


def _compress_mean_gamma(T_in, h_in, pr, e, f):
    ln_pr = math.log(pr)

    # isentropic pass
    g = 1.4
    T_is_prev = T_in * math.exp(ln_pr * (g - 1.0) / g)
    for _ in range(MAX_ITER):
        _, g = fluid.cp_gamma(0.5 * (T_is_prev + T_in), f)
        T_is = T_in * math.exp(ln_pr * (g - 1.0) / g)
        err = abs(T_is_prev - T_is) / T_is
        T_is_prev = T_is
        if err <= REL_TOL:
            break
    else:
        raise ConvergenceError("compressor isentropic pass", err, MAX_ITER)
    dh_is = fluid.enthalpy(T_is, f) - h_in

    # polytropic pass
    T_out = T_is
    for _ in range(MAX_ITER):
        cpm, g = fluid.cp_gamma(0.5 * (T_out + T_in), f)
        x = ln_pr * (g - 1.0) / g
        eta = math.expm1(x) / math.expm1(x / e)
        T_new = dh_is / (eta * cpm) + T_in
        err = abs(T_out - T_new) / T_out
        T_out = T_new
        if err <= REL_TOL:
            break
    else:
        raise ConvergenceError("compressor polytropic pass", err, MAX_ITER)
    return T_out


def burner_far(h_in, far_in, Tt4, eta_b, lhv):
    """Damped fixed-point solve for the burner exit fuel-air ratio.

    Energy balance per unit inlet air, fuel entering at the enthalpy datum::

        (1 + f_in) h_in + eta_b (f - f_in) LHV = (1 + f) h(Tt4, f)
    """
    f = 0.02
    for _ in range(MAX_ITER):
        h_out = fluid.enthalpy(Tt4, f)
        f_m = far_in + ((1.0 + f) * h_out - (1.0 + far_in) * h_in) / (eta_b * lhv)
        diff = abs(f_m - f)
        # absolute floor: f -> 0 when there is no temperature rise
        if diff <= REL_TOL * abs(f) or diff < 1e-12:
            return 0.5 * (f + f_m)
        f = 0.5 * (f + f_m)
    raise ConvergenceError("burner fuel-air ratio", diff / abs(f), MAX_ITER)


def burn(inlet, Tt4, eff=ComponentEfficiencies(), fuel=fluid.KEROSENE):
    """Burner exit state at ``Tt4``; returns ``(outlet, far)``."""
    if Tt4 < inlet.Tt:
        raise InfeasibleDesign(
            f"burner exit temperature {Tt4:.1f} K below inlet {inlet.Tt:.1f} K"
        )
    h_in = fluid.enthalpy(inlet.Tt, inlet.far)
    far = burner_far(h_in, inlet.far, Tt4, eff.eta_b, fuel.lhv)
    if far > FAR_LIMIT:
        raise InfeasibleDesign(f"fuel-air ratio {far:.4f} exceeds {FAR_LIMIT}")
    mdot_air = inlet.mdot / (1.0 + inlet.far)
    out = GasState(Tt4, inlet.Pt * eff.pi_b, far, mdot_air * (1.0 + far))
    return out, far


def mix(main, coolant):
    """Adiabatic constant-pressure mixing of a coolant stream into ``main``."""
    if coolant.mdot < 0:
        raise ValueError("coolant mass flow must be non-negative")
    if coolant.mdot == 0:
        return main
    mdot = main.mdot + coolant.mdot
    fuel = main.mdot * main.far / (1.0 + main.far) + coolant.mdot * coolant.far / (1.0 + coolant.far)
    air = mdot - fuel
    far = fuel / air
    h_out = (main.mdot * main.ht + coolant.mdot * coolant.ht) / mdot
    T_guess = (main.mdot * main.Tt + coolant.mdot * coolant.Tt) / mdot
    T_out = temperature_from_enthalpy(h_out, far, T_guess)
    return GasState(T_out, main.Pt, far, mdot)


def expand_turbine(inlet, power, e_t):
    """Turbine exit for a given shaft power (W); returns ``(outlet, Pt_in / Pt_out)``.

    The pressure ratio follows the variable-property polytropic path
    ``ln(Pt_out / Pt_in) = (s(Tt_out) - s(Tt_in)) / (e_t R)``.
    """
    if power < 0:
        raise ValueError("turbine power must be non-negative")
    if power == 0:
        return inlet, 1.0
    f = inlet.far
    h_in = fluid.enthalpy(inlet.Tt, f)
    dh = power / inlet.mdot
    h_out = h_in - dh
    if h_out <= fluid.enthalpy(fluid.T_MIN, f):
        raise InfeasibleDesign("turbine work drives exit temperature below 200 K")
    T_out = temperature_from_enthalpy(h_out, f, inlet.Tt - dh / fluid.cp(inlet.Tt, f))
    R = fluid.gas_constant(f)
    ln_pr = (fluid.entropy_fn(inlet.Tt, f) - fluid.entropy_fn(T_out, f)) / (e_t * R)
    pr = math.exp(ln_pr)
    return GasState(T_out, inlet.Pt / pr, f, inlet.mdot), pr


def expand_nozzle(inlet, pi_n, P0):
    """Full expansion to ambient static pressure.

    Returns ``(V, exit_state, T_static)`` where ``exit_state`` carries the
    stagnation conditions after the nozzle total-pressure loss.
    """
    f = inlet.far
    Pt = inlet.Pt * pi_n
    exit_state = GasState(inlet.Tt, Pt, f, inlet.mdot)
    if Pt < P0:
        raise InfeasibleDesign(f"nozzle total pressure {Pt:.1f} Pa below ambient {P0:.1f} Pa")
    if Pt == P0:
        return 0.0, exit_state, inlet.Tt
    R = fluid.gas_constant(f)
    s_target = fluid.entropy_fn(inlet.Tt, f) + R * math.log(P0 / Pt)
    T = temperature_from_entropy(s_target, f, inlet.Tt * (P0 / Pt) ** 0.27)
    dh = fluid.enthalpy(inlet.Tt, f) - fluid.enthalpy(T, f)
    if dh < 0:
        raise ArithmeticError("negative nozzle enthalpy drop")
    return math.sqrt(2.0 * dh), exit_state, T


def run_cycle(
    design,
    fc=FlightCondition(),
    eff=ComponentEfficiencies(),
    fuel=fluid.KEROSENE,
    pi_max=45.0,
    Tt4=None,
):
    """Evaluate the full station sequence for one design at one flight condition.

    ``Tt4`` overrides the design burner exit temperature (used by the take-off
    check). Physical-envelope failures and the overall-pressure-ratio and
    nozzle-pressure constraints are reported in ``violations``; only
    convergence failures propagate as exceptions.
    """
    res = CycleResult(design, fc, eff, fuel, pi_max)
    if not design.opr < pi_max:
        res.violations.append(OPR_LIMIT)
    try:
        _run_stations(res, design, fc, eff, fuel, design.Tt4 if Tt4 is None else Tt4)
    except (InfeasibleDesign, TemperatureRangeError) as exc:
        reason = exc.reason if isinstance(exc, InfeasibleDesign) else str(exc)
        res.violations.append(f"{MODEL_ENVELOPE}: {reason}")
    return res


def _run_stations(res, d, fc, eff, fuel, Tt4):
    st = res.stations
    w = res.works
    Tt0, Pt0, V0, amb = freestream_state(fc)
    res.T0, res.P0, res.V0 = amb.T, amb.P, V0
    m0 = fc.mdot
    st["0"] = GasState(Tt0, Pt0, 0.0, m0)
    st["1"] = GasState(Tt0, Pt0 * eff.pi_d, 0.0, m0)

    fan_out, w_fan = compress(st["1"], d.fan_pr, eff.e_f)
    w["fan"] = m0 * w_fan
    m_core = m0 / (1.0 + d.bypass_ratio)
    st["1.3"] = fan_out.with_mdot(m0 - m_core)
    st["2"] = fan_out.with_mdot(m_core)

    st["2.5"], w_lpc = compress(st["2"], d.lpc_pr, eff.e_c)
    w["lpc"] = m_core * w_lpc
    st["3"], w_hpc = compress(st["2.5"], d.hpc_pr, eff.e_c)
    w["hpc"] = m_core * w_hpc

    s3 = st["3"]
    st["bleed"] = s3.with_mdot(d.bleed_fraction * m_core)
    st["cool1"] = s3.with_mdot(d.cooling_hpt * m_core)
    st["cool2"] = s3.with_mdot(d.cooling_lpt * m_core)
    extracted = (d.bleed_fraction + d.cooling_hpt + d.cooling_lpt) * m_core
    st["3.1"] = s3.with_mdot(m_core - extracted)

    st["4"], res.far = burn(st["3.1"], Tt4, eff, fuel)
    res.fuel_flow = st["4"].mdot - st["3.1"].mdot

    st["4.1"] = mix(st["4"], st["cool1"])
    w["hpt"] = w["hpc"] / eff.eta_mH
    st["4.4"], res.hpt_pr = expand_turbine(st["4.1"], w["hpt"], eff.e_t)
    st["4.5"] = mix(st["4.4"], st["cool2"])
    w["lpt"] = (w["fan"] + w["lpc"]) / eff.eta_mL
    st["5"], res.lpt_pr = expand_turbine(st["4.5"], w["lpt"], eff.e_t)

    P0 = amb.P
    for key, src, pi_n, flag in (
        ("6", "5", eff.pi_nc, CORE_NOZZLE_PRESSURE),
        ("7", "1.3", eff.pi_nf, BYPASS_NOZZLE_PRESSURE),
    ):
        inlet = st[src]
        st[key] = GasState(inlet.Tt, inlet.Pt * pi_n, inlet.far, inlet.mdot)
        if not st[key].Pt > P0:
            res.violations.append(flag)
    if res.violations:
        return
    res.V6, st["6"], res.T6_static = expand_nozzle(st["5"], eff.pi_nc, P0)
    res.V7, st["7"], res.T7_static = expand_nozzle(st["1.3"], eff.pi_nf, P0)


def check_takeoff(design, eff=ComponentEfficiencies(), fuel=fluid.KEROSENE, pi_max=45.0, mdot=350.0):
    """Sea-level static run at 1.05 x design Tt4.

    Returns ``(ok, result)``; ``ok`` is False when any constraint or envelope
    check fails at take-off.
    """
    fc = FlightCondition(mach=0.0, altitude=0.0, mdot=mdot)
    res = run_cycle(design, fc, eff, fuel, pi_max, Tt4=1.05 * design.Tt4)
    return res.feasible, res


def energy_balance_residual(res):
    """Relative residual of the whole-engine first-law balance.

    Inflow: freestream stagnation enthalpy flux plus released fuel energy.
    Outflow: both exhaust streams, the dumped bleed, and shaft mechanical losses.
    """
    st = res.stations
    q_in = st["0"].mdot * st["0"].ht + res.efficiencies.eta_b * res.fuel_flow * res.fuel.lhv
    q_out = (
        st["6"].mdot * st["6"].ht
        + st["7"].mdot * st["7"].ht
        + st["bleed"].mdot * st["bleed"].ht
        + res.mechanical_losses
    )
    return (q_in - q_out) / (res.efficiencies.eta_b * res.fuel_flow * res.fuel.lhv)
