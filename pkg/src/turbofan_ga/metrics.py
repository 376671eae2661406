"""First- and second-law performance measures of a converged cycle."""

import math
from dataclasses import dataclass, field

from . import fluid
from .exceptions import ModelInconsistencyError, UndefinedMetricError

EFFICIENCY_MODES = ("overall", "kinetic", "literal")
CHEMICAL_MODES = ("paper-constant", "computed")
DESTRUCTION_SETS = ("internal", "with-losses")

PRODUCT_EXERGY_COEFF = 4.5853  # J/kg per K of dead-state temperature

R_UNIVERSAL = 8.314  # kJ/(kmol K)
ATOMIC_MASS_C = 12.011
ATOMIC_MASS_H = 1.008

# Reference-environment air, mole fractions
AIR_COMPOSITION = {"N2": 0.7748, "O2": 0.2059, "CO2": 0.0003, "H2O": 0.019}
MOLAR_MASS = {"N2": 28.0134, "O2": 31.9988, "CO2": 44.0095, "H2O": 18.0153}

COMPONENTS = (
    "diffuser",
    "fan",
    "lpc",
    "hpc",
    "burner",
    "mixer_hpt",
    "hpt",
    "mixer_lpt",
    "lpt",
    "core_nozzle",
    "bypass_nozzle",
)


@dataclass
class PerformanceReport:
    thrust_core: float
    thrust_bypass: float
    specific_thrust: float  # N/(kg/s)
    tsfc: float  # kg/(h N)
    energy_eff: float
    mode: str = "overall"

    @property
    def thrust(self):
        return self.thrust_core + self.thrust_bypass


@dataclass
class ExergyReport:
    """Exergy bookkeeping; rates in W, specific values in J/kg."""

    station_exergy: dict
    destruction: dict
    losses: dict
    fuel_exergy_rate: float
    thrust_exergy: float
    exergy_eff: float
    destruction_set: str = "internal"
    extra: dict = field(default_factory=dict)

    @property
    def total_destruction(self):
        return sum(self.destruction.values())

    def balance_residual(self):
        """Relative closure of fuel exergy = thrust exergy + destructions + losses."""
        out = self.thrust_exergy + self.total_destruction + sum(self.losses.values())
        return (self.fuel_exergy_rate - out) / self.fuel_exergy_rate


def thrusts(res):
    """Momentum thrust of both fully expanded streams, ``(F6, F7)`` in N."""
    st = res.stations
    return st["6"].mdot * (res.V6 - res.V0), st["7"].mdot * (res.V7 - res.V0)


def energy_efficiency(res, mode="overall"):
    """First-law efficiency of the engine.

    ``overall``  (F6 + F7) V0 / (mdot_fuel LHV): thrust power over fuel power.
    ``kinetic``  kinetic-energy gain of the exhaust streams over fuel power.
    ``literal``  (F6 V6 + F7 V7 - mdot0 V0 V0) / (mdot_fuel LHV).
    """
    if not res.fuel_flow > 0:
        raise UndefinedMetricError("energy efficiency undefined for zero fuel flow")
    st = res.stations
    q = res.fuel_flow * res.fuel.lhv
    m6, m7, m0 = st["6"].mdot, st["7"].mdot, st["0"].mdot
    V0, V6, V7 = res.V0, res.V6, res.V7
    if mode == "overall":
        F6, F7 = thrusts(res)
        return (F6 + F7) * V0 / q
    if mode == "kinetic":
        return 0.5 * (m6 * V6 * V6 + m7 * V7 * V7 - m0 * V0 * V0) / q
    if mode == "literal":
        F6, F7 = thrusts(res)
        return (F6 * V6 + F7 * V7 - m0 * V0 * V0) / q
    raise ValueError(f"unknown efficiency mode {mode!r}; expected one of {EFFICIENCY_MODES}")


def performance(res, mode="overall"):
    F6, F7 = thrusts(res)
    F = F6 + F7
    m0 = res.stations["0"].mdot
    return PerformanceReport(
        thrust_core=F6,
        thrust_bypass=F7,
        specific_thrust=F / m0,
        tsfc=3600.0 * res.fuel_flow / F if F > 0 else math.inf,
        energy_eff=energy_efficiency(res, mode),
        mode=mode,
    )


def station_exergy(state, dead_state):
    """Physical plus kinetic specific exergy (J/kg) from stagnation properties.

    ``dead_state`` is the freestream stagnation state; its temperature is the
    reference temperature of the balance.
    """
    T_ref = dead_state.Tt
    R = fluid.gas_constant(state.far)
    ds = (
        fluid.entropy_fn(state.Tt, state.far)
        - fluid.entropy_fn(T_ref, dead_state.far)
        - R * math.log(state.Pt / dead_state.Pt)
    )
    return state.ht - dead_state.ht - T_ref * ds


def hydrogen_carbon_mass_ratio(fuel=fluid.KEROSENE):
    return fuel.hydrogen_atoms * ATOMIC_MASS_H / (fuel.carbon_atoms * ATOMIC_MASS_C)


def fuel_chemical_exergy(fuel=fluid.KEROSENE):
    """Specific chemical exergy of a liquid hydrocarbon fuel, kJ/kg (O = S = 0)."""
    return (1.0401 + 0.1728 * hydrogen_carbon_mass_ratio(fuel)) * fuel.lower_heating_value


def stoichiometric_products(fuel=fluid.KEROSENE, air=AIR_COMPOSITION):
    """Moles of each product species per mole of fuel burnt with exactly enough air."""
    o2_needed = fuel.carbon_atoms + fuel.hydrogen_atoms / 4.0
    n_air = o2_needed / air["O2"]
    return {
        "CO2": fuel.carbon_atoms + air["CO2"] * n_air,
        "H2O": fuel.hydrogen_atoms / 2.0 + air["H2O"] * n_air,
        "N2": air["N2"] * n_air,
    }


def product_chemical_exergy(T0, mode="paper-constant", fuel=fluid.KEROSENE):
    """Chemical exergy of the combustion products, J per kg of fuel burnt.

    ``paper-constant`` returns ``4.5853 * T0``. ``computed`` evaluates the
    ideal-mixture expression ``R T0 / M_f * sum(a_i ln(y_i / y_i_env))`` for the
    stoichiometric reaction, ``a_i`` in moles per mole of fuel.
    """
    if T0 <= 0:
        raise ValueError("T0 must be positive")
    if mode == "paper-constant":
        return PRODUCT_EXERGY_COEFF * T0
    if mode == "computed":
        n = stoichiometric_products(fuel)
        total = sum(n.values())
        s = sum(a * math.log(a / total / AIR_COMPOSITION[k]) for k, a in n.items())
        return 1e3 * R_UNIVERSAL * T0 / fuel.molar_mass * s
    raise ValueError(f"unknown chemical-exergy mode {mode!r}; expected one of {CHEMICAL_MODES}")


def component_destructions(
    res,
    chemical_mode="paper-constant",
    destruction_set="internal",
    rtol=1e-6,
):
    """Per-component exergy destruction rates and the exergy efficiency.

    Turbine entries include the spool mechanical loss (shaft power delivered
    to the compressors is the useful output). Streams leaving the engine
    (exhausts, bleed, product chemical exergy) are booked in ``losses``;
    ``destruction_set="with-losses"`` charges them against the efficiency.
    """
    if destruction_set not in DESTRUCTION_SETS:
        raise ValueError(f"unknown destruction set {destruction_set!r}")
    st = res.stations
    w = res.works
    dead = st["0"]
    chi = {k: station_exergy(s, dead) for k, s in st.items()}
    X = {k: st[k].mdot * chi[k] for k in st}

    fuel_rate = res.fuel_flow * fuel_chemical_exergy(res.fuel) * 1e3
    prod_chem = res.fuel_flow * product_chemical_exergy(res.T0, chemical_mode, res.fuel)

    des = {
        "diffuser": X["0"] - X["1"],
        "fan": X["1"] + w["fan"] - X["1.3"] - X["2"],
        "lpc": X["2"] + w["lpc"] - X["2.5"],
        "hpc": X["2.5"] + w["hpc"] - X["3"],
        "burner": X["3.1"] + fuel_rate - X["4"] - prod_chem,
        "mixer_hpt": X["4"] + X["cool1"] - X["4.1"],
        "hpt": X["4.1"] - X["4.4"] - w["hpc"],
        "mixer_lpt": X["4.4"] + X["cool2"] - X["4.5"],
        "lpt": X["4.5"] - X["5"] - w["fan"] - w["lpc"],
        "core_nozzle": X["5"] - X["6"],
        "bypass_nozzle": X["1.3"] - X["7"],
    }
    for name, value in des.items():
        if value < -rtol * fuel_rate:
            raise ModelInconsistencyError(
                f"negative exergy destruction in {name}: {value:.6g} W"
            )

    V0 = res.V0
    kin6 = 0.5 * st["6"].mdot * (res.V6 ** 2 - V0 ** 2)
    kin7 = 0.5 * st["7"].mdot * (res.V7 ** 2 - V0 ** 2)
    losses = {
        "bleed": X["bleed"],
        "core_exhaust": X["6"] - kin6,
        "bypass_exhaust": X["7"] - kin7,
        "product_chemical": prod_chem,
    }
    charged = sum(des.values())
    if destruction_set == "with-losses":
        charged += sum(losses.values())
    return ExergyReport(
        station_exergy=chi,
        destruction=des,
        losses=losses,
        fuel_exergy_rate=fuel_rate,
        thrust_exergy=kin6 + kin7,
        exergy_eff=1.0 - charged / fuel_rate,
        destruction_set=destruction_set,
        extra={"inlet_exergy": X["0"]},
    )
