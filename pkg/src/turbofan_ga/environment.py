"""Ambient state from altitude (ISA) and the freestream stagnation state."""

import math
from dataclasses import dataclass

from . import fluid
from .exceptions import ConvergenceError, TemperatureRangeError

G0 = 9.80665
R_ISA = 287.05287
T_SL = 288.15
P_SL = 101325.0
LAPSE = 0.0065
H_TROPOPAUSE = 11000.0
T_TROPOPAUSE = T_SL - LAPSE * H_TROPOPAUSE
P_TROPOPAUSE = P_SL * (T_TROPOPAUSE / T_SL) ** (G0 / (R_ISA * LAPSE))

H_MAX = 12000.0
MACH_MAX = 0.9
MDOT_MIN = 50.0

REL_TOL = 1e-5
MAX_ITER = 200


@dataclass(frozen=True)
class AmbientState:
    T: float
    P: float

    def __post_init__(self):
        if self.T <= 0 or self.P <= 0:
            raise ValueError("ambient temperature and pressure must be positive")


@dataclass(frozen=True)
class FlightCondition:
    """Flight Mach number, altitude (m) and engine inlet mass flow (kg/s)."""

    mach: float = 0.86
    altitude: float = 11000.0
    mdot: float = 350.0

    def __post_init__(self):
        if not 0.0 <= self.mach <= MACH_MAX:
            raise ValueError(f"mach must be in [0, {MACH_MAX}], got {self.mach}")
        if not 0.0 <= self.altitude <= H_MAX:
            raise ValueError(f"altitude must be in [0, {H_MAX}] m, got {self.altitude}")
        if self.mdot < MDOT_MIN:
            raise ValueError(f"mdot must be >= {MDOT_MIN} kg/s, got {self.mdot}")


def standard_atmosphere(altitude):
    """International Standard Atmosphere, troposphere and lower stratosphere.

    >>> standard_atmosphere(0.0)
    AmbientState(T=288.15, P=101325.0)
    """
    if not 0.0 <= altitude <= H_MAX:
        raise ValueError(f"altitude must be in [0, {H_MAX}] m, got {altitude}")
    if altitude <= H_TROPOPAUSE:
        T = T_SL - LAPSE * altitude
        P = P_SL * (T / T_SL) ** (G0 / (R_ISA * LAPSE))
    else:
        T = T_TROPOPAUSE
        P = P_TROPOPAUSE * math.exp(-G0 * (altitude - H_TROPOPAUSE) / (R_ISA * T))
    return AmbientState(T, P)


def _check_reachable(target, fn, f):
    lo, hi = fn(fluid.T_MIN, f), fn(fluid.T_MAX, f)
    if not lo <= target <= hi:
        T_bound = fluid.T_MIN if target < lo else fluid.T_MAX
        raise TemperatureRangeError(T_bound, fluid.T_MIN, fluid.T_MAX)


def temperature_from_enthalpy(h_target, f, T_guess, tol=1e-12, max_iter=MAX_ITER):
    """Invert ``h(T, f) = h_target`` with Newton steps ``T += dh / cp``.

    The tolerance is on the relative enthalpy residual. It is much tighter than
    the 1e-5 used elsewhere so that enthalpy fluxes rebuilt from stored
    temperatures balance to round-off. Iterates are kept inside the fluid-model
    range; a target outside it raises :class:`TemperatureRangeError`.
    """
    _check_reachable(h_target, fluid.enthalpy, f)
    T = min(max(T_guess, fluid.T_MIN), fluid.T_MAX)
    for _ in range(max_iter):
        h = fluid.enthalpy(T, f)
        err = abs(h - h_target) / abs(h_target)
        if err <= tol:
            return T
        T = min(max(T + (h_target - h) / fluid.cp(T, f), fluid.T_MIN), fluid.T_MAX)
    raise ConvergenceError("enthalpy inversion", err, max_iter)


def temperature_from_entropy(s_target, f, T_guess, tol=1e-12, max_iter=MAX_ITER):
    """Invert the entropy function ``s(T, f) = s_target``.

    Newton in ln T (``d ln T = ds / cp``), which keeps iterates positive.
    """
    _check_reachable(s_target, fluid.entropy_fn, f)
    T = min(max(T_guess, fluid.T_MIN), fluid.T_MAX)
    for _ in range(max_iter):
        step = (s_target - fluid.entropy_fn(T, f)) / fluid.cp(T, f)
        T = min(max(T * math.exp(step), fluid.T_MIN), fluid.T_MAX)
        if abs(step) <= tol:
            return T
    raise ConvergenceError("entropy inversion", abs(step), max_iter)


def freestream_state(fc, ambient=None):
    """Stagnation temperature, pressure and velocity of the undisturbed stream.

    Returns ``(Tt0, Pt0, V0, ambient)``.
    """
    if ambient is None:
        ambient = standard_atmosphere(fc.altitude)
    T0, P0 = ambient.T, ambient.P
    R = fluid.gas_constant(0.0)
    V0 = fc.mach * math.sqrt(fluid.gamma(T0, 0.0) * R * T0)
    if V0 == 0.0:
        return T0, P0, 0.0, ambient
    ht0 = fluid.enthalpy(T0, 0.0) + 0.5 * V0 * V0
    Tt0 = temperature_from_enthalpy(ht0, 0.0, T0 + 0.5 * V0 * V0 / fluid.cp(T0))
    Pt0 = P0 * math.exp((fluid.entropy_fn(Tt0) - fluid.entropy_fn(T0)) / R)
    return Tt0, Pt0, V0, ambient
