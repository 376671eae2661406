"""Caloric properties of dry air and kerosene combustion products.

Eighth-order polynomial model in reduced temperature ``T/1000`` with a
separate correction series for the combustion products, weighted by the fuel
mass fraction ``f / (1 + f)``. The polynomials natively give ``cp`` and ``s``
in kJ/(kg K) and ``h`` in MJ/kg; every public function here returns SI units
(J/(kg K), J/kg).

Valid for 200 K <= T <= 2000 K. Outside that window a
:class:`~turbofan_ga.exceptions.TemperatureRangeError` is raised instead of
extrapolating.
"""

import math
from dataclasses import dataclass

from .exceptions import TemperatureRangeError

T_MIN = 200.0
T_MAX = 2000.0

# Walsh & Fletcher (2004) polynomial constants for dry air (A) and kerosene
# products (B). A0..A8 / B0..B7 are the cp coefficients, A9 / B8 the enthalpy
# integration constants and A10 / B9 the entropy integration constants.
A_COEFFS = (
    0.9923, 0.2367, -1.8524, 6.0832, -8.8940, 7.0971, -3.2347, 0.7946, -0.0819,
    0.4222, 0.0011,
)
B_COEFFS = (
    -0.7189, 8.7475, -15.8632, 17.2541, -10.2338, 3.0818, -0.3611, 0.0039,
    0.0556, -0.0016,
)


@dataclass(frozen=True)
class PropertyTable:
    """Immutable holder for the two coefficient series."""

    a_coeffs: tuple = A_COEFFS
    b_coeffs: tuple = B_COEFFS

    def __post_init__(self):
        if len(self.a_coeffs) != 11 or len(self.b_coeffs) != 10:
            raise ValueError("expected 11 A coefficients and 10 B coefficients")


@dataclass(frozen=True)
class FuelSpec:
    """Kerosene C12H23.5.

    ``lower_heating_value`` is in kJ/kg (the unit the heating value is quoted
    in); use :attr:`lhv` for J/kg.
    """

    lower_heating_value: float = 43124.0
    carbon_atoms: float = 12.0
    hydrogen_atoms: float = 23.5
    molar_mass: float = 167.8141

    def __post_init__(self):
        if self.lower_heating_value <= 0:
            raise ValueError("lower_heating_value must be positive")
        if self.molar_mass <= 0:
            raise ValueError("molar_mass must be positive")

    @property
    def lhv(self):
        """Lower heating value in J/kg."""
        return self.lower_heating_value * 1e3


TABLE = PropertyTable()
KEROSENE = FuelSpec()

# cp series, highest order first for Horner evaluation
_CP_A = A_COEFFS[8::-1]
_CP_B = B_COEFFS[7::-1]
# enthalpy series: A_k/(k+1), highest order first; evaluated then times theta
_H_A = tuple(A_COEFFS[k] / (k + 1) for k in range(8, -1, -1))
_H_B = tuple(B_COEFFS[k] / (k + 1) for k in range(7, -1, -1))
# entropy power series for k >= 1: A_k/k, highest order first
_S_A = tuple(A_COEFFS[k] / k for k in range(8, 0, -1))
_S_B = tuple(B_COEFFS[k] / k for k in range(7, 0, -1))


def _horner(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _theta(T):
    if not (T_MIN <= T <= T_MAX):
        raise TemperatureRangeError(T, T_MIN, T_MAX)
    return T / 1000.0


def fuel_mass_fraction(f):
    """Weight ``f / (1 + f)`` applied to the combustion-product series."""
    if f < 0:
        raise ValueError(f"fuel-air ratio must be non-negative, got {f}")
    return f / (1.0 + f)


def cp(T, f=0.0):
    """Specific heat at constant pressure, J/(kg K)."""
    th = _theta(T)
    val = _horner(_CP_A, th)
    if f != 0.0:
        val += fuel_mass_fraction(f) * _horner(_CP_B, th)
    return 1e3 * val


def enthalpy(T, f=0.0):
    """Specific enthalpy, J/kg (datum fixed by the integration constants)."""
    th = _theta(T)
    val = A_COEFFS[9] + th * _horner(_H_A, th)
    if f != 0.0:
        val += fuel_mass_fraction(f) * (B_COEFFS[8] + th * _horner(_H_B, th))
    return 1e6 * val


def entropy_fn(T, f=0.0):
    """Temperature part of the absolute entropy at reference pressure, J/(kg K)."""
    th = _theta(T)
    ln_th = math.log(th)
    val = A_COEFFS[10] + A_COEFFS[0] * ln_th + th * _horner(_S_A, th)
    if f != 0.0:
        val += fuel_mass_fraction(f) * (
            B_COEFFS[9] + B_COEFFS[0] * ln_th + th * _horner(_S_B, th)
        )
    return 1e3 * val


def gas_constant(f=0.0):
    """Specific gas constant of air/kerosene products, J/(kg K)."""
    if f < 0:
        raise ValueError(f"fuel-air ratio must be non-negative, got {f}")
    return 287.05 - 0.0099 * f + 1e-7 * f * f


def gamma(T, f=0.0):
    """Heat-capacity ratio cp / (cp - R)."""
    c = cp(T, f)
    R = gas_constant(f)
    assert c > R, "cp <= R: degenerate gas state"
    return c / (c - R)


def cp_gamma(T, f=0.0):
    """Return ``(cp, gamma)`` with a single polynomial evaluation."""
    c = cp(T, f)
    R = gas_constant(f)
    assert c > R, "cp <= R: degenerate gas state"
    return c, c / (c - R)
