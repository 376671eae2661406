"""Two-spool turbofan design optimization with energy and exergy objectives."""

from .cycle import (
    ComponentEfficiencies,
    CycleResult,
    EngineDesign,
    GasState,
    check_takeoff,
    run_cycle,
)
from .environment import AmbientState, FlightCondition, standard_atmosphere
from .estimator import TurbofanOptimizer
from .fluid import KEROSENE, FuelSpec
from .metrics import component_destructions, performance
from .optimizer import CASE_WEIGHTS, GAConfig, decode, encode, evaluate, run_ga

__all__ = [
    "AmbientState",
    "CASE_WEIGHTS",
    "ComponentEfficiencies",
    "CycleResult",
    "EngineDesign",
    "FlightCondition",
    "FuelSpec",
    "GAConfig",
    "GasState",
    "KEROSENE",
    "TurbofanOptimizer",
    "check_takeoff",
    "component_destructions",
    "decode",
    "encode",
    "evaluate",
    "performance",
    "run_cycle",
    "run_ga",
    "standard_atmosphere",
]

__version__ = "0.1.0"
