"""Experiment configuration: YAML file <-> dataclasses, plus presets."""

import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import yaml

from .cycle import DESIGN_BOUNDS, ComponentEfficiencies
from .environment import FlightCondition
from .fluid import FuelSpec
from .optimizer import CASE_WEIGHTS, GAConfig

OUTPUT_ENV_VAR = "TURBOFAN_GA_OUTPUT"

# Fixed so published reference runs can be reproduced exactly.
DEFAULT_SEEDS = (20120703, 1060, 160500, 48)

PRESETS = {
    "desk": {"population_size": 40, "generations": 100},
    "paper": {"population_size": 160, "generations": 500},
}


@dataclass
class ExperimentConfig:
    flight: FlightCondition = field(default_factory=FlightCondition)
    pi_max: float = 45.0
    fuel: FuelSpec = field(default_factory=FuelSpec)
    efficiencies: ComponentEfficiencies = field(default_factory=ComponentEfficiencies)
    population_size: int = 160
    generations: int = 500
    mutation_prob: float = 0.006
    crossover_prob: float = 0.9
    elitism: int = 1
    bounds: tuple = DESIGN_BOUNDS
    efficiency_mode: str = "overall"
    destruction_set: str = "internal"
    chemical_mode: str = "paper-constant"
    case: str = "c"
    weights: tuple = None
    repetitions: int = 4
    seeds: tuple = DEFAULT_SEEDS
    output_dir: str = None

    def __post_init__(self):
        if self.case not in CASE_WEIGHTS and self.case != "custom":
            raise ValueError(f"case must be one of a, b, c, custom; got {self.case!r}")
        if self.case == "custom":
            if self.weights is None:
                raise ValueError("case 'custom' requires weights")
        else:
            self.weights = CASE_WEIGHTS[self.case]
        self.weights = tuple(float(w) for w in self.weights)
        self.seeds = tuple(int(s) for s in self.seeds)
        self.bounds = tuple(tuple(float(v) for v in b) for b in self.bounds)
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if len(self.seeds) != self.repetitions:
            raise ValueError(
                f"need one seed per repetition: {self.repetitions} repetitions, {len(self.seeds)} seeds"
            )
        # surface GA setting errors before any work starts
        self.ga_config(self.seeds[0])

    def ga_config(self, seed):
        return GAConfig(
            population_size=self.population_size,
            generations=self.generations,
            mutation_prob=self.mutation_prob,
            crossover_prob=self.crossover_prob,
            elitism=self.elitism,
            weights=self.weights,
            pi_max=self.pi_max,
            rng_seed=seed,
            bounds=self.bounds,
            efficiency_mode=self.efficiency_mode,
            destruction_set=self.destruction_set,
            chemical_mode=self.chemical_mode,
        )

    def resolved_output_dir(self):
        out = self.output_dir or os.environ.get(OUTPUT_ENV_VAR)
        if not out:
            raise ValueError(f"no output directory: pass --output-dir or set {OUTPUT_ENV_VAR}")
        return Path(out)

    def to_dict(self):
        d = asdict(self)
        d["bounds"] = [list(b) for b in self.bounds]
        d["weights"] = list(self.weights)
        d["seeds"] = list(self.seeds)
        return d

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        unknown = set(data) - {f.name for f in fields(cls)}
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        if "flight" in data:
            data["flight"] = FlightCondition(**data["flight"])
        if "fuel" in data:
            data["fuel"] = FuelSpec(**data["fuel"])
        if "efficiencies" in data:
            data["efficiencies"] = ComponentEfficiencies(**data["efficiencies"])
        if "seeds" in data and "repetitions" not in data:
            data["repetitions"] = len(data["seeds"])
        if "repetitions" in data and "seeds" not in data:
            n = int(data["repetitions"])
            data["seeds"] = default_seeds(n)
        return cls(**data)

    def updated(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        if "repetitions" in changes and "seeds" not in changes:
            changes["seeds"] = default_seeds(changes["repetitions"])
        if "seeds" in changes and "repetitions" not in changes:
            changes["repetitions"] = len(changes["seeds"])
        if "case" in changes and changes["case"] != "custom":
            changes.setdefault("weights", None)
        return replace(self, **changes)


def default_seeds(n):
    """The published seeds, extended deterministically when more are needed."""
    return tuple(DEFAULT_SEEDS[i] if i < len(DEFAULT_SEEDS) else 1000 + i for i in range(n))


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    return ExperimentConfig.from_dict(data)


def dump_config(cfg, path):
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(cfg.to_dict(), fh, sort_keys=False)
