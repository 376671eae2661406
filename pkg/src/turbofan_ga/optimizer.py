"""Binary-chromosome genetic algorithm over the eight engine design variables.

Each variable is a 6-bit big-endian group on the lattice
``U_min + k (U_max - U_min) / 63``; the 48-bit chromosome holds the groups in
``DESIGN_VARIABLES`` order. Constraint violations zero the fitness. Parents
are chosen by roulette wheel, recombined by single-point crossover and mutated
bit by bit; the best ``elitism`` individuals survive unchanged.

All random draws happen in the driver process, so histories depend only on
the seed and never on the number of evaluation workers.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fluid
from .cycle import (
    DESIGN_BOUNDS,
    ComponentEfficiencies,
    EngineDesign,
    check_takeoff,
    run_cycle,
)
from .environment import FlightCondition
from .exceptions import TurbofanError
from .metrics import (
    CHEMICAL_MODES,
    DESTRUCTION_SETS,
    EFFICIENCY_MODES,
    component_destructions,
    performance,
)

logger = logging.getLogger(__name__)

BITS_PER_VAR = 6
N_VARS = 8
CHROMOSOME_LENGTH = BITS_PER_VAR * N_VARS
LEVELS = 2 ** BITS_PER_VAR - 1

CASE_WEIGHTS = {"a": (1.0, 0.0), "b": (0.0, 1.0), "c": (1.0, 1.0)}

TAKEOFF_PREFIX = "takeoff:"
NUMERIC_ERROR = "numeric_error"

_PLACE = 2 ** np.arange(BITS_PER_VAR - 1, -1, -1)


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 160
    generations: int = 500
    mutation_prob: float = 0.006
    crossover_prob: float = 0.9
    elitism: int = 1
    weights: tuple = (1.0, 1.0)
    pi_max: float = 45.0
    rng_seed: int = 0
    bounds: tuple = DESIGN_BOUNDS
    efficiency_mode: str = "overall"
    destruction_set: str = "internal"
    chemical_mode: str = "paper-constant"

    def __post_init__(self):
        errors = []
        if self.population_size < 2:
            errors.append("population_size must be >= 2")
        if self.generations < 1:
            errors.append("generations must be >= 1")
        for name in ("mutation_prob", "crossover_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                errors.append(f"{name} must be in [0, 1], got {p}")
        if not 0 <= self.elitism < self.population_size:
            errors.append("elitism must be in [0, population_size)")
        w = tuple(self.weights)
        if len(w) != 2 or min(w) < 0 or max(w) == 0:
            errors.append(f"weights must be two non-negative numbers, not both zero; got {w}")
        if len(self.bounds) != N_VARS or any(lo > hi for lo, hi in self.bounds):
            errors.append("bounds must be 8 (low, high) pairs with low <= high")
        if self.efficiency_mode not in EFFICIENCY_MODES:
            errors.append(f"efficiency_mode must be one of {EFFICIENCY_MODES}")
        if self.destruction_set not in DESTRUCTION_SETS:
            errors.append(f"destruction_set must be one of {DESTRUCTION_SETS}")
        if self.chemical_mode not in CHEMICAL_MODES:
            errors.append(f"chemical_mode must be one of {CHEMICAL_MODES}")
        if not 0 <= self.rng_seed < 2 ** 64:
            errors.append("rng_seed must be a 64-bit unsigned integer")
        if errors:
            raise ValueError("; ".join(errors))


@dataclass
class Evaluation:
    """Fitness of one design with the metrics the convergence plots need."""

    design: EngineDesign
    score: float
    violations: list = field(default_factory=list)
    eta_I: float = math.nan
    eta_II: float = math.nan
    specific_thrust: float = math.nan
    tsfc: float = math.nan
    turbine_expansion_ratio: float = math.nan

    @property
    def feasible(self):
        return not self.violations


@dataclass
class GenerationRecord:
    generation: int
    best_score: float
    eta_I: float
    eta_II: float
    specific_thrust: float
    tsfc: float
    alpha: float
    Tt4: float
    opr: float
    turbine_expansion_ratio: float
    mean_score: float
    best_bits: str = ""


def decode(bits, bounds=DESIGN_BOUNDS):
    """Map a 48-bit chromosome to an :class:`EngineDesign`."""
    bits = np.asarray(bits, dtype=np.int64).reshape(N_VARS, BITS_PER_VAR)
    codes = bits @ _PLACE
    return EngineDesign(
        *(lo + int(k) * (hi - lo) / LEVELS for k, (lo, hi) in zip(codes, bounds))
    )


def encode(design, bounds=DESIGN_BOUNDS):
    """Nearest lattice chromosome for ``design`` (inverse of :func:`decode` on the lattice)."""
    out = np.zeros(CHROMOSOME_LENGTH, dtype=np.uint8)
    for i, (v, (lo, hi)) in enumerate(zip(design.as_tuple(), bounds)):
        k = 0 if hi == lo else int(round((v - lo) / (hi - lo) * LEVELS))
        k = min(max(k, 0), LEVELS)
        for j in range(BITS_PER_VAR):
            out[i * BITS_PER_VAR + j] = (k >> (BITS_PER_VAR - 1 - j)) & 1
    return out


def bits_to_str(bits):
    return "".join("1" if b else "0" for b in bits)


def str_to_bits(s):
    if len(s) != CHROMOSOME_LENGTH or set(s) - {"0", "1"}:
        raise ValueError(f"chromosome must be {CHROMOSOME_LENGTH} characters of 0/1")
    return np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")


def scalarize(eta_I, eta_II, weights):
    wI, wII = weights
    return math.hypot(wI * eta_I, wII * eta_II)


def evaluate(
    design,
    fc=FlightCondition(),
    eff=ComponentEfficiencies(),
    fuel=fluid.KEROSENE,
    cfg=GAConfig(),
):
    """Run cruise and take-off cycles and score the design.

    Any violated constraint (overall pressure ratio, nozzle pressures, the
    fluid-model envelope, or any of these at take-off) gives score 0. Numeric
    failures inside the cycle also score 0 and are logged.
    """
    try:
        res = run_cycle(design, fc, eff, fuel, cfg.pi_max)
        if not res.feasible:
            return Evaluation(design, 0.0, list(res.violations))
        ok, to = check_takeoff(design, eff, fuel, cfg.pi_max, fc.mdot)
        if not ok:
            return Evaluation(design, 0.0, [TAKEOFF_PREFIX + " " + v for v in to.violations])
        perf = performance(res, cfg.efficiency_mode)
        ex = component_destructions(res, cfg.chemical_mode, cfg.destruction_set)
    except (TurbofanError, ArithmeticError) as exc:
        logger.warning("numeric failure for %s: %s", design, exc)
        return Evaluation(design, 0.0, [f"{NUMERIC_ERROR}: {exc}"])
    return Evaluation(
        design,
        scalarize(perf.energy_eff, ex.exergy_eff, cfg.weights),
        [],
        eta_I=perf.energy_eff,
        eta_II=ex.exergy_eff,
        specific_thrust=perf.specific_thrust,
        tsfc=perf.tsfc,
        turbine_expansion_ratio=res.turbine_expansion_ratio,
    )


def fitness(design, fc=FlightCondition(), eff=ComponentEfficiencies(), fuel=fluid.KEROSENE, cfg=GAConfig()):
    return evaluate(design, fc, eff, fuel, cfg).score


def roulette_select(scores, rng):
    """Index drawn with probability proportional to its score.

    Falls back to a uniform draw when every score is zero.
    """
    scores = np.asarray(scores, dtype=float)
    total = scores.sum()
    if not total > 0:
        return int(rng.integers(len(scores)))
    cum = np.cumsum(scores)
    idx = int(np.searchsorted(cum, rng.random() * total, side="right"))
    return min(idx, len(scores) - 1)


def crossover(a, b, rng, p):
    """Single-point crossover with probability ``p``; otherwise copies."""
    a = np.array(a, dtype=np.uint8)
    b = np.array(b, dtype=np.uint8)
    if len(a) != len(b):
        raise ValueError("parents must have equal length")
    if rng.random() < p:
        cut = int(rng.integers(1, len(a)))
        a[cut:], b[cut:] = b[cut:].copy(), a[cut:].copy()
    return a, b


def mutate(c, rng, p_bit):
    """Flip each bit independently with probability ``p_bit``."""
    c = np.array(c, dtype=np.uint8)
    flips = rng.random(len(c)) < p_bit
    c[flips] ^= 1
    return c


def _evaluate_key(args):
    key, fc, eff, fuel, cfg = args
    return evaluate(decode(str_to_bits(key), cfg.bounds), fc, eff, fuel, cfg)


class _Evaluator:
    """Memoized, optionally parallel fitness evaluation keyed by chromosome."""

    def __init__(self, fc, eff, fuel, cfg, n_jobs=1):
        self.fc, self.eff, self.fuel, self.cfg = fc, eff, fuel, cfg
        self.n_jobs = n_jobs
        self.cache = {}
        self._pool = ProcessPoolExecutor(n_jobs) if n_jobs > 1 else None

    def __call__(self, keys):
        todo = list(dict.fromkeys(k for k in keys if k not in self.cache))
        if todo:
            args = [(k, self.fc, self.eff, self.fuel, self.cfg) for k in todo]
            if self._pool is None:
                results = map(_evaluate_key, args)
            else:
                results = self._pool.map(_evaluate_key, args, chunksize=max(1, len(args) // (4 * self.n_jobs)))
            self.cache.update(zip(todo, results))
        return [self.cache[k] for k in keys]

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()


def _record(gen, keys, evals):
    scores = [e.score for e in evals]
    i = int(np.argmax(scores))
    best = evals[i]
    d = best.design
    return GenerationRecord(
        generation=gen,
        best_score=best.score,
        eta_I=best.eta_I,
        eta_II=best.eta_II,
        specific_thrust=best.specific_thrust,
        tsfc=best.tsfc,
        alpha=d.bypass_ratio,
        Tt4=d.Tt4,
        opr=d.opr,
        turbine_expansion_ratio=best.turbine_expansion_ratio,
        mean_score=float(np.mean(scores)),
        best_bits=keys[i],
    )


def run_ga(
    cfg=GAConfig(),
    fc=FlightCondition(),
    eff=ComponentEfficiencies(),
    fuel=fluid.KEROSENE,
    n_jobs=1,
    callback=None,
):
    """Evolve a population and return ``(history, best_evaluation)``.

    ``history`` holds one :class:`GenerationRecord` per generation; generation
    0 is the random initial population.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.rng_seed))
    n = cfg.population_size
    pop = [bits_to_str(row) for row in rng.integers(0, 2, size=(n, CHROMOSOME_LENGTH), dtype=np.uint8)]
    evaluator = _Evaluator(fc, eff, fuel, cfg, n_jobs)
    history = []
    best = None
    evals = []
    try:
        for gen in range(cfg.generations):
            if gen > 0:
                pop = _breed(pop, [e.score for e in evals], cfg, rng)
            evals = evaluator(pop)
            rec = _record(gen, pop, evals)
            history.append(rec)
            i = int(np.argmax([e.score for e in evals]))
            if best is None or evals[i].score > best.score:
                best = evals[i]
            if callback is not None:
                callback(rec)
    finally:
        evaluator.close()
    return history, best


def _breed(pop, scores, cfg, rng):
    n = len(pop)
    order = sorted(range(n), key=lambda i: -scores[i])
    new = [pop[i] for i in order[: cfg.elitism]]
    parents = [str_to_bits(k) for k in pop]
    while len(new) < n:
        a = parents[roulette_select(scores, rng)]
        b = parents[roulette_select(scores, rng)]
        c1, c2 = crossover(a, b, rng, cfg.crossover_prob)
        for child in (c1, c2):
            if len(new) < n:
                new.append(bits_to_str(mutate(child, rng, cfg.mutation_prob)))
    return new
