"""scikit-learn style front end to the cycle model and the GA search."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import fluid
from .cycle import DESIGN_BOUNDS, ComponentEfficiencies, EngineDesign, run_cycle
from .environment import FlightCondition
from .optimizer import CASE_WEIGHTS, GAConfig, evaluate, run_ga
from .validation import check_bounds, check_designs

METRIC_NAMES = (
    "score",
    "eta_I",
    "eta_II",
    "specific_thrust",
    "tsfc",
    "turbine_expansion_ratio",
    "feasible",
)


class TurbofanOptimizer(BaseEstimator):
    """Genetic-algorithm design search for a two-spool turbofan.

    ``fit`` runs the GA (``X`` and ``y`` are ignored); ``predict`` scores
    candidate designs with the same fitness the GA uses and ``transform``
    returns the full metric vector of each design.

    Parameters
    ----------
    weights : tuple of float or {"a", "b", "c"}
        Weights on (energy efficiency, exergy efficiency) in the scalarized
        score ``hypot(w_I eta_I, w_II eta_II)``. The letters select the three
        standard cases.
    population_size, generations, mutation_prob, crossover_prob, elitism
        GA settings. ``mutation_prob`` is per bit.
    mach, altitude, mdot : float
        Cruise flight condition.
    pi_max : float
        Upper limit (exclusive) on the overall pressure ratio.
    efficiency_mode : {"overall", "kinetic", "literal"}
    destruction_set : {"internal", "with-losses"}
    chemical_mode : {"paper-constant", "computed"}
    bounds : sequence of 8 (low, high) pairs, optional
    random_state : int
        Seed of the PCG64 generator driving the search.
    n_jobs : int
        Worker processes for fitness evaluation. Results do not depend on it.

    Attributes
    ----------
    best_design_ : EngineDesign
    best_score_ : float
    best_evaluation_ : Evaluation
    history_ : list of GenerationRecord
    """

    def __init__(
        self,
        weights=(1.0, 1.0),
        population_size=160,
        generations=500,
        mutation_prob=0.006,
        crossover_prob=0.9,
        elitism=1,
        mach=0.86,
        altitude=11000.0,
        mdot=350.0,
        pi_max=45.0,
        efficiency_mode="overall",
        destruction_set="internal",
        chemical_mode="paper-constant",
        bounds=None,
        random_state=0,
        n_jobs=1,
    ):
        self.weights = weights
        self.population_size = population_size
        self.generations = generations
        self.mutation_prob = mutation_prob
        self.crossover_prob = crossover_prob
        self.elitism = elitism
        self.mach = mach
        self.altitude = altitude
        self.mdot = mdot
        self.pi_max = pi_max
        self.efficiency_mode = efficiency_mode
        self.destruction_set = destruction_set
        self.chemical_mode = chemical_mode
        self.bounds = bounds
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _config(self):
        weights = self.weights
        if isinstance(weights, str):
            if weights not in CASE_WEIGHTS:
                raise ValueError(f"unknown case {weights!r}; expected one of {tuple(CASE_WEIGHTS)}")
            weights = CASE_WEIGHTS[weights]
        bounds = DESIGN_BOUNDS if self.bounds is None else check_bounds(self.bounds)
        return GAConfig(
            population_size=int(self.population_size),
            generations=int(self.generations),
            mutation_prob=float(self.mutation_prob),
            crossover_prob=float(self.crossover_prob),
            elitism=int(self.elitism),
            weights=tuple(float(w) for w in weights),
            pi_max=float(self.pi_max),
            rng_seed=int(self.random_state),
            bounds=bounds,
            efficiency_mode=self.efficiency_mode,
            destruction_set=self.destruction_set,
            chemical_mode=self.chemical_mode,
        )

    def _flight(self):
        return FlightCondition(self.mach, self.altitude, self.mdot)

    def fit(self, X=None, y=None):
        """Run the genetic algorithm."""
        cfg = self._config()
        history, best = run_ga(cfg, self._flight(), n_jobs=int(self.n_jobs))
        self.config_ = cfg
        self.history_ = history
        self.best_evaluation_ = best
        self.best_design_ = best.design
        self.best_score_ = best.score
        return self

    def _evaluations(self, X):
        cfg = self._config()
        X = check_designs(X, cfg.bounds)
        fc = self._flight()
        return [evaluate(EngineDesign.from_sequence(x), fc, cfg=cfg) for x in X]

    def predict(self, X):
        """Fitness score of each row of ``X`` (zero when infeasible)."""
        return np.array([e.score for e in self._evaluations(X)])

    def transform(self, X):
        """Metric matrix with columns ``METRIC_NAMES``; NaN for infeasible designs."""
        return np.array(
            [
                [e.score, e.eta_I, e.eta_II, e.specific_thrust, e.tsfc,
                 e.turbine_expansion_ratio, float(e.feasible)]
                for e in self._evaluations(X)
            ]
        )

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)

    def score(self, X=None, y=None):
        """Best fitness found by ``fit``."""
        check_is_fitted(self, "best_score_")
        return self.best_score_

    def cycle(self, design):
        """Raw :class:`CycleResult` at the cruise condition for one design."""
        x = check_designs(design, self._config().bounds)[0]
        return run_cycle(
            EngineDesign.from_sequence(x),
            self._flight(),
            ComponentEfficiencies(),
            fluid.KEROSENE,
            float(self.pi_max),
        )
