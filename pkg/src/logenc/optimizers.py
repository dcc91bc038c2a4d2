"""Black-box minimizers over the torus ``[0, 2pi)^n``.

Two methods share one contract (:func:`minimize`): a genetic algorithm and a
Nelder-Mead simplex search. Every point handed to the objective is wrapped
into ``[0, 2pi)`` first and the evaluation budget is never exceeded.

An objective may expose ``batch(thetas) -> costs``; the genetic algorithm
then scores a whole generation in one call. Results are identical either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Callable

import numpy as np

from .encoder import TWO_PI, wrap_angles

__all__ = [
    "OptimizerConfig",
    "OptimizationResult",
    "minimize",
    "genetic_minimize",
    "genetic_step",
    "simplex_minimize",
    "parse_config",
]

OPTIMIZER_KINDS = ("genetic", "simplex")
MUTATION_SIGMA = np.pi / 4


@dataclass(frozen=True)
class OptimizerConfig:
    kind: str = "genetic"
    max_evals: int = 5000
    seed: int = 0
    population: int = 64
    mutation_rate: float = 0.05
    crossover_rate: float = 0.9
    tournament: int = 3
    elitism: int = 1
    init_simplex_scale: float = 0.5
    target_stop: float | None = None
    xatol: float = 1e-8
    fatol: float = 1e-12

    def __post_init__(self) -> None:
        if self.kind not in OPTIMIZER_KINDS:
            raise ValueError(f"unknown optimizer {self.kind!r}; expected one of {OPTIMIZER_KINDS}")
        if self.max_evals < 1:
            raise ValueError("max_evals must be positive")
        if self.kind == "genetic":
            if self.population < 2 or self.max_evals < self.population:
                raise ValueError("genetic optimizer needs 2 <= population <= max_evals")
            for name in ("mutation_rate", "crossover_rate"):
                rate = getattr(self, name)
                if not 0.0 <= rate <= 1.0:
                    raise ValueError(f"{name} must lie in [0, 1], got {rate}")
            if not 0 <= self.elitism < self.population:
                raise ValueError("elitism must be smaller than the population")
            if self.tournament < 1:
                raise ValueError("tournament size must be positive")


@dataclass
class OptimizationResult:
    best_theta: np.ndarray
    best_value: float
    evals_used: int
    trace: list[tuple[int, float]] = field(default_factory=list)


def parse_config(pairs: list[str] | None = None, base: OptimizerConfig | None = None) -> OptimizerConfig:
    """Build a config from ``key=value`` strings (the CLI and config-file syntax)."""
    cfg = base or OptimizerConfig()
    types = {f.name: f.type for f in fields(OptimizerConfig)}
    updates = {}
    for pair in pairs or []:
        pair = pair.strip()
        if not pair or pair.startswith("#"):
            continue
        if "=" not in pair:
            raise ValueError(f"expected key=value, got {pair!r}")
        key, raw = (part.strip() for part in pair.split("=", 1))
        if key not in types:
            raise ValueError(f"unknown optimizer option {key!r}")
        kind = str(types[key])
        if key == "kind":
            updates[key] = raw
        elif key == "target_stop":
            updates[key] = None if raw.lower() in ("", "none") else float(raw)
        elif "int" in kind:
            updates[key] = int(raw)
        else:
            updates[key] = float(raw)
    return replace(cfg, **updates)


class _Budget:
    """Counts evaluations, keeps the incumbent and the best-so-far trace."""

    def __init__(self, objective: Callable, max_evals: int, target: float | None):
        self.objective = objective
        self.batch_fn = getattr(objective, "batch", None)
        self.max_evals = max_evals
        self.target = target
        self.used = 0
        self.best_value = np.inf
        self.best_theta: np.ndarray | None = None
        self.trace: list[tuple[int, float]] = []

    @property
    def remaining(self) -> int:
        return self.max_evals - self.used

    @property
    def done(self) -> bool:
        return self.remaining <= 0 or (self.target is not None and self.best_value <= self.target)

    def _record(self, theta: np.ndarray, value: float) -> None:
        self.used += 1
        if value < self.best_value:
            self.best_value = value
            self.best_theta = theta.copy()
        self.trace.append((self.used, self.best_value))

    def evaluate(self, theta: np.ndarray) -> float:
        theta = wrap_angles(theta)
        value = float(self.objective(theta))
        self._record(theta, value)
        return value

    def evaluate_many(self, thetas: np.ndarray) -> np.ndarray:
        """Score rows in order, stopping at the budget or the target."""
        thetas = wrap_angles(thetas)
        out = np.full(len(thetas), np.inf)
        if self.batch_fn is not None:
            k = min(len(thetas), self.remaining)
            values = np.asarray(self.batch_fn(thetas[:k]), dtype=float)
            for i in range(k):
                if self.done:
                    break
                self._record(thetas[i], float(values[i]))
                out[i] = values[i]
            return out
        for i, theta in enumerate(thetas):
            if self.done:
                break
            out[i] = self.evaluate(theta)
        return out

    def result(self) -> OptimizationResult:
        return OptimizationResult(self.best_theta, float(self.best_value), self.used, self.trace)


def _tournament(fitness: np.ndarray, k: int, rng: np.random.Generator) -> int:
    entrants = rng.integers(0, len(fitness), size=k)
    return int(entrants[np.argmin(fitness[entrants])])


def _mutate(children: np.ndarray, rate: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    mask = rng.random(children.shape) < rate
    noise = rng.normal(0.0, MUTATION_SIGMA, size=children.shape)
    return wrap_angles(np.where(mask, children + noise, children)), mask


def genetic_step(
    population: np.ndarray, fitness: np.ndarray, cfg: OptimizerConfig, rng: np.random.Generator
) -> np.ndarray:
    """One generation: elitism, k-tournament selection, uniform crossover, Gaussian mutation.

    The first ``cfg.elitism`` rows of the result are the best current
    individuals, copied unchanged.
    """
    size, n = population.shape
    elite = np.argsort(fitness, kind="stable")[: cfg.elitism]
    n_children = size - cfg.elitism
    children = np.empty((n_children, n))
    for c in range(n_children):
        a = population[_tournament(fitness, cfg.tournament, rng)]
        b = population[_tournament(fitness, cfg.tournament, rng)]
        if rng.random() < cfg.crossover_rate:
            take_b = rng.random(n) < 0.5
            children[c] = np.where(take_b, b, a)
        else:
            children[c] = a
    children, _ = _mutate(children, cfg.mutation_rate, rng)
    return np.vstack([population[elite], children])


def genetic_minimize(objective: Callable, n_params: int, cfg: OptimizerConfig) -> OptimizationResult:
    rng = np.random.default_rng(cfg.seed)
    budget = _Budget(objective, cfg.max_evals, cfg.target_stop)
    population = rng.uniform(0.0, TWO_PI, size=(cfg.population, n_params))
    fitness = budget.evaluate_many(population)
    while not budget.done:
        population = genetic_step(population, fitness, cfg, rng)
        # elites keep their known fitness; only children cost evaluations
        fitness = np.concatenate(
            [np.sort(fitness, kind="stable")[: cfg.elitism],
             budget.evaluate_many(population[cfg.elitism :])]
        )
    return budget.result()


def simplex_minimize(objective: Callable, n_params: int, cfg: OptimizerConfig) -> OptimizationResult:
    """Nelder-Mead with reflection 1, expansion 2, contraction 1/2, shrink 1/2.

    Starts from the all-``pi/2`` point with one vertex displaced by
    ``init_simplex_scale`` along each axis. Stops on budget, target, or when
    both the simplex diameter and the value spread fall below tolerance.
    """
    budget = _Budget(objective, cfg.max_evals, cfg.target_stop)
    x0 = np.full(n_params, np.pi / 2)
    simplex = [x0] + [x0 + cfg.init_simplex_scale * np.eye(n_params)[i] for i in range(n_params)]
    values = []
    for x in simplex:
        if budget.done:
            break
        values.append(budget.evaluate(x))
    simplex = simplex[: len(values)]
    if len(simplex) < n_params + 1:
        return budget.result()
    pts = np.array(simplex)
    vals = np.array(values)

    while not budget.done:
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        if (np.max(np.abs(pts[1:] - pts[0])) <= cfg.xatol
                and np.max(np.abs(vals[1:] - vals[0])) <= cfg.fatol):
            break
        centroid = pts[:-1].mean(axis=0)
        worst = pts[-1]
        xr = centroid + (centroid - worst)
        fr = budget.evaluate(xr)
        if fr < vals[0]:
            if budget.done:
                pts[-1], vals[-1] = xr, fr
                break
            xe = centroid + 2.0 * (centroid - worst)
            fe = budget.evaluate(xe)
            pts[-1], vals[-1] = (xe, fe) if fe < fr else (xr, fr)
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            if budget.done:
                break
            if fr < vals[-1]:
                xc = centroid + 0.5 * (xr - centroid)
                fc = budget.evaluate(xc)
                accept = fc <= fr
            else:
                xc = centroid + 0.5 * (worst - centroid)
                fc = budget.evaluate(xc)
                accept = fc < vals[-1]
            if accept:
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, len(pts)):
                    if budget.done:
                        break
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                    vals[i] = budget.evaluate(pts[i])
    return budget.result()


def minimize(objective: Callable, n_params: int, cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Minimize ``objective(theta)`` over ``theta`` in ``[0, 2pi)^n_params``.

    Stops after ``cfg.max_evals`` calls or once a value at or below
    ``cfg.target_stop`` is seen. Deterministic for a fixed seed and a
    deterministic objective.
    """
    if n_params < 1:
        raise ValueError("need at least one parameter")
    cfg = cfg or OptimizerConfig()
    if cfg.kind == "genetic":
        return genetic_minimize(objective, n_params, cfg)
    return simplex_minimize(objective, n_params, cfg)
