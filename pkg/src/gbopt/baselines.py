"""Point-based comparison optimizers: PSO, DE, GA, SA.

Standard textbook implementations, seeded and box-constrained, returning the
same :class:`~gbopt.optimizer.RunRecord` shape as the granular-ball
optimizer.  They exist to populate comparison tables, not to mirror any
specific library's internals.  ``max_iter`` counts evaluation sweeps
including the initial population, so ``size_pop=2, max_iter=1`` evaluates
exactly two points.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .evaluation import NoiseSource
from .optimizer import RunRecord


def _resolve_bounds(objective, lb, ub):
    hw = objective.domain.halfwidths
    lb = -hw if lb is None else np.broadcast_to(np.asarray(lb, float), hw.shape).copy()
    ub = hw if ub is None else np.broadcast_to(np.asarray(ub, float), hw.shape).copy()
    if not np.all(lb < ub):
        raise ValueError("need lb < ub componentwise")
    return lb, ub


class _Tracker:
    """Running best over every evaluation an algorithm makes."""

    def __init__(self, objective, seed):
        self.objective = objective
        self.noise = None if objective.deterministic else NoiseSource(seed)
        self.best_value = math.inf
        self.best_point = None
        self.evaluations = 0

    def __call__(self, X):
        X = np.atleast_2d(X)
        values = self.objective.evaluate_batch(X, noise=self.noise)
        self.evaluations += X.shape[0]
        i = int(np.argmin(values))
        if values[i] < self.best_value:
            self.best_value = float(values[i])
            self.best_point = X[i].copy()
        return values


def _record(tracker, rounds, trace, start) -> RunRecord:
    return RunRecord(
        best_value=tracker.best_value,
        best_point=tracker.best_point,
        evaluations=tracker.evaluations,
        rounds=rounds,
        wall_time=time.perf_counter() - start,
        round_trace=trace,
        status="converged",
    )


@dataclass
class PsoConfig:
    size_pop: int = 40
    max_iter: int = 150
    w: float = 0.8
    c1: float = 0.5
    c2: float = 0.5
    lb: object = None
    ub: object = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.size_pop < 2 or self.max_iter < 1:
            raise ValueError("need size_pop >= 2 and max_iter >= 1")


def pso_optimize(objective, config: PsoConfig | None = None) -> RunRecord:
    """Global-best particle swarm with constant inertia weight."""
    cfg = config if config is not None else PsoConfig()
    lb, ub = _resolve_bounds(objective, cfg.lb, cfg.ub)
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.rng_seed)
    evaluate = _Tracker(objective, cfg.rng_seed)

    n, d = cfg.size_pop, objective.dimension
    X = rng.uniform(lb, ub, size=(n, d))
    V = np.zeros((n, d))
    values = evaluate(X)
    pbest, pbest_v = X.copy(), values.copy()
    g = int(np.argmin(pbest_v))
    gbest, gbest_v = pbest[g].copy(), float(pbest_v[g])
    trace = [(n, gbest_v)]

    for _ in range(cfg.max_iter - 1):
        r1 = rng.random((n, d))
        r2 = rng.random((n, d))
        V = cfg.w * V + cfg.c1 * r1 * (pbest - X) + cfg.c2 * r2 * (gbest - X)
        X = np.clip(X + V, lb, ub)
        values = evaluate(X)
        improved = values < pbest_v
        pbest[improved] = X[improved]
        pbest_v[improved] = values[improved]
        g = int(np.argmin(pbest_v))
        if pbest_v[g] < gbest_v:
            gbest, gbest_v = pbest[g].copy(), float(pbest_v[g])
        trace.append((n, gbest_v))

    return _record(evaluate, cfg.max_iter, trace, start)


@dataclass
class DeConfig:
    size_pop: int = 50
    max_iter: int = 200
    prob_mut: float = 0.3
    F: float = 0.5
    lb: object = None
    ub: object = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.size_pop < 4 or self.max_iter < 1:
            raise ValueError("DE needs size_pop >= 4 and max_iter >= 1")


def de_optimize(objective, config: DeConfig | None = None) -> RunRecord:
    """Differential evolution, rand/1/bin with greedy selection."""
    cfg = config if config is not None else DeConfig()
    lb, ub = _resolve_bounds(objective, cfg.lb, cfg.ub)
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.rng_seed)
    evaluate = _Tracker(objective, cfg.rng_seed)

    n, d = cfg.size_pop, objective.dimension
    X = rng.uniform(lb, ub, size=(n, d))
    values = evaluate(X)
    trace = [(n, evaluate.best_value)]

    for _ in range(cfg.max_iter - 1):
        donors = np.empty((n, 3), dtype=int)
        for i in range(n):
            pool = np.delete(np.arange(n), i)
            donors[i] = rng.choice(pool, size=3, replace=False)
        mutant = X[donors[:, 0]] + cfg.F * (X[donors[:, 1]] - X[donors[:, 2]])
        mutant = np.clip(mutant, lb, ub)
        cross = rng.random((n, d)) < cfg.prob_mut
        cross[np.arange(n), rng.integers(0, d, size=n)] = True
        trial = np.where(cross, mutant, X)
        trial_v = evaluate(trial)
        better = trial_v <= values
        X[better] = trial[better]
        values[better] = trial_v[better]
        trace.append((n, evaluate.best_value))

    return _record(evaluate, cfg.max_iter, trace, start)


@dataclass
class GaConfig:
    size_pop: int = 50
    max_iter: int = 200
    prob_mut: float = 0.001
    precision: float = 1e-7
    lb: object = None
    ub: object = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.size_pop < 2 or self.max_iter < 1:
            raise ValueError("need size_pop >= 2 and max_iter >= 1")
        if self.size_pop % 2:
            raise ValueError("GA pairs parents; size_pop must be even")


def ga_optimize(objective, config: GaConfig | None = None) -> RunRecord:
    """Binary-coded genetic algorithm: tournament selection, two-point
    crossover, bit-flip mutation, one-elite survival."""
    cfg = config if config is not None else GaConfig()
    lb, ub = _resolve_bounds(objective, cfg.lb, cfg.ub)
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.rng_seed)
    evaluate = _Tracker(objective, cfg.rng_seed)

    n, d = cfg.size_pop, objective.dimension
    bits = max(1, math.ceil(math.log2((ub - lb).max() / cfg.precision + 1)))
    weights = 2.0 ** np.arange(bits - 1, -1, -1)
    denom = 2.0**bits - 1.0

    def decode(pop):
        ints = pop.reshape(pop.shape[0], d, bits) @ weights
        return lb + ints / denom * (ub - lb)

    pop = rng.integers(0, 2, size=(n, d * bits)).astype(np.float64)
    values = evaluate(decode(pop))
    trace = [(n, evaluate.best_value)]

    for _ in range(cfg.max_iter - 1):
        elite = pop[int(np.argmin(values))].copy()

        contenders = rng.integers(0, n, size=(n, 3))
        winners = contenders[np.arange(n), np.argmin(values[contenders], axis=1)]
        parents = pop[winners]

        children = parents.copy()
        for j in range(0, n, 2):
            a, b = np.sort(rng.integers(0, d * bits, size=2))
            children[j, a:b], children[j + 1, a:b] = (
                parents[j + 1, a:b].copy(),
                parents[j, a:b].copy(),
            )
        flips = rng.random((n, d * bits)) < cfg.prob_mut
        children[flips] = 1.0 - children[flips]
        children[0] = elite

        pop = children
        values = evaluate(decode(pop))
        trace.append((n, evaluate.best_value))

    return _record(evaluate, cfg.max_iter, trace, start)


@dataclass
class SaConfig:
    x0: object = None
    T_max: float = 100.0
    T_min: float = 1e-7
    L: int = 300
    max_stay_counter: int = 150
    lb: object = None
    ub: object = None
    rng_seed: int = 0
    cooling: float = 0.95

    def __post_init__(self):
        if self.T_max < self.T_min or self.T_min <= 0:
            raise ValueError("need T_max >= T_min > 0")
        if self.L < 1 or self.max_stay_counter < 1:
            raise ValueError("need L >= 1 and max_stay_counter >= 1")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling factor must be in (0, 1)")


def sa_optimize(objective, config: SaConfig | None = None) -> RunRecord:
    """Simulated annealing with geometric cooling.

    Gaussian proposals shrink with temperature (scale = (ub-lb) * T/T_max),
    so the chain moves from global jumps to fine local sampling.  Stops when
    the temperature drops below ``T_min`` or the best value stalls for
    ``max_stay_counter`` consecutive chains.
    """
    cfg = config if config is not None else SaConfig()
    lb, ub = _resolve_bounds(objective, cfg.lb, cfg.ub)
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.rng_seed)
    evaluate = _Tracker(objective, cfg.rng_seed)

    x = (
        np.zeros(objective.dimension)
        if cfg.x0 is None
        else np.asarray(cfg.x0, dtype=np.float64).copy()
    )
    fx = float(evaluate(x)[0])
    span = ub - lb
    T = cfg.T_max
    trace = [(1, evaluate.best_value)]
    stay = 0
    cycles = 0

    while T >= cfg.T_min and stay < cfg.max_stay_counter:
        best_before = evaluate.best_value
        scale = span * (T / cfg.T_max)
        for _ in range(cfg.L):
            candidate = np.clip(x + rng.normal(0.0, scale), lb, ub)
            fc = float(evaluate(candidate)[0])
            df = fc - fx
            if df < 0 or rng.random() < math.exp(-df / T):
                x, fx = candidate, fc
        cycles += 1
        T *= cfg.cooling
        stay = stay + 1 if evaluate.best_value >= best_before else 0
        trace.append((cfg.L, evaluate.best_value))

    return _record(evaluate, cycles, trace, start)


OPTIMIZERS = {
    "pso": (PsoConfig, pso_optimize),
    "de": (DeConfig, de_optimize),
    "ga": (GaConfig, ga_optimize),
    "sa": (SaConfig, sa_optimize),
}
