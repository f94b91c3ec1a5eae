"""The granular-ball optimizer loop.

One run seeds a single ball covering the whole box, then repeats rounds of
evaluate / split / prune: every live ball is split into its 2d half-radius
children and a child stays live only while it strictly beats its parent's
value.  The loop stops when no child improves, so the algorithm has no
tuning parameters; the budgets in :class:`GboConfig` are runaway guards, not
knobs.  All evaluations flow through one exact-coordinate cache and the best
value/point seen anywhere is tracked as the answer.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    GranularBall,
    OutOfBoundsPolicy,
    axis_offsets,
    initial_ball,
    primes_below,
    sub_ball_centers,
)
from .evaluation import EvaluationCache, NoiseSource, evaluate_points

# Above this many points, a child batch is evaluated child-by-child to bound
# peak memory; results are identical either way.
_BATCH_LIMIT = 100_000


class Mode(Enum):
    """Ball quality evaluator: probe one shell, or refine with prime shells."""

    BASIC = "basic"
    PRIME_CONCENTRIC = "prime"


@dataclass
class GboConfig:
    mode: Mode = Mode.BASIC
    oob_policy: OutOfBoundsPolicy = OutOfBoundsPolicy.CLAMP
    max_evaluations: int = 10_000_000
    max_rounds: int = 64
    noise_seed: int = 0

    def __post_init__(self):
        if self.max_evaluations < 1 or self.max_rounds < 1:
            raise ValueError("budgets must be >= 1")


@dataclass
class RunRecord:
    """Outcome of one optimizer run (granular-ball or baseline)."""

    best_value: float
    best_point: np.ndarray
    evaluations: int
    rounds: int
    wall_time: float
    round_trace: list[tuple[int, float]]
    status: str = "converged"  # "converged" | "budget"

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_point": np.asarray(self.best_point).tolist(),
            "evaluations": self.evaluations,
            "rounds": self.rounds,
            "wall_time": self.wall_time,
            "round_trace": [[int(n), float(v)] for n, v in self.round_trace],
            "status": self.status,
        }


@dataclass
class OptimizerState:
    """Mutable per-run state threaded through :func:`round_step`."""

    objective: object
    config: GboConfig
    cache: EvaluationCache
    noise: NoiseSource | None
    best_value: float = math.inf
    best_point: np.ndarray | None = None
    rounds: int = 0
    round_trace: list = field(default_factory=list)
    status: str = "running"
    enqueued: set = field(default_factory=set)


def new_state(objective, config: GboConfig | None = None) -> OptimizerState:
    config = config if config is not None else GboConfig()
    noise = None if objective.deterministic else NoiseSource(config.noise_seed)
    return OptimizerState(objective, config, EvaluationCache(), noise)


def _tracked_evaluate(points, state):
    """Evaluate through the cache and fold the batch into the running best.

    Only in-domain points compete for the best; ties keep the earlier point,
    so the best point is the first one attaining the best value in overall
    evaluation order.
    """
    values, adjusted = evaluate_points(
        points, state.objective, state.cache, state.config.oob_policy, state.noise
    )
    if state.config.oob_policy is OutOfBoundsPolicy.CLAMP:
        candidates, cand_points = values, adjusted
    else:
        mask = state.objective.domain.contains(adjusted)
        if not np.any(mask):
            return values, adjusted
        candidates, cand_points = values[mask], adjusted[mask]
    i = int(np.argmin(candidates))
    if candidates[i] < state.best_value:
        state.best_value = float(candidates[i])
        state.best_point = cand_points[i].copy()
    return values, adjusted


def _value_ball(ball: GranularBall, state) -> float:
    """Fill in a ball's cached quality: the minimum over its 2d probe points."""
    pts = ball.center[None, :] + ball.radius * axis_offsets(ball.dimension)
    values, _ = _tracked_evaluate(pts, state)
    ball.value = float(np.min(values))
    return ball.value


def _spawn_children(parent: GranularBall, mode: Mode) -> list[GranularBall]:
    """A parent's candidate children, unvalued.

    Always the 2d half-radius midpoint children.  PRIME_CONCENTRIC adds the
    same-center children of every prime radius below the parent's: those keep
    integer-lattice points reachable at fine scales, which is what lets the
    search land exactly on optima the pure halving lattice can never hit.
    """
    centers = sub_ball_centers(parent.center, parent.radius)
    children = [
        GranularBall(center=c, radius=parent.radius * 0.5, depth=parent.depth + 1)
        for c in centers
    ]
    if mode is Mode.PRIME_CONCENTRIC:
        children.extend(
            GranularBall(
                center=parent.center.copy(), radius=float(p), depth=parent.depth + 1
            )
            for p in primes_below(parent.radius)
        )
    return children


def _value_children(children: list[GranularBall], state) -> None:
    """Evaluate every child's quality in one batch, filling ``value``."""
    if not children:
        return
    d = children[0].dimension
    offs = axis_offsets(d)
    per_child = offs.shape[0]

    if len(children) * per_child <= _BATCH_LIMIT:
        pts = np.concatenate(
            [c.center[None, :] + c.radius * offs for c in children], axis=0
        )
        values, _ = _tracked_evaluate(pts, state)
        mins = values.reshape(len(children), per_child).min(axis=1)
        for child, v in zip(children, mins):
            child.value = float(v)
    else:
        for child in children:
            _value_ball(child, state)


def round_step(current: list[GranularBall], state: OptimizerState):
    """One splitting round: value any unvalued balls, split every ball, keep
    the children that strictly beat their parent.

    A child geometry that was ever live before (same center bits and radius)
    is not re-entered: coinciding midpoint children merge, and in prime mode
    a smaller same-center ball spawned by two generations appears only once.
    Returns (survivors, state); ``state.status`` flips to ``"budget"`` if the
    evaluation budget trips mid-round.
    """
    if not current:
        raise ValueError("round_step needs a non-empty ball set")
    survivors: list[GranularBall] = []
    for ball in current:
        if state.cache.count >= state.config.max_evaluations:
            state.status = "budget"
            break
        if ball.value is None:
            state.enqueued.add(ball.key())
            _value_ball(ball, state)
        children = [
            c
            for c in _spawn_children(ball, state.config.mode)
            if c.key() not in state.enqueued
        ]
        _value_children(children, state)
        for child in children:
            if child.value < ball.value:
                state.enqueued.add(child.key())
                survivors.append(child)
    state.rounds += 1
    state.round_trace.append((len(current), state.best_value))
    return survivors, state


def gbo_optimize(objective, config: GboConfig | None = None) -> RunRecord:
    """Run the granular-ball optimizer on a boxed objective.

    Deterministic objectives give bit-identical records across runs (wall
    time aside); noisy ones are reproducible per ``config.noise_seed``.  If a
    safety budget trips before the split cascade dies out naturally, the best
    result so far is still returned with ``status="budget"``.
    """
    config = config if config is not None else GboConfig()
    start = time.perf_counter()
    state = new_state(objective, config)
    ball = initial_ball(objective.domain)
    state.enqueued.add(ball.key())
    _value_ball(ball, state)
    current = [ball]
    while current:
        if state.rounds >= config.max_rounds:
            state.status = "budget"
            break
        current, state = round_step(current, state)
        if state.status == "budget":
            break
    status = "budget" if state.status == "budget" else "converged"
    return RunRecord(
        best_value=state.best_value,
        best_point=state.best_point,
        evaluations=state.cache.count,
        rounds=state.rounds,
        wall_time=time.perf_counter() - start,
        round_trace=state.round_trace,
        status=status,
    )
