"""Granular-ball geometry and quality evaluation.

A granular ball is a hypersphere probed only where its surface crosses the
axis-parallel lines through its center.  Those 2d probe points carry all the
information the search ever extracts from a ball: the ball's quality is the
minimum objective value over them, and splitting a ball produces half-radius
children centered at the midpoints between the ball center and each probe
point.  An optional refinement re-probes the same center on a family of
prime-integer radii, which never revisits a point already probed at another
prime radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np


class OutOfBoundsPolicy(Enum):
    """What to do with probe points that fall outside the search box.

    The initial ball circumscribes the box, so for dimension >= 2 its probe
    points always land outside.  CLAMP projects each coordinate back into its
    interval before evaluating; EVALUATE_RAW trusts the objective to be
    defined outside the box.
    """

    CLAMP = "clamp"
    EVALUATE_RAW = "raw"


@dataclass
class SearchDomain:
    """Symmetric box [-a_1, a_1] x ... x [-a_d, a_d], stored as halfwidths."""

    halfwidths: np.ndarray

    def __post_init__(self):
        hw = np.asarray(self.halfwidths, dtype=np.float64)
        if hw.ndim != 1 or hw.size == 0:
            raise ValueError("domain needs a non-empty 1-D vector of halfwidths")
        if not np.all(np.isfinite(hw)) or np.any(hw <= 0):
            raise ValueError("all halfwidths must be finite and positive")
        self.halfwidths = hw

    @property
    def dimension(self) -> int:
        return self.halfwidths.size

    def clamp(self, points: np.ndarray) -> np.ndarray:
        return np.clip(points, -self.halfwidths, self.halfwidths)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Row mask: True where every coordinate lies inside the box."""
        pts = np.atleast_2d(points)
        return np.all(np.abs(pts) <= self.halfwidths, axis=1)


@dataclass
class GranularBall:
    """A candidate region: center, radius, split generation, cached quality.

    ``value`` is filled in by whoever evaluates the ball (see the optimizer);
    the geometry operations below never touch it.
    """

    center: np.ndarray
    radius: float
    depth: int = 0
    value: float | None = field(default=None, compare=False)

    def __post_init__(self):
        self.center = np.ascontiguousarray(self.center, dtype=np.float64)
        if self.center.ndim != 1 or self.center.size == 0:
            raise ValueError("ball center must be a non-empty 1-D vector")
        self.radius = float(self.radius)
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise ValueError("ball radius must be finite and positive")

    @property
    def dimension(self) -> int:
        return self.center.size

    def key(self) -> tuple[bytes, float]:
        """Exact identity of the ball's geometry, usable as a dict key."""
        return (self.center.tobytes(), self.radius)


@dataclass
class BallValue:
    """Quality of a ball: the minimum probed objective value and the
    (policy-adjusted) point where it was attained."""

    value: float
    witness: np.ndarray


def axis_offsets(dimension: int) -> np.ndarray:
    """Signed unit offsets in the fixed probe order: +e1, -e1, +e2, -e2, ...

    Every probe-point and sub-ball enumeration in this package uses this
    ordering, so ties always resolve to the same point.
    """
    out = np.zeros((2 * dimension, dimension))
    for i in range(dimension):
        out[2 * i, i] = 1.0
        out[2 * i + 1, i] = -1.0
    return out


def initial_ball(domain: SearchDomain) -> GranularBall:
    """Ball covering the whole box: origin-centered, radius = Euclidean norm
    of the halfwidths (the distance from the origin to a box corner)."""
    r0 = float(np.sqrt(np.sum(domain.halfwidths**2)))
    return GranularBall(center=np.zeros(domain.dimension), radius=r0, depth=0)


def boundary_points(ball: GranularBall) -> np.ndarray:
    """The 2d probe points of a ball, one +/- pair per axis.

    Row 2i is the center with coordinate i increased by the radius, row 2i+1
    the same coordinate decreased.  Returned as a (2d, d) array.
    """
    return ball.center[None, :] + ball.radius * axis_offsets(ball.dimension)


def sub_ball_centers(center: np.ndarray, radius: float) -> np.ndarray:
    """Midpoints between a ball center and each of its probe points."""
    bps = center[None, :] + radius * axis_offsets(center.size)
    return 0.5 * (center[None, :] + bps)


def sub_balls(ball: GranularBall) -> list[GranularBall]:
    """Split a ball into its 2d half-radius children.

    Child k sits at the midpoint between the parent center and probe point k
    (same ordering as :func:`boundary_points`); halving a finite double is
    exact, so a child's radius is bit-exactly half its parent's.
    """
    centers = sub_ball_centers(ball.center, ball.radius)
    return [
        GranularBall(center=c, radius=ball.radius * 0.5, depth=ball.depth + 1)
        for c in centers
    ]


@lru_cache(maxsize=None)
def _primes_upto(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


def primes_below(r: float) -> list[int]:
    """All primes strictly less than r, ascending.  Empty for r <= 2."""
    if not r > 0:
        raise ValueError("radius must be positive")
    if r <= 2:
        return []
    limit = math.ceil(r) - 1  # largest integer strictly below r
    return list(_primes_upto(limit))


def concentric_radii(ball: GranularBall) -> list[float]:
    """Probe radii for the refined quality: the ball's own radius followed by
    every prime below it, ascending."""
    return [ball.radius] + [float(p) for p in primes_below(ball.radius)]


def ball_value(ball, objective, cache, policy=OutOfBoundsPolicy.CLAMP, noise=None):
    """Quality of a ball: minimum objective value over its 2d probe points.

    All evaluations go through ``cache``.  Ties resolve to the first point in
    the fixed probe order, so the witness is reproducible.
    """
    from .evaluation import evaluate_points

    if ball.dimension != objective.dimension:
        raise ValueError(
            f"ball dimension {ball.dimension} does not match "
            f"objective dimension {objective.dimension}"
        )
    values, adjusted = evaluate_points(
        boundary_points(ball), objective, cache, policy, noise
    )
    idx = int(np.argmin(values))
    return BallValue(value=float(values[idx]), witness=adjusted[idx].copy())


def improved_ball_value(ball, objective, cache, policy=OutOfBoundsPolicy.CLAMP, noise=None):
    """Refined quality: minimum over the ball's own probe shell and every
    concentric shell of prime radius below it.

    Never exceeds :func:`ball_value` for the same ball, since the base shell
    participates in the minimum.  Distinct radii probe distinct raw points, so
    within one call no point is proposed twice; shells that a previous ball
    already probed are absorbed by the cache.
    """
    from .evaluation import evaluate_points

    best = None
    for r in concentric_radii(ball):
        shell = GranularBall(center=ball.center, radius=r, depth=ball.depth)
        bv = ball_value(shell, objective, cache, policy, noise)
        if best is None or bv.value < best.value:
            best = bv
    return best
