"""Memoized objective evaluation.

Points are memoized by the exact bit pattern of their coordinates, so a point
is evaluated against the raw objective at most once per run and the counter
reports distinct evaluations only.  Noisy objectives draw their noise from a
:class:`NoiseSource` keyed by (seed, point bits): the first value sampled at a
point is the value of record for the whole run, with or without a cache hit.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .core import OutOfBoundsPolicy


class EvaluationError(RuntimeError):
    """The objective produced a non-finite value."""


class NoiseSource:
    """Deterministic per-point uniform noise in [0, 1).

    The draw depends only on the seed and the evaluated point's bit pattern,
    so re-evaluating a point always reproduces the same draw and two runs with
    the same seed see identical noise.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._key = self.seed.to_bytes(8, "little", signed=True)

    def uniform(self, point_bytes: bytes) -> float:
        digest = hashlib.blake2b(point_bytes, digest_size=8, key=self._key).digest()
        return int.from_bytes(digest, "little") / 2.0**64


class EvaluationCache:
    """Exact-coordinate memo of evaluated points.

    Keys are the raw float64 bytes of each (policy-adjusted) point; ``count``
    is the number of distinct points evaluated so far.
    """

    def __init__(self):
        self.table: dict[bytes, float] = {}

    @property
    def count(self) -> int:
        return len(self.table)

    def __contains__(self, key: bytes) -> bool:
        return key in self.table

    def get(self, key: bytes):
        return self.table.get(key)

    def min_value(self) -> float:
        """Smallest value stored so far (requires a non-empty cache)."""
        return min(self.table.values())

    def points(self, dimension: int):
        """Iterate (point, value) pairs, decoding keys back to coordinates."""
        for key, value in self.table.items():
            yield np.frombuffer(key, dtype=np.float64, count=dimension), value


def apply_policy(points, domain, policy):
    """Map raw probe points to the points actually evaluated."""
    pts = np.ascontiguousarray(np.atleast_2d(points), dtype=np.float64)
    if policy is OutOfBoundsPolicy.CLAMP:
        return np.ascontiguousarray(domain.clamp(pts))
    return pts


def evaluate_points(points, objective, cache, policy=OutOfBoundsPolicy.CLAMP, noise=None):
    """Evaluate a batch of points through the cache.

    Applies the out-of-bounds policy, serves exact-coordinate hits from the
    cache, evaluates each distinct miss once, and stores the results.  Returns
    (values, adjusted_points); a non-finite objective value raises
    :class:`EvaluationError` rather than being skipped.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.shape[1] != objective.dimension:
        raise ValueError(
            f"points have dimension {pts.shape[1]}, "
            f"objective expects {objective.dimension}"
        )
    adjusted = apply_policy(pts, objective.domain, policy)
    keys = [adjusted[i].tobytes() for i in range(adjusted.shape[0])]

    values = np.empty(adjusted.shape[0])
    miss_rows: dict[bytes, int] = {}
    for i, key in enumerate(keys):
        hit = cache.get(key)
        if hit is None:
            miss_rows.setdefault(key, i)
        else:
            values[i] = hit

    if miss_rows:
        rows = np.ascontiguousarray(adjusted[list(miss_rows.values())])
        fresh = objective.evaluate_batch(rows, noise=noise)
        bad = ~np.isfinite(fresh)
        if np.any(bad):
            where = rows[int(np.flatnonzero(bad)[0])]
            raise EvaluationError(
                f"objective {objective.id} returned a non-finite value at {where.tolist()}"
            )
        for key, value in zip(miss_rows, fresh):
            cache.table[key] = float(value)

    for i, key in enumerate(keys):
        values[i] = cache.table[key]
    return values, adjusted


def evaluate_cached(point, objective, cache, policy=OutOfBoundsPolicy.CLAMP, noise=None):
    """Single-point convenience wrapper around :func:`evaluate_points`."""
    values, _ = evaluate_points(np.atleast_2d(point), objective, cache, policy, noise)
    return float(values[0])
