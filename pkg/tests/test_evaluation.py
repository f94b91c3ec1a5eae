"""Cache semantics, out-of-bounds policies, and per-point noise."""

import numpy as np
import pytest

from gbopt import (
    EvaluationCache,
    EvaluationError,
    NoiseSource,
    OutOfBoundsPolicy,
    custom_function,
    evaluate_cached,
    evaluate_points,
    make_function,
)

CLAMP = OutOfBoundsPolicy.CLAMP
RAW = OutOfBoundsPolicy.EVALUATE_RAW


def test_cache_hit_does_not_reevaluate():
    f = make_function("f1")
    cache = EvaluationCache()
    assert evaluate_cached([2.0, 0.0], f, cache, CLAMP) == 4.0
    assert cache.count == 1
    assert evaluate_cached([2.0, 0.0], f, cache, CLAMP) == 4.0
    assert cache.count == 1


def test_clamp_maps_outside_point_to_box_face():
    f = make_function("f1")
    cache = EvaluationCache()
    assert evaluate_cached([150.0, 0.0], f, cache, CLAMP) == 10000.0
    # the stored key is the clamped point
    assert np.array([100.0, 0.0]).tobytes() in cache.table


def test_raw_policy_evaluates_outside_the_box():
    f = make_function("f1")
    cache = EvaluationCache()
    assert evaluate_cached([150.0, 0.0], f, cache, RAW) == 22500.0
    assert np.array([150.0, 0.0]).tobytes() in cache.table


def test_noisy_objective_memoizes_first_draw():
    f = make_function("f4")
    cache = EvaluationCache()
    noise = NoiseSource(42)
    first = evaluate_cached([0.5, 0.5], f, cache, CLAMP, noise)
    second = evaluate_cached([0.5, 0.5], f, cache, CLAMP, noise)
    assert first == second
    assert cache.count == 1


def test_noise_depends_only_on_seed_and_point():
    a = NoiseSource(7)
    b = NoiseSource(7)
    c = NoiseSource(8)
    key = np.array([0.25, -1.0]).tobytes()
    other = np.array([0.25, -1.0000000001]).tobytes()
    assert a.uniform(key) == b.uniform(key)
    assert a.uniform(key) != c.uniform(key)
    assert a.uniform(key) != a.uniform(other)
    assert 0.0 <= a.uniform(key) < 1.0


def test_batch_deduplicates_repeated_rows():
    f = make_function("f1")
    cache = EvaluationCache()
    pts = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    values, adjusted = evaluate_points(pts, f, cache, CLAMP)
    assert np.array_equal(values, [1.0, 1.0, 1.0])
    assert adjusted.shape == (3, 2)
    assert cache.count == 2


def test_non_finite_value_is_surfaced():
    bad = custom_function(
        lambda X: np.where(X[:, 0] > 0, np.inf, 0.0), [1.0], function_id="bad"
    )
    with pytest.raises(EvaluationError):
        evaluate_cached([0.5], bad, EvaluationCache(), RAW)


def test_dimension_mismatch_rejected():
    f = make_function("f1")
    with pytest.raises(ValueError):
        evaluate_cached([1.0, 2.0, 3.0], f, EvaluationCache(), CLAMP)


def test_cache_min_and_point_decoding():
    f = make_function("f1")
    cache = EvaluationCache()
    evaluate_points(np.array([[3.0, 4.0], [1.0, 1.0]]), f, cache, CLAMP)
    assert cache.min_value() == 2.0
    points = {tuple(p): v for p, v in cache.points(2)}
    assert points[(3.0, 4.0)] == 25.0
    assert points[(1.0, 1.0)] == 2.0
