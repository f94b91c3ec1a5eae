"""Ball geometry, prime radii, and quality evaluation."""

import math
from decimal import Decimal, getcontext

import numpy as np
import pytest

from gbopt import (
    EvaluationCache,
    GranularBall,
    OutOfBoundsPolicy,
    SearchDomain,
    ball_value,
    boundary_points,
    improved_ball_value,
    initial_ball,
    make_function,
    primes_below,
    sub_balls,
)

CLAMP = OutOfBoundsPolicy.CLAMP


def test_initial_ball_2d():
    ball = initial_ball(SearchDomain(np.array([10.0, 10.0])))
    assert np.array_equal(ball.center, [0.0, 0.0])
    assert ball.radius == math.sqrt(200.0)
    assert abs(ball.radius - 14.1421) < 1e-4
    assert ball.depth == 0


def test_initial_ball_1d():
    ball = initial_ball(SearchDomain(np.array([3.0])))
    assert ball.radius == 3.0
    assert np.array_equal(ball.center, [0.0])


def test_initial_ball_30d_against_extended_precision():
    # independent recomputation: exact integer sum of squares, 50-digit sqrt
    getcontext().prec = 50
    exact = float(Decimal(sum([100 * 100] * 30)).sqrt())
    ball = initial_ball(SearchDomain(np.full(30, 100.0)))
    assert ball.radius == exact
    assert abs(ball.radius - 547.7226) < 1e-4


@pytest.mark.parametrize(
    "halfwidths",
    [[], [0.0, 1.0], [-2.0], [np.inf], [1.0, np.nan]],
)
def test_domain_rejects_degenerate_boxes(halfwidths):
    with pytest.raises(ValueError):
        SearchDomain(np.array(halfwidths, dtype=float))


def test_ball_rejects_bad_radius():
    with pytest.raises(ValueError):
        GranularBall(center=np.zeros(2), radius=0.0)
    with pytest.raises(ValueError):
        GranularBall(center=np.zeros(2), radius=-1.0)


def test_boundary_points_2d():
    ball = GranularBall(center=np.array([0.0, 0.0]), radius=2.0)
    pts = boundary_points(ball)
    assert pts.shape == (4, 2)
    assert np.array_equal(pts, [[2, 0], [-2, 0], [0, 2], [0, -2]])


def test_boundary_points_off_center():
    ball = GranularBall(center=np.array([1.0, 1.0]), radius=0.5)
    pts = boundary_points(ball)
    assert np.array_equal(pts, [[1.5, 1], [0.5, 1], [1, 1.5], [1, 0.5]])


def test_boundary_points_1d():
    ball = GranularBall(center=np.array([0.0]), radius=3.0)
    assert np.array_equal(boundary_points(ball), [[3.0], [-3.0]])


def test_sub_balls_centered():
    parent = GranularBall(center=np.array([0.0, 0.0]), radius=4.0)
    children = sub_balls(parent)
    centers = np.array([c.center for c in children])
    assert np.array_equal(centers, [[2, 0], [-2, 0], [0, 2], [0, -2]])
    assert all(c.radius == 2.0 for c in children)
    assert all(c.depth == parent.depth + 1 for c in children)


def test_sub_balls_off_center():
    parent = GranularBall(center=np.array([1.0, 0.0]), radius=2.0)
    centers = np.array([c.center for c in sub_balls(parent)])
    assert np.array_equal(centers, [[2, 0], [0, 0], [1, 1], [1, -1]])


def test_sub_balls_1d_initial():
    parent = initial_ball(SearchDomain(np.array([3.0])))
    children = sub_balls(parent)
    assert len(children) == 2
    assert np.array_equal([c.center[0] for c in children], [1.5, -1.5])
    assert all(c.radius == 1.5 for c in children)


def test_sub_ball_geometry_invariants():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = int(rng.integers(1, 6))
        parent = GranularBall(
            center=rng.normal(size=d) * 10, radius=float(rng.uniform(0.1, 50))
        )
        children = sub_balls(parent)
        assert len(children) == 2 * d
        for child, bp in zip(children, boundary_points(parent)):
            assert child.radius == parent.radius * 0.5  # exact halving
            # child center sits halfway to the probe point
            dist = np.linalg.norm(child.center - parent.center)
            assert dist == pytest.approx(parent.radius / 2, rel=1e-12)
            # the parent probe point lies on the child's surface
            assert np.linalg.norm(bp - child.center) == pytest.approx(
                child.radius, rel=1e-9
            )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(math.isqrt(n)) + 1))


def test_primes_below_examples():
    assert primes_below(14.1421) == [2, 3, 5, 7, 11, 13]
    assert primes_below(2) == []
    assert primes_below(2.0) == []
    # independent trial-division cross-check
    assert primes_below(30) == [n for n in range(2, 30) if _is_prime(n)]
    assert primes_below(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_primes_below_strict_bound():
    assert primes_below(7.0) == [2, 3, 5]
    assert primes_below(7.5) == [2, 3, 5, 7]
    with pytest.raises(ValueError):
        primes_below(0.0)


def test_ball_value_sphere():
    f = make_function("f1")
    cache = EvaluationCache()
    ball = GranularBall(center=np.array([0.0, 0.0]), radius=2.0)
    bv = ball_value(ball, f, cache, CLAMP)
    assert bv.value == 4.0
    # all four probes tie at 4; the first in the fixed order wins
    assert np.array_equal(bv.witness, [2.0, 0.0])
    assert cache.count == 4


def test_ball_value_levy13_hits_unit_point():
    # a ball whose probe set contains (1, 1), where the residual is tiny
    f = make_function("f6")
    ball = GranularBall(center=np.array([1.0, 3.0]), radius=2.0)
    bv = ball_value(ball, f, EvaluationCache(), CLAMP)
    assert np.array_equal(bv.witness, [1.0, 1.0])
    assert bv.value == 1.3497838043956716e-31


def test_ball_value_sub_ball_reaches_origin_exactly():
    f = make_function("f1")
    r0 = initial_ball(f.domain).radius
    ball = GranularBall(center=np.array([r0 / 2, 0.0]), radius=r0 / 2)
    bv = ball_value(ball, f, EvaluationCache(), CLAMP)
    assert bv.value == 0.0
    assert np.array_equal(bv.witness, [0.0, 0.0])


def test_ball_value_dimension_mismatch():
    f = make_function("f1")
    with pytest.raises(ValueError):
        ball_value(GranularBall(np.zeros(3), 1.0), f, EvaluationCache(), CLAMP)


def test_improved_value_sphere_smallest_prime_shell_wins():
    f = make_function("f1")
    ball = GranularBall(center=np.array([0.0, 0.0]), radius=14.1421)
    bv = improved_ball_value(ball, f, EvaluationCache(), CLAMP)
    assert bv.value == 4.0
    assert np.array_equal(bv.witness, [2.0, 0.0])


def test_improved_value_equals_basic_without_primes():
    f = make_function("f9")
    ball = GranularBall(center=np.array([0.5, -0.5]), radius=1.75)
    basic = ball_value(ball, f, EvaluationCache(), CLAMP)
    improved = improved_ball_value(ball, f, EvaluationCache(), CLAMP)
    assert improved.value == basic.value
    assert np.array_equal(improved.witness, basic.witness)


def test_improved_value_levy13_against_enumeration():
    # independent oracle: enumerate all 28 probe points with plain math
    f = make_function("f6")
    radius = 14.1421
    radii = [radius, 2, 3, 5, 7, 11, 13]

    def levy13(x1, x2):
        return (
            math.sin(3 * math.pi * x1) ** 2
            + (x1 - 1) ** 2 * (1 + math.sin(3 * math.pi * x2) ** 2)
            + (x2 - 1) ** 2 * (1 + math.sin(2 * math.pi * x2) ** 2)
        )

    points = []
    for r in radii:
        points += [(r, 0.0), (-r, 0.0), (0.0, r), (0.0, -r)]
    clamped = [(min(max(x, -10), 10), min(max(y, -10), 10)) for x, y in points]
    expected = min(levy13(x, y) for x, y in clamped)

    ball = GranularBall(center=np.array([0.0, 0.0]), radius=radius)
    bv = improved_ball_value(ball, f, EvaluationCache(), CLAMP)
    assert bv.value == pytest.approx(expected, rel=1e-12)
    assert len(clamped) == 28


def test_improved_never_exceeds_basic():
    rng = np.random.default_rng(11)
    f = make_function("f7")
    for _ in range(25):
        ball = GranularBall(
            center=rng.uniform(-5, 5, size=2), radius=float(rng.uniform(0.5, 20))
        )
        basic = ball_value(ball, f, EvaluationCache(), CLAMP)
        improved = improved_ball_value(ball, f, EvaluationCache(), CLAMP)
        assert improved.value <= basic.value


def test_no_duplicate_probes_within_improved_evaluation():
    # distinct shells probe distinct raw points: the cache sees every point once
    ball = GranularBall(center=np.array([0.3, -0.7]), radius=9.5)
    f = make_function("f7")
    cache = EvaluationCache()
    improved_ball_value(ball, f, cache, OutOfBoundsPolicy.EVALUATE_RAW)
    shells = 1 + len(primes_below(9.5))
    assert cache.count == shells * 4


def test_ball_value_deterministic():
    f = make_function("f10")
    ball = GranularBall(center=np.array([3.0, 4.0]), radius=7.3)
    a = ball_value(ball, f, EvaluationCache(), CLAMP)
    b = ball_value(ball, f, EvaluationCache(), CLAMP)
    assert a.value == b.value
    assert np.array_equal(a.witness, b.witness)
