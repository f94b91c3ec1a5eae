"""The benchmark registry: formulas, optima, domains, dimension rules."""

import numpy as np
import pytest

from gbopt import FUNCTION_IDS, NoiseSource, make_function, oracle_minimum

ORIGIN_OPTIMUM = [
    "f1", "f2", "f5", "f7", "f8", "f10", "f11", "f13",
    "f15", "f16", "f17", "f18", "f19", "f20",
]


def test_registry_is_complete():
    assert len(FUNCTION_IDS) == 20
    assert FUNCTION_IDS == tuple(f"f{i}" for i in range(1, 21))


def test_known_point_values():
    assert make_function("f1").evaluate([3.0, 4.0]) == 25.0
    assert make_function("f9").evaluate([0.0, -1.0]) == 3.0
    assert make_function("f5").evaluate([0.0, 0.0]) == -1.0
    assert make_function("f12").evaluate([np.pi, np.pi]) == -1.0
    assert make_function("f3").evaluate([1.0, 1.0]) == 0.0
    assert make_function("f16").evaluate(np.zeros(30)) == 0.0
    # tiny sine residual at the unit point
    assert make_function("f6").evaluate([1.0, 1.0]) == 1.3497838043956716e-31


def test_origin_optima_within_1e12():
    for fid in ORIGIN_OPTIMUM:
        f = make_function(fid)
        value = f.evaluate(np.zeros(f.dimension))
        assert abs(value - f.optimum_value) <= 1e-12, fid


def test_declared_optimum_points_evaluate_to_optimum():
    for fid in FUNCTION_IDS:
        f = make_function(fid)
        if not f.deterministic or f.optimum_point is None:
            continue
        assert f.evaluate(f.optimum_point) == pytest.approx(
            f.optimum_value, abs=1e-12
        ), fid


def test_domains_match_published_boxes():
    expect = {
        "f1": 100, "f2": 100, "f3": 30, "f4": 1.28, "f5": 5.12, "f6": 10,
        "f7": 10, "f8": 10, "f9": 2, "f10": 100, "f11": 5.12, "f12": 100,
        "f13": 1, "f14": 5.12, "f15": 10, "f16": 600, "f17": 65.536,
        "f18": 100, "f19": 100, "f20": 100,
    }
    for fid, hw in expect.items():
        f = make_function(fid)
        assert np.all(f.domain.halfwidths == hw), fid


def test_per_coordinate_sign_symmetry():
    rng = np.random.default_rng(3)
    for fid in ["f1", "f10", "f18", "f19"]:
        f = make_function(fid)
        for _ in range(20):
            x = rng.uniform(-f.domain.halfwidths, f.domain.halfwidths)
            base = f.evaluate(x)
            for i in range(f.dimension):
                flipped = x.copy()
                flipped[i] = -flipped[i]
                assert f.evaluate(flipped) == pytest.approx(base, rel=1e-12), fid


def test_full_vector_sign_symmetry():
    rng = np.random.default_rng(4)
    for fid in ["f7", "f20"]:
        f = make_function(fid)
        for _ in range(20):
            x = rng.uniform(-f.domain.halfwidths, f.domain.halfwidths)
            assert f.evaluate(-x) == pytest.approx(f.evaluate(x), rel=1e-12), fid


def test_every_function_finite_on_its_domain():
    rng = np.random.default_rng(5)
    for fid in FUNCTION_IDS:
        f = make_function(fid)
        X = rng.uniform(-f.domain.halfwidths, f.domain.halfwidths, size=(200, f.dimension))
        noise = None if f.deterministic else NoiseSource(0)
        values = f.evaluate_batch(X, noise=noise)
        assert np.all(np.isfinite(values)), fid


def test_quartic_noise_is_reproducible():
    f = make_function("f4")
    assert f.evaluate(np.zeros(2)) == 0.0  # noiseless part
    noise = NoiseSource(123)
    x = np.array([0.3, -0.2])
    v1 = f.evaluate(x, noise=noise)
    v2 = f.evaluate(x, noise=NoiseSource(123))
    assert v1 == v2
    base = f.evaluate(x)
    assert 0.0 <= v1 - base < 1.0


def test_dimension_rules():
    assert make_function("f1").dimension == 2
    assert make_function("f1", 5).dimension == 5
    assert make_function("f11").dimension == 30
    assert make_function("f16").dimension == 30
    with pytest.raises(ValueError):
        make_function("f9", 3)
    with pytest.raises(ValueError):
        make_function("f11", 10)
    with pytest.raises(ValueError):
        make_function("f1", 0)
    with pytest.raises(ValueError):
        make_function("f3", 1)
    with pytest.raises(KeyError):
        make_function("f99")


def test_fixed_dimension_accepts_matching_override():
    assert make_function("f9", 2).dimension == 2
    assert make_function("f11", 30).dimension == 30


def test_oracle_minimum_matyas():
    f = make_function("f7")
    value, point = oracle_minimum(f, 0.01)
    assert abs(value) < 1e-8
    assert np.all(np.abs(point) < 1e-3)


def test_oracle_minimum_schaffer2():
    f = make_function("f10")
    value, point = oracle_minimum(f, 0.05)
    assert abs(value) < 1e-8
    assert np.all(np.abs(point) < 1e-2)


def test_oracle_minimum_goldstein_price():
    f = make_function("f9")
    value, point = oracle_minimum(f, 0.001)
    assert value == pytest.approx(3.0, abs=1e-8)
    assert point == pytest.approx([0.0, -1.0], abs=1e-3)


def test_oracle_refuses_noise_and_high_dimension():
    with pytest.raises(ValueError):
        oracle_minimum(make_function("f4"), 0.01)
    with pytest.raises(ValueError):
        oracle_minimum(make_function("f11"), 0.01)
