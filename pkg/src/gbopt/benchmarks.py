"""The twenty benchmark objectives, plus a brute-force grid oracle.

Each objective evaluates batches: the evaluator takes an (n, d) array and
returns (n,) values.  f1-f4 are unimodal (f4 carries additive uniform noise),
the rest are multi-modal.  Domains are symmetric boxes; optima are the
standard published ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import SearchDomain

TWO_PI = 2.0 * np.pi


def _sphere(X):
    return np.sum(X * X, axis=1)


def _schwefel_1_2(X):
    partial = np.cumsum(X, axis=1)
    return np.sum(partial * partial, axis=1)


def _rosenbrock(X):
    a, b = X[:, :-1], X[:, 1:]
    return np.sum(100.0 * (b - a * a) ** 2 + (a - 1.0) ** 2, axis=1)


def _quartic(X):
    weights = np.arange(1, X.shape[1] + 1, dtype=np.float64)
    return np.sum(weights * X**4, axis=1)


def _drop_wave(X):
    r2 = X[:, 0] ** 2 + X[:, 1] ** 2
    return -(1.0 + np.cos(12.0 * np.sqrt(r2))) / (0.5 * r2 + 2.0)


def _levy13(X):
    x1, x2 = X[:, 0], X[:, 1]
    return (
        np.sin(3.0 * np.pi * x1) ** 2
        + (x1 - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x2) ** 2)
        + (x2 - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x2) ** 2)
    )


def _matyas(X):
    x1, x2 = X[:, 0], X[:, 1]
    return 0.26 * (x1 * x1 + x2 * x2) - 0.48 * x1 * x2


def _three_hump_camel(X):
    x1, x2 = X[:, 0], X[:, 1]
    return 2.0 * x1**2 - 1.05 * x1**4 + x1**6 / 6.0 + x1 * x2 + x2**2


def _goldstein_price(X):
    x1, x2 = X[:, 0], X[:, 1]
    t1 = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    t2 = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return t1 * t2


def _schaffer_n2(X):
    x1, x2 = X[:, 0], X[:, 1]
    r2 = x1 * x1 + x2 * x2
    return 0.5 + (np.sin(x1 * x1 - x2 * x2) ** 2 - 0.5) / (1.0 + 0.001 * r2) ** 2


def _rastrigin_sum(X):
    return np.sum(X * X - 10.0 * np.cos(TWO_PI * X) + 10.0, axis=1)


def _easom(X):
    x1, x2 = X[:, 0], X[:, 1]
    return -np.cos(x1) * np.cos(x2) * np.exp(-((x1 - np.pi) ** 2 + (x2 - np.pi) ** 2))


def _sum_of_powers(X):
    exponents = np.arange(2, X.shape[1] + 2, dtype=np.float64)
    return np.sum(np.abs(X) ** exponents, axis=1)


def _rastrigin(X):
    d = X.shape[1]
    return 10.0 * d + np.sum(X * X - 10.0 * np.cos(TWO_PI * X), axis=1)


def _sum_squares(X):
    weights = np.arange(1, X.shape[1] + 1, dtype=np.float64)
    return np.sum(weights * X * X, axis=1)


def _griewank(X):
    idx = np.sqrt(np.arange(1, X.shape[1] + 1, dtype=np.float64))
    return np.sum(X * X, axis=1) / 4000.0 - np.prod(np.cos(X / idx), axis=1) + 1.0


def _rotated_hyper_ellipsoid(X):
    return np.sum(np.cumsum(X * X, axis=1), axis=1)


def _bohachevsky1(X):
    x1, x2 = X[:, 0], X[:, 1]
    return (
        x1 * x1
        + 2.0 * x2 * x2
        - 0.3 * np.cos(3.0 * np.pi * x1)
        - 0.4 * np.cos(4.0 * np.pi * x2)
        + 0.7
    )


def _bohachevsky2(X):
    x1, x2 = X[:, 0], X[:, 1]
    return (
        x1 * x1
        + 2.0 * x2 * x2
        - 0.3 * np.cos(3.0 * np.pi * x1) * np.cos(4.0 * np.pi * x2)
        + 0.3
    )


def _bohachevsky3(X):
    x1, x2 = X[:, 0], X[:, 1]
    return x1 * x1 + 2.0 * x2 * x2 - 0.3 * np.cos(3.0 * np.pi * x1 + 4.0 * np.pi * x2) + 0.3


@dataclass
class ObjectiveFunction:
    """A benchmark objective with its domain and known optimum."""

    id: str
    name: str
    dimension: int
    domain: SearchDomain
    optimum_value: float
    optimum_point: np.ndarray | None
    deterministic: bool
    _batch: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def evaluate_batch(self, X, noise=None):
        """Evaluate an (n, d) batch.  For noisy objectives each row receives
        one uniform [0, 1) draw from ``noise``; ``noise=None`` returns the
        noiseless part."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.dimension:
            raise ValueError(
                f"{self.id} expects dimension {self.dimension}, got {X.shape[1]}"
            )
        values = np.asarray(self._batch(X), dtype=np.float64)
        if not self.deterministic and noise is not None:
            X = np.ascontiguousarray(X)
            draws = np.array([noise.uniform(X[i].tobytes()) for i in range(X.shape[0])])
            values = values + draws
        return values

    def evaluate(self, point, noise=None) -> float:
        return float(self.evaluate_batch(np.atleast_2d(point), noise=noise)[0])


@dataclass
class _Spec:
    name: str
    halfwidth: float
    optimum_value: float
    maker: Callable
    default_dim: int = 2
    fixed_dim: int | None = None
    optimum_point: Callable[[int], np.ndarray | None] = staticmethod(
        lambda d: np.zeros(d)
    )
    deterministic: bool = True


def _ones(d):
    return np.ones(d)


_REGISTRY: dict[str, _Spec] = {
    "f1": _Spec("Sphere Model", 100.0, 0.0, lambda d: _sphere),
    "f2": _Spec("Schwefel's Problem 1.2", 100.0, 0.0, lambda d: _schwefel_1_2),
    "f3": _Spec(
        "Generalized Rosenbrock's Function", 30.0, 0.0, lambda d: _rosenbrock,
        optimum_point=_ones,
    ),
    "f4": _Spec(
        "Quartic Function i.e. Noise", 1.28, 0.0, lambda d: _quartic,
        deterministic=False,
    ),
    "f5": _Spec("Drop-Wave Function", 5.12, -1.0, lambda d: _drop_wave, fixed_dim=2),
    "f6": _Spec(
        "Levy Function N. 13", 10.0, 0.0, lambda d: _levy13, fixed_dim=2,
        optimum_point=_ones,
    ),
    "f7": _Spec("Matyas Function", 10.0, 0.0, lambda d: _matyas, fixed_dim=2),
    "f8": _Spec(
        "Three-Hump Camel Function", 10.0, 0.0, lambda d: _three_hump_camel,
        fixed_dim=2,
    ),
    "f9": _Spec(
        "Goldstein-Price Function", 2.0, 3.0, lambda d: _goldstein_price, fixed_dim=2,
        optimum_point=lambda d: np.array([0.0, -1.0]),
    ),
    "f10": _Spec("Schaffer Function N. 2", 100.0, 0.0, lambda d: _schaffer_n2, fixed_dim=2),
    "f11": _Spec(
        "Generalized Rastrigin's Function", 5.12, 0.0, lambda d: _rastrigin_sum,
        fixed_dim=30,
    ),
    "f12": _Spec(
        "Easom Function", 100.0, -1.0, lambda d: _easom, fixed_dim=2,
        optimum_point=lambda d: np.array([np.pi, np.pi]),
    ),
    "f13": _Spec("Sum of Different Powers Function", 1.0, 0.0, lambda d: _sum_of_powers),
    "f14": _Spec("Rastrigin Function", 5.12, 0.0, lambda d: _rastrigin),
    "f15": _Spec("Sum Squares Function", 10.0, 0.0, lambda d: _sum_squares),
    "f16": _Spec(
        "Generalized Griewank's Function", 600.0, 0.0, lambda d: _griewank,
        fixed_dim=30,
    ),
    "f17": _Spec(
        "Rotated Hyper-Ellipsoid Function", 65.536, 0.0,
        lambda d: _rotated_hyper_ellipsoid,
    ),
    "f18": _Spec("Bohachevsky Function1", 100.0, 0.0, lambda d: _bohachevsky1, fixed_dim=2),
    "f19": _Spec("Bohachevsky Function2", 100.0, 0.0, lambda d: _bohachevsky2, fixed_dim=2),
    "f20": _Spec("Bohachevsky Function3", 100.0, 0.0, lambda d: _bohachevsky3, fixed_dim=2),
}

FUNCTION_IDS = tuple(_REGISTRY)


def make_function(function_id: str, dimension: int | None = None) -> ObjectiveFunction:
    """Build a benchmark objective by id (f1..f20).

    Functions with a fixed dimension reject overrides; the rest default to 2.
    """
    spec = _REGISTRY.get(function_id)
    if spec is None:
        raise KeyError(
            f"unknown function {function_id!r}; valid ids: {', '.join(FUNCTION_IDS)}"
        )
    if spec.fixed_dim is not None:
        if dimension is not None and dimension != spec.fixed_dim:
            raise ValueError(
                f"{function_id} has fixed dimension {spec.fixed_dim}, got {dimension}"
            )
        dim = spec.fixed_dim
    else:
        dim = spec.default_dim if dimension is None else int(dimension)
        if dim < 1:
            raise ValueError("dimension must be a positive integer")
        if function_id in ("f3",) and dim < 2:
            raise ValueError(f"{function_id} needs dimension >= 2")
    return ObjectiveFunction(
        id=function_id,
        name=spec.name,
        dimension=dim,
        domain=SearchDomain(np.full(dim, spec.halfwidth)),
        optimum_value=spec.optimum_value,
        optimum_point=spec.optimum_point(dim),
        deterministic=spec.deterministic,
        _batch=spec.maker(dim),
    )


def custom_function(evaluator, halfwidths, optimum_value=float("nan"),
                    optimum_point=None, name="custom", deterministic=True,
                    function_id="custom") -> ObjectiveFunction:
    """Wrap an arbitrary batch evaluator as an objective on a symmetric box."""
    domain = SearchDomain(np.asarray(halfwidths, dtype=np.float64))
    return ObjectiveFunction(
        id=function_id,
        name=name,
        dimension=domain.dimension,
        domain=domain,
        optimum_value=float(optimum_value),
        optimum_point=None if optimum_point is None else np.asarray(optimum_point, float),
        deterministic=deterministic,
        _batch=evaluator,
    )


def function_table() -> list[dict]:
    """Registry summary rows for display: id, name, dimension, domain, optimum."""
    rows = []
    for fid in FUNCTION_IDS:
        f = make_function(fid)
        rows.append(
            {
                "id": f.id,
                "name": f.name,
                "dimension": f.dimension,
                "domain": f"[-{f.domain.halfwidths[0]:g}, {f.domain.halfwidths[0]:g}]^{f.dimension}",
                "optimum": f.optimum_value,
                "deterministic": f.deterministic,
            }
        )
    return rows


def _grid_scan(objective, lows, highs, steps):
    """Evaluate a full grid (chunked by rows of the first axis) and return the
    best (value, point)."""
    axes = [
        np.linspace(lo, hi, int(n))
        for lo, hi, n in zip(lows, highs, steps)
    ]
    best_value = np.inf
    best_point = None
    if objective.dimension == 1:
        X = axes[0][:, None]
        vals = objective.evaluate_batch(X)
        i = int(np.argmin(vals))
        return float(vals[i]), X[i].copy()
    for x1 in axes[0]:
        X = np.column_stack([np.full(axes[1].size, x1), axes[1]])
        vals = objective.evaluate_batch(X)
        i = int(np.argmin(vals))
        if vals[i] < best_value:
            best_value = float(vals[i])
            best_point = X[i].copy()
    return best_value, best_point


def oracle_minimum(objective, resolution):
    """Brute-force reference minimum: dense grid scan at the given step, then
    recursive zooming around the best cell.

    Only for deterministic objectives of dimension <= 2 (cost grows as the
    grid squared).  Used by tests to validate optima and optimizer output.
    """
    if not objective.deterministic:
        raise ValueError("oracle_minimum needs a deterministic objective")
    if objective.dimension > 2:
        raise ValueError("oracle_minimum is limited to dimension <= 2")

    hw = objective.domain.halfwidths
    step = float(resolution)
    counts = [max(2, int(round(2 * a / step)) + 1) for a in hw]
    best_value, best_point = _grid_scan(objective, -hw, hw, counts)

    window = step
    for _ in range(12):
        lows = np.maximum(best_point - window, -hw)
        highs = np.minimum(best_point + window, hw)
        value, point = _grid_scan(objective, lows, highs, [41] * objective.dimension)
        if value < best_value:
            best_value, best_point = value, point
        window /= 10.0
    return best_value, best_point
