"""Synthetic point sets with known distance exponents."""

from typing import Callable, Dict, NamedTuple

import numpy as np

from ..errors import EstimationError


def cube(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform points in [0, 1]^dim."""
    return rng.random((count, dim))


def gaussian(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Standard normal points in R^dim."""
    return rng.standard_normal((count, dim))


def sphere(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform points on the unit sphere S^dim in R^(dim+1)."""
    x = rng.standard_normal((count, dim + 1))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def parabolic_trough(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Points (u, u_0^2) with u uniform in [-1, 1]^dim: a curved dim-manifold."""
    u = rng.uniform(-1.0, 1.0, (count, dim))
    return np.column_stack([u, u[:, 0] ** 2])


class Generator(NamedTuple):
    make: Callable[[np.random.Generator, int, int], np.ndarray]
    metric: str


GENERATORS: Dict[str, Generator] = {
    "cube": Generator(cube, "linf"),
    "gaussian": Generator(gaussian, "l2"),
    "sphere": Generator(sphere, "geodesic"),
    "trough": Generator(parabolic_trough, "l2"),
}


def generate(name: str, rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Points from a named generator.

    Raises:
        EstimationError: Unknown generator or non-positive size
    """
    if name not in GENERATORS:
        raise EstimationError(f"Unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    if count < 1 or dim < 1:
        raise EstimationError(f"Generator needs count >= 1 and dim >= 1, got {count}, {dim}")
    return GENERATORS[name].make(rng, count, dim)
