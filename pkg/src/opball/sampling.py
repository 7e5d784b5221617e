"""Seeded random inputs shared by experiments, identity suites, and tests.

All draws go through ``numpy.random.Generator`` so that a fixed seed gives a
fixed ensemble; nothing here keeps global state.
"""

from __future__ import annotations

import numpy as np

from .ball import BallPoint
from .matkernel import op_norm
from .symmetry import ConjugationPair, symmetric_part
from .transform import OperatorHK


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int, scale: float = 1.0) -> np.ndarray:
    """Complex Gaussian matrix with entry standard deviation ``scale``."""
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return (scale / np.sqrt(2.0)) * g


def random_ball_point(
    rng: np.random.Generator,
    dim_h: int,
    dim_k: int,
    margin_min: float = 0.05,
    margin_max: float = 0.95,
) -> BallPoint:
    """A uniformly-directed contraction with margin in [margin_min, margin_max]."""
    g = complex_gaussian(rng, dim_h, dim_k)
    norm = op_norm(g)
    if norm == 0.0:
        return BallPoint(g)
    target = 1.0 - rng.uniform(margin_min, margin_max)
    return BallPoint(g * (target / norm))


def random_operator(
    rng: np.random.Generator, dim_h: int, dim_k: int, scale: float = 1.0
) -> OperatorHK:
    """An operator H -> K with complex Gaussian entries of deviation ``scale``."""
    return OperatorHK(complex_gaussian(rng, dim_k, dim_h, scale))


def random_symmetric_ball_point(
    rng: np.random.Generator,
    pair: ConjugationPair,
    margin_min: float = 0.1,
    margin_max: float = 0.9,
) -> BallPoint:
    """A contraction symmetric for ``pair`` (projection of a Gaussian draw).

    The pair runs src -> dst; the matrix produced is dst x src with the
    requested margin, and its symmetry residual is at roundoff level.
    """
    g = complex_gaussian(rng, pair.dim_dst, pair.dim_src)
    sym = symmetric_part(g, pair)
    norm = op_norm(sym)
    if norm == 0.0:
        return BallPoint(sym)
    target = 1.0 - rng.uniform(margin_min, margin_max)
    return BallPoint(sym * (target / norm))


def random_dims(
    rng: np.random.Generator, max_h: int, max_k: int
) -> tuple[int, int]:
    """Random space dimensions with dim_k <= dim_h."""
    dim_h = int(rng.integers(1, max_h + 1))
    dim_k = int(rng.integers(1, min(max_k, dim_h) + 1))
    return dim_h, dim_k
