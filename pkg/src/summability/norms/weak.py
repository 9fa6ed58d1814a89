"""
Weak Norms
==========
The weak l_w norm of a finite sequence x_1, ..., x_L in l_p^n:

    sup over ||phi||_{p*} <= 1 of ||(<phi, x_i>)_i||_w,

i.e. the (p* -> w) operator norm of the L x n matrix of the sequence.
The objective is convex in phi, so replacing phi by the Hoelder maximiser
of its gradient never lowers it; several restarts guard against poor
local maxima.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from summability.calculus.exponents import INF, conjugate, validate_exponent
from summability.config import DEFAULT_CONFIG, NumericConfig
from summability.norms.forms import holder_argmax
from summability.norms.mixed import flat_norm
from summability.norms.tensors import VectorSequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class WeakNormResult:
    """A certified lower bound with the dual functional attaining it."""

    value: float
    maximizer: np.ndarray
    converged: bool
    restarts_used: int


def _gradient(matrix: np.ndarray, images: np.ndarray, w: float) -> np.ndarray:
    """A (sub)gradient of phi -> ||matrix @ phi||_w, up to a positive factor."""
    signs = np.where(images >= 0, 1.0, -1.0)
    if w == INF:
        row = int(np.argmax(np.abs(images)))
        return signs[row] * matrix[row]
    if w == 1.0:
        return matrix.T @ signs
    peak = np.abs(images).max()
    return matrix.T @ (signs * (np.abs(images) / peak) ** (w - 1.0))


def weak_norm(
    x: VectorSequence,
    w: float,
    seed: int = 0,
    config: NumericConfig = DEFAULT_CONFIG,
) -> WeakNormResult:
    """Multi-start ascent for the weak l_w norm of ``x``.

    Restart 0 starts at the leading right singular vector of the sequence
    matrix; the rest at seeded Gaussian points. Hitting the iteration budget
    is reported through ``converged``, never raised.
    """
    w = validate_exponent(w)
    matrix = x.vectors
    dual = conjugate(x.ambient_exponent)
    if not np.any(matrix):
        start = np.zeros(x.dimension)
        start[0] = 1.0
        return WeakNormResult(0.0, start, True, 0)
    children = np.random.SeedSequence(seed).spawn(config.weak_restarts)
    best: tuple[float, np.ndarray, bool] | None = None
    for index, child in enumerate(children):
        if index == 0:
            phi = np.linalg.svd(matrix)[2][0]
        else:
            phi = np.random.default_rng(child).standard_normal(x.dimension)
        phi = phi / flat_norm(phi, dual)
        value = flat_norm(matrix @ phi, w)
        converged = False
        for _ in range(config.weak_max_iter):
            images = matrix @ phi
            if not np.any(images):
                break
            step = holder_argmax(_gradient(matrix, images, w), dual)
            if step.degenerate:
                break
            candidate = flat_norm(matrix @ step.vector, w)
            gain = candidate - value
            if candidate >= value:
                phi, value = step.vector, candidate
            if gain <= config.weak_tol * max(value, np.finfo(float).tiny):
                converged = True
                break
        logger.debug("weak norm restart %d: %.6g", index, value)
        if best is None or value > best[0]:
            best = (value, phi, converged)
    assert best is not None
    return WeakNormResult(best[0], best[1], best[2], len(children))
