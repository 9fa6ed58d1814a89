"""
Mixed Norms
===========
Block restriction of m-way coefficient tensors and nested l_(s_1,...,s_d)
norms of d-way arrays.

The nesting runs from the last axis (exponent s_d, innermost) to the first
axis (exponent s_1, outermost). Each level rescales its fibres by their
largest absolute entry and adds the powers with ``math.fsum``; an infinite
exponent is a maximum.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

from summability.calculus.exponents import INF, validate_exponents
from summability.calculus.partitions import BlockPartition
from summability.errors import DimensionMismatchError
from summability.norms.tensors import BlockTensor, CoefficientTensor

ArrayLike = Union[np.ndarray, CoefficientTensor, BlockTensor]


def _as_array(t: ArrayLike) -> np.ndarray:
    return t.entries if isinstance(t, (CoefficientTensor, BlockTensor)) else np.asarray(t, dtype=np.float64)


def _reduce_last_axis(magnitudes: np.ndarray, s: float) -> np.ndarray:
    """l_s norm of every fibre along the last axis of a non-negative array."""
    if s == INF:
        return magnitudes.max(axis=-1)
    scale = magnitudes.max(axis=-1, keepdims=True)
    ratios = magnitudes / np.where(scale > 0, scale, 1.0)
    sums = np.apply_along_axis(math.fsum, -1, ratios**s)
    return scale[..., 0] * sums ** (1.0 / s)


def mixed_norm(t: ArrayLike, s: Sequence[float]) -> float:
    """Nested norm: innermost index at s_d, outermost at s_1."""
    array = _as_array(t)
    exponents = validate_exponents(s)
    if array.ndim != len(exponents):
        raise DimensionMismatchError(f"tensor has {array.ndim} axes but {len(exponents)} exponents were given")
    values = np.abs(array)
    for level in reversed(exponents):
        values = _reduce_last_axis(values, level)
    return float(values)


def flat_norm(t: ArrayLike, r: float) -> float:
    """l_r norm of all entries taken together."""
    return mixed_norm(_as_array(t).ravel(), (r,))


def default_lengths(a: CoefficientTensor, part: BlockPartition) -> tuple[int, ...]:
    """Largest admissible block lengths: the smallest axis in each block."""
    return tuple(min(a.dims[axis] for axis in part.axes(k)) for k in range(1, part.d + 1))


def block_restrict(
    a: CoefficientTensor,
    part: BlockPartition,
    lengths: Sequence[int] | None = None,
) -> BlockTensor:
    """Pull ``a`` back to the block set: b(i_1..i_d) = a(i_n on every axis of I_n)."""
    if a.order != part.m:
        raise DimensionMismatchError(f"tensor of order {a.order} cannot be restricted by a partition of m={part.m}")
    limits = default_lengths(a, part)
    chosen = limits if lengths is None else tuple(int(n) for n in lengths)
    if len(chosen) != part.d:
        raise DimensionMismatchError(f"{len(chosen)} lengths given for {part.d} blocks")
    for k, (length, limit) in enumerate(zip(chosen, limits), start=1):
        if not 1 <= length <= limit:
            raise DimensionMismatchError(f"length {length} for block {k} must lie in 1..{limit}")
    return BlockTensor(a.entries[block_index(part, chosen)], part)


def block_index(part: BlockPartition, lengths: Sequence[int]) -> tuple[np.ndarray, ...]:
    """Advanced index selecting the block set: one broadcast grid per tensor axis."""
    grids = [
        np.arange(length).reshape([-1 if level == k else 1 for level in range(part.d)])
        for k, length in enumerate(lengths)
    ]
    return tuple(grids[part.block_of(axis + 1) - 1] for axis in range(part.m))
