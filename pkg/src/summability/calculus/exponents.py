"""
Exponent Calculus
=================
Closed-form exponent arithmetic for block summing operators: conjugates,
harmonic sums |1/p|_A, the exponent system of the block Inclusion Theorem,
the Hardy-Littlewood exponents (isotropic, block-anisotropic, corollary
form) and the triviality test for block classes.

Exponents are plain floats in [1, inf]; ``math.inf`` is the only infinity
and its reciprocal is exactly 0. Every formula is affine in reciprocals, so
all arithmetic happens on 1/p (with ``math.fsum``) and converts back once.
Strict inequalities in hypotheses are tested with a configurable ``slack``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from summability.calculus.partitions import BlockPartition
from summability.config import DEFAULT_CONFIG
from summability.errors import (
    DegenerateExponentError,
    DimensionMismatchError,
    ExponentError,
    HypothesisError,
)

logger = logging.getLogger(__name__)

INF = math.inf

ExponentVector = tuple[float, ...]


# ---------------------------------------------------------------------------
# Single exponents
# ---------------------------------------------------------------------------


def validate_exponent(p: float) -> float:
    """Return ``p`` as a float, rejecting NaN and values below 1."""
    value = float(p)
    if math.isnan(value) or value < 1:
        raise ExponentError(f"exponent must lie in [1, inf], got {p!r}")
    return value


def validate_exponents(values: Iterable[float]) -> ExponentVector:
    vector = tuple(validate_exponent(v) for v in values)
    if not vector:
        raise ExponentError("an exponent vector needs at least one entry")
    return vector


def reciprocal(p: float) -> float:
    """1/p, with 1/inf = 0 exactly."""
    value = validate_exponent(p)
    return 0.0 if value == INF else 1.0 / value


def from_reciprocal(x: float) -> float:
    """Inverse of ``reciprocal``: 0 maps to inf."""
    if x < 0 or math.isnan(x):
        raise ExponentError(f"reciprocal exponent must be non-negative, got {x!r}")
    return INF if x == 0 else 1.0 / x


def conjugate(p: float) -> float:
    """p* with 1/p + 1/p* = 1; conjugate(1) = inf, conjugate(inf) = 1."""
    inv = reciprocal(p)
    if inv == 1.0:
        return INF
    return from_reciprocal(1.0 - inv)


def parse_exponent(text: str) -> float:
    """Parse ``"inf"``, ``"∞"``, ``"4"``, ``"2.5"`` or ``"4/3"``."""
    token = text.strip().lower()
    if token in {"inf", "infinity", "∞", "+inf"}:
        return INF
    try:
        value = float(Fraction(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ExponentError(f"cannot parse exponent {text!r}") from exc
    return validate_exponent(value)


def render_exponent(p: float) -> str:
    return "inf" if p == INF else repr(float(p))


def parse_exponent_list(text: str) -> ExponentVector:
    """Parse a comma list such as ``"4,4,inf"``."""
    return validate_exponents(parse_exponent(token) for token in text.split(","))


def render_exponent_list(values: Sequence[float]) -> str:
    return ",".join(render_exponent(v) for v in values)


def harmonic_sum(p: Sequence[float], indices: Iterable[int]) -> float:
    """|1/p|_A: the sum of 1/p_j over the 1-based index set ``indices``."""
    terms = []
    for j in indices:
        if not 1 <= j <= len(p):
            raise ExponentError(f"index {j} is outside 1..{len(p)}")
        terms.append(reciprocal(p[j - 1]))
    return math.fsum(terms)


def total_harmonic_sum(p: Sequence[float]) -> float:
    """|1/p| over all indices."""
    return harmonic_sum(p, range(1, len(p) + 1))


def _check_partition(p: Sequence[float], part: BlockPartition) -> None:
    if part.m != len(p):
        raise DimensionMismatchError(f"partition covers m={part.m} indices but p has {len(p)} entries")


# ---------------------------------------------------------------------------
# Inclusion Theorem
# ---------------------------------------------------------------------------


class InclusionHypothesis(Enum):
    """Which branch of the block Inclusion Theorem applies."""

    A = "A"  # q_j >= p_j and 1/r - |1/p| + |1/q| > 0
    B = "B"  # q_1 > p_1, q_j >= p_j and 1/r - |1/p| + |1/q| = 0


def inclusion_hypothesis(
    r: float,
    p: Sequence[float],
    q: Sequence[float],
    slack: float = DEFAULT_CONFIG.slack,
) -> InclusionHypothesis:
    """Classify (r, p, q) or raise ``HypothesisError`` naming the failed clause."""
    validate_exponent(r)
    p, q = validate_exponents(p), validate_exponents(q)
    if len(p) != len(q):
        raise HypothesisError("len(p) == len(q)", f"{len(p)} != {len(q)}")
    for j, (pj, qj) in enumerate(zip(p, q), start=1):
        if reciprocal(qj) > reciprocal(pj) + slack:
            raise HypothesisError("q_j >= p_j", f"j={j}: q_j={qj!r} < p_j={pj!r}")
    total = math.fsum([reciprocal(r), -total_harmonic_sum(p), total_harmonic_sum(q)])
    if total > slack:
        return InclusionHypothesis.A
    if total < -slack:
        raise HypothesisError("1/r - |1/p| + |1/q| >= 0", f"value {total!r}")
    if reciprocal(q[0]) < reciprocal(p[0]) - slack:
        return InclusionHypothesis.B
    raise HypothesisError("q_1 > p_1", "required when 1/r - |1/p| + |1/q| = 0")


def inclusion_exponents(
    r: float,
    p: Sequence[float],
    q: Sequence[float],
    part: BlockPartition,
    slack: float = DEFAULT_CONFIG.slack,
) -> ExponentVector:
    """Output exponents s_1, ..., s_d of the block inclusion.

    1/s_k = 1/r - |1/p|_{tail k} + |1/q|_{tail k}, where tail k is the union
    of blocks k..d. Non-positive 1/s_k (always the case for k = 1 under
    hypothesis B) raises ``DegenerateExponentError``.
    """
    hypothesis = inclusion_hypothesis(r, p, q, slack)
    _check_partition(p, part)
    inv_r = reciprocal(r)
    exponents = []
    for k in range(1, part.d + 1):
        tail = part.tail(k)
        inv = math.fsum([inv_r, -harmonic_sum(p, tail), harmonic_sum(q, tail)])
        if inv <= slack:
            raise DegenerateExponentError(k, inv)
        exponents.append(from_reciprocal(inv))
    logger.debug("inclusion exponents %s under hypothesis %s", exponents, hypothesis.value)
    return tuple(exponents)


def absolute_inclusion_exponent(
    r: float,
    p: Sequence[float],
    q: Sequence[float],
    slack: float = DEFAULT_CONFIG.slack,
) -> float:
    """Diagonal inclusion: 1/s - |1/q| = 1/r - |1/p|."""
    return inclusion_exponents(r, p, q, BlockPartition.absolutely_summing(len(p)), slack)[0]


# ---------------------------------------------------------------------------
# Hardy-Littlewood exponents
# ---------------------------------------------------------------------------


class HLRegime(Enum):
    PRACIANO_PEREIRA = "praciano-pereira"  # |1/p| <= 1/2
    DIMANT_SEVILLA_PERIS = "dimant-sevilla-peris"  # 1/2 <= |1/p| < 1


def hl_regime(p: Sequence[float], slack: float = DEFAULT_CONFIG.slack) -> HLRegime:
    total = total_harmonic_sum(validate_exponents(p))
    if total >= 1 - slack:
        raise HypothesisError("|1/p| < 1", f"|1/p| = {total!r}")
    if total < 0.5 - slack:
        return HLRegime.PRACIANO_PEREIRA
    return HLRegime.DIMANT_SEVILLA_PERIS


def isotropic_hl_exponent(p: Sequence[float], slack: float = DEFAULT_CONFIG.slack) -> float:
    """(1 - |1/p|)^-1, optimal for 1/2 <= |1/p| < 1."""
    regime = hl_regime(p, slack)
    if regime is HLRegime.PRACIANO_PEREIRA:
        logger.warning("|1/p| < 1/2: isotropic exponent used outside its optimal range")
    return from_reciprocal(1.0 - total_harmonic_sum(p))


def praciano_pereira_exponent(p: Sequence[float], slack: float = DEFAULT_CONFIG.slack) -> float:
    """2m / (m + 1 - 2|1/p|) for |1/p| <= 1/2 (2m/(m+1) when p = inf)."""
    p = validate_exponents(p)
    total = total_harmonic_sum(p)
    if total > 0.5 + slack:
        raise HypothesisError("|1/p| <= 1/2", f"|1/p| = {total!r}")
    m = len(p)
    return 2 * m / (m + 1 - 2 * total)


def hl_block_exponents(
    p: Sequence[float],
    part: BlockPartition,
    slack: float = DEFAULT_CONFIG.slack,
) -> ExponentVector:
    """Anisotropic block exponents for p in (1, 2m]^m with |1/p| < 1.

    1/s_k = 1/2 - |1/p|_{tail k} + |tail k| / (2m).
    """
    p = validate_exponents(p)
    _check_partition(p, part)
    m = len(p)
    floor = 1.0 / (2 * m)
    for j, pj in enumerate(p, start=1):
        inv = reciprocal(pj)
        if inv >= 1 - slack:
            raise HypothesisError("p_j > 1", f"j={j}: p_j={pj!r}")
        if inv < floor - slack:
            raise HypothesisError("p_j <= 2m", f"j={j}: p_j={pj!r} > {2 * m}")
    total = total_harmonic_sum(p)
    if total >= 1 - slack:
        raise HypothesisError("|1/p| < 1", f"|1/p| = {total!r}")
    exponents = []
    for k in range(1, part.d + 1):
        tail = part.tail(k)
        exponents.append(from_reciprocal(math.fsum([0.5, -harmonic_sum(p, tail), len(tail) * floor])))
    return tuple(exponents)


def corollary_exponents(
    p: float,
    block_sizes: Sequence[int],
    slack: float = DEFAULT_CONFIG.slack,
) -> ExponentVector:
    """Equal-exponent form: 1/s_k = 1/2 - (n_k + ... + n_d)(1/p - 1/(2m)), m < p <= 2m."""
    if not block_sizes or any(int(n) < 1 for n in block_sizes):
        raise ExponentError(f"block sizes must be positive integers, got {list(block_sizes)}")
    m = sum(int(n) for n in block_sizes)
    inv_p = reciprocal(p)
    if inv_p >= 1 / m - slack:
        raise HypothesisError("p > m", f"p={p!r}, m={m}")
    if inv_p < 1 / (2 * m) - slack:
        raise HypothesisError("p <= 2m", f"p={p!r}, m={m}")
    gap = inv_p - 1 / (2 * m)
    exponents = []
    for k in range(len(block_sizes)):
        tail_size = sum(int(n) for n in block_sizes[k:])
        exponents.append(from_reciprocal(0.5 - tail_size * gap))
    return tuple(exponents)


# ---------------------------------------------------------------------------
# Triviality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialityVerdict:
    """``trivial`` is True when the block class is {0}; ``witness`` is the 1-based block."""

    trivial: bool
    witness: int | None = None


def triviality_check(
    p: Sequence[float],
    q: Sequence[float],
    part: BlockPartition,
    slack: float = DEFAULT_CONFIG.slack,
) -> TrivialityVerdict:
    """First block k with 1/q_k > sum over I_k of 1/p_j, if any."""
    p, q = validate_exponents(p), validate_exponents(q)
    _check_partition(p, part)
    if len(q) != part.d:
        raise DimensionMismatchError(f"q has {len(q)} entries but the partition has {part.d} blocks")
    for k, block in enumerate(part.blocks, start=1):
        if reciprocal(q[k - 1]) > harmonic_sum(p, block) + slack:
            return TrivialityVerdict(trivial=True, witness=k)
    return TrivialityVerdict(trivial=False)
