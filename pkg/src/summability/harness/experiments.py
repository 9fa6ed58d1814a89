"""
Experiments
===========
Left-hand sides and ratios of the block Hardy-Littlewood inequalities,
the anisotropic versus isotropic comparison, Lambda-summing quotients for
explicit input sequences, and the divergence probe for trivial classes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from summability.calculus import exponents as ex
from summability.calculus.partitions import BlockPartition
from summability.config import DEFAULT_CONFIG, NumericConfig
from summability.errors import (
    ConfigError,
    DegenerateNormError,
    DimensionMismatchError,
    HypothesisError,
    NumericalError,
)
from summability.norms.forms import FormInstance, NormEstimate, estimate_norm
from summability.norms.mixed import block_restrict, mixed_norm
from summability.norms.tensors import CoefficientTensor, VectorSequence
from summability.norms.weak import weak_norm

logger = logging.getLogger(__name__)

# Domain dimension of the diagonal form used by the triviality probe.
_PROBE_DIMENSION = 2


# ---------------------------------------------------------------------------
# Hardy-Littlewood left-hand sides and ratios
# ---------------------------------------------------------------------------


def hl_lhs(A: FormInstance, part: BlockPartition, s: Sequence[float]) -> float:
    """Mixed l_s norm of A on block-repeated canonical inputs."""
    return mixed_norm(block_restrict(A.tensor, part), s)


@dataclass(frozen=True, eq=False)
class HLRatio:
    ratio: float
    lhs: float
    norm: NormEstimate

    @property
    def converged(self) -> bool:
        return self.norm.converged


def hl_ratio(
    A: FormInstance,
    part: BlockPartition,
    s: Sequence[float],
    config: NumericConfig = DEFAULT_CONFIG,
    seed: int = 0,
    method: str = "auto",
) -> HLRatio:
    """LHS / ||A||. A zero form gives ratio 0."""
    lhs = hl_lhs(A, part, s)
    estimate = estimate_norm(A, config, seed, method)
    if estimate.value == 0:
        if lhs != 0:
            raise DegenerateNormError(f"degenerate norm estimate: ||A|| = 0 but LHS = {lhs!r}")
        return HLRatio(0.0, lhs, estimate)
    return HLRatio(lhs / estimate.value, lhs, estimate)


@dataclass(frozen=True)
class AnisotropyGain:
    lhs_aniso: float
    lhs_iso: float
    s_aniso: ex.ExponentVector
    s_iso: ex.ExponentVector

    @property
    def gain(self) -> float:
        return self.lhs_aniso - self.lhs_iso


def anisotropy_gain(
    A: FormInstance,
    part: BlockPartition,
    p: Sequence[float] | None = None,
    config: NumericConfig = DEFAULT_CONFIG,
) -> AnisotropyGain:
    """LHS with the block exponents against LHS with the isotropic exponent."""
    p = A.domain_exponents if p is None else ex.validate_exponents(p)
    s_aniso = ex.hl_block_exponents(p, part, config.slack)
    s_iso = (ex.isotropic_hl_exponent(p, config.slack),) * part.d
    lhs_aniso, lhs_iso = hl_lhs(A, part, s_aniso), hl_lhs(A, part, s_iso)
    if lhs_aniso < lhs_iso - 1e-10 * max(1.0, lhs_iso):
        raise NumericalError(f"anisotropic LHS {lhs_aniso!r} fell below isotropic LHS {lhs_iso!r}")
    return AnisotropyGain(lhs_aniso, lhs_iso, s_aniso, s_iso)


# ---------------------------------------------------------------------------
# Lambda-summing quotients
# ---------------------------------------------------------------------------


def _block_rows(sequences: Sequence[VectorSequence], axes: Sequence[int]) -> np.ndarray:
    """Row-wise Kronecker product of the sequences on one block: L x prod(n_j)."""
    rows = sequences[axes[0]].vectors
    for axis in axes[1:]:
        nxt = sequences[axis].vectors
        rows = (rows[:, :, None] * nxt[:, None, :]).reshape(rows.shape[0], -1)
    return rows


def block_outputs(A: CoefficientTensor, sequences: Sequence[VectorSequence], part: BlockPartition) -> np.ndarray:
    """V(i_1..i_d) = A(x^j_{i_n} in every slot j of block I_n)."""
    if len(sequences) != A.order or part.m != A.order:
        raise DimensionMismatchError(f"form of order {A.order} needs {A.order} sequences and a partition of m={A.order}")
    for j, (seq, n) in enumerate(zip(sequences, A.dims), start=1):
        if seq.dimension != n:
            raise DimensionMismatchError(f"sequence {j} lives in dimension {seq.dimension}, slot needs {n}")
    for k in range(1, part.d + 1):
        lengths = {sequences[axis].length for axis in part.axes(k)}
        if len(lengths) != 1:
            raise DimensionMismatchError(f"sequences in block {k} have different lengths {sorted(lengths)}")
    order = [axis for k in range(1, part.d + 1) for axis in part.axes(k)]
    grouped = np.transpose(A.entries, order).reshape(
        [math.prod(A.dims[axis] for axis in part.axes(k)) for k in range(1, part.d + 1)]
    )
    values = grouped
    for k in range(1, part.d + 1):
        values = np.tensordot(values, _block_rows(sequences, part.axes(k)), axes=([0], [1]))
    return values


@dataclass(frozen=True)
class SummingQuotient:
    lhs: float
    weak_norms: tuple[float, ...]
    quotient: float


def summing_quotient(
    A: FormInstance,
    sequences: Sequence[VectorSequence],
    part: BlockPartition,
    q: Sequence[float],
    p: Sequence[float],
    config: NumericConfig = DEFAULT_CONFIG,
    seed: int = 0,
) -> SummingQuotient:
    """Block mixed l_q norm of the outputs over the product of weak l_{p_j} norms.

    Any choice of sequences gives a lower bound for the Lambda-(q;p)-summing
    norm of A.
    """
    p = ex.validate_exponents(p)
    if len(p) != A.order:
        raise DimensionMismatchError(f"{len(p)} weak exponents for a form of order {A.order}")
    lhs = mixed_norm(block_outputs(A.tensor, sequences, part), q)
    weak = tuple(weak_norm(seq, pj, seed, config).value for seq, pj in zip(sequences, p))
    denominator = math.prod(weak)
    if denominator == 0:
        raise DegenerateNormError("an input sequence has weak norm 0")
    return SummingQuotient(lhs, weak, lhs / denominator)


# ---------------------------------------------------------------------------
# Triviality probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialityReport:
    witness: int
    lengths: tuple[int, ...]
    quotients: tuple[float, ...]
    expected_slope: float
    slope: float | None

    @property
    def fit_defined(self) -> bool:
        return self.slope is not None


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Least-squares slope of log y against log x; None with fewer than two distinct x."""
    if len(set(xs)) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float)), 1)
    return float(slope)


def triviality_probe(
    p: Sequence[float],
    q: Sequence[float],
    part: BlockPartition,
    lengths: Sequence[int],
    config: NumericConfig = DEFAULT_CONFIG,
) -> TrivialityReport:
    """Growth of the summing quotient of the diagonal form along the witness block.

    Slots of the witness block I_k receive L copies of e_1, every other slot
    e_1 followed by zeros; the quotient grows like L^(1/q_k - |1/p|_{I_k}).
    """
    verdict = ex.triviality_check(p, q, part, config.slack)
    if not verdict.trivial:
        raise HypothesisError("1/q_k > sum over I_k of 1/p_j for some k", "class not trivial")
    if not lengths or any(int(L) < 1 for L in lengths):
        raise ConfigError(f"sequence lengths must be positive integers, got {list(lengths)}")
    k = verdict.witness
    assert k is not None
    witness_axes = set(part.axes(k))
    ambient = [ex.conjugate(pj) for pj in p]
    form = FormInstance(CoefficientTensor.delta(part.m, _PROBE_DIMENSION), tuple(ambient))
    unit = np.eye(_PROBE_DIMENSION)[0]
    quotients = []
    for L in lengths:
        sequences = [
            VectorSequence.repeated(unit, int(L), ambient[axis])
            if axis in witness_axes
            else VectorSequence.padded(unit, int(L), ambient[axis])
            for axis in range(part.m)
        ]
        result = summing_quotient(form, sequences, part, q, p, config)
        logger.info("L=%d quotient %.6g", L, result.quotient)
        quotients.append(result.quotient)
    expected = ex.reciprocal(q[k - 1]) - ex.harmonic_sum(p, part.blocks[k - 1])
    slope = fit_loglog_slope([float(L) for L in lengths], quotients)
    if slope is None:
        logger.warning("one sequence length only: slope undefined")
    return TrivialityReport(k, tuple(int(L) for L in lengths), tuple(quotients), expected, slope)
