"""
Form Norms
==========
Estimates of ||A|| = sup |A(x_1, ..., x_m)| over the product of the unit
balls of l_{p_1}^{n_1} x ... x l_{p_m}^{n_m}.

Three methods:
    - ascent: alternating Hoelder-dual maximisation with restarts; a
      certified lower bound (the maximiser is returned with the value)
    - exact-sign: enumeration of sign vectors when every p_k is inf
    - exact-closed: closed forms (m = 1, spectral norm, a slot with p = 1)
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

import numpy as np

from summability.calculus.exponents import (
    INF,
    ExponentVector,
    conjugate,
    parse_exponent,
    validate_exponent,
    validate_exponents,
)
from summability.config import DEFAULT_CONFIG, NumericConfig
from summability.errors import (
    AscentError,
    BudgetExceededError,
    DimensionMismatchError,
    ExponentError,
    ValidationError,
)
from summability.norms.mixed import flat_norm
from summability.norms.tensors import CoefficientTensor

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FormInstance:
    """An m-linear form: coefficients plus the domain exponents p."""

    tensor: CoefficientTensor
    domain_exponents: ExponentVector

    def __post_init__(self) -> None:
        p = validate_exponents(self.domain_exponents)
        if len(p) != self.tensor.order:
            raise DimensionMismatchError(f"tensor of order {self.tensor.order} needs {self.tensor.order} exponents, got {len(p)}")
        object.__setattr__(self, "domain_exponents", p)

    @property
    def order(self) -> int:
        return self.tensor.order

    def scaled(self, factor: float) -> Self:
        return type(self)(self.tensor.scaled(factor), self.domain_exponents)

    @classmethod
    def from_json(cls, document: Mapping[str, Any], p: Sequence[float] | None = None) -> Self:
        """Tensor JSON plus ``{"p": [...]}``; an explicit ``p`` wins over the document."""
        tensor = CoefficientTensor.from_json(document)
        if p is None:
            if "p" not in document:
                raise ExponentError("no domain exponents: pass p or add a 'p' field")
            p = [parse_exponent(str(v)) for v in document["p"]]
        return cls(tensor, tuple(p))


class NormMethod(Enum):
    ASCENT = "ascent"
    EXACT_SIGN = "exact-sign"
    EXACT_CLOSED = "exact-closed"


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """A norm value together with the unit vectors that attain it."""

    value: float
    maximizer: tuple[np.ndarray, ...]
    method: NormMethod
    converged: bool
    restarts_used: int
    trace: tuple[float, ...] = ()
    stagnated: bool = False

    @property
    def exact(self) -> bool:
        return self.method is not NormMethod.ASCENT


@dataclass(frozen=True, eq=False)
class HolderMaximizer:
    vector: np.ndarray
    value: float
    degenerate: bool = False


# ---------------------------------------------------------------------------
# Evaluation and the dual-norm step
# ---------------------------------------------------------------------------


def _check_vectors(A: FormInstance, xs: Sequence[np.ndarray]) -> list[np.ndarray]:
    if len(xs) != A.order:
        raise DimensionMismatchError(f"form of order {A.order} needs {A.order} vectors, got {len(xs)}")
    vectors = [np.asarray(x, dtype=np.float64) for x in xs]
    for k, (x, n) in enumerate(zip(vectors, A.tensor.dims), start=1):
        if x.shape != (n,):
            raise DimensionMismatchError(f"slot {k} expects a vector of length {n}, got shape {x.shape}")
    return vectors


def evaluate(A: FormInstance, *xs: np.ndarray) -> float:
    """Full contraction: sum of a_{j1..jm} x_1(j1) ... x_m(jm)."""
    result = A.tensor.entries
    for x in reversed(_check_vectors(A, xs)):
        result = result @ x
    return float(result)


def _contract_except(entries: np.ndarray, xs: Sequence[np.ndarray], k: int) -> np.ndarray:
    """Coefficient vector of the linear functional left in slot ``k``."""
    result = entries
    for j in range(len(xs) - 1, k, -1):
        result = result @ xs[j]
    for j in range(k):
        result = np.tensordot(xs[j], result, axes=(0, 0))
    return result


def holder_argmax(c: Sequence[float], p: float) -> HolderMaximizer:
    """Unit vector of l_p maximising <c, x>; the maximum is ||c||_{p*}.

    sign(0) is +1, and for p = 1 ties go to the smallest index. c = 0 gives
    (e_1, 0) flagged as degenerate.
    """
    p = validate_exponent(p)
    coeffs = np.asarray(c, dtype=np.float64)
    signs = np.where(coeffs >= 0, 1.0, -1.0)
    if not np.any(coeffs):
        unit = np.zeros(coeffs.shape)
        unit[0] = 1.0
        return HolderMaximizer(unit, 0.0, degenerate=True)
    if p == INF:
        return HolderMaximizer(signs, math.fsum(np.abs(coeffs)))
    if p == 1.0:
        winner = int(np.argmax(np.abs(coeffs)))
        unit = np.zeros(coeffs.shape)
        unit[winner] = signs[winner]
        return HolderMaximizer(unit, float(abs(coeffs[winner])))
    q = conjugate(p)
    scaled = np.abs(coeffs) / np.abs(coeffs).max()
    dual = flat_norm(scaled, q)
    vector = signs * (scaled / dual) ** (q - 1.0)
    return HolderMaximizer(vector, flat_norm(coeffs, q))


def _unit(vector: np.ndarray, p: float) -> np.ndarray:
    size = flat_norm(vector, p)
    if size == 0:
        vector, size = np.ones(vector.shape), flat_norm(np.ones(vector.shape), p)
    return vector / size


def _unit_basis_point(n: int) -> np.ndarray:
    unit = np.zeros(n)
    unit[0] = 1.0
    return unit


# ---------------------------------------------------------------------------
# Alternating ascent
# ---------------------------------------------------------------------------


@dataclass
class _RestartOutcome:
    index: int
    value: float
    vectors: list[np.ndarray]
    converged: bool
    trace: list[float] = field(default_factory=list)
    stagnated: bool = False


def _starting_point(A: FormInstance, index: int, seed: np.random.SeedSequence) -> list[np.ndarray]:
    if index == 0:
        return [_unit(np.ones(n), p) for n, p in zip(A.tensor.dims, A.domain_exponents)]
    if index == 1:
        # basis vectors at the largest coefficient: the run never ends below max |a_j|
        peak = np.unravel_index(int(np.argmax(np.abs(A.tensor.entries))), A.tensor.dims)
        return [np.eye(n)[j] for n, j in zip(A.tensor.dims, peak)]
    rng = np.random.default_rng(seed)
    return [_unit(rng.standard_normal(n), p) for n, p in zip(A.tensor.dims, A.domain_exponents)]


def _run_restart(
    A: FormInstance,
    index: int,
    seed: np.random.SeedSequence,
    tol: float,
    max_iter: int,
    slack: float,
) -> _RestartOutcome:
    entries = A.tensor.entries
    xs = _starting_point(A, index, seed)
    objective = evaluate(A, *xs)
    outcome = _RestartOutcome(index=index, value=objective, vectors=xs, converged=False, trace=[objective])
    for _ in range(max_iter):
        start = objective
        for k, p in enumerate(A.domain_exponents):
            step = holder_argmax(_contract_except(entries, xs, k), p)
            if step.degenerate:
                outcome.stagnated = True
                continue
            if step.value < objective - slack * max(abs(objective), abs(step.value)):
                raise AscentError(f"restart {index}: objective fell from {objective!r} to {step.value!r}")
            xs[k] = step.vector
            objective = step.value
        outcome.trace.append(objective)
        if objective - start <= tol * max(abs(objective), np.finfo(float).tiny):
            outcome.converged = True
            break
    value = evaluate(A, *xs)
    if value < 0:
        xs[0] = -xs[0]
        value = -value
    outcome.value = value
    logger.debug("restart %d: value %.6g after %d sweeps", index, value, len(outcome.trace) - 1)
    return outcome


def norm_ascent(
    A: FormInstance,
    restarts: int | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
    seed: int = 0,
    config: NumericConfig = DEFAULT_CONFIG,
    workers: int | None = None,
) -> NormEstimate:
    """Best of several alternating Hoelder-dual ascents: a lower bound for ||A||.

    Restart 0 starts from normalised all-ones vectors, restart 1 from the
    basis vectors of the largest coefficient, the others from Gaussian
    vectors drawn from children of ``SeedSequence(seed)``. With two or more
    restarts the value is at least max |a_j|. The result does not depend on
    ``workers``.
    """
    cfg = config.with_overrides(
        ascent_restarts=restarts, ascent_tol=tol, ascent_max_iter=max_iter, workers=workers
    )
    if not np.any(A.tensor.entries):
        return NormEstimate(
            value=0.0,
            maximizer=tuple(_unit_basis_point(n) for n in A.tensor.dims),
            method=NormMethod.ASCENT,
            converged=True,
            restarts_used=0,
            trace=(0.0,),
        )
    children = np.random.SeedSequence(seed).spawn(cfg.ascent_restarts)

    def run(index: int) -> _RestartOutcome:
        return _run_restart(A, index, children[index], cfg.ascent_tol, cfg.ascent_max_iter, cfg.slack)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(run, range(cfg.ascent_restarts)))
    else:
        outcomes = [run(index) for index in range(cfg.ascent_restarts)]
    best = max(outcomes, key=lambda o: (o.value, -o.index))
    if not best.converged:
        logger.warning("ascent stopped on its budget of %d sweeps (value %.6g)", cfg.ascent_max_iter, best.value)
    return NormEstimate(
        value=best.value,
        maximizer=tuple(best.vectors),
        method=NormMethod.ASCENT,
        converged=best.converged,
        restarts_used=len(outcomes),
        trace=tuple(best.trace),
        stagnated=best.stagnated,
    )


# ---------------------------------------------------------------------------
# Exact methods
# ---------------------------------------------------------------------------


def sign_budget_bits(A: FormInstance) -> int:
    """Free sign bits enumerated by ``exact_norm_signs``."""
    return sum(A.tensor.dims[:-1])


def _sign_rows(codes: np.ndarray, width: int) -> np.ndarray:
    bits = (codes[:, None] >> np.arange(width)) & 1
    return 1.0 - 2.0 * bits


def exact_norm_signs(
    A: FormInstance,
    budget_bits: int | None = None,
    config: NumericConfig = DEFAULT_CONFIG,
    chunk: int = 4096,
) -> NormEstimate:
    """Exact ||A|| when every p_k is inf: maximise over sign vectors.

    Slots 1..m-1 run over sign vectors (the first coordinate of slot 1 is
    fixed to +1 by symmetry); slot m is solved by ``holder_argmax``.
    """
    if any(p != INF for p in A.domain_exponents):
        raise ExponentError("sign enumeration needs p = inf in every slot")
    budget = config.sign_budget_bits if budget_bits is None else budget_bits
    bits = sign_budget_bits(A)
    if bits > budget:
        raise BudgetExceededError(f"{bits} sign bits exceed the budget of {budget}; use norm_ascent instead")
    dims = A.tensor.dims
    entries = A.tensor.entries
    if A.order == 1:
        step = holder_argmax(entries, INF)
        return NormEstimate(step.value, (step.vector,), NormMethod.EXACT_SIGN, True, 0, (step.value,))
    free = bits - 1
    best_value, best_code = -1.0, 0
    for first in range(0, 1 << free, chunk):
        codes = np.arange(first, min(first + chunk, 1 << free), dtype=np.int64)
        rows = np.hstack([np.ones((len(codes), 1)), _sign_rows(codes, free)])
        state = np.einsum("n...,rn->r...", entries, rows[:, : dims[0]])
        offset = dims[0]
        for n in dims[1:-1]:
            state = np.einsum("rn...,rn->r...", state, rows[:, offset : offset + n])
            offset += n
        values = np.abs(state).sum(axis=1)
        winner = int(np.argmax(values))
        if values[winner] > best_value:
            best_value, best_code = float(values[winner]), int(codes[winner])
    signs = np.concatenate([[1.0], _sign_rows(np.array([best_code], dtype=np.int64), free)[0]])
    splits = np.cumsum(dims[:-1])[:-1]
    xs = list(np.split(signs, splits))
    xs.append(holder_argmax(_contract_except(entries, xs + [np.zeros(dims[-1])], A.order - 1), INF).vector)
    value = evaluate(A, *xs)
    return NormEstimate(value, tuple(xs), NormMethod.EXACT_SIGN, True, 0, (value,))


def has_closed_form(p: Sequence[float]) -> bool:
    p = tuple(p)
    return len(p) == 1 or (len(p) == 2 and (p == (2.0, 2.0) or 1.0 in p))


def closed_form_available(A: FormInstance) -> bool:
    return has_closed_form(A.domain_exponents)


def exact_norm_closed(A: FormInstance) -> NormEstimate:
    """Closed forms: m = 1; m = 2 with p = (2, 2); m = 2 with a slot at p = 1."""
    entries = A.tensor.entries
    p = A.domain_exponents
    if A.order == 1:
        step = holder_argmax(entries, p[0])
        xs = [step.vector]
    elif A.order == 2 and p == (2.0, 2.0):
        left, _, right = np.linalg.svd(entries)
        xs = [left[:, 0], right[0]]
    elif A.order == 2 and 1.0 in p:
        matrix = entries if p[0] == 1.0 else entries.T
        other = p[1] if p[0] == 1.0 else p[0]
        steps = [holder_argmax(row, other) for row in matrix]
        winner = max(range(len(steps)), key=lambda i: (steps[i].value, -i))
        pick = np.zeros(matrix.shape[0])
        pick[winner] = 1.0
        xs = [pick, steps[winner].vector] if p[0] == 1.0 else [steps[winner].vector, pick]
    else:
        raise ValidationError(f"no closed form for order {A.order} with p = {list(p)}")
    value = evaluate(A, *xs)
    if value < 0:
        xs[0] = -xs[0]
        value = -value
    return NormEstimate(value, tuple(xs), NormMethod.EXACT_CLOSED, True, 0, (value,))


def estimate_norm(
    A: FormInstance,
    config: NumericConfig = DEFAULT_CONFIG,
    seed: int = 0,
    method: str = "auto",
) -> NormEstimate:
    """Dispatch: closed form, then sign enumeration within budget, then ascent."""
    choice = method.lower()
    if choice == "auto":
        if closed_form_available(A):
            choice = NormMethod.EXACT_CLOSED.value
        elif all(p == INF for p in A.domain_exponents) and sign_budget_bits(A) <= config.sign_budget_bits:
            choice = NormMethod.EXACT_SIGN.value
        else:
            choice = NormMethod.ASCENT.value
    if choice == NormMethod.EXACT_CLOSED.value:
        return exact_norm_closed(A)
    if choice == NormMethod.EXACT_SIGN.value:
        return exact_norm_signs(A, config=config)
    if choice == NormMethod.ASCENT.value:
        return norm_ascent(A, seed=seed, config=config)
    raise ValidationError(f"Unknown norm method: {method}")
