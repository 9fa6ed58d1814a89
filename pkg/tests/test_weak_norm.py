import math

import numpy as np
import pytest

from summability.calculus.exponents import conjugate
from summability.norms.mixed import flat_norm
from summability.norms.tensors import VectorSequence
from summability.norms.weak import weak_norm


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0, math.inf])
@pytest.mark.parametrize("n", [1, 3, 6])
def test_canonical_basis_has_weak_norm_one(n, p):
    result = weak_norm(VectorSequence.canonical_basis(n, p), conjugate(p))
    assert result.value == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("p", [1.0, 2.0, 4.0, math.inf])
@pytest.mark.parametrize("w", [1.0, 2.0, math.inf])
def test_single_vector_reduces_to_its_norm(p, w):
    v = np.array([3.0, -4.0, 1.0])
    result = weak_norm(VectorSequence(v[None, :], p), w)
    assert result.value == pytest.approx(flat_norm(v, p), rel=1e-9)


def test_repeated_unit_vector():
    x = VectorSequence(np.array([[1.0, 0.0], [1.0, 0.0]]), 2.0)
    result = weak_norm(x, 2.0)
    assert result.value == pytest.approx(math.sqrt(2), abs=1e-9)
    assert result.converged


def test_maximizer_certifies_the_value(rng):
    x = VectorSequence(rng.standard_normal((5, 3)), 3.0)
    result = weak_norm(x, 1.5, seed=4)
    dual = conjugate(3.0)
    assert flat_norm(result.maximizer, dual) <= 1 + 1e-12
    assert flat_norm(x.vectors @ result.maximizer, 1.5) == pytest.approx(result.value, rel=1e-12)
    assert result.restarts_used == 8


def test_zero_sequence():
    result = weak_norm(VectorSequence(np.zeros((3, 2)), 2.0), 2.0)
    assert result.value == 0.0
    assert result.converged


def test_same_seed_same_result(rng):
    x = VectorSequence(rng.standard_normal((4, 4)), 1.5)
    first, second = weak_norm(x, 3.0, seed=9), weak_norm(x, 3.0, seed=9)
    assert first.value == second.value
    np.testing.assert_array_equal(first.maximizer, second.maximizer)
