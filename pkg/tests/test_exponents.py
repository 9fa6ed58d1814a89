import logging
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from summability.calculus import exponents as ex
from summability.calculus.partitions import BlockPartition
from summability.errors import (
    DegenerateExponentError,
    DimensionMismatchError,
    ExponentError,
    HypothesisError,
)

INF = math.inf


def random_partition(rng, m):
    order = [int(i) + 1 for i in rng.permutation(m)]
    cuts = sorted(rng.choice(np.arange(1, m), size=rng.integers(0, m), replace=False).tolist()) if m > 1 else []
    bounds = [0, *cuts, m]
    return BlockPartition.of(order[a:b] for a, b in zip(bounds, bounds[1:]))


def random_sizes(rng, m):
    return BlockPartition.from_sizes(random_partition(rng, m).sizes).sizes


# ---------------------------------------------------------------------------
# Single exponents
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p, expected", [(2, 2.0), (4, 4 / 3), (1, INF), (INF, 1.0)])
def test_conjugate_examples(p, expected):
    assert ex.conjugate(p) == pytest.approx(expected, rel=1e-15)


def test_conjugate_is_an_involution_on_a_grid():
    for p in [*np.linspace(1.0, 1000.0, 999), INF]:
        q = ex.conjugate(p)
        assert abs(ex.reciprocal(ex.conjugate(q)) - ex.reciprocal(p)) <= 1e-14
        assert ex.reciprocal(p) + ex.reciprocal(q) == pytest.approx(1.0, abs=1e-14)
    assert ex.conjugate(ex.conjugate(1.0)) == 1.0
    assert ex.conjugate(ex.conjugate(INF)) == INF


def test_reciprocal_of_infinity_is_exactly_zero():
    assert ex.reciprocal(INF) == 0.0
    assert ex.from_reciprocal(0.0) == INF


@pytest.mark.parametrize("bad", [0.5, 0.0, -3.0, float("nan")])
def test_exponents_below_one_are_rejected(bad):
    with pytest.raises(ExponentError):
        ex.validate_exponent(bad)


@pytest.mark.parametrize(
    "text, expected",
    [("inf", INF), ("∞", INF), ("4", 4.0), ("2.5", 2.5), ("4/3", 4 / 3), (" 12/5 ", 2.4)],
)
def test_parse_exponent(text, expected):
    assert ex.parse_exponent(text) == expected


@pytest.mark.parametrize("text", ["abc", "1/0", "1/2", ""])
def test_parse_exponent_rejects_garbage(text):
    with pytest.raises(ExponentError):
        ex.parse_exponent(text)


@given(st.floats(min_value=1.0, max_value=1e9) | st.just(INF))
def test_render_then_parse_gives_back_the_exponent(p):
    assert ex.parse_exponent(ex.render_exponent(p)) == p


def test_exponent_list_round_trip():
    values = ex.parse_exponent_list("4,4/3,inf")
    assert values == (4.0, 4 / 3, INF)
    assert ex.parse_exponent_list(ex.render_exponent_list(values)) == values


# ---------------------------------------------------------------------------
# Harmonic sums
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "p, indices, expected",
    [((4, 4, 4), {1, 2, 3}, 0.75), ((2, INF), {1, 2}, 0.5), ((4, 4, 4), set(), 0.0)],
)
def test_harmonic_sum_examples(p, indices, expected):
    assert ex.harmonic_sum(p, indices) == expected


def test_harmonic_sum_index_out_of_range():
    with pytest.raises(ExponentError):
        ex.harmonic_sum((4, 4), {3})


# ---------------------------------------------------------------------------
# Inclusion
# ---------------------------------------------------------------------------


def test_inclusion_worked_example(example_partition):
    s = ex.inclusion_exponents(2, (6 / 5,) * 3, (4 / 3,) * 3, example_partition)
    assert s == pytest.approx((4.0, 2.4), abs=1e-12)
    assert ex.inclusion_hypothesis(2, (6 / 5,) * 3, (4 / 3,) * 3) is ex.InclusionHypothesis.A


@pytest.mark.parametrize("p", [(3.0, 5.0), (1.5, 2.0, INF), (7.0,)])
def test_inclusion_with_equal_p_and_q_returns_r(p):
    part = BlockPartition.multiple_summing(len(p))
    assert ex.inclusion_exponents(2, p, p, part) == pytest.approx((2.0,) * len(p), abs=1e-12)


def test_hypothesis_b_is_always_degenerate_at_the_first_level():
    assert ex.inclusion_hypothesis(1, (1, 1), (2, 2)) is ex.InclusionHypothesis.B
    with pytest.raises(DegenerateExponentError) as info:
        ex.inclusion_exponents(1, (1, 1), (2, 2), BlockPartition.multiple_summing(2))
    assert info.value.level == 1
    assert info.value.clause == "degenerate exponent"


@pytest.mark.parametrize(
    "r, p, q, clause",
    [
        (2, (2, 2), (1.5, 2), "q_j >= p_j"),
        (INF, (1.5, 2), (2, 2), "1/r - |1/p| + |1/q| >= 0"),
        (INF, (2, 2), (2, 2), "q_1 > p_1"),
        (2, (2, 2), (2, 2, 2), "len(p) == len(q)"),
    ],
)
def test_inclusion_names_the_failed_clause(r, p, q, clause):
    with pytest.raises(HypothesisError) as info:
        ex.inclusion_hypothesis(r, p, q)
    assert info.value.clause == clause


def test_absolute_inclusion_matches_the_single_block_partition():
    assert ex.absolute_inclusion_exponent(1, (2, 2), (4, 4)) == pytest.approx(2.0, abs=1e-12)
    part = BlockPartition.absolutely_summing(2)
    assert ex.inclusion_exponents(1, (2, 2), (4, 4), part) == (ex.absolute_inclusion_exponent(1, (2, 2), (4, 4)),)


# ---------------------------------------------------------------------------
# Hardy-Littlewood exponents
# ---------------------------------------------------------------------------


def test_block_exponents_worked_example(example_partition):
    assert ex.hl_block_exponents((4, 4, 4), example_partition) == pytest.approx((4.0, 12 / 5), abs=1e-12)


def test_block_exponents_two_singletons():
    assert ex.hl_block_exponents((4, 4), BlockPartition.parse("1|2")) == pytest.approx((2.0, 2.0), abs=1e-12)


@pytest.mark.parametrize("spec", ["1|2|3|4", "1,2,3,4", "4,1|3|2", "2,3|1,4"])
def test_block_exponents_at_p_equal_2m_are_all_two(spec):
    part = BlockPartition.parse(spec)
    assert ex.hl_block_exponents((8,) * 4, part) == pytest.approx((2.0,) * part.d, abs=1e-12)


@pytest.mark.parametrize(
    "p, clause",
    [((1, 4), "p_j > 1"), ((8, 8), "p_j <= 2m"), ((2, 2), "|1/p| < 1")],
)
def test_block_exponents_name_the_failed_bound(p, clause):
    with pytest.raises(HypothesisError) as info:
        ex.hl_block_exponents(p, BlockPartition.multiple_summing(2))
    assert info.value.clause == clause


def test_block_exponents_partition_size_must_match():
    with pytest.raises(DimensionMismatchError):
        ex.hl_block_exponents((4, 4, 4), BlockPartition.parse("1|2"))


@pytest.mark.parametrize("p, expected", [((4, 4, 4), 4.0), ((4, 4), 2.0), ((8, 8), 4 / 3)])
def test_isotropic_examples(p, expected):
    assert ex.isotropic_hl_exponent(p) == pytest.approx(expected, abs=1e-12)


def test_isotropic_flags_the_first_regime(caplog):
    with caplog.at_level(logging.WARNING, logger="summability"):
        ex.isotropic_hl_exponent((8, 8))
    assert "optimal range" in caplog.text
    assert ex.hl_regime((8, 8)) is ex.HLRegime.PRACIANO_PEREIRA
    assert ex.hl_regime((4, 4, 4)) is ex.HLRegime.DIMANT_SEVILLA_PERIS


def test_isotropic_rejects_harmonic_sum_of_one():
    with pytest.raises(HypothesisError):
        ex.isotropic_hl_exponent((2, 2))


def test_praciano_pereira_exponent():
    assert ex.praciano_pereira_exponent((INF,) * 3) == pytest.approx(1.5)
    # both exponents agree on the regime boundary |1/p| = 1/2
    assert ex.praciano_pereira_exponent((4, 4)) == pytest.approx(ex.isotropic_hl_exponent((4, 4)))
    with pytest.raises(HypothesisError):
        ex.praciano_pereira_exponent((3, 3))


def test_anchor_identity_on_random_exponents():
    rng = np.random.default_rng(3)
    for _ in range(500):
        m = int(rng.integers(2, 7))
        inverse = rng.uniform(1 / (2 * m), 0.99 / m, size=m)
        p = tuple(1 / inverse)
        s = ex.hl_block_exponents(p, random_partition(rng, m))
        assert s[0] == pytest.approx(ex.isotropic_hl_exponent(p), abs=1e-12, rel=1e-12)


def test_block_exponents_match_the_dual_inclusion():
    rng = np.random.default_rng(29)
    for _ in range(300):
        m = int(rng.integers(2, 7))
        inverse = rng.uniform(1 / (2 * m), 0.95 / m, size=m)
        p = tuple(1 / inverse)
        part = random_partition(rng, m)
        dual_p = (ex.conjugate(2 * m),) * m
        dual_q = tuple(ex.conjugate(pj) for pj in p)
        via_inclusion = ex.inclusion_exponents(2, dual_p, dual_q, part)
        assert via_inclusion == pytest.approx(ex.hl_block_exponents(p, part), rel=1e-12)


@given(
    st.integers(min_value=2, max_value=6).flatmap(
        lambda m: st.tuples(
            st.lists(st.floats(min_value=1 / (2 * m), max_value=0.99 / m), min_size=m, max_size=m),
            st.randoms(use_true_random=False),
        )
    )
)
def test_block_exponents_decrease_to_at_least_two(case):
    inverse, random = case
    m = len(inverse)
    order = list(range(1, m + 1))
    random.shuffle(order)
    cut = random.randint(1, m)
    part = BlockPartition.of([order[:cut], order[cut:]] if cut < m else [order])
    s = ex.hl_block_exponents(tuple(1 / v for v in inverse), part)
    assert all(a >= b - 1e-12 * a for a, b in zip(s, s[1:]))
    assert s[-1] >= 2 - 1e-12


# ---------------------------------------------------------------------------
# Corollary exponents
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "p, sizes, expected",
    [(4, (2, 1), (4.0, 2.4)), (4, (1, 1, 1), (4.0, 3.0, 2.4)), (6, (1, 2), (2.0, 2.0)), (10, (5,), (2.0,))],
)
def test_corollary_examples(p, sizes, expected):
    assert ex.corollary_exponents(p, sizes) == pytest.approx(expected, abs=1e-12)


def test_corollary_agrees_with_block_exponents():
    rng = np.random.default_rng(11)
    for _ in range(200):
        m = int(rng.integers(2, 7))
        p = float(rng.uniform(m + 0.01, 2 * m))
        sizes = random_sizes(rng, m)
        closed = ex.corollary_exponents(p, sizes)
        general = ex.hl_block_exponents((p,) * m, BlockPartition.from_sizes(sizes))
        assert closed == pytest.approx(general, rel=1e-12)
        n_d = sizes[-1]
        assert closed[0] == pytest.approx(p / (p - m), rel=1e-12)
        assert closed[-1] == pytest.approx(2 * m * p / (m * p + p * n_d - 2 * m * n_d), rel=1e-12)


@pytest.mark.parametrize("p, clause", [(3, "p > m"), (2.5, "p > m"), (7, "p <= 2m")])
def test_corollary_range(p, clause):
    with pytest.raises(HypothesisError) as info:
        ex.corollary_exponents(p, (2, 1))
    assert info.value.clause == clause


# ---------------------------------------------------------------------------
# Triviality
# ---------------------------------------------------------------------------


def test_triviality_examples(example_partition):
    single = BlockPartition.absolutely_summing(2)
    assert ex.triviality_check((4, 4), (1.5,), single) == ex.TrivialityVerdict(True, 1)
    assert ex.triviality_check((2, 2), (1,), single) == ex.TrivialityVerdict(False)
    assert ex.triviality_check((4, 4, 4), (4, 12 / 5), example_partition) == ex.TrivialityVerdict(True, 2)


def test_triviality_needs_one_q_per_block(example_partition):
    with pytest.raises(DimensionMismatchError):
        ex.triviality_check((4, 4, 4), (4,), example_partition)
