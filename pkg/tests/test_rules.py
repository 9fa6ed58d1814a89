import pytest

from summability.calculus.partitions import BlockPartition
from summability.calculus.rules import ExponentRule, ExponentRuleFactory
from summability.errors import ConfigError, DimensionMismatchError, ExponentError


def test_factory_names():
    assert ExponentRuleFactory.names() == [
        "corollary", "custom", "hl-block", "inclusion", "isotropic", "praciano-pereira",
    ]


@pytest.mark.parametrize(
    "name, params, expected",
    [
        ("hl-block", {}, (4.0, 2.4)),
        ("isotropic", {}, (4.0, 4.0)),
        ("corollary", {}, (4.0, 2.4)),
        ("inclusion", {"r": 2, "q": (4, 4, 4)}, (2.0, 2.0)),
        ("custom", {"s": (3, 5)}, (3.0, 5.0)),
    ],
)
def test_rules_on_the_worked_example(name, params, expected, example_partition):
    rule = ExponentRuleFactory.create(name, **params)
    assert rule.exponents((4, 4, 4), example_partition) == pytest.approx(expected, abs=1e-12)
    assert isinstance(rule.hypotheses((4, 4, 4), example_partition), dict)


def test_praciano_pereira_rule():
    rule = ExponentRuleFactory.create("Praciano-Pereira")
    inf = float("inf")
    assert rule.exponents((inf, inf, inf), BlockPartition.parse("1|2,3")) == pytest.approx((1.5, 1.5))
    assert rule.exponents((8, 8, 8), BlockPartition.parse("1,2,3")) == pytest.approx((6 / 3.25,))


def test_rule_errors(example_partition):
    with pytest.raises(ConfigError):
        ExponentRuleFactory.create("bohnenblust")
    with pytest.raises(ConfigError):
        ExponentRuleFactory.create("custom")
    with pytest.raises(DimensionMismatchError):
        ExponentRuleFactory.create("custom", s=(2,)).exponents((4, 4, 4), example_partition)
    with pytest.raises(ExponentError):
        ExponentRuleFactory.create("corollary").exponents((4, 5, 4), example_partition)


def test_register_a_rule(example_partition):
    class Doubled(ExponentRule):
        name = "doubled"

        def exponents(self, p, part):
            return tuple(2.0 * v for v in p[: part.d])

    ExponentRuleFactory.register("doubled", Doubled)
    try:
        assert ExponentRuleFactory.create("doubled").exponents((4, 4, 4), example_partition) == (8.0, 8.0)
    finally:
        ExponentRuleFactory._rules.pop("doubled")
