"""
Exponent Rules
==============
Interchangeable ways of choosing the output exponents s_1, ..., s_d for a
domain vector p and a block partition. The command line and the sweep
driver pick a rule by name; every rule answers the same question.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Sequence

from summability.calculus import exponents as ex
from summability.calculus.partitions import BlockPartition
from summability.config import DEFAULT_CONFIG
from summability.errors import ConfigError, DimensionMismatchError, ExponentError


class ExponentRule(ABC):
    """Strategy interface: map (p, partition) to d output exponents."""

    name: str = ""

    def __init__(self, slack: float = DEFAULT_CONFIG.slack) -> None:
        self._slack = slack

    @abstractmethod
    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        ...

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        """Validated hypotheses, reported next to the exponents."""
        return {}


class HLBlockRule(ExponentRule):
    """Anisotropic block exponents, p in (1, 2m]^m."""

    name = "hl-block"

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        return ex.hl_block_exponents(p, part, self._slack)

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        return {"p_j in (1, 2m]": True, "|1/p| < 1": True, "|1/p|": ex.total_harmonic_sum(p)}


class IsotropicRule(ExponentRule):
    """The constant vector (rho, ..., rho) with rho = (1 - |1/p|)^-1."""

    name = "isotropic"

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        rho = ex.isotropic_hl_exponent(p, self._slack)
        return (rho,) * part.d

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        return {"|1/p| < 1": True, "regime": ex.hl_regime(p, self._slack).value}


class PracianoPereiraRule(ExponentRule):
    """The constant vector 2m / (m + 1 - 2|1/p|), for |1/p| <= 1/2."""

    name = "praciano-pereira"

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        return (ex.praciano_pereira_exponent(p, self._slack),) * part.d

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        return {"|1/p| <= 1/2": True, "|1/p|": ex.total_harmonic_sum(p)}


class CorollaryRule(ExponentRule):
    """Equal domain exponents p with m < p <= 2m; block sizes from the partition."""

    name = "corollary"

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        values = set(ex.validate_exponents(p))
        if len(values) != 1:
            raise ExponentError(f"rule 'corollary' needs equal domain exponents, got {list(p)}")
        return ex.corollary_exponents(values.pop(), part.sizes, self._slack)

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        return {"m < p <= 2m": True, "block_sizes": list(part.sizes)}


class InclusionRule(ExponentRule):
    """Block inclusion from (r; p) into (s; q)."""

    name = "inclusion"

    def __init__(self, r: float, q: Sequence[float], slack: float = DEFAULT_CONFIG.slack) -> None:
        super().__init__(slack)
        self._r = ex.validate_exponent(r)
        self._q = ex.validate_exponents(q)

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        return ex.inclusion_exponents(self._r, p, self._q, part, self._slack)

    def hypotheses(self, p: Sequence[float], part: BlockPartition) -> dict[str, Any]:
        branch = ex.inclusion_hypothesis(self._r, p, self._q, self._slack)
        return {"branch": branch.value, "r": self._r, "q": list(self._q)}


class CustomRule(ExponentRule):
    """User-supplied exponents, checked only for length and range."""

    name = "custom"

    def __init__(self, s: Sequence[float], slack: float = DEFAULT_CONFIG.slack) -> None:
        super().__init__(slack)
        self._s = ex.validate_exponents(s)

    def exponents(self, p: Sequence[float], part: BlockPartition) -> ex.ExponentVector:
        if len(self._s) != part.d:
            raise DimensionMismatchError(f"custom s has {len(self._s)} entries, partition has {part.d} blocks")
        return self._s


class ExponentRuleFactory:
    """Create exponent rules by name; new rules can be registered."""

    _rules: dict[str, type[ExponentRule]] = {
        HLBlockRule.name: HLBlockRule,
        IsotropicRule.name: IsotropicRule,
        PracianoPereiraRule.name: PracianoPereiraRule,
        CorollaryRule.name: CorollaryRule,
        InclusionRule.name: InclusionRule,
        CustomRule.name: CustomRule,
    }

    @classmethod
    def create(cls, name: str, **params: Any) -> ExponentRule:
        rule_class = cls._rules.get(name.lower())
        if rule_class is None:
            raise ConfigError(f"Unknown exponent rule: {name}")
        try:
            return rule_class(**params)
        except TypeError as exc:
            raise ConfigError(f"rule {name!r} rejects parameters {sorted(params)}: {exc}") from exc

    @classmethod
    def register(cls, name: str, rule: type[ExponentRule]) -> None:
        cls._rules[name] = rule

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._rules)
