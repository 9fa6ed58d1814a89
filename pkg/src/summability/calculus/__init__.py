"""
Exponent Calculus
=================
Exponent arithmetic and block partitions.

Included:
    - exponents: conjugates, harmonic sums, inclusion and Hardy-Littlewood exponents
    - partitions: ordered block partitions of {1, ..., m}
    - rules: named exponent rules for the CLI and sweeps
"""

from .exponents import (
    INF,
    HLRegime,
    InclusionHypothesis,
    TrivialityVerdict,
    absolute_inclusion_exponent,
    conjugate,
    corollary_exponents,
    harmonic_sum,
    hl_block_exponents,
    hl_regime,
    inclusion_exponents,
    inclusion_hypothesis,
    isotropic_hl_exponent,
    praciano_pereira_exponent,
    reciprocal,
    triviality_check,
)
from .partitions import BlockPartition
from .rules import ExponentRule, ExponentRuleFactory

__all__ = [
    "INF", "HLRegime", "InclusionHypothesis", "TrivialityVerdict",
    "absolute_inclusion_exponent", "conjugate", "corollary_exponents",
    "harmonic_sum", "hl_block_exponents", "hl_regime", "inclusion_exponents",
    "inclusion_hypothesis", "isotropic_hl_exponent", "praciano_pereira_exponent",
    "reciprocal", "triviality_check",
    "BlockPartition",
    "ExponentRule", "ExponentRuleFactory",
]
