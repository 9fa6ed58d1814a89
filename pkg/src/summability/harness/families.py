"""
Witness Families
================
Generators of coefficient tensors used as test instances for the
Hardy-Littlewood inequalities.

Every instance is a pure function of its parameters: random families draw
from a Philox generator keyed by (master_seed, family, n, instance index),
so any single row of a sweep can be rebuilt on its own.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np

from summability.calculus.partitions import BlockPartition
from summability.errors import ConfigError, DimensionMismatchError
from summability.norms.mixed import block_index
from summability.norms.tensors import CoefficientTensor


class FamilyKind(Enum):
    DIAGONAL = "diagonal"
    RANDOM_SIGN = "random-sign"
    RANDOM_GAUSSIAN = "random-gaussian"
    BLOCK_REPEATED = "block-repeated"

    @classmethod
    def parse(cls, name: str) -> FamilyKind:
        try:
            return cls(name.lower())
        except ValueError as exc:
            raise ConfigError(f"Unknown witness family: {name}") from exc


# Stable integer codes for seeding; never renumber.
_FAMILY_CODES: dict[FamilyKind, int] = {
    FamilyKind.DIAGONAL: 0,
    FamilyKind.RANDOM_SIGN: 1,
    FamilyKind.RANDOM_GAUSSIAN: 2,
    FamilyKind.BLOCK_REPEATED: 3,
}


@dataclass(frozen=True)
class WitnessFamily:
    """Parameters of one generated instance."""

    kind: FamilyKind
    n: int
    m: int
    seed: int = 0
    master_seed: int = 0
    scale: float = 1.0
    partition: BlockPartition | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ConfigError(f"n and m must be positive, got n={self.n}, m={self.m}")
        if self.partition is not None and self.partition.m != self.m:
            raise DimensionMismatchError(f"partition covers m={self.partition.m}, family has m={self.m}")

    def generator(self) -> np.random.Generator:
        key = np.random.SeedSequence([self.master_seed, _FAMILY_CODES[self.kind], self.n, self.seed])
        return np.random.Generator(np.random.Philox(key))

    def norm_seed(self) -> int:
        """Seed for the norm ascent, on a stream separate from the entries."""
        key = np.random.SeedSequence([self.master_seed, _FAMILY_CODES[self.kind], self.n, self.seed, 1])
        return int(key.generate_state(1)[0])

    def generate(self) -> CoefficientTensor:
        entries = TensorFamilyFactory.create(self.kind).entries(self, self.generator())
        return CoefficientTensor(self.scale * entries)


# ---------------------------------------------------------------------------
# Family strategies
# ---------------------------------------------------------------------------


class TensorFamily(ABC):
    """How one kind of witness fills its coefficient array."""

    @abstractmethod
    def entries(self, spec: WitnessFamily, rng: np.random.Generator) -> np.ndarray:
        ...


class DiagonalFamily(TensorFamily):
    """1 on the full diagonal j_1 = ... = j_m, 0 elsewhere."""

    def entries(self, spec: WitnessFamily, rng: np.random.Generator) -> np.ndarray:
        return CoefficientTensor.delta(spec.m, spec.n).entries.copy()


class RandomSignFamily(TensorFamily):
    """Independent +-1 entries."""

    def entries(self, spec: WitnessFamily, rng: np.random.Generator) -> np.ndarray:
        return 2.0 * rng.integers(0, 2, size=(spec.n,) * spec.m) - 1.0


class RandomGaussianFamily(TensorFamily):
    """Independent standard normal entries."""

    def entries(self, spec: WitnessFamily, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal(size=(spec.n,) * spec.m)


class BlockRepeatedFamily(TensorFamily):
    """Random signs on the block set of the partition, 0 off it."""

    def entries(self, spec: WitnessFamily, rng: np.random.Generator) -> np.ndarray:
        part = spec.partition or BlockPartition.absolutely_summing(spec.m)
        signs = 2.0 * rng.integers(0, 2, size=(spec.n,) * part.d) - 1.0
        full = np.zeros((spec.n,) * spec.m)
        full[block_index(part, (spec.n,) * part.d)] = signs
        return full


class TensorFamilyFactory:
    _families: dict[FamilyKind, type[TensorFamily]] = {
        FamilyKind.DIAGONAL: DiagonalFamily,
        FamilyKind.RANDOM_SIGN: RandomSignFamily,
        FamilyKind.RANDOM_GAUSSIAN: RandomGaussianFamily,
        FamilyKind.BLOCK_REPEATED: BlockRepeatedFamily,
    }

    @classmethod
    def create(cls, kind: FamilyKind) -> TensorFamily:
        family_class = cls._families.get(kind)
        if family_class is None:
            raise ConfigError(f"Unsupported witness family: {kind}")
        return family_class()
