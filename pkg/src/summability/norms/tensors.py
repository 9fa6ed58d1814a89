"""
Tensors
=======
Dense coefficient arrays and the shared tensor JSON format::

    {"order": m, "dims": [n1, ..., nm], "entries": [row-major reals]}

Python's float repr is the shortest round-trip representation, so a dump
followed by a load reproduces every entry bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

import numpy as np

from summability.calculus.exponents import validate_exponent
from summability.calculus.partitions import BlockPartition
from summability.errors import DimensionMismatchError, ValidationError
from summability.files import atomic_write_text


def _frozen_array(values: Any, *, name: str, ndim: int | None = None) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.ndim == 0:
        raise DimensionMismatchError(f"{name} must have at least one axis")
    if ndim is not None and array.ndim != ndim:
        raise DimensionMismatchError(f"{name} must have {ndim} axes, got shape {array.shape}")
    if 0 in array.shape:
        raise DimensionMismatchError(f"{name} has an empty axis: shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} contains non-finite entries")
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class CoefficientTensor:
    """Coefficients a_{j1...jm} of an m-linear form on canonical bases."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen_array(self.entries, name="tensor"))

    @property
    def order(self) -> int:
        return self.entries.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.entries.shape)

    @classmethod
    def delta(cls, m: int, n: int) -> Self:
        """The diagonal form x_1(i) ... x_m(i) summed over i."""
        entries = np.zeros((n,) * m)
        index = np.arange(n)
        entries[(index,) * m] = 1.0
        return cls(entries)

    def scaled(self, factor: float) -> Self:
        return type(self)(self.entries * factor)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "dims": list(self.dims),
            "entries": self.entries.ravel(order="C").tolist(),
        }

    @classmethod
    def from_json(cls, document: Mapping[str, Any]) -> Self:
        try:
            order = int(document["order"])
            dims = [int(n) for n in document["dims"]]
            entries = [float(v) for v in document["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed tensor document: {exc}") from exc
        if order != len(dims):
            raise DimensionMismatchError(f"order {order} does not match dims {dims}")
        if any(n < 1 for n in dims):
            raise DimensionMismatchError(f"dims must be positive, got {dims}")
        if len(entries) != math.prod(dims):
            raise DimensionMismatchError(f"{len(entries)} entries do not fill dims {dims}")
        return cls(np.array(entries, dtype=np.float64).reshape(dims))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def dump(self, path: str | Path) -> Path:
        return atomic_write_text(path, self.dumps() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> Self:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def __repr__(self) -> str:
        return f"CoefficientTensor(order={self.order}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class BlockTensor:
    """A d-way restriction of a coefficient tensor to a block set."""

    entries: np.ndarray
    partition: BlockPartition

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", _frozen_array(self.entries, name="block tensor", ndim=self.partition.d)
        )

    @property
    def order(self) -> int:
        return self.entries.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.entries.shape)


@dataclass(frozen=True, eq=False)
class VectorSequence:
    """L vectors of the ambient space l_p^n, stored as an L x n array."""

    vectors: np.ndarray
    ambient_exponent: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "vectors", _frozen_array(self.vectors, name="vector sequence", ndim=2))
        object.__setattr__(self, "ambient_exponent", validate_exponent(self.ambient_exponent))

    @property
    def length(self) -> int:
        return self.vectors.shape[0]

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def canonical_basis(cls, n: int, p: float) -> Self:
        return cls(np.eye(n), p)

    @classmethod
    def repeated(cls, vector: Sequence[float], length: int, p: float) -> Self:
        """``length`` copies of ``vector``."""
        return cls(np.tile(np.asarray(vector, dtype=np.float64), (length, 1)), p)

    @classmethod
    def padded(cls, vector: Sequence[float], length: int, p: float) -> Self:
        """``vector`` followed by ``length - 1`` zero vectors."""
        rows = np.zeros((length, len(vector)))
        rows[0] = vector
        return cls(rows, p)
