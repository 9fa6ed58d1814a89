"""
Numeric configuration
=====================
One frozen record holds every tolerance, budget and default used by the
estimators. Variants are derived with ``dataclasses.replace`` or built from
a mapping (the ``"numeric"`` block of a sweep config, CLI flags).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Mapping, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

from summability.errors import ConfigError


@dataclass(frozen=True)
class NumericConfig:
    """Tolerances and budgets shared by all modules."""

    slack: float = 1e-12
    ascent_restarts: int = 20
    ascent_tol: float = 1e-12
    ascent_max_iter: int = 500
    weak_restarts: int = 8
    weak_tol: float = 1e-12
    weak_max_iter: int = 500
    sign_budget_bits: int = 24
    workers: int = 1

    def __post_init__(self) -> None:
        if self.slack < 0:
            raise ConfigError(f"slack must be non-negative, got {self.slack}")
        for name in ("ascent_restarts", "weak_restarts", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1, got {getattr(self, name)}")
        for name in ("ascent_tol", "weak_tol"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("ascent_max_iter", "weak_max_iter", "sign_budget_bits"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1, got {getattr(self, name)}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> Self:
        """Build a config from ``values``, defaulting missing keys."""
        known = {f.name: f.type for f in fields(cls)}
        unknown = sorted(set(values) - set(known))
        if unknown:
            raise ConfigError(f"unknown numeric settings: {', '.join(unknown)}")
        coerced: dict[str, Any] = {}
        for key, value in values.items():
            target = int if known[key] == "int" else float
            try:
                coerced[key] = target(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"numeric setting {key!r} has invalid value {value!r}") from exc
        return cls(**coerced)

    def with_overrides(self, **overrides: Any) -> Self:
        """Return a copy with the non-None ``overrides`` applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


DEFAULT_CONFIG = NumericConfig()
