"""
Sweeps
======
Deterministic grids of Hardy-Littlewood ratio measurements.

A sweep runs every (family, n, instance) combination of its config, one
independent task per row, and reports rows sorted by (family, n, seed).
The CSV carries the measurements; a JSON sidecar carries the full config,
library versions and content hashes. Identical configs give byte-identical
CSV files however many workers are used.

Config document::

    {"families": ["diagonal"], "n": [2, 4, 8], "seeds": 1, "master_seed": 0,
     "p": [4, 4, 4], "partition": "1,2|3", "rule": "hl-block",
     "s": null, "scale": 1.0, "method": "auto", "numeric": {}}
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

import numpy as np

import summability
from summability.calculus import exponents as ex
from summability.calculus.partitions import BlockPartition
from summability.calculus.rules import ExponentRuleFactory
from summability.config import DEFAULT_CONFIG, NumericConfig
from summability.errors import ConfigError, ValidationError
from summability.files import atomic_write_text
from summability.harness.experiments import hl_ratio
from summability.harness.families import FamilyKind, WitnessFamily
from summability.norms.forms import FormInstance, has_closed_form

logger = logging.getLogger(__name__)

SWEEP_RULES = ("hl-block", "isotropic", "praciano-pereira", "custom")
CSV_HEADER = ("family", "n", "seed", "rule", "s", "lhs", "norm", "ratio", "converged")
_CONFIG_KEYS = {"families", "n", "seeds", "master_seed", "p", "partition", "rule", "s", "scale", "method", "numeric"}


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[FamilyKind, ...]
    sizes: tuple[int, ...]
    seeds: tuple[int, ...]
    p: ex.ExponentVector
    partition: BlockPartition
    rule: str
    exponents: ex.ExponentVector
    master_seed: int = 0
    custom_s: ex.ExponentVector | None = None
    scale: float = 1.0
    method: str = "auto"
    numeric: NumericConfig = field(default=DEFAULT_CONFIG)

    def to_json(self) -> dict[str, Any]:
        return {
            "families": [kind.value for kind in self.families],
            "n": list(self.sizes),
            "seeds": list(self.seeds),
            "master_seed": self.master_seed,
            "p": [ex.render_exponent(v) for v in self.p],
            "partition": self.partition.render(),
            "rule": self.rule,
            "s": None if self.custom_s is None else [ex.render_exponent(v) for v in self.custom_s],
            "scale": self.scale,
            "method": self.method,
            "numeric": self.numeric.as_dict(),
        }

    @classmethod
    def from_mapping(cls, document: Mapping[str, Any]) -> Self:
        unknown = sorted(set(document) - _CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown sweep config keys: {', '.join(unknown)}")
        for key in ("families", "p", "partition", "rule"):
            if key not in document:
                raise ConfigError(f"sweep config is missing {key!r}")
        families = document["families"]
        seeds = document.get("seeds", 1)
        partition = document["partition"]
        builder = (
            SweepConfigBuilder()
            .set_families([families] if isinstance(families, str) else families)
            .set_sizes(document.get("n", []))
            .set_seeds(range(seeds) if isinstance(seeds, int) else seeds)
            .set_master_seed(document.get("master_seed", 0))
            .set_exponents(_exponent_values(document["p"]))
            .set_partition(BlockPartition.parse(partition) if isinstance(partition, str) else BlockPartition.of(partition))
            .set_rule(document["rule"], None if document.get("s") is None else _exponent_values(document["s"]))
            .set_scale(document.get("scale", 1.0))
            .set_method(document.get("method", "auto"))
            .set_numeric(NumericConfig.from_mapping(document.get("numeric", {})))
        )
        return builder.build()

    def content_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()


def _exponent_values(values: Iterable[Any]) -> list[float]:
    if isinstance(values, str):
        return list(ex.parse_exponent_list(values))
    return [ex.parse_exponent(str(v)) for v in values]


class SweepConfigBuilder:
    """
    Builds a ``SweepConfig`` step by step; ``build`` validates everything
    (including the exponent rule) before any tensor is generated.

    Usage:
        config = (
            SweepConfigBuilder()
            .set_families(["diagonal"])
            .set_sizes([2, 4, 8])
            .set_exponents([4, 4, 4])
            .set_partition(BlockPartition.parse("1,2|3"))
            .set_rule("hl-block")
            .build()
        )
    """

    def __init__(self) -> None:
        self._families: list[FamilyKind] = []
        self._sizes: list[int] = []
        self._seeds: list[int] = [0]
        self._master_seed = 0
        self._p: tuple[float, ...] = ()
        self._partition: BlockPartition | None = None
        self._rule = "hl-block"
        self._custom_s: tuple[float, ...] | None = None
        self._scale = 1.0
        self._method = "auto"
        self._numeric = DEFAULT_CONFIG

    def set_families(self, names: Iterable[str | FamilyKind]) -> Self:
        self._families = [n if isinstance(n, FamilyKind) else FamilyKind.parse(n) for n in names]
        return self

    def set_sizes(self, sizes: Iterable[int]) -> Self:
        self._sizes = [_positive_int(n, "n") for n in sizes]
        return self

    def set_seeds(self, seeds: Iterable[int]) -> Self:
        self._seeds = [_non_negative_int(s, "seed") for s in seeds]
        return self

    def set_master_seed(self, seed: int) -> Self:
        self._master_seed = _non_negative_int(seed, "master_seed")
        return self

    def set_exponents(self, p: Sequence[float]) -> Self:
        self._p = ex.validate_exponents(p)
        return self

    def set_partition(self, partition: BlockPartition) -> Self:
        self._partition = partition
        return self

    def set_rule(self, rule: str, s: Sequence[float] | None = None) -> Self:
        self._rule = rule.lower()
        self._custom_s = None if s is None else ex.validate_exponents(s)
        return self

    def set_scale(self, scale: float) -> Self:
        self._scale = float(scale)
        return self

    def set_method(self, method: str) -> Self:
        self._method = method.lower()
        return self

    def set_numeric(self, numeric: NumericConfig) -> Self:
        self._numeric = numeric
        return self

    def _check_method(self) -> None:
        assert self._partition is not None
        if self._method == "exact-sign":
            if any(p != ex.INF for p in self._p):
                raise ConfigError("method exact-sign needs every p = inf")
            bits = (self._partition.m - 1) * max(self._sizes, default=0)
            if bits > self._numeric.sign_budget_bits:
                raise ConfigError(
                    f"method exact-sign needs {bits} sign bits at n = {max(self._sizes)}, "
                    f"over the budget of {self._numeric.sign_budget_bits}"
                )
        if self._method == "exact-closed" and not has_closed_form(self._p):
            raise ConfigError(f"method exact-closed has no closed form for p = {list(self._p)}")

    def build(self) -> SweepConfig:
        if not self._families:
            raise ConfigError("a sweep needs at least one family")
        if not self._seeds:
            raise ConfigError("a sweep needs at least one seed")
        if self._partition is None:
            raise ConfigError("a sweep needs a partition")
        if len(self._p) != self._partition.m:
            raise ConfigError(f"p has {len(self._p)} entries but the partition covers m={self._partition.m}")
        if self._rule not in SWEEP_RULES:
            raise ConfigError(f"sweep rule must be one of {', '.join(SWEEP_RULES)}, got {self._rule!r}")
        if (self._rule == "custom") != (self._custom_s is not None):
            raise ConfigError("exponents 's' are required for rule 'custom' and only for it")
        if self._method not in {"auto", "ascent", "exact-sign", "exact-closed"}:
            raise ConfigError(f"Unknown norm method: {self._method}")
        if self._scale == 0:
            raise ConfigError("scale must be non-zero")
        self._check_method()
        params: dict[str, Any] = {"slack": self._numeric.slack}
        if self._custom_s is not None:
            params["s"] = self._custom_s
        exponents = ExponentRuleFactory.create(self._rule, **params).exponents(self._p, self._partition)
        return SweepConfig(
            families=tuple(self._families),
            sizes=tuple(self._sizes),
            seeds=tuple(self._seeds),
            p=self._p,
            partition=self._partition,
            rule=self._rule,
            exponents=exponents,
            master_seed=self._master_seed,
            custom_s=self._custom_s,
            scale=self._scale,
            method=self._method,
            numeric=self._numeric,
        )


def _positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    return value


def _non_negative_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"{name} must be a non-negative integer, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    seed: int
    rule: str
    s: ex.ExponentVector
    lhs: float
    norm: float
    ratio: float
    converged: bool

    def cells(self) -> list[str]:
        return [
            self.family,
            str(self.n),
            str(self.seed),
            self.rule,
            ";".join(ex.render_exponent(v) for v in self.s),
            repr(self.lhs),
            repr(self.norm),
            repr(self.ratio),
            "true" if self.converged else "false",
        ]


@dataclass(frozen=True)
class SweepReport:
    config: SweepConfig
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow(row.cells())
        return buffer.getvalue()

    def sidecar(self) -> dict[str, Any]:
        return {
            "config": self.config.to_json(),
            "config_sha256": self.config.content_hash(),
            "csv_sha256": hashlib.sha256(self.to_csv().encode()).hexdigest(),
            "rows": len(self.rows),
            "versions": {
                "summability": summability.__version__,
                "numpy": np.__version__,
                "python": platform.python_version(),
            },
        }


def write_report(report: SweepReport, path: str | Path) -> tuple[Path, Path]:
    """Write the CSV at ``path`` and its sidecar next to it as ``<stem>.json``.

    A CSV is never left behind without its sidecar.
    """
    target = Path(path)
    sidecar = target.with_suffix(".json")
    if sidecar == target:
        raise ValidationError(f"report path {target} would collide with its JSON sidecar")
    csv_path = atomic_write_text(target, report.to_csv())
    try:
        json_path = atomic_write_text(sidecar, json.dumps(report.sidecar(), indent=2, sort_keys=True) + "\n")
    except BaseException:
        csv_path.unlink(missing_ok=True)
        raise
    return csv_path, json_path


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def measure_row(config: SweepConfig, kind: FamilyKind, n: int, seed: int) -> SweepRow:
    """One row, rebuilt from its key alone."""
    spec = WitnessFamily(
        kind=kind,
        n=n,
        m=config.partition.m,
        seed=seed,
        master_seed=config.master_seed,
        scale=config.scale,
        partition=config.partition,
    )
    form = FormInstance(spec.generate(), config.p)
    numeric = replace(config.numeric, workers=1)
    result = hl_ratio(form, config.partition, config.exponents, numeric, spec.norm_seed(), config.method)
    return SweepRow(
        family=kind.value,
        n=n,
        seed=seed,
        rule=config.rule,
        s=config.exponents,
        lhs=result.lhs,
        norm=result.norm.value,
        ratio=result.ratio,
        converged=result.converged,
    )


def sweep(config: SweepConfig) -> SweepReport:
    tasks = [(kind, n, seed) for kind in config.families for n in config.sizes for seed in config.seeds]
    logger.info("sweep: %d rows, rule %s, s = %s", len(tasks), config.rule, config.exponents)

    def run(task: tuple[FamilyKind, int, int]) -> SweepRow:
        return measure_row(config, *task)

    if config.numeric.workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=config.numeric.workers) as pool:
            rows = list(pool.map(run, tasks))
    else:
        rows = [run(task) for task in tasks]
    rows.sort(key=lambda row: (row.family, row.n, row.seed))
    return SweepReport(config, tuple(rows))
