"""
Experiment Harness
==================
Witness tensors and the measurements run on them.

Included:
    - families: diagonal, random-sign, random-gaussian and block-repeated witnesses
    - experiments: Hardy-Littlewood ratios, anisotropy gains, summing quotients, triviality probes
    - sweep: deterministic grids of ratio measurements with CSV and JSON reports
"""

from .experiments import (
    AnisotropyGain,
    HLRatio,
    SummingQuotient,
    TrivialityReport,
    anisotropy_gain,
    block_outputs,
    fit_loglog_slope,
    hl_lhs,
    hl_ratio,
    summing_quotient,
    triviality_probe,
)
from .families import FamilyKind, TensorFamilyFactory, WitnessFamily
from .sweep import SweepConfig, SweepConfigBuilder, SweepReport, SweepRow, sweep, write_report

__all__ = [
    "AnisotropyGain", "HLRatio", "SummingQuotient", "TrivialityReport",
    "anisotropy_gain", "block_outputs", "fit_loglog_slope", "hl_lhs", "hl_ratio",
    "summing_quotient", "triviality_probe",
    "FamilyKind", "TensorFamilyFactory", "WitnessFamily",
    "SweepConfig", "SweepConfigBuilder", "SweepReport", "SweepRow", "sweep", "write_report",
]
