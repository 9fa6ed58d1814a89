"""
Command Line
============
``summability <subcommand> [options]``: one reproducible run per process.

Subcommands:
    - exponents: output exponents of a rule, with the validated hypotheses
    - mixed-norm: nested l_s norm of a tensor file
    - form-norm: norm estimate of a multilinear form
    - verify-hl: Hardy-Littlewood ratio of one form
    - sweep: a grid of ratios written to CSV plus a JSON sidecar
    - probe-trivial: growth of summing quotients for a trivial class

Machine output is JSON on stdout (or ``--out``); log messages go to stderr.
Exit codes: 0 success, 1 I/O, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Callable, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

from summability import __version__
from summability.calculus import exponents as ex
from summability.calculus.partitions import BlockPartition
from summability.calculus.rules import ExponentRuleFactory
from summability.config import DEFAULT_CONFIG, NumericConfig
from summability.errors import ConvergenceError, NumericalError, ValidationError
from summability.files import atomic_write_text
from summability.harness.experiments import anisotropy_gain, hl_ratio, triviality_probe
from summability.harness.sweep import SweepConfig, sweep, write_report
from summability.log import configure_logging
from summability.norms.forms import FormInstance, NormEstimate, estimate_norm
from summability.norms.mixed import block_restrict, mixed_norm
from summability.norms.tensors import CoefficientTensor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

DEFAULT_LENGTHS = (8, 16, 32, 64)


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """The options of one invocation, in canonical form, defaults included.

    ``RunConfig.parse(config.render())`` gives back ``config``. Every JSON
    document the command line writes carries ``render()`` under ``"run"``.
    """

    command: str
    verbose: int = 0
    strict: bool = False
    input: str | None = None
    config: str | None = None
    out: str | None = None
    m: int | None = None
    p: str | None = None
    q: str | None = None
    r: str | None = None
    s: str | None = None
    partition: str | None = None
    sizes: str | None = None
    rule: str | None = None
    compare_isotropic: bool | None = None
    method: str | None = None
    lengths: str | None = None
    seed: int | None = None
    restarts: int | None = None
    tol: float | None = None
    max_iter: int | None = None
    workers: int | None = None

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> Self:
        values = {f.name: getattr(args, f.name, None) for f in fields(cls) if f.name != "command"}
        values["verbose"] = values["verbose"] or 0
        values["strict"] = bool(values["strict"])
        canonical = {
            "p": ex.render_exponent_list,
            "q": ex.render_exponent_list,
            "s": ex.render_exponent_list,
            "r": ex.render_exponent,
            "partition": BlockPartition.render,
            "sizes": lambda v: ",".join(str(n) for n in v),
            "lengths": lambda v: ",".join(str(n) for n in v),
            "input": str,
            "config": str,
            "out": str,
        }
        for name, render in canonical.items():
            if values[name] is not None:
                values[name] = render(values[name])
        return cls(command=args.command, **values)

    @classmethod
    def parse(cls, argv: Sequence[str]) -> Self:
        return cls.from_namespace(build_parser().parse_args(list(argv)))

    def render(self) -> list[str]:
        argv = ["--verbose"] * self.verbose + (["--strict"] if self.strict else []) + [self.command]
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in {"command", "verbose", "strict"} or value is None or value is False:
                continue
            argv.append(f"--{f.name.replace('_', '-')}")
            if value is not True:
                argv.append(str(value))
        return argv


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _jsonable(value: Any) -> Any:
    """Infinite exponents become "inf"; arrays become lists."""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    return value


def _emit(document: dict[str, Any], args: argparse.Namespace) -> None:
    document = {**document, "run": RunConfig.from_namespace(args).render()}
    text = json.dumps(_jsonable(document), allow_nan=False)
    out = args.out
    if out is None:
        print(text)
    else:
        atomic_write_text(out, text + "\n")
        logger.info("wrote %s", out)


def _numeric(args: argparse.Namespace) -> NumericConfig:
    return DEFAULT_CONFIG.with_overrides(
        ascent_restarts=getattr(args, "restarts", None),
        ascent_tol=getattr(args, "tol", None),
        ascent_max_iter=getattr(args, "max_iter", None),
        workers=getattr(args, "workers", None),
    )


def _require_converged(args: argparse.Namespace, converged: bool, what: str) -> None:
    if converged:
        return
    if args.strict:
        raise ConvergenceError(f"{what} stopped on its iteration budget")
    logger.warning("%s stopped on its iteration budget", what)


def _load_form(args: argparse.Namespace) -> FormInstance:
    document = json.loads(Path(args.input).read_text(encoding="utf-8"))
    return FormInstance.from_json(document, args.p)


def _estimate_summary(estimate: NormEstimate) -> dict[str, Any]:
    return {
        "value": estimate.value,
        "method": estimate.method.value,
        "exact": estimate.exact,
        "converged": estimate.converged,
        "restarts_used": estimate.restarts_used,
        "stagnated": estimate.stagnated,
        "maximizer": [x.tolist() for x in estimate.maximizer],
    }


def _rule_exponents(args: argparse.Namespace, p: Sequence[float], part: BlockPartition) -> tuple[ex.ExponentVector, dict[str, Any]]:
    params: dict[str, Any] = {"slack": DEFAULT_CONFIG.slack}
    if args.rule == "inclusion":
        if args.r is None or args.q is None:
            raise ValidationError("rule 'inclusion' needs --r and --q")
        params.update(r=args.r, q=args.q)
    if args.rule == "custom":
        if args.s is None:
            raise ValidationError("rule 'custom' needs --s")
        params.update(s=args.s)
    rule = ExponentRuleFactory.create(args.rule, **params)
    s = rule.exponents(p, part)
    return s, rule.hypotheses(p, part)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_exponents(args: argparse.Namespace) -> int:
    p = args.p
    if args.m is not None and args.m != len(p):
        raise ValidationError(f"--m {args.m} disagrees with {len(p)} entries in --p")
    if args.partition is None:
        if args.sizes is None:
            raise ValidationError("exponents needs --partition or --sizes")
        part = BlockPartition.from_sizes(args.sizes)
    else:
        part = args.partition
        if args.sizes is not None and tuple(args.sizes) != part.sizes:
            raise ValidationError(f"--sizes {list(args.sizes)} disagree with partition {part}")
    s, hypotheses = _rule_exponents(args, p, part)
    _emit({"s": list(s), "rule": args.rule, "partition": part.render(), "hypotheses": hypotheses}, args)
    return EXIT_OK


def cmd_mixed_norm(args: argparse.Namespace) -> int:
    tensor = CoefficientTensor.load(args.input)
    document: dict[str, Any] = {"s": list(args.s)}
    if args.partition is not None:
        restricted = block_restrict(tensor, args.partition)
        document["partition"] = args.partition.render()
        document["value"] = mixed_norm(restricted, args.s)
    else:
        document["value"] = mixed_norm(tensor, args.s)
    logger.info("mixed norm %.6g", document["value"])
    _emit(document, args)
    return EXIT_OK


def cmd_form_norm(args: argparse.Namespace) -> int:
    form = _load_form(args)
    numeric = _numeric(args)
    estimate = estimate_norm(form, numeric, args.seed, args.method)
    logger.info("norm %.6g (%s)", estimate.value, estimate.method.value)
    _require_converged(args, estimate.converged, "norm ascent")
    document = _estimate_summary(estimate)
    document.update(p=list(form.domain_exponents), seed=args.seed, numeric=numeric.as_dict())
    _emit(document, args)
    return EXIT_OK


def cmd_verify_hl(args: argparse.Namespace) -> int:
    form = _load_form(args)
    numeric = _numeric(args)
    s, hypotheses = _rule_exponents(args, form.domain_exponents, args.partition)
    result = hl_ratio(form, args.partition, s, numeric, args.seed, args.method)
    logger.info("ratio %.6g = %.6g / %.6g", result.ratio, result.lhs, result.norm.value)
    _require_converged(args, result.converged, "norm ascent")
    document: dict[str, Any] = {
        "s": list(s),
        "rule": args.rule,
        "partition": args.partition.render(),
        "hypotheses": hypotheses,
        "lhs": result.lhs,
        "norm": _estimate_summary(result.norm),
        "ratio": result.ratio,
        "seed": args.seed,
        "numeric": numeric.as_dict(),
    }
    if args.compare_isotropic:
        gain = anisotropy_gain(form, args.partition, config=numeric)
        document["isotropic"] = {"s": list(gain.s_iso), "lhs": gain.lhs_iso, "gain": gain.gain}
    _emit(document, args)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    document = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.workers is not None:
        document = {**document, "numeric": {**document.get("numeric", {}), "workers": args.workers}}
    config = SweepConfig.from_mapping(document)
    report = sweep(config)
    unconverged = sum(not row.converged for row in report.rows)
    if unconverged:
        _require_converged(args, False, f"{unconverged} of {len(report.rows)} sweep rows")
    csv_path, json_path = write_report(report, args.out)
    if report.rows:
        logger.info("max ratio %.6g over %d rows", max(row.ratio for row in report.rows), len(report.rows))
    run = RunConfig.from_namespace(args).render()
    print(json.dumps({"rows": len(report.rows), "csv": str(csv_path), "sidecar": str(json_path), "run": run}))
    return EXIT_OK


def cmd_probe_trivial(args: argparse.Namespace) -> int:
    numeric = _numeric(args)
    lengths = DEFAULT_LENGTHS if args.lengths is None else args.lengths
    report = triviality_probe(args.p, args.q, args.partition, lengths, numeric)
    if report.slope is not None:
        logger.info("slope %.6g, expected %.6g", report.slope, report.expected_slope)
    _emit(
        {
            "witness": report.witness,
            "lengths": list(report.lengths),
            "quotients": list(report.quotients),
            "slope": report.slope,
            "expected_slope": report.expected_slope,
            "fit_defined": report.fit_defined,
        },
        args,
    )
    return EXIT_OK


_COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "exponents": cmd_exponents,
    "mixed-norm": cmd_mixed_norm,
    "form-norm": cmd_form_norm,
    "verify-hl": cmd_verify_hl,
    "sweep": cmd_sweep,
    "probe-trivial": cmd_probe_trivial,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _argument_type(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    """Turn package validation errors into argparse usage errors."""

    def convert(text: str) -> Any:
        try:
            return parse(text)
        except ValidationError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    convert.__name__ = parse.__name__
    return convert


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


_EXPONENTS = _argument_type(ex.parse_exponent_list)
_EXPONENT = _argument_type(ex.parse_exponent)
_PARTITION = _argument_type(BlockPartition.parse)


def _add_estimator_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", default="auto", choices=["auto", "ascent", "exact-sign", "exact-closed"])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-iter", dest="max_iter", type=int)
    parser.add_argument("--workers", type=int)


def _add_rule_options(parser: argparse.ArgumentParser, default: str | None) -> None:
    parser.add_argument("--rule", default=default, required=default is None, choices=ExponentRuleFactory.names())
    parser.add_argument("--r", type=_EXPONENT, help="source exponent for rule 'inclusion'")
    parser.add_argument("--q", type=_EXPONENTS, help="target weak exponents for rule 'inclusion'")
    parser.add_argument("--s", type=_EXPONENTS, help="exponents for rule 'custom'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="summability", description="Block summability and Hardy-Littlewood experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--strict", action="store_true", help="fail with exit code 3 on non-convergence")
    commands = parser.add_subparsers(dest="command", required=True)

    exponents = commands.add_parser("exponents", help="output exponents of a rule")
    exponents.add_argument("--m", type=int)
    exponents.add_argument("--p", type=_EXPONENTS, required=True)
    exponents.add_argument("--partition", type=_PARTITION)
    exponents.add_argument("--sizes", type=_int_list, help="block sizes, e.g. 2,1 for 1,2|3")
    _add_rule_options(exponents, "hl-block")
    exponents.add_argument("--out", type=Path)

    mixed = commands.add_parser("mixed-norm", help="nested l_s norm of a tensor file")
    mixed.add_argument("--input", type=Path, required=True)
    mixed.add_argument("--s", type=_EXPONENTS, required=True)
    mixed.add_argument("--partition", type=_PARTITION, help="restrict to the block set first")
    mixed.add_argument("--out", type=Path)

    form = commands.add_parser("form-norm", help="norm estimate of a multilinear form")
    form.add_argument("--input", type=Path, required=True)
    form.add_argument("--p", type=_EXPONENTS, help="domain exponents (default: the file's 'p')")
    _add_estimator_options(form)
    form.add_argument("--out", type=Path)

    verify = commands.add_parser("verify-hl", help="Hardy-Littlewood ratio of one form")
    verify.add_argument("--input", type=Path, required=True)
    verify.add_argument("--p", type=_EXPONENTS)
    verify.add_argument("--partition", type=_PARTITION, required=True)
    _add_rule_options(verify, "hl-block")
    verify.add_argument("--compare-isotropic", dest="compare_isotropic", action="store_true")
    _add_estimator_options(verify)
    verify.add_argument("--out", type=Path)

    grid = commands.add_parser("sweep", help="grid of ratios to CSV and JSON sidecar")
    grid.add_argument("--config", type=Path, required=True)
    grid.add_argument("--out", type=Path, required=True)
    grid.add_argument("--workers", type=int)

    probe = commands.add_parser("probe-trivial", help="summing quotients of a trivial class")
    probe.add_argument("--p", type=_EXPONENTS, required=True)
    probe.add_argument("--q", type=_EXPONENTS, required=True)
    probe.add_argument("--partition", type=_PARTITION, required=True)
    probe.add_argument("--lengths", type=_int_list)
    probe.add_argument("--out", type=Path)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    configure_logging(args.verbose)
    logger.debug("run: %s", " ".join(RunConfig.from_namespace(args).render()))
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except NumericalError as exc:
        logger.error("%s", exc)
        return EXIT_NUMERICAL
    except (OSError, json.JSONDecodeError) as exc:
        logger.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
