"""
Command-line front end: score | evaluate | audit | thresholds
"""

import argparse
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from config.settings import settings
from src.core.indicators.exceptions import IndicatorError, ValidationError
from src.core.indicators.models import ApproachId
from src.core.indicators.scheme import PercentileScheme, r6_scheme, top_x_scheme
from src.infrastructure.ingest import parse_scheme_file, scheme_from_dict
from src.utils.logger import get_logger, logger as indicator_logger
from src.utils.validator import InputValidator
from .handlers import COMMANDS

logger = get_logger(__name__)

TOP_X_PATTERN = re.compile(r"^topX=(?P<percent>.+)$")


class ConfigError(Exception):
    """Flags that parse but do not make a valid configuration"""


@dataclass
class CliConfig:
    subcommand: str
    inputs: List[str]
    scheme: PercentileScheme
    approaches: Tuple[ApproachId, ...]
    memberships: Optional[str] = None
    output: Optional[str] = None
    format: str = "csv"
    precision: int = settings.DEFAULT_PRECISION
    percentile: Fraction = field(default_factory=lambda: Fraction(settings.DEFAULT_PERCENTILE))
    workers: int = settings.DEFAULT_WORKERS


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="inputs", action="append", required=True, metavar="PATH",
                        help="publications CSV or JSONL file (repeatable)")
    common.add_argument("--memberships", metavar="PATH", help="CSV with columns pub_id,group_id")

    source = common.add_mutually_exclusive_group()
    source.add_argument("--scheme", metavar="NAME",
                        help=f"top10 | topX=<percent> | r6 | a preset from config/schemes.json "
                             f"(default: {settings.DEFAULT_SCHEME})")
    source.add_argument("--scheme-file", metavar="PATH", help="JSON scheme definition")
    source.add_argument("--top", metavar="PERCENT", help="top-x%% scheme, e.g. --top 10")

    approach_names = [a.value for a in ApproachId] + ["all"]
    common.add_argument("--approach", default=settings.DEFAULT_APPROACH, choices=approach_names,
                        help=f"approach to evaluate (default: {settings.DEFAULT_APPROACH})")
    common.add_argument("--output", metavar="PATH", help="report path (default: standard output)")
    common.add_argument("--format", default="csv", choices=sorted(settings.REPORT_FORMATS))
    common.add_argument("--precision", type=_positive_int, default=settings.DEFAULT_PRECISION,
                        help=f"decimal places (default: {settings.DEFAULT_PRECISION})")
    common.add_argument("--workers", type=_positive_int, default=settings.DEFAULT_WORKERS,
                        help="threads used to audit fields")
    common.add_argument("--verbose", action="store_true", help="debug logging on standard error")

    parser = argparse.ArgumentParser(
        prog="pbi",
        description="Percentile-based citation indicators with exact fractional tie handling.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    subparsers.add_parser("score", parents=[common], help="score every publication")
    subparsers.add_parser("evaluate", parents=[common], help="indicator per research group")
    subparsers.add_parser("audit", parents=[common], help="whole-field indicator vs. scheme target")
    thresholds = subparsers.add_parser("thresholds", parents=[common],
                                       help="percentile threshold and below/at/above shares per field")
    thresholds.add_argument("--percentile", default=settings.DEFAULT_PERCENTILE, metavar="P",
                            help=f"percentile in (0, 1) (default: {settings.DEFAULT_PERCENTILE})")
    return parser


def _top_scheme(percent_text: str) -> PercentileScheme:
    try:
        percent = InputValidator.parse_rational(percent_text)
    except ValidationError as e:
        raise ConfigError(f"Invalid top percentage: {e}")
    if not 0 < percent < 100:
        raise ConfigError(f"Top percentage must lie strictly between 0 and 100, got {percent_text}")
    return top_x_scheme(percent / 100)


def resolve_scheme(args: argparse.Namespace) -> PercentileScheme:
    if args.scheme_file:
        with open(args.scheme_file, "rb") as f:
            return parse_scheme_file(f)
    if args.top:
        return _top_scheme(args.top)

    name = args.scheme or settings.DEFAULT_SCHEME
    if name == "top10":
        return top_x_scheme(Fraction(1, 10))
    if name == "r6":
        return r6_scheme()
    match = TOP_X_PATTERN.match(name)
    if match:
        return _top_scheme(match.group("percent"))
    if name in settings.SCHEME_PRESETS:
        return scheme_from_dict(settings.SCHEME_PRESETS[name])
    raise ConfigError(f"Unknown scheme '{name}'")


def resolve_approaches(name: str) -> Tuple[ApproachId, ...]:
    if name == "all":
        return tuple(ApproachId)
    return (ApproachId(name),)


def parse_config(argv: Optional[Sequence[str]] = None) -> CliConfig:
    args = build_parser().parse_args(argv)
    if args.verbose:
        indicator_logger.set_level("DEBUG")

    percentile = Fraction(settings.DEFAULT_PERCENTILE)
    if args.subcommand == "thresholds":
        try:
            percentile = InputValidator.parse_rational(args.percentile)
        except ValidationError as e:
            raise ConfigError(f"Invalid --percentile: {e}")
        if not 0 < percentile < 1:
            raise ConfigError(f"--percentile must lie strictly between 0 and 1, got {args.percentile}")

    return CliConfig(
        subcommand=args.subcommand,
        inputs=args.inputs,
        scheme=resolve_scheme(args),
        approaches=resolve_approaches(args.approach),
        memberships=args.memberships,
        output=args.output,
        format=args.format,
        precision=args.precision,
        percentile=percentile,
        workers=args.workers,
    )


def emit(data: bytes, output: Optional[str]):
    if output:
        with open(output, "wb") as f:
            f.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; 0 on success, 1 on input or configuration errors."""
    try:
        config = parse_config(argv)
        data = COMMANDS[config.subcommand](config)
        emit(data, config.output)
    except (IndicatorError, ConfigError, OSError) as e:
        logger.error(str(e))
        return 1
    return 0
