from typing import Callable, Dict

from src.core.indicators.service import IndicatorService
from src.infrastructure import ingest
from src.infrastructure.report import write_report
from src.utils.logger import get_logger

logger = get_logger(__name__)


def load_dataset(config):
    """Read every --input file and fold in the --memberships file, if any."""
    dataset = ingest.load_datasets(config.inputs)
    if config.memberships:
        with open(config.memberships, "rb") as f:
            dataset = ingest.merge_memberships(dataset, ingest.parse_memberships(f))
    return dataset


def _service(config) -> IndicatorService:
    return IndicatorService(load_dataset(config), config.scheme, config.approaches, config.workers)


def cmd_score(config) -> bytes:
    layout, rows = _service(config).score_rows()
    return write_report(rows, layout, config.format, config.precision)


def cmd_evaluate(config) -> bytes:
    service = _service(config)
    if not service.dataset.groups:
        logger.warning("Dataset carries no group memberships; nothing to evaluate")
    layout, rows = service.evaluate_rows()
    return write_report(rows, layout, config.format, config.precision)


def cmd_audit(config) -> bytes:
    layout, rows = _service(config).audit_rows()
    return write_report(rows, layout, config.format, config.precision)


def cmd_thresholds(config) -> bytes:
    layout, rows = _service(config).threshold_rows(config.percentile)
    return write_report(rows, layout, config.format, config.precision)


COMMANDS: Dict[str, Callable] = {
    "score": cmd_score,
    "evaluate": cmd_evaluate,
    "audit": cmd_audit,
    "thresholds": cmd_thresholds,
}
