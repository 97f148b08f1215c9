"""Structured logging: structlog to stderr, optional CSV mirror, step timings and self-check tallies."""

import csv
import json
import logging
import sys
import time
from collections import Counter
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from utils.config_loader import settings

CSV_COLUMNS = ["timestamp", "level", "logger", "event", "step", "target", "check", "passed", "context"]
_CSV_FIXED = {"timestamp", "level", "logger", "event", "step", "target", "validation", "passed"}


class CsvMirror:
    """structlog processor appending every event to a CSV file under the logs directory."""

    def __init__(self, log_dir: Path, prefix: str = "kostant"):
        self.log_dir = log_dir
        self.prefix = prefix
        self.path: Optional[Path] = None

    def _open(self) -> Path:
        self.log_dir.mkdir(parents=True, exist_ok=True)
        path = self.log_dir / f"{self.prefix}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.csv"
        with open(path, "w", newline="") as f:
            csv.DictWriter(f, fieldnames=CSV_COLUMNS).writeheader()
        return path

    def __call__(self, logger: Any, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
        if self.path is None:
            self.path = self._open()
        extra = {k: v for k, v in event_dict.items() if k not in _CSV_FIXED}
        row = {
            "timestamp": event_dict.get("timestamp", datetime.now().isoformat()),
            "level": event_dict.get("level", method_name),
            "logger": event_dict.get("logger", ""),
            "event": event_dict.get("event", ""),
            "step": event_dict.get("step", ""),
            "target": event_dict.get("target", ""),
            "check": event_dict.get("validation", ""),
            "passed": event_dict.get("passed", ""),
            "context": json.dumps(extra, default=str, sort_keys=True) if extra else "",
        }
        with open(self.path, "a", newline="") as f:
            csv.DictWriter(f, fieldnames=CSV_COLUMNS).writerow(row)
        return event_dict


_configured = False


def configure_logging(mirror: Optional[CsvMirror] = None) -> None:
    """Configure structlog once per process; stdout is left to command output."""
    global _configured
    if _configured and mirror is None:
        return

    if mirror is None and settings.output.logs.enabled:
        mirror = CsvMirror(Path(settings.output.logs.dir))

    log_config = settings.logging
    processors: List[Any] = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
    ]
    if log_config.include_timestamp:
        processors.append(structlog.processors.TimeStamper(fmt="iso"))
    processors += [structlog.processors.StackInfoRenderer(), structlog.processors.format_exc_info]
    if log_config.include_context:
        processors.append(
            structlog.processors.CallsiteParameterAdder(
                parameters=[
                    structlog.processors.CallsiteParameter.MODULE,
                    structlog.processors.CallsiteParameter.FUNC_NAME,
                ]
            )
        )
    if mirror is not None:
        processors.append(mirror)
    simple = settings.debug or log_config.format == "simple"
    processors.append(structlog.dev.ConsoleRenderer() if simple else structlog.processors.JSONRenderer())

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=getattr(logging, log_config.level))
    _configured = True


def get_logger(name: str) -> Any:
    configure_logging()
    return structlog.get_logger(name)


class ExecutionLogger:
    """Times computation steps and tallies self-checks (oracles, postconditions, golden values)."""

    def __init__(self, name: str = "execution"):
        self.logger = get_logger(name)
        self.steps: List[Dict[str, Any]] = []
        self.checks: Counter = Counter()
        self._started: Dict[str, float] = {}

    def log_step_start(self, step: str, target: str, **kwargs: Any) -> None:
        self._started[f"{step}:{target}"] = time.perf_counter()
        self.logger.info("Step started", step=step, target=target, **kwargs)

    def log_step_end(self, step: str, target: str, status: str = "passed", **kwargs: Any) -> float:
        """Close a step opened by log_step_start; returns seconds elapsed."""
        started = self._started.pop(f"{step}:{target}", None)
        seconds = time.perf_counter() - started if started is not None else 0.0
        record = {"step": step, "target": target, "status": status, "seconds": round(seconds, 6)}
        self.steps.append(record)
        self.logger.info("Step completed", **record, **kwargs)
        return seconds

    def log_action(self, action: str, target: str, **kwargs: Any) -> None:
        self.logger.info("Action performed", action=action, target=target, **kwargs)

    def log_validation(self, validation: str, expected: Any, actual: Any, passed: bool) -> None:
        self.checks["passed" if passed else "failed"] += 1
        log = self.logger.info if passed else self.logger.warning
        log("Validation performed", validation=validation, expected=expected, actual=actual, passed=passed)

    def generate_summary(self) -> Dict[str, Any]:
        summary = {
            "steps": len(self.steps),
            "failed_steps": sum(1 for s in self.steps if s["status"] != "passed"),
            "checks_passed": self.checks["passed"],
            "checks_failed": self.checks["failed"],
            "seconds": round(sum(s["seconds"] for s in self.steps), 6),
        }
        self.logger.info("Execution summary", **summary)
        return summary


class ExceptionLogger:
    def __init__(self, name: str = "exceptions"):
        self.logger = get_logger(name)

    def log_exception(self, exception: BaseException, context: str, **kwargs: Any) -> None:
        """Log a failure with its structured context; KostantError context keys are flattened in."""
        details = getattr(exception, "context", None) or {}
        self.logger.error(
            "Exception occurred",
            exception_type=type(exception).__name__,
            exception_message=getattr(exception, "message", str(exception)),
            context=context,
            exc_info=exception,
            **{f"ctx_{k}": v for k, v in details.items()},
            **kwargs,
        )


execution_logger = ExecutionLogger()
exception_logger = ExceptionLogger()
