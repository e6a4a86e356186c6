"""
Logger module for centralized logging configuration with JSON support.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional


class JSONFormatter(logging.Formatter):
    """Custom JSON formatter for logging."""

    def format(self, record):
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry)


class Logger:
    """
    Centralized logger for the engine with optional JSON file output.
    """

    _loggers = {}

    @classmethod
    def get_logger(cls, name: str, log_file: Optional[str] = None) -> logging.Logger:
        """
        Get or create a logger instance.

        Args:
            name: Name of the logger (usually __name__)
            log_file: Optional path to a JSON-lines log file; falls back to CURVE_LOG_FILE

        Returns:
            logging.Logger: Configured logger instance
        """
        if name in cls._loggers:
            return cls._loggers[name]

        # Imported here: the config package itself logs through this module.
        from src.config.config import Config

        log_file = log_file or Config.LOG_FILE

        logger = logging.getLogger(name)
        logger.setLevel(logging.DEBUG)

        if not logger.handlers:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(Config.CONSOLE_LOG_LEVEL)
            console_formatter = logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
            console_handler.setFormatter(console_formatter)
            logger.addHandler(console_handler)

            if log_file:
                log_path = Path(log_file)
                log_path.parent.mkdir(parents=True, exist_ok=True)

                file_handler = logging.FileHandler(log_file)
                file_handler.setLevel(logging.DEBUG)
                file_handler.setFormatter(JSONFormatter())
                logger.addHandler(file_handler)

        cls._loggers[name] = logger
        return logger

    @classmethod
    def log_error(cls, logger: logging.Logger, error: Exception, context: str = ""):
        """
        Log error with context information.

        Args:
            logger: Logger instance
            error: Exception object
            context: Additional context about where the error occurred
        """
        error_msg = f"{context}: {type(error).__name__} - {str(error)}" if context else str(error)
        logger.error(error_msg, exc_info=True)

    @classmethod
    def log_certificate_issue(cls, logger: logging.Logger, issue_type: str, details: dict):
        """
        Log a failed or weakened certificate in a structured format.

        Args:
            logger: Logger instance
            issue_type: Short tag for the hypothesis that failed
            details: Dictionary with issue details
        """
        logger.warning(f"CERTIFICATE ISSUE - {issue_type}: {details}")

    @classmethod
    def log_stage(cls, logger: logging.Logger, stage: str, status: str, **metrics):
        """
        Log the outcome of one pipeline stage.

        Args:
            logger: Logger instance
            stage: Stage name (e.g. ``validate_skeleton``)
            status: ``ok``, ``fail`` or ``skipped``
            **metrics: Key figures reported for the stage
        """
        summary = ", ".join(f"{key}={value}" for key, value in metrics.items())
        logger.info(f"STAGE - {stage}: {status}" + (f" ({summary})" if summary else ""))
